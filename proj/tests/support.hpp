#pragma once

// Generators and independent oracles shared by the unit tests and the
// acceptance binary. Oracles here deliberately avoid the library code paths
// they check.

#include <algorithm>
#include <bit>
#include <chrono>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <numeric>
#include <optional>
#include <set>
#include <stdexcept>
#include <vector>

#include "fairspread/fairspread.hpp"

namespace fstest {

using namespace fairspread;

class Stopwatch {
 public:
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

inline std::size_t uniform_int(SplitMix64& rng, std::size_t lo, std::size_t hi) {
  return lo + static_cast<std::size_t>(rng.below(hi - lo + 1));
}

/// Random simple graph with both groups present and at most `max_edges`
/// edges (possibly disconnected).
inline SocialGraph random_graph(SplitMix64& rng, std::size_t n, std::size_t max_edges) {
  std::vector<Group> groups(n);
  for (auto& g : groups) g = rng.uniform() < 0.5 ? Group::first : Group::second;
  groups[0] = Group::first;
  groups[n - 1] = Group::second;
  std::vector<Edge> all;
  for (NodeId u = 0; u < n; ++u) {
    for (NodeId v = u + 1; v < n; ++v) all.push_back({u, v});
  }
  std::shuffle(all.begin(), all.end(), rng);
  const std::size_t m = uniform_int(rng, 0, std::min(max_edges, all.size()));
  all.resize(m);
  return SocialGraph(std::move(groups), all);
}

/// Connected random graph: a random spanning tree plus extra random edges,
/// with at most max(n - 1, max_edges) edges in total.
inline SocialGraph random_connected_graph(SplitMix64& rng, std::size_t n, std::size_t max_edges) {
  std::vector<Group> groups(n);
  for (auto& g : groups) g = rng.uniform() < 0.5 ? Group::first : Group::second;
  groups[0] = Group::first;
  groups[n - 1] = Group::second;
  std::vector<NodeId> order(n);
  std::iota(order.begin(), order.end(), NodeId{0});
  std::shuffle(order.begin(), order.end(), rng);
  std::set<std::pair<NodeId, NodeId>> edges;
  auto key = [](NodeId a, NodeId b) { return std::make_pair(std::min(a, b), std::max(a, b)); };
  for (std::size_t i = 1; i < n; ++i) edges.insert(key(order[i], order[rng.below(i)]));
  std::vector<Edge> rest;
  for (NodeId u = 0; u < n; ++u) {
    for (NodeId v = u + 1; v < n; ++v) {
      if (!edges.count({u, v})) rest.push_back({u, v});
    }
  }
  std::shuffle(rest.begin(), rest.end(), rng);
  const std::size_t cap = std::max(n - 1, std::min(max_edges, n * (n - 1) / 2));
  const std::size_t extra = uniform_int(rng, 0, cap - (n - 1));
  std::vector<Edge> all;
  for (const auto& [u, v] : edges) all.push_back({u, v});
  all.insert(all.end(), rest.begin(), rest.begin() + static_cast<std::ptrdiff_t>(extra));
  return SocialGraph(std::move(groups), all);
}

/// Distinct random node ids.
inline std::vector<NodeId> random_seeds(SplitMix64& rng, std::size_t n, std::size_t k) {
  if (k > n) throw std::invalid_argument("random_seeds: k exceeds n");
  std::vector<NodeId> ids(n);
  std::iota(ids.begin(), ids.end(), NodeId{0});
  std::shuffle(ids.begin(), ids.end(), rng);
  ids.resize(k);
  return ids;
}

/// Random distribution on the unit square mixing uniform points, lattice
/// points, diagonal points and corners.
inline DiscreteDistribution2D random_distribution(SplitMix64& rng, std::size_t max_support) {
  const std::size_t n = uniform_int(rng, 1, max_support);
  std::vector<Point2> pts(n);
  std::vector<double> ws(n);
  for (std::size_t i = 0; i < n; ++i) {
    switch (rng.below(4)) {
      case 0: pts[i] = {rng.uniform(), rng.uniform()}; break;
      case 1: pts[i] = {static_cast<double>(rng.below(11)) / 10.0, static_cast<double>(rng.below(11)) / 10.0}; break;
      case 2: {
        const double t = rng.uniform();
        pts[i] = {t, t};
        break;
      }
      default: pts[i] = {static_cast<double>(rng.below(2)), static_cast<double>(rng.below(2))}; break;
    }
    ws[i] = 0.05 + rng.uniform();
  }
  const double total = std::accumulate(ws.begin(), ws.end(), 0.0);
  for (auto& w : ws) w /= total;
  return DiscreteDistribution2D(std::move(pts), std::move(ws));
}

inline DiscreteDistribution2D random_diagonal_distribution(SplitMix64& rng, std::size_t max_support) {
  const std::size_t n = uniform_int(rng, 1, max_support);
  std::vector<Point2> pts(n);
  std::vector<double> ws(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double t = rng.uniform();
    pts[i] = {t, t};
    ws[i] = 0.05 + rng.uniform();
  }
  const double total = std::accumulate(ws.begin(), ws.end(), 0.0);
  for (auto& w : ws) w /= total;
  return DiscreteDistribution2D(std::move(pts), std::move(ws));
}

/// Diameter from all-pairs shortest paths (Floyd-Warshall), max over
/// connected pairs.
inline int floyd_warshall_diameter(const SocialGraph& g) {
  const std::size_t n = g.node_count();
  constexpr int inf = std::numeric_limits<int>::max() / 4;
  std::vector<int> d(n * n, inf);
  for (std::size_t i = 0; i < n; ++i) d[i * n + i] = 0;
  for (const Edge& e : g.edges()) {
    d[e.u * n + e.v] = 1;
    d[e.v * n + e.u] = 1;
  }
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) d[i * n + j] = std::min(d[i * n + j], d[i * n + k] + d[k * n + j]);
    }
  }
  int best = 0;
  for (const int x : d) {
    if (x < inf) best = std::max(best, x);
  }
  return best;
}

/// Final configuration of the union of the seeds' connected components,
/// from a plain depth-first search.
inline Point2 component_union_configuration(const SocialGraph& g, const std::vector<NodeId>& seeds) {
  std::vector<char> seen(g.node_count(), 0);
  std::vector<NodeId> stack(seeds.begin(), seeds.end());
  for (const NodeId s : seeds) seen[s] = 1;
  double count[2] = {0, 0};
  while (!stack.empty()) {
    const NodeId v = stack.back();
    stack.pop_back();
    count[g.group(v) == Group::first ? 0 : 1] += 1;
    for (const NodeId w : g.neighbors(v)) {
      if (!seen[w]) {
        seen[w] = 1;
        stack.push_back(w);
      }
    }
  }
  return {count[0] / static_cast<double>(g.group_size(Group::first)),
          count[1] / static_cast<double>(g.group_size(Group::second))};
}

inline Point2 seeds_only_configuration(const SocialGraph& g, const std::vector<NodeId>& seeds) {
  double count[2] = {0, 0};
  for (const NodeId s : seeds) count[g.group(s) == Group::first ? 0 : 1] += 1;
  return {count[0] / static_cast<double>(g.group_size(Group::first)),
          count[1] / static_cast<double>(g.group_size(Group::second))};
}

/// Exact joint outreach by brute force over live-edge subsets, computing
/// reachability with a fresh BFS per world (no union-find, no merging).
/// Returns (configuration, probability) pairs, one per world.
inline std::vector<std::pair<Point2, double>> brute_force_outreach(const SocialGraph& g,
                                                                    const std::vector<NodeId>& seeds, double p) {
  const std::size_t m = g.edge_count();
  const auto edges = g.edges();
  std::vector<std::pair<Point2, double>> out;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << m); ++mask) {
    const int live = std::popcount(mask);
    const double prob = std::pow(p, live) * std::pow(1.0 - p, static_cast<double>(m) - live);
    if (prob == 0.0) continue;
    std::vector<std::vector<NodeId>> adj(g.node_count());
    for (std::size_t e = 0; e < m; ++e) {
      if (mask >> e & 1U) {
        adj[edges[e].u].push_back(edges[e].v);
        adj[edges[e].v].push_back(edges[e].u);
      }
    }
    std::vector<char> seen(g.node_count(), 0);
    std::vector<NodeId> queue(seeds.begin(), seeds.end());
    for (const NodeId s : seeds) seen[s] = 1;
    for (std::size_t i = 0; i < queue.size(); ++i) {
      for (const NodeId w : adj[queue[i]]) {
        if (!seen[w]) {
          seen[w] = 1;
          queue.push_back(w);
        }
      }
    }
    double count[2] = {0, 0};
    for (const NodeId v : queue) count[g.group(v) == Group::first ? 0 : 1] += 1;
    out.push_back({{count[0] / static_cast<double>(g.group_size(Group::first)),
                    count[1] / static_cast<double>(g.group_size(Group::second))},
                   prob});
  }
  return out;
}

/// Optimal transport value by enumerating every vertex of the
/// transportation polytope: each basic solution is a spanning tree of the
/// bipartite graph rows x cols, whose flows follow by peeling leaves.
/// Practical only for tiny supports (3 x 3 has 126 candidate bases).
template <class Cost>
double ot_by_vertex_enumeration(const DiscreteDistribution2D& a, const DiscreteDistribution2D& b, Cost cost) {
  const std::size_t m = a.size();
  const std::size_t n = b.size();
  const std::size_t cells = m * n;
  const std::size_t basis = m + n - 1;
  double best = std::numeric_limits<double>::infinity();
  std::vector<std::size_t> pick(basis);
  for (std::size_t i = 0; i < basis; ++i) pick[i] = i;
  while (true) {
    std::vector<double> row(a.weights());
    std::vector<double> col(b.weights());
    std::vector<char> used(basis, 0);
    std::vector<double> flow(basis, 0.0);
    bool ok = true;
    for (std::size_t round = 0; round < basis && ok; ++round) {
      // find a row or column touched by exactly one unused basis cell
      bool progressed = false;
      for (std::size_t line = 0; line < m + n && !progressed; ++line) {
        std::size_t count = 0;
        std::size_t which = 0;
        for (std::size_t t = 0; t < basis; ++t) {
          if (used[t]) continue;
          const std::size_t r = pick[t] / n;
          const std::size_t c = pick[t] % n;
          if ((line < m && r == line) || (line >= m && c == line - m)) {
            ++count;
            which = t;
          }
        }
        if (count != 1) continue;
        const std::size_t r = pick[which] / n;
        const std::size_t c = pick[which] % n;
        const double f = line < m ? row[r] : col[c];
        flow[which] = f;
        row[r] -= f;
        col[c] -= f;
        used[which] = 1;
        progressed = true;
      }
      if (!progressed) ok = false;
    }
    if (ok) {
      for (const double r : row) ok = ok && std::abs(r) < 1e-12;
      for (const double c : col) ok = ok && std::abs(c) < 1e-12;
      for (const double f : flow) ok = ok && f > -1e-12;
    }
    if (ok) {
      double value = 0.0;
      for (std::size_t t = 0; t < basis; ++t) {
        value += flow[t] * cost(a.point(pick[t] / n), b.point(pick[t] % n));
      }
      best = std::min(best, value);
    }
    std::size_t i = basis;
    while (i > 0 && pick[i - 1] == cells - basis + i - 1) --i;
    if (i == 0) break;
    ++pick[i - 1];
    for (std::size_t j = i; j < basis; ++j) pick[j] = pick[j - 1] + 1;
  }
  return best;
}

/// Least-squares slope of log(y) against log(x).
inline double log_log_slope(const std::vector<double>& x, const std::vector<double>& y) {
  const std::size_t n = x.size();
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < n; ++i) {
    mx += std::log(x[i]);
    my += std::log(y[i]);
  }
  mx /= static_cast<double>(n);
  my /= static_cast<double>(n);
  double sxy = 0, sxx = 0;
  for (std::size_t i = 0; i < n; ++i) {
    sxy += (std::log(x[i]) - mx) * (std::log(y[i]) - my);
    sxx += (std::log(x[i]) - mx) * (std::log(x[i]) - mx);
  }
  return sxy / sxx;
}

/// HS-scale synthetic network: 80 + 53 nodes, homophilic, with the
/// highest-degree nodes concentrated in the majority group.
inline SocialGraph hs_like_graph(std::uint64_t seed) {
  const std::size_t n1 = 80;
  const std::size_t n2 = 53;
  SplitMix64 rng(seed);
  std::vector<Group> groups(n1 + n2, Group::second);
  std::fill_n(groups.begin(), n1, Group::first);
  std::vector<Edge> edges;
  for (NodeId u = 0; u < n1 + n2; ++u) {
    for (NodeId v = u + 1; v < n1 + n2; ++v) {
      const bool same = groups[u] == groups[v];
      if (rng.uniform() < (same ? 0.045 : 0.03)) edges.push_back({u, v});
    }
  }
  // hubs: eight in the majority group, two in the minority group
  const NodeId hubs[] = {0, 1, 2, 3, 4, 5, 6, 7, 80, 81};
  for (const NodeId h : hubs) {
    for (int extra = 0; extra < 14; ++extra) {
      const auto v = static_cast<NodeId>(rng.below(n1 + n2));
      if (v != h) edges.push_back({h, v});
    }
  }
  return SocialGraph(std::move(groups), edges);
}

/// IV-scale synthetic network: 50 + 40 nodes in two dense communities
/// joined by few cross edges.
inline SocialGraph iv_like_graph(std::uint64_t seed) { return generate_sbm(50, 40, 0.107, 0.012, seed); }

}  // namespace fstest
