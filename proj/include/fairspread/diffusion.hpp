#pragma once

#include <algorithm>
#include <bit>
#include <cmath>
#include <concepts>
#include <cstddef>
#include <cstdint>
#include <istream>
#include <limits>
#include <map>
#include <numeric>
#include <ostream>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "fairspread/error.hpp"
#include "fairspread/format.hpp"
#include "fairspread/graph.hpp"
#include "fairspread/parallel.hpp"
#include "fairspread/point.hpp"
#include "fairspread/random.hpp"

namespace fairspread {

inline constexpr std::size_t kUnboundedHorizon = std::numeric_limits<std::size_t>::max();

/// Per-group activated fractions of one diffusion run.
using FinalConfiguration = Point2;

/// Source of one uniform draw per undirected edge for a single realization.
template <class C>
concept EdgeCoinSource = requires(const C& c, EdgeId e) {
  { c.uniform(e) } -> std::convertible_to<double>;
};

/// Counter-based coins: the draw for edge e is a hash of (key, e).
///
/// An edge fires in a cascade iff uniform(e) < p. Because the draw does not
/// depend on traversal order, cascades from different seedsets (or different
/// p) under the same key are coupled edge-by-edge.
class EdgeCoins {
 public:
  explicit constexpr EdgeCoins(std::uint64_t key) noexcept : key_(key) {}

  constexpr double uniform(EdgeId e) const noexcept {
    return to_unit(splitmix64(key_ + static_cast<std::uint64_t>(e) * kGoldenGamma));
  }
  constexpr std::uint64_t key() const noexcept { return key_; }

 private:
  std::uint64_t key_;
};

/// Coins of realization `index` under `master_seed`.
constexpr EdgeCoins realization_coins(std::uint64_t master_seed, std::uint64_t index) noexcept {
  return EdgeCoins(derive_stream(master_seed, index));
}

/// Reusable scratch space for cascades on one graph (one per worker).
class CascadeWorkspace {
 public:
  explicit CascadeWorkspace(std::size_t node_count) : stamp_(node_count, 0) {}

  /// Number of neighbor probes performed so far; a proxy for cascade work.
  std::uint64_t probes = 0;

 private:
  template <EdgeCoinSource Coins, class Visit>
  friend void run_cascade(const SocialGraph&, std::span<const NodeId>, double, std::size_t, const Coins&,
                          CascadeWorkspace&, Visit&&);

  void begin() {
    if (++epoch_ == 0) {
      std::fill(stamp_.begin(), stamp_.end(), 0);
      epoch_ = 1;
    }
  }
  bool mark(NodeId v) {
    if (stamp_[v] == epoch_) return false;
    stamp_[v] = epoch_;
    return true;
  }

  std::vector<std::uint32_t> stamp_;
  std::uint32_t epoch_ = 0;
  std::vector<NodeId> frontier_;
  std::vector<NodeId> next_;
};

namespace detail {

inline void check_probability(double p, const char* who) {
  if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument(std::string(who) + ": p must lie in [0, 1]");
}

inline void check_seeds(const SocialGraph& g, std::span<const NodeId> seeds, const char* who) {
  for (const NodeId s : seeds) {
    if (!g.contains(s)) {
      throw std::invalid_argument(std::string(who) + ": seed id " + std::to_string(s) + " out of range");
    }
  }
}

}  // namespace detail

/// Independent cascade, BFS by rounds. Calls on_activate(v) once for every
/// activated node (seeds first). Each node activated in round t-1 makes one
/// attempt per inactive neighbor in round t; at most `horizon` rounds run.
template <EdgeCoinSource Coins, class Visit>
void run_cascade(const SocialGraph& g, std::span<const NodeId> seeds, double p, std::size_t horizon,
                 const Coins& coins, CascadeWorkspace& ws, Visit&& on_activate) {
  ws.begin();
  ws.frontier_.clear();
  for (const NodeId s : seeds) {
    if (ws.mark(s)) {
      on_activate(s);
      ws.frontier_.push_back(s);
    }
  }
  for (std::size_t round = 0; round < horizon && !ws.frontier_.empty(); ++round) {
    ws.next_.clear();
    for (const NodeId u : ws.frontier_) {
      const auto nbrs = g.neighbors(u);
      const auto eids = g.incident_edges(u);
      ws.probes += nbrs.size();
      for (std::size_t i = 0; i < nbrs.size(); ++i) {
        const NodeId w = nbrs[i];
        if (ws.stamp_[w] == ws.epoch_) continue;
        if (coins.uniform(eids[i]) < p) {
          ws.mark(w);
          on_activate(w);
          ws.next_.push_back(w);
        }
      }
    }
    ws.frontier_.swap(ws.next_);
  }
}

/// All nodes activated by an independent cascade from `seeds`, seeds
/// included, in activation order.
template <EdgeCoinSource Coins>
std::vector<NodeId> independent_cascade(const SocialGraph& g, std::span<const NodeId> seeds, double p,
                                        std::size_t horizon, const Coins& coins) {
  detail::check_probability(p, "independent_cascade");
  detail::check_seeds(g, seeds, "independent_cascade");
  CascadeWorkspace ws(g.node_count());
  std::vector<NodeId> activated;
  run_cascade(g, seeds, p, horizon, coins, ws, [&](NodeId v) { activated.push_back(v); });
  return activated;
}

inline FinalConfiguration final_configuration(const SocialGraph& g, std::span<const NodeId> activated) {
  g.require_both_groups("final_configuration");
  std::size_t count[2] = {0, 0};
  for (const NodeId v : activated) {
    if (!g.contains(v)) throw std::invalid_argument("final_configuration: node id out of range");
    ++count[group_index(g.group(v))];
  }
  return {static_cast<double>(count[0]) / static_cast<double>(g.group_size(Group::first)),
          static_cast<double>(count[1]) / static_cast<double>(g.group_size(Group::second))};
}

/// Bin of x in a grid of `bins` equal bins over [0, 1]: [i/bins, (i+1)/bins),
/// with 1.0 joining the last bin.
inline std::size_t bin_of(double x, std::size_t bins) {
  // Outreach fractions are ratios c/n with n far below 1e9, so a value that
  // is mathematically on a bin edge sits within 1e-9 of it after rounding.
  const double scaled = std::floor(x * static_cast<double>(bins) + 1e-9);
  if (scaled <= 0.0) return 0;
  return std::min(bins - 1, static_cast<std::size_t>(scaled));
}

/// Row-major bins x bins grid of probability mass; index (i, j) covers
/// x1 in bin i and x2 in bin j.
struct Histogram {
  std::size_t bins = 0;
  std::vector<double> mass;

  double at(std::size_t i, std::size_t j) const { return mass[i * bins + j]; }
};

template <WeightedPointSet D>
Histogram histogram(const D& dist, std::size_t bins = 100) {
  if (bins == 0) throw std::invalid_argument("histogram: bins must be positive");
  Histogram h{bins, std::vector<double>(bins * bins, 0.0)};
  double total = 0.0;
  for (std::size_t i = 0; i < dist.size(); ++i) {
    const Point2 pt = dist.point(i);
    h.mass[bin_of(pt.x1, bins) * bins + bin_of(pt.x2, bins)] += dist.weight(i);
    total += dist.weight(i);
  }
  // normalized so that a single occupied bin holds exactly 1
  if (total > 0.0) {
    for (double& m : h.mass) m /= total;
  }
  return h;
}

/// Empirical (or exact) joint distribution of final configurations.
struct OutreachDistribution {
  std::vector<FinalConfiguration> samples;
  std::vector<double> weights;
  /// Number of Monte-Carlo realizations behind the samples; 0 for an exact
  /// distribution.
  std::size_t realization_count = 0;

  std::size_t size() const noexcept { return samples.size(); }
  Point2 point(std::size_t i) const { return samples[i]; }
  double weight(std::size_t i) const { return weights[i]; }
};

/// R independent unbounded cascades. Realization r uses
/// realization_coins(master_seed, r), so the result does not depend on the
/// number of workers.
inline OutreachDistribution sample_outreach(const SocialGraph& g, std::span<const NodeId> seeds, double p,
                                            std::size_t realizations, std::uint64_t master_seed,
                                            std::size_t workers = 1) {
  g.require_both_groups("sample_outreach");
  detail::check_probability(p, "sample_outreach");
  detail::check_seeds(g, seeds, "sample_outreach");
  if (realizations == 0) throw std::invalid_argument("sample_outreach: R must be at least 1");
  const double n1 = static_cast<double>(g.group_size(Group::first));
  const double n2 = static_cast<double>(g.group_size(Group::second));

  OutreachDistribution out;
  out.samples.resize(realizations);
  out.weights.assign(realizations, 1.0 / static_cast<double>(realizations));
  out.realization_count = realizations;
  detail::parallel_chunks(realizations, workers, [&](std::size_t, std::size_t begin, std::size_t end) {
    CascadeWorkspace ws(g.node_count());
    for (std::size_t r = begin; r < end; ++r) {
      std::size_t count[2] = {0, 0};
      run_cascade(g, seeds, p, kUnboundedHorizon, realization_coins(master_seed, r), ws,
                  [&](NodeId v) { ++count[group_index(g.group(v))]; });
      out.samples[r] = {static_cast<double>(count[0]) / n1, static_cast<double>(count[1]) / n2};
    }
  });
  return out;
}

/// Mean number of activated nodes over R unbounded cascades (no group
/// requirement, so it also works on single-group subgraphs).
inline double expected_outreach(const SocialGraph& g, std::span<const NodeId> seeds, double p,
                                std::size_t realizations, std::uint64_t master_seed) {
  detail::check_probability(p, "expected_outreach");
  detail::check_seeds(g, seeds, "expected_outreach");
  if (realizations == 0) throw std::invalid_argument("expected_outreach: R must be at least 1");
  CascadeWorkspace ws(g.node_count());
  std::uint64_t total = 0;
  for (std::size_t r = 0; r < realizations; ++r) {
    run_cascade(g, seeds, p, kUnboundedHorizon, realization_coins(master_seed, r), ws,
                [&](NodeId) { ++total; });
  }
  return static_cast<double>(total) / static_cast<double>(realizations);
}

/// Per-node activation counts over R cascades.
struct ReachFrequency {
  std::vector<std::uint32_t> counts;
  std::size_t realization_count = 0;

  std::uint64_t total() const {
    return std::accumulate(counts.begin(), counts.end(), std::uint64_t{0});
  }

  /// Per-node subtraction, floored at zero.
  void subtract_saturating(const ReachFrequency& other) {
    for (std::size_t v = 0; v < counts.size(); ++v) {
      counts[v] = counts[v] > other.counts[v] ? counts[v] - other.counts[v] : 0;
    }
  }
};

inline ReachFrequency seedset_reach(const SocialGraph& g, std::span<const NodeId> seeds, double p,
                                    std::size_t horizon, std::size_t realizations, std::uint64_t master_seed,
                                    std::size_t workers = 1, std::uint64_t* probes = nullptr) {
  detail::check_probability(p, "seedset_reach");
  detail::check_seeds(g, seeds, "seedset_reach");
  if (realizations == 0) throw std::invalid_argument("seedset_reach: R must be at least 1");
  workers = std::max<std::size_t>(1, std::min(workers, realizations));
  std::vector<std::vector<std::uint32_t>> partial(workers);
  std::vector<std::uint64_t> partial_probes(workers, 0);
  detail::parallel_chunks(realizations, workers, [&](std::size_t w, std::size_t begin, std::size_t end) {
    auto& counts = partial[w];
    counts.assign(g.node_count(), 0);
    CascadeWorkspace ws(g.node_count());
    for (std::size_t r = begin; r < end; ++r) {
      run_cascade(g, seeds, p, horizon, realization_coins(master_seed, r), ws, [&](NodeId v) { ++counts[v]; });
    }
    partial_probes[w] = ws.probes;
  });
  ReachFrequency out{std::vector<std::uint32_t>(g.node_count(), 0), realizations};
  for (const auto& counts : partial) {
    if (counts.empty()) continue;
    for (std::size_t v = 0; v < counts.size(); ++v) out.counts[v] += counts[v];
  }
  if (probes != nullptr) {
    for (const auto n : partial_probes) *probes += n;
  }
  return out;
}

inline constexpr std::size_t kMaxEnumeratedEdges = 20;

/// Exact joint outreach distribution by live-edge enumeration: every subset
/// of edges is a world of probability p^live (1-p)^dead, and the outreach of
/// a world is the union of the seeds' connected components in it.
/// Zero-probability worlds are skipped; equal configurations are merged.
inline OutreachDistribution exact_outreach(const SocialGraph& g, std::span<const NodeId> seeds, double p) {
  g.require_both_groups("exact_outreach");
  detail::check_probability(p, "exact_outreach");
  detail::check_seeds(g, seeds, "exact_outreach");
  const std::size_t m = g.edge_count();
  if (m > kMaxEnumeratedEdges) {
    throw std::invalid_argument("exact_outreach: " + std::to_string(m) + " edges exceed the enumeration bound of " +
                                std::to_string(kMaxEnumeratedEdges));
  }
  const std::size_t n = g.node_count();
  std::vector<double> live_pow(m + 1), dead_pow(m + 1);
  for (std::size_t i = 0; i <= m; ++i) {
    live_pow[i] = std::pow(p, static_cast<double>(i));
    dead_pow[i] = std::pow(1.0 - p, static_cast<double>(i));
  }

  std::map<std::pair<std::size_t, std::size_t>, double> mass;
  std::vector<NodeId> parent(n);
  auto find = [&](NodeId x) {
    while (parent[x] != x) {
      parent[x] = parent[parent[x]];
      x = parent[x];
    }
    return x;
  };
  std::vector<char> root_reached(n);
  const auto edges = g.edges();
  for (std::uint64_t world = 0; world < (std::uint64_t{1} << m); ++world) {
    const auto live = static_cast<std::size_t>(std::popcount(world));
    const double weight = live_pow[live] * dead_pow[m - live];
    if (weight == 0.0) continue;
    std::iota(parent.begin(), parent.end(), NodeId{0});
    for (std::size_t e = 0; e < m; ++e) {
      if ((world >> e) & 1U) {
        const NodeId a = find(edges[e].u);
        const NodeId b = find(edges[e].v);
        if (a != b) parent[a] = b;
      }
    }
    std::fill(root_reached.begin(), root_reached.end(), 0);
    for (const NodeId s : seeds) root_reached[find(s)] = 1;
    std::size_t count[2] = {0, 0};
    for (NodeId v = 0; v < n; ++v) {
      if (root_reached[find(v)]) ++count[group_index(g.group(v))];
    }
    mass[{count[0], count[1]}] += weight;
  }

  OutreachDistribution out;
  const double n1 = static_cast<double>(g.group_size(Group::first));
  const double n2 = static_cast<double>(g.group_size(Group::second));
  for (const auto& [counts, w] : mass) {
    out.samples.push_back({static_cast<double>(counts.first) / n1, static_cast<double>(counts.second) / n2});
    out.weights.push_back(w);
  }
  return out;
}

// CSV serialization --------------------------------------------------------

template <WeightedPointSet D>
void write_outreach_csv(std::ostream& out, const D& dist) {
  out << "x1,x2,weight\n";
  for (std::size_t i = 0; i < dist.size(); ++i) {
    const Point2 pt = dist.point(i);
    out << format_double(pt.x1) << ',' << format_double(pt.x2) << ',' << format_double(dist.weight(i)) << '\n';
  }
}

inline OutreachDistribution read_outreach_csv(std::istream& in) {
  OutreachDistribution out;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (detail::trim(line).empty()) continue;
    if (line_no == 1 && detail::trim(line) == "x1,x2,weight") continue;
    const auto fields = detail::split_fields(line);
    FinalConfiguration pt;
    double w = 0.0;
    if (fields.size() != 3 || !parse_double(fields[0], pt.x1) || !parse_double(fields[1], pt.x2) ||
        !parse_double(fields[2], w)) {
      throw DataError("outreach CSV line " + std::to_string(line_no) + ": expected x1,x2,weight");
    }
    out.samples.push_back(pt);
    out.weights.push_back(w);
  }
  out.realization_count = out.samples.size();
  return out;
}

/// Nonzero bins only, as "i,j,mass".
inline void write_histogram_csv(std::ostream& out, const Histogram& h) {
  out << "i,j,mass\n";
  for (std::size_t i = 0; i < h.bins; ++i) {
    for (std::size_t j = 0; j < h.bins; ++j) {
      const double m = h.at(i, j);
      if (m != 0.0) out << i << ',' << j << ',' << format_double(m) << '\n';
    }
  }
}

inline void write_reach_csv(std::ostream& out, const SocialGraph& g, const ReachFrequency& reach) {
  out << "node,count,R\n";
  for (NodeId v = 0; v < reach.counts.size(); ++v) {
    out << g.label(v) << ',' << reach.counts[v] << ',' << reach.realization_count << '\n';
  }
}

}  // namespace fairspread
