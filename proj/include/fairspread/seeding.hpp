#pragma once

#include <algorithm>
#include <array>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "fairspread/diffusion.hpp"
#include "fairspread/graph.hpp"
#include "fairspread/parallel.hpp"

namespace fairspread {

/// Ordered list of distinct seed nodes.
struct Seedset {
  std::vector<NodeId> nodes;

  std::size_t size() const noexcept { return nodes.size(); }
  std::span<const NodeId> view() const noexcept { return nodes; }

  /// Same nodes in ascending order; the identity of the set.
  std::vector<NodeId> sorted() const {
    auto out = nodes;
    std::sort(out.begin(), out.end());
    return out;
  }

  friend bool operator==(const Seedset&, const Seedset&) = default;
};

/// Throws unless every id is valid and distinct.
inline void validate_seedset(const SocialGraph& g, const Seedset& s) {
  std::vector<char> seen(g.node_count(), 0);
  for (const NodeId v : s.nodes) {
    if (!g.contains(v)) throw std::invalid_argument("seedset: node id " + std::to_string(v) + " out of range");
    if (seen[v]) throw std::invalid_argument("seedset: duplicate node id " + std::to_string(v));
    seen[v] = 1;
  }
}

namespace detail {

inline void check_seed_budget(const SocialGraph& g, std::size_t k, const char* who) {
  if (k == 0) throw std::invalid_argument(std::string(who) + ": k must be at least 1");
  if (k > g.node_count()) {
    throw std::invalid_argument(std::string(who) + ": k = " + std::to_string(k) + " exceeds node count " +
                                std::to_string(g.node_count()));
  }
}

/// Node ids sorted by descending degree, ties by ascending id.
inline std::vector<NodeId> degree_order(const SocialGraph& g) {
  std::vector<NodeId> order(g.node_count());
  std::iota(order.begin(), order.end(), NodeId{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](NodeId a, NodeId b) { return g.degree(a) > g.degree(b); });
  return order;
}

}  // namespace detail

inline Seedset select_degree(const SocialGraph& g, std::size_t k) {
  detail::check_seed_budget(g, k, "select_degree");
  auto order = detail::degree_order(g);
  order.resize(k);
  return Seedset{std::move(order)};
}

using GroupBudgets = std::array<std::size_t, 2>;

/// Group-proportional budgets k * |C_i| / |V|, rounded by largest remainder
/// so they sum to k. A tied remainder goes to the larger group, then to
/// group 1.
inline GroupBudgets group_budgets(const SocialGraph& g, std::size_t k) {
  detail::check_seed_budget(g, k, "group_budgets");
  const std::size_t n = g.node_count();
  const std::size_t sizes[2] = {g.group_size(Group::first), g.group_size(Group::second)};
  GroupBudgets budget{k * sizes[0] / n, k * sizes[1] / n};
  const std::size_t rem[2] = {k * sizes[0] % n, k * sizes[1] % n};
  std::size_t leftover = k - budget[0] - budget[1];
  while (leftover > 0) {
    std::size_t pick = 0;
    if (rem[1] > rem[0] || (rem[1] == rem[0] && sizes[1] > sizes[0])) pick = 1;
    if (budget[pick] == sizes[pick]) pick = 1 - pick;
    ++budget[pick];
    --leftover;
  }
  for (std::size_t i = 0; i < 2; ++i) {
    if (budget[i] > sizes[i]) {
      throw std::invalid_argument("group_budgets: budget of group " + std::to_string(i + 1) + " exceeds its size");
    }
  }
  return budget;
}

/// hrt_d: top-k_i nodes by degree within each group, merged in degree order.
inline Seedset select_fair_degree(const SocialGraph& g, std::size_t k) {
  const GroupBudgets budget = group_budgets(g, k);
  GroupBudgets taken{0, 0};
  Seedset out;
  for (const NodeId v : detail::degree_order(g)) {
    const std::size_t gi = group_index(g.group(v));
    if (taken[gi] < budget[gi]) {
      ++taken[gi];
      out.nodes.push_back(v);
    }
  }
  return out;
}

/// Restrictions on which node greedy may add next.
struct GreedyConstraint {
  /// Per-group caps on the number of selected seeds; none when empty.
  std::optional<GroupBudgets> budgets;
  /// allowed[v] == 0 excludes v; all nodes allowed when empty.
  std::vector<char> allowed;
};

/// Greedy marginal-gain seed selection. The expected outreach of S u {v}
/// is estimated over R live-edge worlds, realization r using
/// realization_coins(master_seed, r) for every candidate and every round
/// (common random numbers). In world r the outreach of a seedset is the
/// union of the seeds' live-edge components, identical to the unbounded
/// independent cascade under the same coins. Ties go to the smallest id.
inline Seedset greedy_select(const SocialGraph& g, std::size_t k, double p, std::size_t realizations,
                             std::uint64_t master_seed, const GreedyConstraint& constraint = {},
                             std::size_t workers = 1) {
  detail::check_seed_budget(g, k, "greedy_select");
  detail::check_probability(p, "greedy_select");
  if (realizations == 0) throw std::invalid_argument("greedy_select: R must be at least 1");
  const std::size_t n = g.node_count();
  workers = std::max<std::size_t>(1, std::min(workers, realizations));

  Seedset out;
  std::vector<char> selected(n, 0);
  GroupBudgets taken{0, 0};
  auto eligible = [&](NodeId v) {
    if (selected[v]) return false;
    if (!constraint.allowed.empty() && !constraint.allowed[v]) return false;
    if (constraint.budgets) {
      const std::size_t gi = group_index(g.group(v));
      if (taken[gi] >= (*constraint.budgets)[gi]) return false;
    }
    return true;
  };

  std::vector<std::vector<std::uint64_t>> partial(workers);
  for (std::size_t round = 0; round < k; ++round) {
    detail::parallel_chunks(realizations, workers, [&](std::size_t w, std::size_t begin, std::size_t end) {
      auto& gain = partial[w];
      gain.assign(n, 0);
      std::vector<NodeId> parent(n);
      std::vector<std::uint32_t> comp_size(n);
      std::vector<char> covered(n);
      auto find = [&](NodeId x) {
        while (parent[x] != x) {
          parent[x] = parent[parent[x]];
          x = parent[x];
        }
        return x;
      };
      const auto edges = g.edges();
      for (std::size_t r = begin; r < end; ++r) {
        const EdgeCoins coins = realization_coins(master_seed, r);
        std::iota(parent.begin(), parent.end(), NodeId{0});
        std::fill(comp_size.begin(), comp_size.end(), 1);
        for (EdgeId e = 0; e < edges.size(); ++e) {
          if (!(coins.uniform(e) < p)) continue;
          NodeId a = find(edges[e].u);
          NodeId b = find(edges[e].v);
          if (a == b) continue;
          if (comp_size[a] < comp_size[b]) std::swap(a, b);
          parent[b] = a;
          comp_size[a] += comp_size[b];
        }
        std::fill(covered.begin(), covered.end(), 0);
        for (const NodeId s : out.nodes) covered[find(s)] = 1;
        for (NodeId v = 0; v < n; ++v) {
          if (selected[v]) continue;
          const NodeId root = find(v);
          if (!covered[root]) gain[v] += comp_size[root];
        }
      }
    });
    NodeId best = 0;
    std::uint64_t best_gain = 0;
    bool found = false;
    for (NodeId v = 0; v < n; ++v) {
      if (!eligible(v)) continue;
      std::uint64_t total = 0;
      for (const auto& gain : partial) {
        if (!gain.empty()) total += gain[v];
      }
      if (!found || total > best_gain) {
        best = v;
        best_gain = total;
        found = true;
      }
    }
    if (!found) throw std::invalid_argument("greedy_select: constraints leave no eligible candidate");
    selected[best] = 1;
    ++taken[group_index(g.group(best))];
    out.nodes.push_back(best);
  }
  return out;
}

/// bas_g.
inline Seedset select_greedy(const SocialGraph& g, std::size_t k, double p, std::size_t realizations,
                             std::uint64_t master_seed, std::size_t workers = 1) {
  return greedy_select(g, k, p, realizations, master_seed, {}, workers);
}

/// hrt_g: greedy that stops considering a group once its proportional
/// budget is filled.
inline Seedset select_fair_greedy(const SocialGraph& g, std::size_t k, double p, std::size_t realizations,
                                  std::uint64_t master_seed, std::size_t workers = 1) {
  GreedyConstraint constraint;
  constraint.budgets = group_budgets(g, k);
  return greedy_select(g, k, p, realizations, master_seed, constraint, workers);
}

}  // namespace fairspread
