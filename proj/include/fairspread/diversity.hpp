#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "fairspread/diffusion.hpp"
#include "fairspread/graph.hpp"
#include "fairspread/metrics.hpp"
#include "fairspread/seeding.hpp"

namespace fairspread {

/// Groups up to this size get an exhaustive internal-spread baseline;
/// larger ones fall back to within-group greedy.
inline constexpr std::size_t kExhaustiveDiversityLimit = 12;

struct GroupDiversity {
  std::size_t budget = 0;      // k_i = ceil(k |C_i| / |V|)
  double achieved = 0.0;       // E[x_i] of the evaluated distribution
  double baseline = 0.0;       // best internal spread ratio with budget k_i
  bool satisfied = false;      // achieved >= baseline
  bool approximate = false;    // baseline from greedy, not exhaustive search
};

struct DiversityReport {
  std::array<GroupDiversity, 2> groups;
  bool satisfied() const { return groups[0].satisfied && groups[1].satisfied; }
};

namespace detail {

// Best mean outreach ratio over all size-k subsets of a subgraph, all
// subsets sharing the same R coin streams.
inline double exhaustive_internal_spread(const SocialGraph& sub, std::size_t k, double p, std::size_t realizations,
                                         std::uint64_t master_seed) {
  const std::size_t n = sub.node_count();
  std::vector<NodeId> pick(k);
  for (std::size_t i = 0; i < k; ++i) pick[i] = static_cast<NodeId>(i);
  double best = 0.0;
  while (true) {
    best = std::max(best, expected_outreach(sub, pick, p, realizations, master_seed));
    // next combination in lexicographic order
    std::size_t i = k;
    while (i > 0 && pick[i - 1] == n - k + i - 1) --i;
    if (i == 0) break;
    ++pick[i - 1];
    for (std::size_t j = i; j < k; ++j) pick[j] = pick[j - 1] + 1;
  }
  return best / static_cast<double>(n);
}

}  // namespace detail

/// Per group C_i: compares the distribution's E[x_i] against the spread a
/// budget of k_i = ceil(k |C_i| / |V|) seeds achieves inside the subgraph
/// induced on C_i.
template <WeightedPointSet D>
DiversityReport diversity_check(const SocialGraph& g, const D& dist, std::size_t k, double p,
                                std::size_t realizations, std::uint64_t master_seed) {
  g.require_both_groups("diversity_check");
  if (k == 0) throw std::invalid_argument("diversity_check: k must be at least 1");
  const Point2 means = marginal_means(dist);
  DiversityReport report;
  for (const Group grp : {Group::first, Group::second}) {
    const std::size_t size = g.group_size(grp);
    const std::size_t budget = (k * size + g.node_count() - 1) / g.node_count();
    if (budget > size) {
      throw std::invalid_argument("diversity_check: budget " + std::to_string(budget) + " exceeds size of group " +
                                  std::to_string(static_cast<int>(grp)));
    }
    const auto sub = induced_subgraph(g, grp);
    GroupDiversity& out = report.groups[group_index(grp)];
    out.budget = budget;
    out.achieved = grp == Group::first ? means.x1 : means.x2;
    if (size <= kExhaustiveDiversityLimit) {
      out.baseline = detail::exhaustive_internal_spread(sub.graph, budget, p, realizations, master_seed);
    } else {
      const Seedset seeds = select_greedy(sub.graph, budget, p, realizations, master_seed);
      out.baseline = expected_outreach(sub.graph, seeds.view(), p, realizations, master_seed) /
                     static_cast<double>(size);
      out.approximate = true;
    }
    out.satisfied = out.achieved >= out.baseline;
  }
  return report;
}

}  // namespace fairspread
