#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <vector>

#include "fairspread/graph.hpp"
#include "fairspread/point.hpp"

namespace fairspread {

namespace detail {

// sum(w f) / sum(w). Normalizing by the summed weights keeps the mean of
// values in [0, 1] inside [0, 1] despite rounding in the weights.
template <WeightedPointSet D, class F>
double expectation(const D& dist, F&& f) {
  double num = 0.0;
  double den = 0.0;
  for (std::size_t i = 0; i < dist.size(); ++i) {
    num += dist.weight(i) * f(dist.point(i));
    den += dist.weight(i);
  }
  return den > 0.0 ? num / den : 0.0;
}

}  // namespace detail

/// Mutual fairness: 1 - E|x1 - x2|, the closed form of one minus the
/// fairness-cost transport distance to the all-reached point (1, 1).
template <WeightedPointSet D>
double mutual_fairness(const D& dist) {
  return detail::expectation(dist, [](Point2 p) { return 1.0 - std::abs(p.x1 - p.x2); });
}

inline void check_beta(double beta) {
  if (!(beta >= 0.0 && beta <= 1.0)) throw std::invalid_argument("beta must lie in [0, 1]");
}

/// beta-fairness: E[1 - (beta |x1 - x2| + (1 - beta) |x1 + x2 - 2|) / (2 - beta)].
///
/// beta = 1 gives mutual fairness, beta = 0 gives efficiency.
template <WeightedPointSet D>
double beta_fairness(const D& dist, double beta) {
  check_beta(beta);
  const double norm = 2.0 - beta;
  return detail::expectation(dist, [&](Point2 p) {
    const double cost = beta * std::abs(p.x1 - p.x2) + (1.0 - beta) * std::abs(p.x1 + p.x2 - 2.0);
    return std::clamp(1.0 - cost / norm, 0.0, 1.0);
  });
}

/// E[(x1 + x2) / 2].
template <WeightedPointSet D>
double efficiency(const D& dist) {
  return detail::expectation(dist, [](Point2 p) { return 0.5 * (p.x1 + p.x2); });
}

/// Expected outreach ratio of each group, (E[x1], E[x2]).
template <WeightedPointSet D>
Point2 marginal_means(const D& dist) {
  return {detail::expectation(dist, [](Point2 p) { return p.x1; }),
          detail::expectation(dist, [](Point2 p) { return p.x2; })};
}

template <WeightedPointSet D>
double equity_gap(const D& dist) {
  const Point2 m = marginal_means(dist);
  return std::abs(m.x1 - m.x2);
}

template <WeightedPointSet D>
double equity_score(const D& dist) {
  return 1.0 - equity_gap(dist);
}

/// min(E[x1], E[x2]).
template <WeightedPointSet D>
double maxmin_value(const D& dist) {
  const Point2 m = marginal_means(dist);
  return std::min(m.x1, m.x2);
}

/// | |S n C1|/|C1| - |S n C2|/|C2| |.
inline double equality_gap(const SocialGraph& g, std::span<const NodeId> seeds) {
  g.require_both_groups("equality_gap");
  if (seeds.empty()) throw std::invalid_argument("equality_gap: seedset is empty");
  std::vector<char> seen(g.node_count(), 0);
  double count[2] = {0.0, 0.0};
  for (const NodeId s : seeds) {
    if (!g.contains(s)) throw std::invalid_argument("equality_gap: seed id out of range");
    if (seen[s]) continue;
    seen[s] = 1;
    count[group_index(g.group(s))] += 1.0;
  }
  return std::abs(count[0] / static_cast<double>(g.group_size(Group::first)) -
                  count[1] / static_cast<double>(g.group_size(Group::second)));
}

/// Weighted mean of f over the support together with twice its standard
/// error, sqrt(Var / N) with N = `realizations`. The error is 0 when N is 0
/// (exact distributions).
struct MeanWithError {
  double mean = 0.0;
  double two_sigma = 0.0;
};

template <WeightedPointSet D, class F>
MeanWithError mean_with_error(const D& dist, std::size_t realizations, F&& f) {
  MeanWithError out;
  out.mean = detail::expectation(dist, f);
  if (realizations == 0) return out;
  double var = 0.0;
  for (std::size_t i = 0; i < dist.size(); ++i) {
    const double d = f(dist.point(i)) - out.mean;
    var += dist.weight(i) * d * d;
  }
  // unbiased sample variance for equally weighted Monte-Carlo samples
  if (realizations > 1) var *= static_cast<double>(realizations) / static_cast<double>(realizations - 1);
  out.two_sigma = 2.0 * std::sqrt(var / static_cast<double>(realizations));
  return out;
}

/// Mutual fairness with its 2-sigma error, from per-realization 1 - |x1 - x2|.
template <WeightedPointSet D>
MeanWithError mutual_fairness_with_error(const D& dist, std::size_t realizations) {
  return mean_with_error(dist, realizations, [](Point2 p) { return 1.0 - std::abs(p.x1 - p.x2); });
}

/// Efficiency with its 2-sigma error, from per-realization (x1 + x2) / 2.
template <WeightedPointSet D>
MeanWithError efficiency_with_error(const D& dist, std::size_t realizations) {
  return mean_with_error(dist, realizations, [](Point2 p) { return 0.5 * (p.x1 + p.x2); });
}

}  // namespace fairspread
