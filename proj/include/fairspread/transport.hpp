#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "fairspread/point.hpp"

namespace fairspread {

inline constexpr double kWeightTolerance = 1e-12;
inline constexpr double kUnitSquareTolerance = 1e-12;
inline constexpr std::size_t kMaxTransportSupport = 10000;

/// Weighted point set on [0,1]^2 whose weights form a probability vector.
class DiscreteDistribution2D {
 public:
  DiscreteDistribution2D(std::vector<Point2> points, std::vector<double> weights)
      : points_(std::move(points)), weights_(std::move(weights)) {
    if (points_.empty()) throw std::invalid_argument("DiscreteDistribution2D: empty support");
    if (points_.size() != weights_.size()) {
      throw std::invalid_argument("DiscreteDistribution2D: points and weights differ in length");
    }
    long double total = 0.0L;
    for (std::size_t i = 0; i < weights_.size(); ++i) {
      const double w = weights_[i];
      if (!std::isfinite(w) || w < 0.0) throw std::invalid_argument("DiscreteDistribution2D: negative weight");
      total += w;
      const Point2 p = points_[i];
      if (!(p.x1 >= -kUnitSquareTolerance && p.x1 <= 1.0 + kUnitSquareTolerance &&
            p.x2 >= -kUnitSquareTolerance && p.x2 <= 1.0 + kUnitSquareTolerance)) {
        throw std::invalid_argument("DiscreteDistribution2D: point outside the unit square");
      }
    }
    if (std::abs(static_cast<double>(total - 1.0L)) > kWeightTolerance) {
      throw std::invalid_argument("DiscreteDistribution2D: weights sum to " +
                                  std::to_string(static_cast<double>(total)) + ", not 1");
    }
  }

  static DiscreteDistribution2D dirac(Point2 at) { return DiscreteDistribution2D({at}, {1.0}); }

  template <WeightedPointSet D>
  static DiscreteDistribution2D from(const D& dist) {
    std::vector<Point2> pts;
    std::vector<double> ws;
    pts.reserve(dist.size());
    ws.reserve(dist.size());
    for (std::size_t i = 0; i < dist.size(); ++i) {
      pts.push_back(dist.point(i));
      ws.push_back(dist.weight(i));
    }
    return DiscreteDistribution2D(std::move(pts), std::move(ws));
  }

  std::size_t size() const noexcept { return points_.size(); }
  Point2 point(std::size_t i) const { return points_[i]; }
  double weight(std::size_t i) const { return weights_[i]; }
  const std::vector<Point2>& points() const noexcept { return points_; }
  const std::vector<double>& weights() const noexcept { return weights_; }

 private:
  std::vector<Point2> points_;
  std::vector<double> weights_;
};

// Transportation costs ------------------------------------------------------
//
// A displacement a -> b splits into a part along the diagonal (efficiency)
// and a part orthogonal to it (fairness). With d = x2 - x1 and s = x1 + x2,
// the orthogonal part has Euclidean length |d_a - d_b| / sqrt(2) and the
// diagonal part |s_a - s_b| / sqrt(2).

/// |(x2 - x1) - (y2 - y1)|: zero between any two points of the diagonal.
struct FairnessCost {
  double operator()(Point2 a, Point2 b) const noexcept { return std::abs((a.x2 - a.x1) - (b.x2 - b.x1)); }
};

/// beta * fairness cost + (1 - beta) * |(x1 + x2) - (y1 + y2)|.
struct BetaCost {
  double beta = 1.0;
  double operator()(Point2 a, Point2 b) const noexcept {
    return beta * std::abs((a.x2 - a.x1) - (b.x2 - b.x1)) + (1.0 - beta) * std::abs((a.x1 + a.x2) - (b.x1 + b.x2));
  }
};

/// Euclidean length of the displacement orthogonal to the diagonal, i.e.
/// FairnessCost / sqrt(2). Moving (0,1) onto the diagonal costs sqrt(2)/2.
struct ProjectionCost {
  double operator()(Point2 a, Point2 b) const noexcept {
    return std::abs((a.x2 - a.x1) - (b.x2 - b.x1)) * (std::numbers::sqrt2 / 2.0);
  }
};

struct EuclideanCost {
  double operator()(Point2 a, Point2 b) const noexcept { return std::hypot(a.x1 - b.x1, a.x2 - b.x2); }
};

/// A coupling of two distributions; mass is row-major, source x target.
struct TransportPlan {
  DiscreteDistribution2D source;
  DiscreteDistribution2D target;
  std::vector<double> mass;

  std::size_t rows() const noexcept { return source.size(); }
  std::size_t cols() const noexcept { return target.size(); }
  double at(std::size_t i, std::size_t j) const { return mass[i * cols() + j]; }
};

struct OtResult {
  double value = 0.0;
  TransportPlan plan;
  std::size_t pivots = 0;
};

namespace detail {

/// Transportation simplex. The basis is a spanning tree of the bipartite
/// graph rows x cols (m + n - 1 cells, degenerate cells carry zero flow).
/// Entering cells follow Dantzig's rule; after a run of degenerate pivots
/// the solver switches to Bland's rule, which cannot cycle.
class TransportSimplex {
 public:
  TransportSimplex(const std::vector<double>& supply, const std::vector<double>& demand, std::vector<double> cost)
      : m_(supply.size()), n_(demand.size()), cost_(std::move(cost)), node_cells_(m_ + n_) {
    northwest_corner(supply, demand);
  }

  std::size_t solve() {
    double max_cost = 0.0;
    for (const double c : cost_) max_cost = std::max(max_cost, std::abs(c));
    const double eps = 1e-13 * (1.0 + max_cost);
    const std::size_t cap = 50 * (m_ * n_ + m_ + n_) + 1000;
    std::vector<double> u(m_), v(n_);
    std::size_t pivots = 0;
    std::size_t degenerate_run = 0;
    bool bland = false;
    while (true) {
      potentials(u, v);
      std::size_t enter = npos;
      double best = -eps;
      for (std::size_t i = 0; i < m_ && !(bland && enter != npos); ++i) {
        for (std::size_t j = 0; j < n_; ++j) {
          const double reduced = cost_[i * n_ + j] - u[i] - v[j];
          if (reduced < best) {
            enter = i * n_ + j;
            if (bland) break;
            best = reduced;
          }
        }
      }
      if (enter == npos) break;
      if (++pivots > cap) throw std::runtime_error("ot_exact: pivot limit exceeded");
      const bool degenerate = pivot(enter / n_, enter % n_, bland);
      degenerate_run = degenerate ? degenerate_run + 1 : 0;
      if (degenerate_run > m_ + n_) bland = true;
    }
    return pivots;
  }

  std::vector<double> plan() const {
    std::vector<double> mass(m_ * n_, 0.0);
    for (const Cell& c : cells_) mass[c.i * n_ + c.j] += c.flow;
    return mass;
  }

  double value() const {
    double total = 0.0;
    for (const Cell& c : cells_) total += c.flow * cost_[c.i * n_ + c.j];
    return total;
  }

 private:
  static constexpr std::size_t npos = std::numeric_limits<std::size_t>::max();

  struct Cell {
    std::size_t i;
    std::size_t j;
    double flow;
  };

  std::size_t col_node(std::size_t j) const { return m_ + j; }

  void add_cell(Cell c) {
    const std::size_t id = cells_.size();
    cells_.push_back(c);
    node_cells_[c.i].push_back(id);
    node_cells_[col_node(c.j)].push_back(id);
  }

  void northwest_corner(std::vector<double> supply, std::vector<double> demand) {
    std::size_t i = 0;
    std::size_t j = 0;
    while (true) {
      const double q = std::min(supply[i], demand[j]);
      supply[i] -= q;
      demand[j] -= q;
      add_cell({i, j, q});
      if (i == m_ - 1 && j == n_ - 1) break;
      if (j == n_ - 1 || (i < m_ - 1 && supply[i] <= demand[j])) {
        ++i;
      } else {
        ++j;
      }
    }
  }

  // u_i + v_j = c_ij on every basic cell, u_0 = 0.
  void potentials(std::vector<double>& u, std::vector<double>& v) const {
    std::vector<char> seen(m_ + n_, 0);
    std::vector<std::size_t> queue{0};
    seen[0] = 1;
    u[0] = 0.0;
    for (std::size_t head = 0; head < queue.size(); ++head) {
      const std::size_t node = queue[head];
      for (const std::size_t id : node_cells_[node]) {
        const Cell& c = cells_[id];
        const double cij = cost_[c.i * n_ + c.j];
        if (node < m_) {
          if (!seen[col_node(c.j)]) {
            v[c.j] = cij - u[c.i];
            seen[col_node(c.j)] = 1;
            queue.push_back(col_node(c.j));
          }
        } else if (!seen[c.i]) {
          u[c.i] = cij - v[c.j];
          seen[c.i] = 1;
          queue.push_back(c.i);
        }
      }
    }
  }

  // Returns true when the pivot moved no mass.
  bool pivot(std::size_t ei, std::size_t ej, bool bland) {
    // Tree path from column node ej to row node ei. Appending the entering
    // cell closes the cycle; path cells alternate -, +, -, ... from ej.
    std::vector<std::size_t> parent_cell(m_ + n_, npos);
    std::vector<char> seen(m_ + n_, 0);
    std::vector<std::size_t> queue{col_node(ej)};
    seen[col_node(ej)] = 1;
    for (std::size_t head = 0; head < queue.size() && !seen[ei]; ++head) {
      const std::size_t node = queue[head];
      for (const std::size_t id : node_cells_[node]) {
        const Cell& c = cells_[id];
        const std::size_t next = node < m_ ? col_node(c.j) : c.i;
        if (!seen[next]) {
          seen[next] = 1;
          parent_cell[next] = id;
          queue.push_back(next);
        }
      }
    }
    std::vector<std::size_t> path;  // from ei back to ej
    for (std::size_t node = ei; node != col_node(ej);) {
      const std::size_t id = parent_cell[node];
      path.push_back(id);
      const Cell& c = cells_[id];
      node = node < m_ ? col_node(c.j) : c.i;
    }
    std::reverse(path.begin(), path.end());

    double theta = std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < path.size(); k += 2) theta = std::min(theta, cells_[path[k]].flow);
    std::size_t leave = npos;
    for (std::size_t k = 0; k < path.size(); k += 2) {
      const Cell& c = cells_[path[k]];
      if (c.flow != theta) continue;
      if (leave == npos) {
        leave = path[k];
        if (!bland) break;
      } else if (c.i * n_ + c.j < cells_[leave].i * n_ + cells_[leave].j) {
        leave = path[k];
      }
    }

    for (std::size_t k = 0; k < path.size(); ++k) {
      Cell& c = cells_[path[k]];
      c.flow = (k % 2 == 0) ? std::max(0.0, c.flow - theta) : c.flow + theta;
    }

    // the entering cell takes over the leaving cell's slot
    Cell& old = cells_[leave];
    auto drop = [&](std::size_t node) {
      auto& list = node_cells_[node];
      list.erase(std::find(list.begin(), list.end(), leave));
    };
    drop(old.i);
    drop(col_node(old.j));
    old = Cell{ei, ej, theta};
    node_cells_[ei].push_back(leave);
    node_cells_[col_node(ej)].push_back(leave);
    return theta == 0.0;
  }

  std::size_t m_;
  std::size_t n_;
  std::vector<double> cost_;
  std::vector<Cell> cells_;
  std::vector<std::vector<std::size_t>> node_cells_;
};

}  // namespace detail

/// Exact discrete optimal transport: min over couplings pi of E_pi[cost].
template <class Cost>
OtResult ot_exact(const DiscreteDistribution2D& src, const DiscreteDistribution2D& dst, Cost&& cost) {
  if (src.size() + dst.size() > kMaxTransportSupport) {
    throw std::invalid_argument("ot_exact: combined support exceeds " + std::to_string(kMaxTransportSupport));
  }
  const std::size_t m = src.size();
  const std::size_t n = dst.size();
  std::vector<double> c(m * n);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < n; ++j) c[i * n + j] = cost(src.point(i), dst.point(j));
  }
  detail::TransportSimplex simplex(src.weights(), dst.weights(), std::move(c));
  const std::size_t pivots = simplex.solve();
  return OtResult{simplex.value(), TransportPlan{src, dst, simplex.plan()}, pivots};
}

}  // namespace fairspread
