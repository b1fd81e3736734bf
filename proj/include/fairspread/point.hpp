#pragma once

#include <concepts>
#include <cstddef>

namespace fairspread {

/// A point of the unit square: per-group outreach fractions (x1, x2).
struct Point2 {
  double x1 = 0.0;
  double x2 = 0.0;

  friend constexpr bool operator==(const Point2&, const Point2&) = default;
};

/// A finite weighted point set on the unit square, the common shape of
/// Monte-Carlo outreach samples, exact outreach distributions and OT inputs.
template <class D>
concept WeightedPointSet = requires(const D& d, std::size_t i) {
  { d.size() } -> std::convertible_to<std::size_t>;
  { d.point(i) } -> std::convertible_to<Point2>;
  { d.weight(i) } -> std::convertible_to<double>;
};

}  // namespace fairspread
