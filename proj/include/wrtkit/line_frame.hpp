#pragma once

#include <span>
#include <vector>

#include "wrtkit/forward.hpp"
#include "wrtkit/grid.hpp"

namespace wrtkit {

// Rotated sampling frame: x = sum_i p_i across_i + s axis. Frame grid axes are (p_1..p_{n-1}, s),
// so each contiguous run of grid.shape.back() samples is one line parallel to `axis`.
struct LineFrame {
  std::vector<double> axis;
  std::vector<std::vector<double>> across;
  Grid grid;

  std::size_t line_count() const;
  std::size_t line_length() const { return grid.shape.back(); }
  void point(std::size_t flat, std::span<double> x) const;
  // Frame coordinates (p..., s) of a physical point.
  void local(std::span<const double> x, std::span<double> q) const;
};

// Orthonormal basis of the complement of a unit vector (n = 2 or 3).
std::vector<std::vector<double>> orthonormal_complement(std::span<const double> axis);

struct Interval {
  double lo = 0.0;
  double hi = 0.0;
};

// Range of x.dir over the corners of a grid.
Interval projected_range(const Grid& grid, std::span<const double> dir);

// Frame around `axis`: s over [s.lo, s.hi] with step ds, p over the given ranges with step dp.
LineFrame make_line_frame(std::span<const double> axis, Interval s, double ds, std::span<const Interval> p,
                          double dp);

// Samples P(., v) on every frame point; lines entirely outside the source support are left zero.
std::vector<cplx> sample_frame(const RaySource& source, const LineFrame& frame, std::span<const double> v);

}  // namespace wrtkit
