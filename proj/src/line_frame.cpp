#include "wrtkit/line_frame.hpp"

#include <cmath>

#include "wrtkit/error.hpp"

namespace wrtkit {

std::size_t LineFrame::line_count() const { return grid.size() / line_length(); }

void LineFrame::point(std::size_t flat, std::span<double> x) const {
  const std::size_t n = axis.size();
  auto idx = grid.unravel(flat);
  const double s = grid.coord(n - 1, idx[n - 1]);
  for (std::size_t i = 0; i < n; ++i) x[i] = s * axis[i];
  for (std::size_t a = 0; a + 1 < n; ++a) {
    const double p = grid.coord(a, idx[a]);
    for (std::size_t i = 0; i < n; ++i) x[i] += p * across[a][i];
  }
}

void LineFrame::local(std::span<const double> x, std::span<double> q) const {
  const std::size_t n = axis.size();
  for (std::size_t a = 0; a + 1 < n; ++a) {
    double p = 0.0;
    for (std::size_t i = 0; i < n; ++i) p += x[i] * across[a][i];
    q[a] = p;
  }
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) s += x[i] * axis[i];
  q[n - 1] = s;
}

std::vector<std::vector<double>> orthonormal_complement(std::span<const double> axis) {
  if (axis.size() == 2) return {{-axis[1], axis[0]}};
  if (axis.size() == 3) {
    // Start from the coordinate axis least aligned with `axis`.
    std::size_t k = 0;
    for (std::size_t i = 1; i < 3; ++i)
      if (std::abs(axis[i]) < std::abs(axis[k])) k = i;
    std::vector<double> e(3, 0.0);
    e[k] = 1.0;
    double d = e[0] * axis[0] + e[1] * axis[1] + e[2] * axis[2];
    for (std::size_t i = 0; i < 3; ++i) e[i] -= d * axis[i];
    const double nrm = std::sqrt(e[0] * e[0] + e[1] * e[1] + e[2] * e[2]);
    for (auto& c : e) c /= nrm;
    std::vector<double> f = {axis[1] * e[2] - axis[2] * e[1], axis[2] * e[0] - axis[0] * e[2],
                             axis[0] * e[1] - axis[1] * e[0]};
    return {e, f};
  }
  throw InvalidArgument("line frames support n = 2 and n = 3");
}

Interval projected_range(const Grid& grid, std::span<const double> dir) {
  Interval r{0.0, 0.0};
  for (std::size_t a = 0; a < grid.dim(); ++a) {
    const double lo = grid.origin[a] * dir[a], hi = grid.coord(a, grid.shape[a] - 1) * dir[a];
    r.lo += std::min(lo, hi);
    r.hi += std::max(lo, hi);
  }
  return r;
}

LineFrame make_line_frame(std::span<const double> axis, Interval s, double ds, std::span<const Interval> p,
                          double dp) {
  const std::size_t n = axis.size();
  LineFrame f;
  f.axis.assign(axis.begin(), axis.end());
  f.across = orthonormal_complement(axis);
  if (p.size() + 1 != n) throw InvalidArgument("line frame: one across range per complement axis");
  for (std::size_t a = 0; a + 1 < n; ++a) {
    f.grid.shape.push_back(std::max<std::size_t>(2, static_cast<std::size_t>(std::ceil((p[a].hi - p[a].lo) / dp)) + 1));
    f.grid.origin.push_back(p[a].lo);
    f.grid.spacing.push_back(dp);
  }
  f.grid.shape.push_back(std::max<std::size_t>(2, static_cast<std::size_t>(std::ceil((s.hi - s.lo) / ds)) + 1));
  f.grid.origin.push_back(s.lo);
  f.grid.spacing.push_back(ds);
  return f;
}

std::vector<cplx> sample_frame(const RaySource& source, const LineFrame& frame, std::span<const double> v) {
  const std::size_t n = frame.axis.size();
  const std::size_t len = frame.line_length(), lines = frame.line_count();
  const RaySupport sup = source.support();
  std::vector<double> cperp(n - 1);
  for (std::size_t a = 0; a + 1 < n; ++a) {
    double c = 0.0;
    for (std::size_t i = 0; i < n; ++i) c += sup.ball.center[i] * frame.across[a][i];
    cperp[a] = c;
  }
  std::vector<cplx> out(frame.grid.size(), 0.0);
  std::vector<double> pts(len * n);
  for (std::size_t line = 0; line < lines; ++line) {
    const std::size_t first = line * len;
    auto idx = frame.grid.unravel(first);
    double d2 = 0.0;
    for (std::size_t a = 0; a + 1 < n; ++a) {
      const double d = frame.grid.coord(a, idx[a]) - cperp[a];
      d2 += d * d;
    }
    if (d2 > sup.ball.radius * sup.ball.radius) continue;
    for (std::size_t j = 0; j < len; ++j) frame.point(first + j, std::span(pts).subspan(j * n, n));
    source.sample(v, pts, std::span(out).subspan(first, len));
  }
  return out;
}

}  // namespace wrtkit
