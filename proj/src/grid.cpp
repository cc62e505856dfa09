#include "wrtkit/grid.hpp"

#include <cmath>
#include <string>

#include "wrtkit/error.hpp"

namespace wrtkit {

std::size_t Grid::size() const noexcept {
  std::size_t n = shape.empty() ? 0 : 1;
  for (auto s : shape) n *= s;
  return n;
}

double Grid::cell_volume() const noexcept {
  double v = 1.0;
  for (double h : spacing) v *= h;
  return v;
}

std::vector<std::size_t> Grid::unravel(std::size_t flat) const {
  std::vector<std::size_t> idx(dim());
  for (std::size_t a = dim(); a-- > 0;) {
    idx[a] = flat % shape[a];
    flat /= shape[a];
  }
  return idx;
}

std::size_t Grid::ravel(std::span<const std::size_t> index) const {
  std::size_t flat = 0;
  for (std::size_t a = 0; a < dim(); ++a) flat = flat * shape[a] + index[a];
  return flat;
}

void Grid::point(std::size_t flat, std::span<double> x) const {
  for (std::size_t a = dim(); a-- > 0;) {
    x[a] = coord(a, flat % shape[a]);
    flat /= shape[a];
  }
}

std::vector<double> Grid::point(std::size_t flat) const {
  std::vector<double> x(dim());
  point(flat, x);
  return x;
}

std::optional<std::size_t> Grid::index_of(std::size_t axis, double x, double tol) const {
  const double pos = (x - origin[axis]) / spacing[axis];
  const double k = std::round(pos);
  if (std::abs(pos - k) > tol || k < 0 || k >= static_cast<double>(shape[axis])) return std::nullopt;
  return static_cast<std::size_t>(k);
}

void Grid::validate() const {
  if (shape.empty()) throw InvalidArgument("grid: dimension must be positive");
  if (origin.size() != dim() || spacing.size() != dim())
    throw InvalidArgument("grid: shape, origin and spacing must have the same length");
  for (std::size_t a = 0; a < dim(); ++a) {
    if (shape[a] < 2) throw InvalidArgument("grid: shape[" + std::to_string(a) + "] must be >= 2");
    if (!(spacing[a] > 0.0) || !std::isfinite(spacing[a]))
      throw InvalidArgument("grid: spacing[" + std::to_string(a) + "] must be positive");
    if (!std::isfinite(origin[a])) throw InvalidArgument("grid: origin must be finite");
  }
}

bool Grid::same_as(const Grid& other, double rel_tol) const {
  if (shape != other.shape) return false;
  for (std::size_t a = 0; a < dim(); ++a) {
    const double scale = spacing[a] * static_cast<double>(shape[a]);
    if (std::abs(spacing[a] - other.spacing[a]) > rel_tol * spacing[a]) return false;
    if (std::abs(origin[a] - other.origin[a]) > rel_tol * scale) return false;
  }
  return true;
}

Grid make_grid(std::span<const std::size_t> shape, std::span<const double> extent,
               std::span<const double> center) {
  const std::size_t n = shape.size();
  if (n == 0) throw InvalidArgument("make_grid: dimension must be positive");
  if (extent.size() != n) throw InvalidArgument("make_grid: extent must have one entry per axis");
  if (!center.empty() && center.size() != n)
    throw InvalidArgument("make_grid: center must have one entry per axis");
  Grid g;
  g.shape.assign(shape.begin(), shape.end());
  for (std::size_t a = 0; a < n; ++a) {
    if (!(extent[a] > 0.0)) throw InvalidArgument("make_grid: extent must be positive");
    if (shape[a] < 2) throw InvalidArgument("make_grid: shape must be >= 2 on every axis");
    const double h = extent[a] / static_cast<double>(shape[a]);
    const double c = center.empty() ? 0.0 : center[a];
    g.spacing.push_back(h);
    // The centre sits at index shape/2 (the DFT zero for even shapes).
    g.origin.push_back(c - h * static_cast<double>(shape[a] / 2));
  }
  return g;
}

Grid make_grid(std::size_t n, std::size_t shape, double extent, double center) {
  std::vector<std::size_t> s(n, shape);
  std::vector<double> e(n, extent), c(n, center);
  return make_grid(s, e, c);
}

ScalarField::ScalarField(Grid g, std::vector<double> v) : grid(std::move(g)), values(std::move(v)) {
  validate();
}

void ScalarField::validate() const {
  grid.validate();
  if (values.size() != grid.size()) throw InvalidArgument("field: values length does not match grid");
  for (double v : values)
    if (!std::isfinite(v)) throw NumericalError("field: non-finite value");
}

namespace {

template <class T>
double rel_l2(std::span<const T> a, std::span<const T> b) {
  if (a.size() != b.size()) throw InvalidArgument("rel_l2_error: size mismatch");
  double num = 0.0, den = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    num += std::norm(a[i] - b[i]);
    den += std::norm(b[i]);
  }
  if (den == 0.0) throw DegenerateReference("rel_l2_error: reference field is identically zero");
  return std::sqrt(num / den);
}

}  // namespace

double rel_l2_error(std::span<const double> a, std::span<const double> b) { return rel_l2<double>(a, b); }
double rel_l2_error(std::span<const cplx> a, std::span<const cplx> b) { return rel_l2<cplx>(a, b); }

double rel_l2_error(const ScalarField& a, const ScalarField& b) {
  if (!a.grid.same_as(b.grid)) throw InvalidArgument("rel_l2_error: fields live on different grids");
  return rel_l2_error(std::span<const double>(a.values), std::span<const double>(b.values));
}

double max_abs_difference(const ScalarField& a, const ScalarField& b) {
  if (!a.grid.same_as(b.grid)) throw InvalidArgument("max_abs_difference: fields live on different grids");
  double m = 0.0;
  for (std::size_t i = 0; i < a.values.size(); ++i) m = std::max(m, std::abs(a.values[i] - b.values[i]));
  return m;
}

}  // namespace wrtkit
