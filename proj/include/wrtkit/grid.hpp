#pragma once

#include <complex>
#include <cstddef>
#include <optional>
#include <span>
#include <vector>

namespace wrtkit {

using cplx = std::complex<double>;

// Uniform n-dimensional sampling. Samples are stored row-major (last axis fastest).
struct Grid {
  std::vector<std::size_t> shape;
  std::vector<double> origin;
  std::vector<double> spacing;

  std::size_t dim() const noexcept { return shape.size(); }
  std::size_t size() const noexcept;
  double coord(std::size_t axis, std::size_t i) const noexcept {
    return origin[axis] + spacing[axis] * static_cast<double>(i);
  }
  double extent(std::size_t axis) const noexcept {
    return spacing[axis] * static_cast<double>(shape[axis]);
  }
  double cell_volume() const noexcept;

  std::vector<std::size_t> unravel(std::size_t flat) const;
  std::size_t ravel(std::span<const std::size_t> index) const;
  // Physical coordinates of the sample with the given flat index.
  void point(std::size_t flat, std::span<double> x) const;
  std::vector<double> point(std::size_t flat) const;
  // Index of the sample at coordinate x on an axis, if x lies on a sample to within tol cells.
  std::optional<std::size_t> index_of(std::size_t axis, double x, double tol = 1e-9) const;

  // Throws InvalidArgument unless the invariants hold.
  void validate() const;
  bool same_as(const Grid& other, double rel_tol = 1e-12) const;
};

// Grid of the given shape and physical extent per axis, centred at `center`
// (empty center means the origin). spacing = extent / shape.
Grid make_grid(std::span<const std::size_t> shape, std::span<const double> extent,
               std::span<const double> center = {});
Grid make_grid(std::size_t n, std::size_t shape, double extent, double center = 0.0);

struct ScalarField {
  Grid grid;
  std::vector<double> values;

  ScalarField() = default;
  explicit ScalarField(Grid g) : grid(std::move(g)), values(grid.size(), 0.0) {}
  ScalarField(Grid g, std::vector<double> v);
  void validate() const;
};

// Samples of a continuous Fourier transform on a centred frequency grid. `spatial`
// remembers the grid the transform came from so the inverse lands back on it.
struct SpectralField {
  static constexpr const char* convention = "e-minus";
  Grid grid;
  Grid spatial;
  std::vector<cplx> values;
};

// ||a - b|| / ||b||. Throws DegenerateReference when b is identically zero.
double rel_l2_error(const ScalarField& a, const ScalarField& b);
double rel_l2_error(std::span<const double> a, std::span<const double> b);
double rel_l2_error(std::span<const cplx> a, std::span<const cplx> b);
double max_abs_difference(const ScalarField& a, const ScalarField& b);

}  // namespace wrtkit
