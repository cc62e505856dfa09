#include "wrtkit/interp.hpp"

#include <array>
#include <cmath>

#include "wrtkit/error.hpp"

namespace wrtkit {

double keys_kernel(double s) noexcept {
  s = std::abs(s);
  if (s < 1.0) return (1.5 * s - 2.5) * s * s + 1.0;
  if (s < 2.0) return ((-0.5 * s + 2.5) * s - 4.0) * s + 2.0;
  return 0.0;
}

namespace {

constexpr std::size_t max_dim = 4;

template <class T, std::size_t Taps, class Weights>
T separable(const Grid& grid, std::span<const T> values, std::span<const double> x, Weights&& weights) {
  const std::size_t n = grid.dim();
  if (n > max_dim) throw InvalidArgument("interpolate: dimension too large");
  std::array<std::array<long, Taps>, max_dim> idx{};
  std::array<std::array<double, Taps>, max_dim> w{};
  for (std::size_t a = 0; a < n; ++a) {
    const double pos = (x[a] - grid.origin[a]) / grid.spacing[a];
    if (!weights(pos, static_cast<long>(grid.shape[a]), idx[a], w[a])) return T{};
  }
  T acc{};
  std::array<std::size_t, max_dim> tap{};
  while (true) {
    double weight = 1.0;
    std::size_t flat = 0;
    bool inside = true;
    for (std::size_t a = 0; a < n; ++a) {
      const long i = idx[a][tap[a]];
      if (i < 0 || i >= static_cast<long>(grid.shape[a])) {
        inside = false;
        break;
      }
      weight *= w[a][tap[a]];
      flat = flat * grid.shape[a] + static_cast<std::size_t>(i);
    }
    if (inside && weight != 0.0) acc += weight * values[flat];
    std::size_t a = n;
    while (a-- > 0) {
      if (++tap[a] < Taps) break;
      tap[a] = 0;
    }
    if (a == static_cast<std::size_t>(-1)) break;
  }
  return acc;
}

bool cubic_weights(double pos, long n, std::array<long, 4>& idx, std::array<double, 4>& w) {
  if (pos <= -2.0 || pos >= static_cast<double>(n) + 1.0) return false;
  const double fl = std::floor(pos);
  const long base = static_cast<long>(fl) - 1;
  for (int k = 0; k < 4; ++k) {
    idx[k] = base + k;
    w[k] = keys_kernel(pos - static_cast<double>(base + k));
  }
  return true;
}

bool linear_weights(double pos, long n, std::array<long, 2>& idx, std::array<double, 2>& w) {
  if (pos <= -1.0 || pos >= static_cast<double>(n)) return false;
  const double fl = std::floor(pos);
  idx[0] = static_cast<long>(fl);
  idx[1] = idx[0] + 1;
  w[1] = pos - fl;
  w[0] = 1.0 - w[1];
  return true;
}

}  // namespace

template <class T>
T cubic_interpolate(const Grid& grid, std::span<const T> values, std::span<const double> x) {
  return separable<T, 4>(grid, values, x, cubic_weights);
}

template <class T>
T linear_interpolate(const Grid& grid, std::span<const T> values, std::span<const double> x) {
  return separable<T, 2>(grid, values, x, linear_weights);
}

template double cubic_interpolate<double>(const Grid&, std::span<const double>, std::span<const double>);
template cplx cubic_interpolate<cplx>(const Grid&, std::span<const cplx>, std::span<const double>);
template double linear_interpolate<double>(const Grid&, std::span<const double>, std::span<const double>);
template cplx linear_interpolate<cplx>(const Grid&, std::span<const cplx>, std::span<const double>);

}  // namespace wrtkit
