#pragma once

#include <span>

#include "wrtkit/grid.hpp"

namespace wrtkit {

// Keys cubic convolution kernel (a = -1/2).
double keys_kernel(double s) noexcept;

// Cubic interpolation of grid samples at physical point x; samples outside the grid are zero.
template <class T>
T cubic_interpolate(const Grid& grid, std::span<const T> values, std::span<const double> x);

// Multilinear interpolation; zero outside the grid.
template <class T>
T linear_interpolate(const Grid& grid, std::span<const T> values, std::span<const double> x);

extern template double cubic_interpolate<double>(const Grid&, std::span<const double>, std::span<const double>);
extern template cplx cubic_interpolate<cplx>(const Grid&, std::span<const cplx>, std::span<const double>);
extern template double linear_interpolate<double>(const Grid&, std::span<const double>, std::span<const double>);
extern template cplx linear_interpolate<cplx>(const Grid&, std::span<const cplx>, std::span<const double>);

}  // namespace wrtkit
