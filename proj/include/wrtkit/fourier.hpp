#pragma once

#include <span>
#include <vector>

#include "wrtkit/grid.hpp"

namespace wrtkit {

// Convention: f^(xi) = \int f(x) e^{-i xi.x} dx,  f(x) = (2pi)^{-n} \int f^(xi) e^{i xi.x} dxi.

// In-place unnormalised n-D DFT. sign = -1 forward, +1 backward.
void dft_inplace(std::span<cplx> data, std::span<const std::size_t> shape, int sign);
// Unnormalised 1-D DFT of each contiguous length-`len` row of `data`.
void dft_rows_inplace(std::span<cplx> data, std::size_t len, int sign);

// Centred frequency grid of a spatial grid zero-padded by `padding`:
// index m <-> k = m - N/2, xi = 2 pi k / (N h).
Grid frequency_grid(const Grid& spatial, std::size_t padding = 1);

// Phase-corrected, spacing-scaled DFT approximation of the continuous FT.
SpectralField continuous_ft(const ScalarField& field, std::size_t padding = 1);
SpectralField continuous_ft(const Grid& grid, std::span<const cplx> values, std::size_t padding = 1);

// Inverse transform onto `spectrum.spatial`, or onto `out` (same shape and spacing, any origin).
ScalarField continuous_ift(const SpectralField& spectrum);
ScalarField continuous_ift(const SpectralField& spectrum, const Grid& out);
std::vector<cplx> continuous_ift_complex(const SpectralField& spectrum, const Grid& out);

// Direct 1-D quadrature sum h * sum_j f_j e^{-i xi x_j} at arbitrary frequencies.
std::vector<cplx> ft_at(double origin, double spacing, std::span<const cplx> values,
                        std::span<const double> xi);

// Largest |f| on the outer layer of the grid relative to max |f|.
double boundary_fraction(const Grid& grid, std::span<const cplx> values);

}  // namespace wrtkit
