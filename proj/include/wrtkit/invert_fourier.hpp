#pragma once

#include <span>
#include <vector>

#include "wrtkit/constants.hpp"
#include "wrtkit/forward.hpp"
#include "wrtkit/grid.hpp"
#include "wrtkit/window.hpp"

namespace wrtkit {

// P^_h f(sigma theta, r theta) for every direction, radial frequency and window radius.
struct PolarSpectralSamples {
  std::vector<std::vector<double>> directions;
  std::vector<double> direction_weights;
  std::vector<double> sigma;  // uniform, >= 0
  std::vector<double> radii;  // log-uniform
  std::vector<cplx> values;   // [direction][sigma][radius]

  std::size_t index(std::size_t d, std::size_t k, std::size_t m) const {
    return (d * sigma.size() + k) * radii.size() + m;
  }
  std::size_t dim() const { return directions.empty() ? 0 : directions.front().size(); }
  void validate() const;
};

std::vector<double> uniform_sigma(double sigma_max, std::size_t count);  // 0, d, ..., sigma_max

// Stored polar data: n-D continuous_ft over u of P(., r theta) (zero-padded by `padding`) and
// multilinear interpolation at xi = sigma theta.
PolarSpectralSamples extract_polar_spectrum(const WRTData& data, std::span<const double> sigma,
                                            std::size_t padding = 4);

struct SpectrumGeometry {
  std::size_t directions = 180;  // on the full circle (n = 2) or azimuths (n = 3)
  double direction_offset = 0.0;
  std::vector<double> radii;     // log-uniform
  std::vector<double> sigma;
  double spacing = 0.125;       // frame sample spacing
};

// On-demand route: projection along the directions across theta on a rotated frame, then a 1-D
// transform along theta (Fourier slice), which equals the n-D transform on the line xi = sigma theta.
PolarSpectralSamples extract_polar_spectrum(const RaySource& source, const SpectrumGeometry& g);

struct T2Params {
  ConstantChoice constant;
  double hat_cutoff = 1e-14;      // drop radii where |h^(r sigma)| < cutoff * max|h^|
  std::size_t min_radii = 8;
};

double t2_paper_constant(const WindowSpec& w, std::size_t n);    // 2^{-n-1} pi^{-n} / \int|h|^2
double t2_derived_constant(const WindowSpec& w, std::size_t n);  // (2pi)^{-n} / \int_0^inf |h^|^2
double t2_constant(const ConstantChoice& c, const WindowSpec& w, std::size_t n);

// \int_0^inf F(r) dr from samples on a log-uniform grid: trapezoid in ln r plus r_min F(r_min) for
// [0, r_min], truncated where |h^(r sigma)| is negligible (never below min_radii samples).
cplx inner_r_integral(const WindowSpec& w, double sigma, std::span<const double> radii,
                      std::span<const cplx> values, const T2Params& p = {});
// inner_r_integral of P^ h^(r sigma) with P^ replaced by h^(-r sigma): \int_0^inf h^(-r s) h^(r s) dr.
double inner_window_integral(const WindowSpec& w, double sigma, std::span<const double> radii,
                             const T2Params& p = {});

// f(x) = C sum_theta sum_sigma inner(theta, sigma) e^{i sigma theta.x} sigma^n dsigma dtheta.
ScalarField reconstruct_t2(const PolarSpectralSamples& s, const WindowSpec& w, const Grid& out,
                           const T2Params& p = {});

}  // namespace wrtkit
