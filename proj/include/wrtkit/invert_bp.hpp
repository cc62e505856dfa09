#pragma once

#include <span>
#include <vector>

#include "wrtkit/constants.hpp"
#include "wrtkit/forward.hpp"
#include "wrtkit/grid.hpp"
#include "wrtkit/window.hpp"

namespace wrtkit {

struct BPParams {
  double r_min = 0.01;
  double r_max = 16.0;
  std::size_t radii = 32;        // log-uniform in [r_min, r_max]
  std::size_t directions = 48;   // per half circle (n = 2) or azimuths (n = 3)
  double direction_offset = 0.0;  // in units of the direction step
  ConstantChoice constant;

  double oversample = 2.0;      // frame samples per output spacing
  double period_factor = 40.0;  // FFT period is at least period_factor * r beyond the frame

  // Spatial (direct) route: trapezoid over a uniform t-grid for the filter.
  double filter_dt = 0.01;
  double filter_extent = 64.0;

  void validate() const;
};

double t1_paper_constant(const WindowSpec& w, std::size_t n);    // pi^{-(n+1)/2} Gamma(n/2) / \int|h^|^2
double t1_derived_constant(const WindowSpec& w, std::size_t n);  // Gamma(n/2) / (pi^{n/2} \int|h^|^2)
double t1_constant(const ConstantChoice& c, const WindowSpec& w, std::size_t n);

// On-demand route: v = r theta on a log-polar grid, P sampled on rotated line frames, the t-integral
// against I^{-1}h done as a spectral filter along each line, then accumulated onto `out`.
ScalarField reconstruct_t1(const RaySource& source, const Grid& out, const BPParams& p);
// Stored polar data: directions, weights and radii come from the data; P is interpolated in u.
ScalarField reconstruct_t1(const WRTData& data, const Grid& out, const BPParams& p);

// Literal double integral at individual points: trapezoid in t against riesz_filter samples.
std::vector<double> reconstruct_t1_direct(const RaySource& source, std::span<const std::vector<double>> points,
                                          const BPParams& p);

struct FrequencyQuadrature {
  double r_min = 1e-8;
  double r_max = 1e6;
  std::size_t radii = 641;
  std::size_t directions = 64;
};

struct FrequencyCheck {
  std::vector<double> values;  // \int |v|^{-n} |xi.v| |h^(xi.v)|^2 dv per xi
  double mean = 0.0;
  double max_deviation = 0.0;    // max |value - mean| / mean
  double fitted_constant = 0.0;  // mean / \int|h|^2
  double expected = 0.0;         // |S^{n-1}| \int_0^inf |h^|^2
};

// The v-integral in the proof of Theorem 1, divided by f^(xi). The direction rule is aligned with
// each xi, so rotations of xi see the same nodes.
FrequencyCheck t1_frequency_check(const WindowSpec& w, std::span<const std::vector<double>> xi,
                                  const FrequencyQuadrature& q = {});

}  // namespace wrtkit
