#pragma once

#include <span>
#include <vector>

#include "wrtkit/grid.hpp"

namespace wrtkit {

struct GaussianBump {
  std::vector<double> center;
  double sigma = 1.0;
  double amplitude = 1.0;
};

// Disk indicator mollified radially: A/2 [erf((R - rho)/(sqrt2 w)) + erf((R + rho)/(sqrt2 w))].
struct SmoothedDisk {
  std::vector<double> center;
  double radius = 1.0;
  double width = 0.1;
  double amplitude = 1.0;
};

struct PhantomSpec {
  enum class Kind { gaussian, gaussian_mixture, smoothed_disk };
  Kind kind = Kind::gaussian;
  std::vector<GaussianBump> bumps;  // one entry for `gaussian`
  SmoothedDisk disk;

  std::size_t dim() const;
  void validate() const;
  bool has_closed_form_ft() const { return kind != Kind::smoothed_disk; }
};

struct Ball {
  std::vector<double> center;
  double radius = 0.0;
};

PhantomSpec gaussian_phantom(std::vector<double> center, double sigma, double amplitude = 1.0);
PhantomSpec gaussian_mixture(std::vector<GaussianBump> bumps);
PhantomSpec smoothed_disk(std::vector<double> center, double radius, double width, double amplitude = 1.0);

double phantom_value(const PhantomSpec& spec, std::span<const double> x);
ScalarField sample_phantom(const PhantomSpec& spec, const Grid& grid);

// Closed-form f^(xi); throws InvalidArgument for the smoothed disk.
cplx phantom_ft(const PhantomSpec& spec, std::span<const double> xi);
// Transform in x_1 only: \int f(x_1, zeta) e^{-i sigma x_1} dx_1.
cplx phantom_partial_ft(const PhantomSpec& spec, double sigma, std::span<const double> zeta);

// Ball outside which |f| < eps * max|f|.
Ball phantom_support(const PhantomSpec& spec, double eps = 1e-16);

// Circular harmonic f_l(r) = (1/2pi) \int f(r cos phi, r sin phi) e^{-i l phi} dphi (n = 2).
cplx phantom_harmonic(const PhantomSpec& spec, int l, double r);

}  // namespace wrtkit
