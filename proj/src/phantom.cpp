#include "wrtkit/phantom.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "wrtkit/error.hpp"
#include "wrtkit/parallel.hpp"

namespace wrtkit {
namespace {

constexpr double pi = std::numbers::pi;

double dist2(std::span<const double> x, std::span<const double> c) {
  double d = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) d += (x[i] - c[i]) * (x[i] - c[i]);
  return d;
}

double disk_profile(const SmoothedDisk& d, double rho) {
  const double s = std::numbers::sqrt2 * d.width;
  return 0.5 * d.amplitude * (std::erf((d.radius - rho) / s) + std::erf((d.radius + rho) / s));
}

void check_dim(const PhantomSpec& spec, std::size_t n) {
  if (spec.dim() != n)
    throw InvalidArgument("phantom has dimension " + std::to_string(spec.dim()) + ", expected " +
                          std::to_string(n));
}

}  // namespace

std::size_t PhantomSpec::dim() const {
  if (kind == Kind::smoothed_disk) return disk.center.size();
  return bumps.empty() ? 0 : bumps.front().center.size();
}

void PhantomSpec::validate() const {
  if (kind == Kind::smoothed_disk) {
    if (disk.center.empty()) throw InvalidArgument("phantom: disk center is empty");
    if (!(disk.radius > 0.0)) throw InvalidArgument("phantom: disk radius must be positive");
    if (!(disk.width > 0.0)) throw InvalidArgument("phantom: disk width must be positive");
    if (!std::isfinite(disk.amplitude)) throw InvalidArgument("phantom: amplitude must be finite");
    return;
  }
  if (bumps.empty()) throw InvalidArgument("phantom: no gaussian components");
  if (kind == Kind::gaussian && bumps.size() != 1)
    throw InvalidArgument("phantom: kind gaussian takes exactly one component");
  const std::size_t n = bumps.front().center.size();
  if (n == 0) throw InvalidArgument("phantom: center is empty");
  for (const auto& b : bumps) {
    if (b.center.size() != n) throw InvalidArgument("phantom: components differ in dimension");
    if (!(b.sigma > 0.0)) throw InvalidArgument("phantom: sigma must be positive");
    if (!std::isfinite(b.amplitude)) throw InvalidArgument("phantom: amplitude must be finite");
  }
}

PhantomSpec gaussian_phantom(std::vector<double> center, double sigma, double amplitude) {
  PhantomSpec s;
  s.kind = PhantomSpec::Kind::gaussian;
  s.bumps.push_back({std::move(center), sigma, amplitude});
  s.validate();
  return s;
}

PhantomSpec gaussian_mixture(std::vector<GaussianBump> bumps) {
  PhantomSpec s;
  s.kind = PhantomSpec::Kind::gaussian_mixture;
  s.bumps = std::move(bumps);
  s.validate();
  return s;
}

PhantomSpec smoothed_disk(std::vector<double> center, double radius, double width, double amplitude) {
  PhantomSpec s;
  s.kind = PhantomSpec::Kind::smoothed_disk;
  s.disk = {std::move(center), radius, width, amplitude};
  s.validate();
  return s;
}

double phantom_value(const PhantomSpec& spec, std::span<const double> x) {
  if (spec.kind == PhantomSpec::Kind::smoothed_disk)
    return disk_profile(spec.disk, std::sqrt(dist2(x, spec.disk.center)));
  double v = 0.0;
  for (const auto& b : spec.bumps) v += b.amplitude * std::exp(-0.5 * dist2(x, b.center) / (b.sigma * b.sigma));
  return v;
}

ScalarField sample_phantom(const PhantomSpec& spec, const Grid& grid) {
  grid.validate();
  spec.validate();
  check_dim(spec, grid.dim());
  ScalarField f(grid);
  parallel_for(grid.size(), [&](std::size_t i) {
    std::vector<double> x(grid.dim());
    grid.point(i, x);
    f.values[i] = phantom_value(spec, x);
  });
  return f;
}

cplx phantom_ft(const PhantomSpec& spec, std::span<const double> xi) {
  if (!spec.has_closed_form_ft()) throw InvalidArgument("phantom_ft: no closed form for smoothed-disk");
  check_dim(spec, xi.size());
  const double n = static_cast<double>(xi.size());
  double xi2 = 0.0;
  for (double v : xi) xi2 += v * v;
  cplx acc = 0.0;
  for (const auto& b : spec.bumps) {
    double phase = 0.0;
    for (std::size_t i = 0; i < xi.size(); ++i) phase += xi[i] * b.center[i];
    const double s2 = b.sigma * b.sigma;
    const double mag = b.amplitude * std::pow(2.0 * pi * s2, 0.5 * n) * std::exp(-0.5 * s2 * xi2);
    acc += std::polar(mag, -phase);
  }
  return acc;
}

cplx phantom_partial_ft(const PhantomSpec& spec, double sigma, std::span<const double> zeta) {
  if (!spec.has_closed_form_ft()) throw InvalidArgument("phantom_partial_ft: no closed form for smoothed-disk");
  check_dim(spec, zeta.size() + 1);
  cplx acc = 0.0;
  for (const auto& b : spec.bumps) {
    const double s2 = b.sigma * b.sigma;
    double d2 = 0.0;
    for (std::size_t i = 0; i < zeta.size(); ++i) d2 += (zeta[i] - b.center[i + 1]) * (zeta[i] - b.center[i + 1]);
    const double mag = b.amplitude * std::sqrt(2.0 * pi * s2) * std::exp(-0.5 * s2 * sigma * sigma - 0.5 * d2 / s2);
    acc += std::polar(mag, -sigma * b.center[0]);
  }
  return acc;
}

Ball phantom_support(const PhantomSpec& spec, double eps) {
  spec.validate();
  const double k = std::sqrt(-2.0 * std::log(eps));
  Ball b;
  if (spec.kind == PhantomSpec::Kind::smoothed_disk) {
    b.center = spec.disk.center;
    b.radius = spec.disk.radius + k * spec.disk.width;
    return b;
  }
  // Ball around the amplitude-weighted centroid covering every component's k-sigma ball.
  const std::size_t n = spec.dim();
  b.center.assign(n, 0.0);
  double wsum = 0.0;
  for (const auto& g : spec.bumps) {
    const double w = std::abs(g.amplitude) + 1e-300;
    for (std::size_t i = 0; i < n; ++i) b.center[i] += w * g.center[i];
    wsum += w;
  }
  for (auto& c : b.center) c /= wsum;
  for (const auto& g : spec.bumps)
    b.radius = std::max(b.radius, std::sqrt(dist2(g.center, b.center)) + k * g.sigma);
  return b;
}

cplx phantom_harmonic(const PhantomSpec& spec, int l, double r) {
  check_dim(spec, 2);
  if (!(r >= 0.0)) throw InvalidArgument("phantom_harmonic: r must be nonnegative");
  const unsigned la = static_cast<unsigned>(std::abs(l));
  if (spec.kind == PhantomSpec::Kind::smoothed_disk) {
    const auto& d = spec.disk;
    const double cr = std::hypot(d.center[0], d.center[1]);
    if (cr == 0.0) return l == 0 ? cplx(disk_profile(d, r)) : cplx(0.0);
    // Off-centre disk: trapezoid in phi is spectrally accurate for the periodic integrand.
    const int m = 2048;
    cplx acc = 0.0;
    for (int j = 0; j < m; ++j) {
      const double phi = 2.0 * pi * j / m;
      const double x[2] = {r * std::cos(phi), r * std::sin(phi)};
      acc += std::polar(phantom_value(spec, x), -l * phi);
    }
    return acc / static_cast<double>(m);
  }
  // Gaussian at polar (c, phi_c): exp(-(r^2+c^2)/2s^2) exp(kappa cos(phi - phi_c)), kappa = r c / s^2,
  // whose l-th coefficient is I_l(kappa) e^{-i l phi_c}. Scaled form avoids overflow.
  cplx acc = 0.0;
  for (const auto& b : spec.bumps) {
    const double c = std::hypot(b.center[0], b.center[1]);
    const double phic = std::atan2(b.center[1], b.center[0]);
    const double s2 = b.sigma * b.sigma;
    const double kappa = r * c / s2;
    const double base = b.amplitude * std::exp(-0.5 * (r - c) * (r - c) / s2);
    double scaled_bessel;
    if (kappa == 0.0)
      scaled_bessel = la == 0 ? 1.0 : 0.0;
    else if (kappa < 500.0)
      scaled_bessel = std::cyl_bessel_i(static_cast<double>(la), kappa) * std::exp(-kappa);
    else {
      // I_l(k) e^{-k} by trapezoid of e^{k(cos t - 1)} cos(l t) over [0, pi].
      const int m = 4096;
      double s = 0.0;
      for (int j = 0; j <= m; ++j) {
        const double t = pi * j / m;
        const double w = (j == 0 || j == m) ? 0.5 : 1.0;
        s += w * std::exp(kappa * (std::cos(t) - 1.0)) * std::cos(la * t);
      }
      scaled_bessel = s / m;
    }
    acc += std::polar(base * scaled_bessel, -l * phic);
  }
  return acc;
}

}  // namespace wrtkit
