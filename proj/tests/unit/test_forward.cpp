#include <doctest.h>

#include <cmath>
#include <numbers>

#include "wrtkit/error.hpp"
#include "wrtkit/forward.hpp"

using namespace wrtkit;
using doctest::Approx;

namespace {
const PhantomSpec ph = gaussian_phantom({0.3, -0.2}, 0.5);
}

TEST_CASE("closed-form and quadrature sources against mpmath values") {
  // [DERIVED] mpmath quad at 30 digits
  const double u1[] = {0.7, 0.1}, v1[] = {1.2, -0.5};
  const double u2[] = {-0.4, 0.25}, v2[] = {0.0, 2.0};
  const AnalyticGaussianRaySource a(ph, gaussian_window(1.0));
  const QuadratureRaySource q(ph, gaussian_window(1.0));
  CHECK(a(u1, v1).real() == Approx(0.610617467089051197).epsilon(1e-13));
  CHECK(q(u1, v1).real() == Approx(0.610617467089051197).epsilon(1e-12));
  CHECK(a(u2, v2).real() == Approx(0.222797572093409287).epsilon(1e-13));
  CHECK(q(u2, v2).real() == Approx(0.222797572093409287).epsilon(1e-12));

  const QuadratureRaySource qb(ph, bump_window(1.0));
  CHECK(qb(u1, v1).real() == Approx(0.527107362311638938).epsilon(1e-10));
}

TEST_CASE("v = 0: closed form gives f(u) times the window mass, quadrature rejects it") {
  const double u[] = {0.1, 0.2}, v[] = {0.0, 0.0};
  const AnalyticGaussianRaySource a(ph, gaussian_window(1.0));
  CHECK(a(u, v).real() == Approx(phantom_value(ph, u) * std::sqrt(2.0 * std::numbers::pi)).epsilon(1e-13));
  CHECK_THROWS_AS(QuadratureRaySource(ph, gaussian_window(1.0))(u, v), InvalidArgument);
}

TEST_CASE("translation covariance and linearity") {
  const auto shifted = gaussian_phantom({1.3, 0.8}, 0.5);
  const auto twice = gaussian_phantom({0.3, -0.2}, 0.5, 2.0);
  const QuadratureRaySource q(ph, bump_window(1.5)), qs(shifted, bump_window(1.5)), q2(twice, bump_window(1.5));
  const double v[] = {0.4, 0.9};
  for (double s : {-0.5, 0.0, 0.7}) {
    const double u[] = {s, 0.3}, us[] = {s + 1.0, 1.3};
    CHECK(std::abs(q(u, v) - qs(us, v)) < 1e-13);
    CHECK(std::abs(2.0 * q(u, v) - q2(u, v)) < 1e-13);
  }
}

TEST_CASE("windowed_ray_transform shapes and dtype") {
  const Grid u = make_grid(2, 64, 8.0);
  const auto d = sphere_directions(2, 8, true);
  const VSet vs = polar_vset(d.directions, log_uniform(0.5, 4.0, 4), d.weights);
  const auto w = windowed_ray_transform(ph, gaussian_window(1.0), u, vs);
  CHECK(w.values.size() == 4096 * 32);
  CHECK_FALSE(w.is_complex());

  const auto c = windowed_ray_transform(ph, analytic_signal_window(), make_grid(2, 8, 4.0), vs);
  CHECK(c.is_complex());
  double im = 0.0;
  for (auto z : c.values) im = std::max(im, std::abs(z.imag()));
  CHECK(im > 0.0);
}

TEST_CASE("quadrature matches the closed form over a u-grid") {
  const Grid u = make_grid(2, 24, 8.0);
  const auto d = sphere_directions(2, 6, true, 0.3);
  const VSet vs = polar_vset(d.directions, log_uniform(0.1, 6.0, 3), d.weights);
  const auto q = windowed_ray_transform(ph, gaussian_window(1.0), u, vs);
  const auto e = sample_wrt(AnalyticGaussianRaySource(ph, gaussian_window(1.0)), u, vs);
  double worst = 0.0;
  for (std::size_t i = 0; i < e.values.size(); ++i) worst = std::max(worst, std::abs(q.values[i] - e.values[i]));
  CHECK(worst < 1e-10);
  CHECK(quadrature_convergence(ph, gaussian_window(1.0), u, vs, {}, 8, 3) < 1e-10);
}

TEST_CASE("Fourier identity f^(xi) h^(-xi.v)") {
  const VSet vs = full_grid_vset(make_grid(2, 3, 2.0, 0.1));
  const auto d = windowed_ray_transform(ph, bump_window(1.0), make_grid(2, 64, 12.0), vs);
  CHECK(fourier_identity_residual(d, ph) < 1e-3);
}

TEST_CASE("perpendicular polar data") {
  const double rho[] = {0.5, 1.0, 2.0};
  const auto g = wrt_polar_perp(ph, bump_window(1.0), rho, 16);
  const QuadratureRaySource q(ph, bump_window(1.0));
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t k = 0; k < 16; k += 5) {
      const double th = g.theta(k);
      const double u[] = {rho[i] * std::cos(th), rho[i] * std::sin(th)};
      const double v[] = {-rho[i] * std::sin(th), rho[i] * std::cos(th)};
      CHECK(std::abs(g.values[i * 16 + k] - q(u, v)) < 1e-12);
    }
  CHECK_THROWS_AS(wrt_polar_perp(ph, bump_window(1.0), rho, 12), InvalidArgument);
}

TEST_CASE("hemisphere direction weights carry the full sphere measure") {
  const auto half = sphere_directions(2, 8, true);
  double sum = 0.0;
  for (double w : half.weights) sum += w;
  CHECK(sum == Approx(2.0 * std::numbers::pi));
  const auto s3 = sphere_directions(3, 12, true);
  sum = 0.0;
  for (double w : s3.weights) sum += w;
  CHECK(sum == Approx(4.0 * std::numbers::pi).epsilon(1e-12));
  for (const auto& d : s3.directions) CHECK(std::hypot(d[0], d[1], d[2]) == Approx(1.0));
}
