#include <doctest.h>

#include <cmath>
#include <numbers>

#include "wrtkit/error.hpp"
#include "wrtkit/invert_fourier.hpp"

using namespace wrtkit;
using doctest::Approx;

namespace {
const double pi = std::numbers::pi;
const PhantomSpec ph = gaussian_phantom({0.3, -0.2}, 0.5);
}  // namespace

TEST_CASE("inner window integral against mpmath") {
  // [DERIVED] int_0^inf 2 pi exp(-(2r)^2) dr = pi^{3/2} / 2
  const auto r = log_uniform(1e-5, 1e4, 400);
  CHECK(inner_window_integral(gaussian_window(1.0), 2.0, r) == Approx(2.78416399841585392).epsilon(1e-6));
}

TEST_CASE("inner integral scales as 1/|sigma|") {
  const auto r = log_uniform(1e-5, 1e4, 400);
  for (const auto& w : {gaussian_window(1.0), bump_window(1.0)})
    for (double s : {0.25, 1.0, 4.0}) {
      const double a = inner_window_integral(w, s, r), b = inner_window_integral(w, 2.0 * s, r);
      CHECK(b / a == Approx(0.5).epsilon(1e-3));
    }
}

TEST_CASE("t2 constants") {
  // [DERIVED] mpmath
  CHECK(t2_paper_constant(gaussian_window(1.0), 2) == Approx(0.00714554455046703547).epsilon(1e-12));
  CHECK(t2_derived_constant(gaussian_window(1.0), 2) == Approx(0.00454899494516073548).epsilon(1e-12));
}

TEST_CASE("uniform_sigma") {
  const auto s = uniform_sigma(2.0, 5);
  REQUIRE(s.size() == 5);
  CHECK(s.front() == 0.0);
  CHECK(s[1] == Approx(0.5));
  CHECK(s.back() == Approx(2.0));
}

TEST_CASE("on-demand polar spectrum equals f^(sigma theta) h^(-r sigma)") {
  SpectrumGeometry g;
  g.directions = 8;
  g.sigma = {0.5, 1.5, 3.0};
  g.radii = log_uniform(0.1, 2.0, 4);
  const auto w = gaussian_window(1.0);
  const auto s = extract_polar_spectrum(AnalyticGaussianRaySource(ph, w), g);
  double worst = 0.0, top = 0.0;
  for (std::size_t d = 0; d < s.directions.size(); ++d)
    for (std::size_t k = 0; k < s.sigma.size(); ++k) {
      const double xi[] = {s.sigma[k] * s.directions[d][0], s.sigma[k] * s.directions[d][1]};
      for (std::size_t m = 0; m < s.radii.size(); ++m) {
        const cplx want = phantom_ft(ph, xi) * window_ft(w, -s.radii[m] * s.sigma[k]);
        worst = std::max(worst, std::abs(s.values[s.index(d, k, m)] - want));
        top = std::max(top, std::abs(want));
      }
    }
  CHECK(worst / top < 1e-6);
}

TEST_CASE("stored polar data route agrees with the on-demand route") {
  const auto w = gaussian_window(1.0);
  const auto d = sphere_directions(2, 6, false);
  const VSet vs = polar_vset(d.directions, {0.5, 1.0}, d.weights);
  const auto data = sample_wrt(AnalyticGaussianRaySource(ph, w), make_grid(2, 128, 32.0), vs);
  const double sigma[] = {0.5, 1.0};
  const auto s = extract_polar_spectrum(data, sigma);
  for (std::size_t di = 0; di < s.directions.size(); ++di)
    for (std::size_t k = 0; k < 2; ++k) {
      const double xi[] = {s.sigma[k] * s.directions[di][0], s.sigma[k] * s.directions[di][1]};
      for (std::size_t m = 0; m < 2; ++m) {
        const cplx want = phantom_ft(ph, xi) * window_ft(w, -s.radii[m] * s.sigma[k]);
        CHECK(std::abs(s.values[s.index(di, k, m)] - want) < 2e-3 * std::abs(phantom_ft(ph, std::vector<double>{0, 0})));
      }
    }
}

TEST_CASE("t2 reconstruction") {
  const auto w = gaussian_window(1.0);
  const Grid out = make_grid(2, 32, 8.0);
  SpectrumGeometry g;
  g.directions = 90;
  g.sigma = uniform_sigma(pi / out.spacing[0], 64);
  g.radii = log_uniform(1e-3, 40.0, 32);
  const auto s = extract_polar_spectrum(AnalyticGaussianRaySource(ph, w), g);
  const auto r = reconstruct_t2(s, w, out);
  CHECK(rel_l2_error(r, sample_phantom(ph, out)) < 0.05);

  PolarSpectralSamples bad = s;
  bad.sigma[3] += 0.01;
  CHECK_THROWS_AS(reconstruct_t2(bad, w, out), InvalidArgument);
  CHECK_THROWS_WITH_AS(reconstruct_t2(s, analytic_signal_window(), out),
                       doctest::Contains("analytic-signal window is forward-only"), HypothesisError);
}
