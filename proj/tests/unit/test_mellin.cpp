#include <doctest.h>

#include <cmath>
#include <numbers>

#include "wrtkit/error.hpp"
#include "wrtkit/invert_mellin.hpp"

using namespace wrtkit;
using doctest::Approx;

namespace {
const PhantomSpec two = gaussian_mixture({{{1.2, 0.3}, 0.2, 1.0}, {{-0.5, -0.9}, 0.25, 0.8}});
}

TEST_CASE("kernel Mellin transform against mpmath") {
  // [DERIVED] mpmath quad of K_l(alpha) cos^{s-1}(alpha) on [0, arctan 1], bump window R = 1
  const auto w = bump_window(1.0);
  const double y0[] = {0.0}, y2[] = {2.0}, ym[] = {-1.0};
  CHECK(kernel_mellin(w, 0, 1.5, y0).values[0].real() == Approx(1.03033103773617995).epsilon(1e-10));
  const cplx m2 = kernel_mellin(w, 2, 1.5, y2).values[0];
  CHECK(m2.real() == Approx(0.810330555980453435).epsilon(1e-10));
  CHECK(m2.imag() == Approx(-0.0685186354744153877).epsilon(1e-9));
  const cplx m3 = kernel_mellin(w, 3, 2.0, ym).values[0];
  CHECK(m3.real() == Approx(0.589857537118824418).epsilon(1e-10));
  CHECK(m3.imag() == Approx(0.00974736835079623731).epsilon(1e-8));
}

TEST_CASE("Mellin transform of exp(-r^2) is Gamma(s/2)/2") {
  const auto r = log_uniform(1e-9, 8.0, 1200);
  std::vector<cplx> f(r.size());
  for (std::size_t i = 0; i < r.size(); ++i) f[i] = std::exp(-r[i] * r[i]);
  const double y[] = {3.0};
  const cplx m = mellin_transform(r, f, 1.5, y).values[0];
  // [DERIVED] mpmath gamma((1.5+3i)/2)/2
  CHECK(m.real() == Approx(0.115420472276264801).epsilon(1e-8));
  CHECK(m.imag() == Approx(-0.0618833899397594324).epsilon(1e-8));
}

TEST_CASE("mellin_transform rejects undecayed ends") {
  const auto r = log_uniform(1e-2, 1.0, 100);
  std::vector<cplx> f(r.size(), 1.0);
  const double y[] = {0.0};
  CHECK_THROWS_AS(mellin_transform(r, f, 1.0, y), NumericalError);
}

TEST_CASE("phantom harmonic against mpmath") {
  // [DERIVED] (1/2pi) int f(r cos p, r sin p) e^{-2ip} dp, first bump only
  const auto one = gaussian_phantom({1.2, 0.3}, 0.2);
  const cplx v = phantom_harmonic(one, 2, 1.1);
  CHECK(v.real() == Approx(0.0451470286951565217).epsilon(1e-10));
  CHECK(v.imag() == Approx(-0.0240784153040834782).epsilon(1e-10));
}

TEST_CASE("circular harmonics of the perpendicular data") {
  const auto w = bump_window(1.0);
  const auto rho = log_uniform(std::exp(-18.0), 3.5, 600);
  const auto g = wrt_polar_perp(two, w, rho, 64);
  const auto s = circular_decompose(g, 8);
  CHECK_THROWS_AS(circular_decompose(g, 40), InvalidArgument);

  SUBCASE("conjugate pairing") {
    for (int l = 1; l <= 4; ++l)
      for (std::size_t i = 0; i < rho.size(); i += 37) CHECK(std::abs(s.of(-l)[i] - std::conj(s.of(l)[i])) < 1e-12);
  }
  SUBCASE("harmonics equal the forward model of f_l") {
    for (int l : {0, 1, 3}) {
      const auto gl = harmonic_forward([&](double r) { return phantom_harmonic(two, l, r); }, w, l, rho);
      double worst = 0.0, top = 0.0;
      for (std::size_t i = 0; i < rho.size(); ++i) {
        worst = std::max(worst, std::abs(gl[i] - s.of(l)[i]));
        top = std::max(top, std::abs(s.of(l)[i]));
      }
      CHECK(worst / top < 1e-8);
    }
  }
  SUBCASE("convolution identity: corrected form holds, printed form does not") {
    const auto y = uniform_y_grid(20.0, 0.25);
    for (int l = 0; l <= 4; ++l) {
      std::vector<cplx> fl(rho.size());
      for (std::size_t i = 0; i < rho.size(); ++i) fl[i] = phantom_harmonic(two, l, rho[i]);
      CHECK(mellin_convolution_residual(rho, s.of(l), fl, w, l, 1.0, y) < 0.01);
      if (l > 0) CHECK(mellin_convolution_residual(rho, s.of(l), fl, w, l, 1.0, y, true) > 0.05);
    }
  }
}

TEST_CASE("manufactured recovery is contour independent") {
  const auto w = bump_window(1.0);
  auto prof = [](double r) { return cplx(std::exp(-(r - 0.6) * (r - 0.6) / 0.02)); };
  const auto rr = log_uniform(std::exp(-18.0), 3.0, 800);
  const auto gl = harmonic_forward(prof, w, 2, rr);
  std::vector<cplx> G(rr.size());
  for (std::size_t i = 0; i < rr.size(); ++i) G[i] = rr[i] * gl[i];
  const auto y = uniform_y_grid(40.0, 0.1);
  std::vector<double> rt;
  std::vector<cplx> want;
  for (double r = 0.1; r <= 0.9; r += 0.02) {
    rt.push_back(r);
    want.push_back(prof(r));
  }
  auto err = [&](double t) {
    const auto rec = recover_fl(mellin_transform(rr, G, t - 1.0, y), kernel_mellin(w, 2, t - 1.0, y), t, rt);
    return rel_l2_error(rec.values, want);
  };
  const double e15 = err(1.5), e2 = err(2.0);
  CHECK(e15 < 0.05);
  CHECK(e2 < 0.05);
  CHECK_THROWS_AS(recover_fl(mellin_transform(rr, G, 0.0, y), kernel_mellin(w, 2, 0.0, y), 1.0, rt), InvalidArgument);
}

TEST_CASE("two-bump reconstruction improves with L") {
  const auto w = bump_window(1.0);
  const auto rho = log_uniform(std::exp(-18.0), 3.5, 800);
  const auto g = wrt_polar_perp(two, w, rho, 64);
  const Grid out = make_grid(2, 32, 5.0);
  const auto ref = sample_phantom(two, out);
  const double e16 = rel_l2_error(reconstruct_mellin(g, w, 16, out), ref);
  const double e24 = rel_l2_error(reconstruct_mellin(g, w, 24, out), ref);
  CHECK(e16 < 0.12);
  CHECK(e24 < e16);
}

TEST_CASE("window hypotheses") {
  CHECK_THROWS_WITH_AS(require_mellin_window(hermite1_window(1.0)), doctest::Contains("h is odd"), HypothesisError);
  CHECK_THROWS_WITH_AS(require_mellin_window(gaussian_window(1.0)),
                       doctest::Contains("requires a compactly supported, not-odd window"), HypothesisError);
  CHECK_THROWS_WITH_AS(require_mellin_window(analytic_signal_window()),
                       doctest::Contains("analytic-signal window is forward-only"), HypothesisError);
  CHECK_NOTHROW(require_mellin_window(bump_window(2.0)));
}
