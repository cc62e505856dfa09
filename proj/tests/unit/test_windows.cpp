#include <doctest.h>

#include <cmath>
#include <numbers>

#include "wrtkit/error.hpp"
#include "wrtkit/fourier.hpp"
#include "wrtkit/window.hpp"

using namespace wrtkit;
using doctest::Approx;

namespace {
const double pi = std::numbers::pi;
}

TEST_CASE("window_eval") {
  CHECK(window_eval(gaussian_window(1), 0.0) == cplx(1.0));
  auto h1 = hermite1_window(1);
  CHECK(window_eval(h1, 0.0) == cplx(0.0));
  for (double t : {0.3, 1.0, 2.5}) CHECK(window_eval(h1, -t) == -window_eval(h1, t));
  const cplx ast = window_eval(analytic_signal_window(), 0.0);
  CHECK(ast.real() == Approx(1.0 / (2.0 * pi)).epsilon(1e-15));
  CHECK(std::abs(ast.imag()) < 1e-16);
  CHECK(window_eval(bump_window(1), 0.0) == cplx(1.0));
  CHECK(window_eval(bump_window(1), 1.0) == cplx(0.0));
}

TEST_CASE("window_ft closed forms and conjugate symmetry") {
  CHECK(window_ft(gaussian_window(1), 0.0).real() == Approx(std::sqrt(2.0 * pi)));
  CHECK(window_ft(hermite1_window(1), 0.0) == cplx(0.0));
  for (auto w : {gaussian_window(0.7), hermite1_window(1.3), bump_window(1.0)})
    for (double eta : {0.1, 0.9, 3.0, 7.5})
      CHECK(std::abs(window_ft(w, -eta) - std::conj(window_ft(w, eta))) <= 1e-12);
  // Parity of h^: even windows real, odd windows imaginary.
  for (double eta : {0.4, 2.0}) {
    CHECK(window_ft(gaussian_window(1), eta).imag() == 0.0);
    CHECK(window_ft(hermite1_window(1), eta).real() == 0.0);
    CHECK(window_ft(bump_window(1), eta).imag() == 0.0);
  }
}

TEST_CASE("window_ft matches a direct quadrature of the window") {
  // Hermite1 closed form against a dense trapezoid of h(t) e^{-i eta t}.
  auto w = hermite1_window(0.8);
  for (double eta : {0.5, 1.7}) {
    cplx acc = 0.0;
    const double dt = 1e-3;
    for (int k = -12000; k <= 12000; ++k) acc += window_eval(w, k * dt) * std::polar(dt, -eta * k * dt);
    CHECK(std::abs(acc - window_ft(w, eta)) <= 1e-10);
  }
}

TEST_CASE("bump window_ft oracle values") {
  // mpmath quadrature of 2 \int_0^1 exp(1 - 1/(1-t^2)) cos(eta t) dt, 30 digits.
  auto w = bump_window(1.0);
  CHECK(window_ft(w, 0.0).real() == Approx(1.2069003224378762).epsilon(1e-13));
  CHECK(window_ft(w, 1.0).real() == Approx(1.1141126318046631).epsilon(1e-13));
  CHECK(std::abs(window_ft(w, 5.0).real() - -0.00057695508550748638) <= 1e-15);
  CHECK(std::abs(window_ft(w, 20.0).real() - -0.0015274105782146568) <= 1e-15);
  CHECK(std::abs(window_ft(w, 60.0).real() - 8.9829065744771653e-05) <= 1e-15);
}

TEST_CASE("analytic-signal window_ft") {
  auto w = analytic_signal_window();
  CHECK(window_ft(w, -1.0).real() == Approx(std::exp(-1.0)));
  CHECK(window_ft(w, 2.0) == cplx(0.0));
  CHECK(window_ft(w, 0.0).real() == 0.5);
}

TEST_CASE("riesz_filter oracle values for gaussian(1)") {
  // k(t) = sqrt(2/pi) (1 - sqrt2 t D(t/sqrt2)), D the Dawson function; mpmath, cross-checked by
  // direct quadrature of (1/pi) \int_0^inf eta h^(eta) cos(eta t) d eta.
  const double t[] = {0.0, 0.5, 1.0, 2.0, 4.0, 8.0};
  const double k[] = {0.79788456080286536, 0.61423376292488645, 0.2195950183586267,
                      -0.22338864678452013, -0.065095558108326517, -0.013102838633303908};
  auto got = riesz_filter(gaussian_window(1.0), t);
  for (int i = 0; i < 6; ++i) CHECK(std::abs(got[i] - k[i]) <= 1e-8);
}

TEST_CASE("riesz_filter properties") {
  std::vector<double> t;
  for (int i = -4000; i < 4000; ++i) t.push_back(i * 0.02);
  CHECK(riesz_filter(WindowSpec{WindowSpec::Kind::gaussian, 1.0, 1.0, 0.0}, t) == std::vector<double>(t.size(), 0.0));

  auto k = riesz_filter(gaussian_window(1.0), t);
  for (std::size_t i = 1; i < t.size() / 2; ++i) CHECK(std::abs(k[i] - k[t.size() - i]) <= 1e-14);

  // Spectral check: FT of the samples against |eta| h^(eta) on the resolvable band. The tail
  // decays like 1/t^2, so add the analytic tail -h^(0)/(pi t^2) beyond the sampled range.
  auto g = make_grid(1, t.size(), t.size() * 0.02);
  std::vector<cplx> kc(k.begin(), k.end());
  for (double eta : {0.5, 1.0, 2.0, 4.0}) {
    double acc = ft_at(g.origin[0], g.spacing[0], kc, std::span(&eta, 1))[0].real();
    const double T = 80.0;
    // -h^(0)/pi * 2 \int_T^inf cos(eta t)/t^2 dt, evaluated by a fine midpoint sum.
    double tail = 0.0;
    for (double s = T; s < 4000.0; s += 0.005) tail += std::cos(eta * (s + 0.0025)) / std::pow(s + 0.0025, 2) * 0.005;
    acc += -std::sqrt(2.0 * pi) / pi * 2.0 * tail;
    const double expect = eta * window_ft(gaussian_window(1.0), eta).real();
    CHECK(std::abs(acc - expect) <= 1e-6 * std::abs(expect) + 1e-7);
  }
  CHECK_THROWS_AS(riesz_filter(analytic_signal_window(), t), HypothesisError);
}

TEST_CASE("window_constants") {
  auto c = window_constants(gaussian_window(1.0));
  CHECK(c.c_h2 == Approx(std::sqrt(pi)).epsilon(1e-15));
  CHECK(c.c_hat_full == 2.0 * c.c_hat_half);
  CHECK(window_constants(hermite1_window(1.0)).hat_at_zero == cplx(0.0));

  // Plancherel: \int_0^inf |h^|^2 = pi \int |h|^2, checked on the quadrature path.
  auto b = window_constants(bump_window(1.0));
  CHECK(b.c_h2 == Approx(0.98338081291272646).epsilon(1e-12));
  CHECK(b.c_hat_half == Approx(pi * b.c_h2).epsilon(1e-10));

  CHECK_THROWS_AS(window_constants(WindowSpec{WindowSpec::Kind::gaussian, 1.0, 1.0, 0.0}), HypothesisError);
  CHECK_THROWS_AS(window_constants(analytic_signal_window()), InvalidArgument);
}

TEST_CASE("window reach") {
  auto w = gaussian_window(2.0);
  const double T = window_reach(w);
  CHECK(std::abs(window_eval(w, T)) == Approx(1e-14).epsilon(1e-6));
  CHECK(window_reach(bump_window(0.5)) == 0.5);
  auto h = hermite1_window(1.0);
  const double th = window_reach(h);
  CHECK(std::abs(window_eval(h, th)) == Approx(1e-14 * std::exp(-0.5)).epsilon(1e-6));
  const double eb = spectral_reach(bump_window(1.0));
  CHECK(std::abs(window_ft(bump_window(1.0), eb)) < 1e-14 * 1.21);
}
