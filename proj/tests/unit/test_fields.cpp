#include <doctest.h>

#include <cmath>
#include <numbers>

#include "wrtkit/error.hpp"
#include "wrtkit/fourier.hpp"
#include "wrtkit/grid.hpp"
#include "wrtkit/log.hpp"
#include "wrtkit/phantom.hpp"

using namespace wrtkit;
using doctest::Approx;

TEST_CASE("make_grid spacing and origin") {
  auto g = make_grid(2, 64, 8.0);
  CHECK(g.spacing[0] == 0.125);
  CHECK(g.spacing[1] == 0.125);
  CHECK(g.coord(0, 32) == 0.0);

  std::size_t s1[] = {2};
  double e1[] = {1.0};
  auto small = make_grid(s1, e1);
  CHECK(small.origin[0] == -0.5);
  CHECK(small.spacing[0] == 0.5);
}

TEST_CASE("make_grid 3-d off-centre coordinate roundtrip") {
  std::size_t s[] = {16, 16, 16};
  double e[] = {4, 4, 4}, c[] = {1, 0, 0};
  auto g = make_grid(s, e, c);
  CHECK(g.origin[0] == Approx(-1.0));
  CHECK(g.origin[1] == Approx(-2.0));
  for (std::size_t flat = 0; flat < g.size(); flat += 37) {
    auto x = g.point(flat);
    std::vector<std::size_t> idx;
    for (std::size_t a = 0; a < 3; ++a) idx.push_back(*g.index_of(a, x[a]));
    CHECK(g.ravel(idx) == flat);
  }
}

TEST_CASE("make_grid rejects bad input") {
  std::size_t s[] = {1};
  double e[] = {1.0}, bad[] = {0.0};
  std::size_t ok[] = {4};
  CHECK_THROWS_AS(make_grid(s, e), InvalidArgument);
  CHECK_THROWS_AS(make_grid(ok, bad), InvalidArgument);
}

TEST_CASE("sample_phantom") {
  auto g = make_grid(2, 64, 8.0);
  auto zero = sample_phantom(gaussian_phantom({0, 0}, 1.0, 0.0), g);
  for (double v : zero.values) CHECK(v == 0.0);

  auto f = sample_phantom(gaussian_phantom({0, 0}, 1.0), g);
  std::size_t origin_idx[] = {32, 32}, unit_idx[] = {40, 32};
  CHECK(f.values[g.ravel(origin_idx)] == Approx(1.0));
  CHECK(f.values[g.ravel(unit_idx)] == Approx(std::exp(-0.5)).epsilon(1e-14));

  auto m = sample_phantom(gaussian_mixture({{{1.0, 0.5}, 0.4, 1.0}, {{-1.0, 0.5}, 0.4, 1.0}}), g);
  for (std::size_t i = 1; i < 64; ++i)
    for (std::size_t j = 0; j < 64; ++j) {
      std::size_t a[] = {i, j}, b[] = {64 - i, j};
      CHECK(m.values[g.ravel(a)] == Approx(m.values[g.ravel(b)]).epsilon(1e-14));
    }

  CHECK_THROWS_AS(sample_phantom(gaussian_phantom({0, 0, 0}, 1.0), g), InvalidArgument);
}

TEST_CASE("continuous_ft of a gaussian") {
  auto g = make_grid(2, 128, 20.0);
  auto spec = continuous_ft(sample_phantom(gaussian_phantom({0, 0}, 1.0), g));
  double worst = 0.0;
  for (std::size_t i = 0; i < spec.grid.size(); ++i) {
    auto xi = spec.grid.point(i);
    const double r2 = xi[0] * xi[0] + xi[1] * xi[1];
    if (r2 > 16.0) continue;
    const double expect = 2.0 * std::numbers::pi * std::exp(-r2 / 2.0);
    worst = std::max(worst, std::abs(spec.values[i] - expect) / expect);
  }
  CHECK(worst <= 1e-6);
}

TEST_CASE("continuous_ft shift theorem") {
  auto g = make_grid(2, 128, 20.0);
  auto a = continuous_ft(sample_phantom(gaussian_phantom({0, 0}, 1.0), g));
  auto b = continuous_ft(sample_phantom(gaussian_phantom({1.3, -0.7}, 1.0), g));
  double worst = 0.0;
  for (std::size_t i = 0; i < a.grid.size(); ++i) {
    auto xi = a.grid.point(i);
    if (xi[0] * xi[0] + xi[1] * xi[1] > 16.0) continue;
    const cplx expect = a.values[i] * std::polar(1.0, -(1.3 * xi[0] - 0.7 * xi[1]));
    worst = std::max(worst, std::abs(b.values[i] - expect));
  }
  CHECK(worst <= 1e-9);
}

TEST_CASE("zero field and zero spectrum") {
  auto g = make_grid(2, 16, 4.0);
  auto s = continuous_ft(ScalarField(g));
  for (auto v : s.values) CHECK(v == cplx(0.0));
  auto f = continuous_ift(s);
  for (double v : f.values) CHECK(v == 0.0);
}

TEST_CASE("ft/ift roundtrip, parseval, conjugate symmetry") {
  auto g = make_grid(2, 96, 16.0);
  auto f = sample_phantom(gaussian_mixture({{{0.5, 0.2}, 0.8, 1.0}, {{-1.0, 1.0}, 0.6, -0.5}}), g);
  for (std::size_t pad : {1u, 2u}) {
    auto s = continuous_ft(f, pad);
    auto back = continuous_ift(s);
    CHECK(rel_l2_error(back, f) <= 1e-9);
  }
  auto s = continuous_ft(f);
  double lhs = 0.0, rhs = 0.0;
  for (double v : f.values) lhs += v * v;
  lhs *= g.cell_volume();
  for (auto v : s.values) rhs += std::norm(v);
  rhs *= s.grid.cell_volume() / std::pow(2.0 * std::numbers::pi, 2);
  CHECK(std::abs(lhs - rhs) <= 1e-8 * lhs);

  // Bins m and N - m are mirror frequencies for m >= 1 on a centred even grid.
  double worst = 0.0;
  const std::size_t n = s.grid.shape[0];
  for (std::size_t i = 1; i < n; ++i)
    for (std::size_t j = 1; j < n; ++j) {
      std::size_t a[] = {i, j}, b[] = {n - i, n - j};
      worst = std::max(worst, std::abs(s.values[s.grid.ravel(a)] - std::conj(s.values[s.grid.ravel(b)])));
    }
  CHECK(worst <= 1e-12);
}

TEST_CASE("single-bin spectrum gives a sampled exponential") {
  auto g = make_grid(1, 32, 8.0, 0.5);
  SpectralField s;
  s.spatial = g;
  s.grid = frequency_grid(g);
  s.values.assign(32, 0.0);
  const std::size_t m = 16 + 3;
  s.values[m] = 1.0;
  auto c = continuous_ift_complex(s, g);
  const double xi = s.grid.coord(0, m);
  for (std::size_t j = 0; j < 32; ++j) {
    const cplx expect = std::polar(s.grid.spacing[0] / (2.0 * std::numbers::pi), xi * g.coord(0, j));
    CHECK(std::abs(c[j] - expect) <= 1e-14);
  }
}

TEST_CASE("continuous_ift grid mismatch") {
  auto g = make_grid(2, 16, 4.0);
  auto s = continuous_ft(ScalarField(g));
  CHECK_THROWS_AS(continuous_ift(s, make_grid(2, 16, 5.0)), InvalidArgument);
  CHECK_THROWS_AS(continuous_ift(s, make_grid(2, 8, 2.0)), InvalidArgument);
}

TEST_CASE("continuous_ft warns on non-decaying input") {
  std::string seen;
  auto old = set_warning_sink([&](std::string_view m) { seen = m; });
  auto g = make_grid(1, 16, 2.0);
  continuous_ft(sample_phantom(gaussian_phantom({0}, 3.0), g));
  set_warning_sink(old);
  CHECK(seen.find("decay") != std::string::npos);
}

TEST_CASE("rel_l2_error") {
  auto g = make_grid(2, 16, 4.0);
  auto f = sample_phantom(gaussian_phantom({0.2, 0}, 0.7), g);
  CHECK(rel_l2_error(f, f) == 0.0);
  auto f2 = f;
  for (auto& v : f2.values) v *= 2.0;
  CHECK(rel_l2_error(f2, f) == Approx(1.0));

  // g with ||g|| = ||f||: flipped copy scaled to the same norm.
  auto h = sample_phantom(gaussian_phantom({-1.0, 0.5}, 0.5), g);
  double nf = 0, nh = 0;
  for (std::size_t i = 0; i < f.values.size(); ++i) nf += f.values[i] * f.values[i], nh += h.values[i] * h.values[i];
  const double eps = 0.03;
  auto p = f;
  for (std::size_t i = 0; i < f.values.size(); ++i) p.values[i] += eps * h.values[i] * std::sqrt(nf / nh);
  CHECK(rel_l2_error(p, f) == Approx(eps).epsilon(1e-12));

  CHECK_THROWS_AS(rel_l2_error(f, ScalarField(g)), DegenerateReference);
}
