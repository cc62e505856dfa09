#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>

#include "wrtkit/error.hpp"
#include "wrtkit/invert_bp.hpp"

using namespace wrtkit;
using doctest::Approx;

namespace {
const double pi = std::numbers::pi;
const PhantomSpec ph = gaussian_phantom({0.3, -0.2}, 0.5);
}  // namespace

TEST_CASE("t1 constants for gaussian(1), n = 2") {
  // [DERIVED] mpmath: int|h^|^2 = 2 pi^{3/2}
  CHECK(t1_paper_constant(gaussian_window(1.0), 2) == Approx(0.0161257672165997446).epsilon(1e-12));
  CHECK(t1_derived_constant(gaussian_window(1.0), 2) == Approx(0.0285821782018681419).epsilon(1e-12));
  CHECK(t1_constant({ConstantMode::none, 1.0}, gaussian_window(1.0), 2) == 1.0);
  CHECK(t1_constant({ConstantMode::calibrated, 0.25}, gaussian_window(1.0), 2) == 0.25);
}

TEST_CASE("t1 frequency response is isotropic and matches the proof constant") {
  std::vector<std::vector<double>> xi;
  for (double r : {0.5, 1.0, 3.0})
    for (int k = 0; k < 4; ++k) xi.push_back({r * std::cos(0.7 * k), r * std::sin(0.7 * k)});
  const auto c = t1_frequency_check(gaussian_window(1.0), xi);
  CHECK(c.max_deviation < 1e-6);
  CHECK(c.mean == Approx(c.expected).epsilon(1e-4));
  CHECK(c.expected == Approx(2.0 * pi * std::pow(pi, 1.5)).epsilon(1e-12));
  // Non-admissible window: h^(0) != 0, the response is still flat.
  CHECK(std::abs(window_ft(gaussian_window(1.0), 0.0)) > 1.0);
}

TEST_CASE("t1 reconstruction from an on-demand source") {
  const Grid g = make_grid(2, 32, 8.0);
  BPParams p;
  p.radii = 24;
  p.directions = 32;
  const AnalyticGaussianRaySource src(ph, gaussian_window(1.0));
  const auto r = reconstruct_t1(src, g, p);
  CHECK(rel_l2_error(r, sample_phantom(ph, g)) < 0.05);

  SUBCASE("linear in f") {
    const AnalyticGaussianRaySource src2(gaussian_phantom({0.3, -0.2}, 0.5, 2.0), gaussian_window(1.0));
    const auto r2 = reconstruct_t1(src2, g, p);
    for (std::size_t i = 0; i < r.values.size(); i += 97) CHECK(r2.values[i] == Approx(2.0 * r.values[i]).epsilon(1e-9));
  }
  SUBCASE("constant modes scale the same raw integral") {
    BPParams q = p;
    q.constant = {ConstantMode::paper, 1.0};
    const auto rp = reconstruct_t1(src, g, q);
    const double ratio = t1_paper_constant(gaussian_window(1.0), 2) / t1_derived_constant(gaussian_window(1.0), 2);
    for (std::size_t i = 0; i < r.values.size(); i += 101) CHECK(rp.values[i] == Approx(ratio * r.values[i]).epsilon(1e-9));
  }
}

TEST_CASE("stored polar data and on-demand sampling agree for the same radii") {
  const AnalyticGaussianRaySource src(ph, gaussian_window(1.0));
  BPParams p;
  p.r_min = 0.01;
  p.r_max = 1.5;
  p.radii = 12;
  p.directions = 16;
  const Grid u = make_grid(2, 112, 28.0);
  const auto d = sphere_directions(2, p.directions, true);
  const auto data = sample_wrt(src, u, polar_vset(d.directions, log_uniform(p.r_min, p.r_max, p.radii), d.weights));
  const Grid g = make_grid(2, 16, 6.0);
  CHECK(rel_l2_error(reconstruct_t1(data, g, p), reconstruct_t1(src, g, p)) < 0.01);

  const Grid small = make_grid(2, 32, 8.0);
  const auto cut = sample_wrt(src, small, polar_vset(d.directions, log_uniform(p.r_min, p.r_max, p.radii), d.weights));
  CHECK_THROWS_AS(reconstruct_t1(cut, g, p), CoverageError);
}

TEST_CASE("frame route agrees with the literal double integral") {
  const AnalyticGaussianRaySource src(ph, gaussian_window(1.0));
  BPParams p;
  p.radii = 12;
  p.directions = 16;
  const Grid g = make_grid(2, 16, 6.0);
  const auto r = reconstruct_t1(src, g, p);
  std::vector<std::vector<double>> pts;
  std::vector<double> want;
  for (std::size_t i : {0ul, 100ul, 136ul, 200ul}) {
    pts.push_back(g.point(i));
    want.push_back(r.values[i]);
  }
  const auto direct = reconstruct_t1_direct(src, pts, p);
  const double scale = *std::max_element(r.values.begin(), r.values.end());
  for (std::size_t k = 0; k < pts.size(); ++k) CHECK(std::abs(direct[k] - want[k]) < 3e-3 * scale);
}

TEST_CASE("t1 rejects the analytic-signal window") {
  const AnalyticGaussianRaySource src(ph, gaussian_window(1.0));
  const auto d = sphere_directions(2, 4, true);
  const auto data = windowed_ray_transform(ph, analytic_signal_window(), make_grid(2, 8, 4.0),
                                           polar_vset(d.directions, {1.0, 2.0}, d.weights));
  CHECK_THROWS_WITH_AS(reconstruct_t1(data, make_grid(2, 8, 4.0), BPParams{}),
                       doctest::Contains("analytic-signal window is forward-only"), HypothesisError);
}

TEST_CASE("BPParams validation") {
  BPParams p;
  p.r_min = 2.0;
  p.r_max = 1.0;
  CHECK_THROWS_AS(p.validate(), InvalidArgument);
}
