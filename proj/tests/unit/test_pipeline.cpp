#include <doctest.h>

#include "wrtkit/calibrate.hpp"
#include "wrtkit/error.hpp"
#include "wrtkit/pipeline.hpp"
#include "wrtkit/selftest.hpp"

using namespace wrtkit;

TEST_CASE("method names") {
  for (Method m : {Method::t1, Method::t2, Method::slice, Method::mellin}) CHECK(parse_method(to_string(m)) == m);
  CHECK_THROWS_AS(parse_method("radon"), InvalidArgument);
}

TEST_CASE("method-window compatibility") {
  for (Method m : {Method::t1, Method::t2, Method::slice, Method::mellin})
    CHECK_THROWS_AS(check_method_window(m, analytic_signal_window()), HypothesisError);
  CHECK_NOTHROW(check_method_window(Method::t1, hermite1_window(1.0)));
  CHECK_NOTHROW(check_method_window(Method::slice, gaussian_window(1.0)));
  CHECK_THROWS_AS(check_method_window(Method::mellin, gaussian_window(1.0)), HypothesisError);
  CHECK_NOTHROW(check_method_window(Method::mellin, bump_window(1.0)));
}

TEST_CASE("method-data compatibility") {
  const auto ph = gaussian_phantom({0, 0}, 0.5);
  const auto d = sphere_directions(2, 4, true);
  const auto polar = windowed_ray_transform(ph, gaussian_window(1.0), make_grid(2, 8, 4.0), polar_vset(d.directions, {1.0}, d.weights));
  const auto line = windowed_ray_transform(ph, gaussian_window(1.0), make_grid(2, 8, 4.0), v1_line_vset({-1.0, 1.0}, {0.0}));
  CHECK_NOTHROW(check_method_data(Method::t1, polar));
  CHECK_NOTHROW(check_method_data(Method::t2, polar));
  CHECK_THROWS_AS(check_method_data(Method::slice, polar), InvalidArgument);
  CHECK_THROWS_AS(check_method_data(Method::mellin, polar), InvalidArgument);
  CHECK_NOTHROW(check_method_data(Method::slice, line));
  CHECK_THROWS_AS(check_method_data(Method::t1, line), InvalidArgument);
}

TEST_CASE("ray source selection") {
  const auto ph = gaussian_phantom({0, 0}, 0.5);
  CHECK(dynamic_cast<const AnalyticGaussianRaySource*>(make_ray_source(ph, gaussian_window(1.0)).get()));
  CHECK(dynamic_cast<const QuadratureRaySource*>(make_ray_source(ph, bump_window(1.0)).get()));
  CHECK(dynamic_cast<const QuadratureRaySource*>(make_ray_source(smoothed_disk({0, 0}, 1, 0.1), gaussian_window(1.0)).get()));
}

TEST_CASE("fit_alpha") {
  const Grid g = make_grid(2, 8, 4.0);
  const auto ref = sample_phantom(gaussian_phantom({0, 0}, 0.5), g);
  ScalarField raw = ref;
  for (auto& v : raw.values) v *= 4.0;
  CHECK(fit_alpha(raw, ref) == doctest::Approx(0.25));
  CHECK_THROWS_AS(fit_alpha(raw, sample_phantom(gaussian_phantom({0, 0}, 0.5, 0.0), g)), DegenerateReference);
}

TEST_CASE("calibration needs three phantoms and a t1/t2 method") {
  const Grid g = make_grid(2, 16, 8.0);
  auto two = calibration_phantoms(2);
  two.pop_back();
  CHECK_THROWS_AS(calibrate(Method::t1, two, gaussian_window(1.0), g, {}), InvalidArgument);
  CHECK_THROWS_AS(calibrate(Method::slice, calibration_phantoms(2), gaussian_window(1.0), g, {}), InvalidArgument);
}

TEST_CASE("seed offset") {
  CHECK(seed_offset(0) == 0.0);
  CHECK(seed_offset(5) == seed_offset(5));
  CHECK(seed_offset(5) != seed_offset(6));
  CHECK(seed_offset(5) >= 0.0);
  CHECK(seed_offset(5) < 1.0);
}
