#include <doctest.h>

#include <fstream>

#include "tmpdir.hpp"
#include "wrtkit/error.hpp"
#include "wrtkit/fourier.hpp"
#include "wrtkit/io.hpp"

using namespace wrtkit;

TEST_CASE("window and phantom JSON round trip") {
  for (const auto& w : {gaussian_window(0.7), hermite1_window(1.3), bump_window(2.0), analytic_signal_window()})
    CHECK(window_from_json(to_json(w)) == w);
  const auto m = gaussian_mixture({{{1.0, 0.5}, 0.4, 1.0}, {{-1.0, 0.5}, 0.3, 0.7}});
  CHECK(to_json(phantom_from_json(to_json(m))) == to_json(m));
  const auto d = smoothed_disk({0.0, 0.1, 0.2}, 1.0, 0.1);
  CHECK(to_json(phantom_from_json(to_json(d))) == to_json(d));
}

TEST_CASE("malformed specs name the offending field") {
  CHECK_THROWS_WITH_AS(phantom_from_json(json{{"kind", "gaussian"}, {"center", {0, 0}}}),
                       doctest::Contains("'sigma'"), InvalidArgument);
  CHECK_THROWS_WITH_AS(phantom_from_json(json{{"kind", "gaussian"}, {"center", "x"}, {"sigma", 1}}),
                       doctest::Contains("'center'"), InvalidArgument);
  CHECK_THROWS_WITH_AS(phantom_from_json(json{{"kind", "blob"}}), doctest::Contains("'kind'"), InvalidArgument);
  CHECK_THROWS_WITH_AS(window_from_json(json{{"kind", "gaussian"}, {"sigma", "wide"}}), doctest::Contains("'sigma'"),
                       InvalidArgument);
  CHECK_THROWS_WITH_AS(vset_from_json(json{{"mode", "spiral"}}), doctest::Contains("'mode'"), InvalidArgument);
}

TEST_CASE("v-set JSON round trip") {
  const auto d = sphere_directions(2, 4, true);
  for (const VSet& v : {polar_vset(d.directions, {0.5, 1.0}, d.weights), v1_line_vset({-1.0, 0.0, 1.0}, {0.25}),
                        full_grid_vset(make_grid(2, 4, 2.0))})
    CHECK(to_json(vset_from_json(to_json(v))) == to_json(v));
}

TEST_CASE("GF1 scalar and spectral round trip is bit-exact") {
  TempDir tmp;
  const auto f = sample_phantom(gaussian_phantom({0.3, -0.2}, 0.5), make_grid(2, 16, 4.0));
  write_gf1(tmp / "f", f);
  CHECK(gf1_kind(tmp / "f") == "scalar");
  const auto back = read_gf1_scalar(tmp / "f");
  CHECK(back.grid.same_as(f.grid, 0.0));
  CHECK(back.values == f.values);

  const auto s = continuous_ft(f);
  write_gf1(tmp / "s", s);
  CHECK(gf1_kind(tmp / "s") == "spectral");
  const auto sb = read_gf1_spectral(tmp / "s");
  CHECK(sb.values == s.values);
  CHECK(sb.spatial.same_as(s.spatial, 0.0));
  CHECK_THROWS_AS(read_gf1_scalar(tmp / "s"), InvalidArgument);
}

TEST_CASE("WRT1 round trip for every v-set mode") {
  TempDir tmp;
  const auto ph = gaussian_phantom({0.3, -0.2}, 0.5);
  const auto d = sphere_directions(2, 4, true);
  const Grid u = make_grid(2, 8, 4.0);
  int k = 0;
  for (const auto& w : {gaussian_window(1.0), analytic_signal_window()})
    for (const VSet& v : {polar_vset(d.directions, {0.5, 1.0}, d.weights), v1_line_vset({-1.0, 1.0}, {0.0}),
                          full_grid_vset(make_grid(2, 2, 2.0, 0.3))}) {
      const auto data = windowed_ray_transform(ph, w, u, v);
      const std::string dir = tmp / ("w" + std::to_string(k++));
      write_wrt1(dir, data);
      const auto back = read_wrt1(dir);
      CHECK(back.values == data.values);
      CHECK(back.window == data.window);
      CHECK(back.u_grid.same_as(data.u_grid, 0.0));
    }
  const double rho[] = {0.5, 1.0};
  const auto perp = to_wrt_data(wrt_polar_perp(ph, bump_window(1.0), rho, 8));
  write_wrt1(tmp / "perp", perp);
  const auto pb = read_wrt1(tmp / "perp");
  CHECK(pb.vset.mode == VSet::Mode::perp);
  CHECK(pb.values == perp.values);
}

TEST_CASE("pss1 round trip") {
  TempDir tmp;
  SpectrumGeometry g;
  g.directions = 4;
  g.sigma = {0.0, 1.0};
  g.radii = {0.5, 1.0};
  const auto s = extract_polar_spectrum(AnalyticGaussianRaySource(gaussian_phantom({0, 0}, 0.5), gaussian_window(1.0)), g);
  write_pss1(tmp / "p", s);
  const auto b = read_pss1(tmp / "p");
  CHECK(b.values == s.values);
  CHECK(b.sigma == s.sigma);
  CHECK(b.directions == s.directions);
}

TEST_CASE("PGM export with min-max sidecar") {
  TempDir tmp;
  const auto f = sample_phantom(gaussian_phantom({0, 0}, 0.5), make_grid(2, 6, 4.0));
  write_pgm(tmp / "f.pgm", f);
  std::ifstream is(tmp / "f.pgm", std::ios::binary);
  std::string magic;
  std::size_t cols, rows, maxv;
  is >> magic >> cols >> rows >> maxv;
  CHECK(magic == "P5");
  CHECK(cols == 6);
  CHECK(rows == 6);
  CHECK(maxv == 255);
  const json side = read_json_file(tmp / "f.pgm.json");
  CHECK(side["max"].get<double>() == doctest::Approx(*std::max_element(f.values.begin(), f.values.end())));
}

TEST_CASE("unreadable input") {
  TempDir tmp;
  CHECK_THROWS_AS(read_json_file(tmp / "missing.json"), InvalidArgument);
  std::ofstream(tmp / "bad.json") << "{\"kind\": ";
  CHECK_THROWS_AS(read_json_file(tmp / "bad.json"), InvalidArgument);
}
