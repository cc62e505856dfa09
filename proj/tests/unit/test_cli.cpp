#include <doctest.h>

#include <fstream>
#include <iterator>
#include <sstream>

#include "cli.hpp"
#include "tmpdir.hpp"
#include "wrtkit/io.hpp"

using namespace wrtkit;

namespace {

struct Run {
  int code;
  std::string out, err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string bytes(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  return {std::istreambuf_iterator<char>(is), {}};
}

const std::string gauss = R"({"kind":"gaussian","center":[0.3,-0.2],"sigma":0.5})";

}  // namespace

TEST_CASE("help and usage errors") {
  CHECK(run({"--help"}).code == 0);
  CHECK(run({}).code == 1);
  CHECK(run({"frobnicate"}).code == 1);
  CHECK(run({"phantom", "--size", "many"}).code == 1);
}

TEST_CASE("phantom") {
  TempDir tmp;
  auto r = run({"phantom", "--spec", gauss, "--size", "64", "--out", tmp / "f"});
  CHECK(r.code == 0);
  CHECK(r.out.find("[64, 64]") != std::string::npos);
  CHECK(read_gf1_scalar(tmp / "f").grid.shape == std::vector<std::size_t>{64, 64});

  r = run({"phantom", "--spec", R"({"kind":"gaussian","center":[0,0]})", "--out", tmp / "g"});
  CHECK(r.code == 1);
  CHECK(r.err.find("'sigma'") != std::string::npos);
  CHECK(run({"phantom", "--spec", "{\"kind\":", "--out", tmp / "g"}).code == 1);
}

TEST_CASE("mixture spec is the sum of its bumps") {
  TempDir tmp;
  REQUIRE(run({"phantom", "--size", "32", "--out", tmp / "m", "--spec",
               R"({"kind":"gaussian-mixture","bumps":[{"center":[1,0],"sigma":0.4},{"center":[-1,0.5],"sigma":0.3,"amplitude":0.5}]})"})
              .code == 0);
  REQUIRE(run({"phantom", "--size", "32", "--out", tmp / "a", "--spec", R"({"kind":"gaussian","center":[1,0],"sigma":0.4})"}).code == 0);
  REQUIRE(run({"phantom", "--size", "32", "--out", tmp / "b", "--spec",
               R"({"kind":"gaussian","center":[-1,0.5],"sigma":0.3,"amplitude":0.5})"})
              .code == 0);
  const auto m = read_gf1_scalar(tmp / "m"), a = read_gf1_scalar(tmp / "a"), b = read_gf1_scalar(tmp / "b");
  for (std::size_t i = 0; i < m.values.size(); ++i) CHECK(m.values[i] == doctest::Approx(a.values[i] + b.values[i]).epsilon(1e-15));
}

TEST_CASE("forward shapes, dtype and oracle") {
  TempDir tmp;
  auto r = run({"forward", "--phantom", gauss, "--size", "64", "--dirs", "8", "--nr", "4", "--out", tmp / "p", "--oracle", "--json"});
  REQUIRE(r.code == 0);
  const json rep = json::parse(r.out);
  CHECK(rep["values"].get<std::size_t>() == 4096 * 32);
  CHECK(rep["oracle_max_rel_deviation"].get<double>() <= 1e-8);
  CHECK(read_wrt1(tmp / "p").values.size() == 4096 * 32);

  r = run({"forward", "--phantom", gauss, "--size", "8", "--window", "analytic-signal", "--out", tmp / "c"});
  CHECK(r.code == 0);
  CHECK(r.out.find("c128") != std::string::npos);

  r = run({"forward", "--phantom", gauss, "--size", "16", "--panels", "1", "--order", "2", "--r-max", "6", "--out", tmp / "q"});
  CHECK(r.code == 2);
  CHECK(r.err.find("quadrature did not converge") != std::string::npos);
}

TEST_CASE("invert validates method against window and data") {
  TempDir tmp;
  auto r = run({"invert", "mellin", "--phantom", gauss, "--out", tmp / "x"});
  CHECK(r.code == 2);
  CHECK(r.err.find("requires a compactly supported, not-odd window") != std::string::npos);

  r = run({"invert", "slice", "--phantom", gauss, "--window", "hermite1", "--a", "0", "--out", tmp / "x"});
  CHECK(r.code == 2);
  CHECK(r.err.find("window vanishes at a") != std::string::npos);

  for (std::string m : {"t1", "t2", "slice", "mellin"}) {
    r = run({"invert", m, "--phantom", gauss, "--window", "analytic-signal", "--out", tmp / "x"});
    CHECK(r.code == 2);
    CHECK(r.err.find("analytic-signal") != std::string::npos);
  }

  REQUIRE(run({"forward", "--phantom", gauss, "--size", "16", "--vmode", "v1-line", "--nv", "8", "--out", tmp / "v"}).code == 0);
  r = run({"invert", "t1", "--in", tmp / "v", "--out", tmp / "x"});
  CHECK(r.code == 1);
  CHECK(r.err.find("polar") != std::string::npos);
  CHECK(run({"invert", "t9", "--phantom", gauss, "--out", tmp / "x"}).code == 1);
}

TEST_CASE("invert prints the constant mode and slice settings") {
  TempDir tmp;
  auto r = run({"invert", "slice", "--phantom", gauss, "--size", "16", "--apodize", "kaiser:6", "--V", "8", "--out", tmp / "s"});
  REQUIRE(r.code == 0);
  CHECK(r.out.find("apodization kaiser:6") != std::string::npos);
  CHECK(r.out.find("V 8") != std::string::npos);

  REQUIRE(run({"forward", "--phantom", gauss, "--size", "48", "--extent", "24", "--dirs", "16", "--nr", "12", "--r-min", "0.02",
               "--r-max", "1", "--out", tmp / "p"})
              .code == 0);
  r = run({"invert", "t1", "--in", tmp / "p", "--size", "16", "--extent", "6", "--constant", "paper", "--out", tmp / "r"});
  REQUIRE(r.code == 0);
  CHECK(r.out.find("constant paper") != std::string::npos);
}

TEST_CASE("compare") {
  TempDir tmp;
  REQUIRE(run({"phantom", "--spec", gauss, "--size", "16", "--out", tmp / "f"}).code == 0);
  REQUIRE(run({"phantom", "--spec", R"({"kind":"gaussian","center":[0.3,-0.2],"sigma":0.5,"amplitude":1.1})", "--size", "16",
               "--out", tmp / "g"})
              .code == 0);
  REQUIRE(run({"phantom", "--spec", gauss, "--size", "17", "--out", tmp / "h"}).code == 0);

  auto r = run({"compare", tmp / "f", tmp / "f", "--json"});
  REQUIRE(r.code == 0);
  CHECK(json::parse(r.out)["rel_l2"].get<double>() == 0.0);

  r = run({"compare", tmp / "g", tmp / "f", "--json", "--pgm", tmp / "d.pgm"});
  REQUIRE(r.code == 0);
  CHECK(json::parse(r.out)["rel_l2"].get<double>() == doctest::Approx(0.1).epsilon(1e-12));
  CHECK(std::filesystem::exists(tmp / "d.pgm"));

  CHECK(run({"compare", tmp / "f", tmp / "h"}).code == 1);
}

TEST_CASE("compare matches the library metric exactly") {
  TempDir tmp;
  REQUIRE(run({"phantom", "--spec", gauss, "--size", "24", "--out", tmp / "f"}).code == 0);
  REQUIRE(run({"invert", "t2", "--phantom", gauss, "--size", "24", "--t2-dirs", "60", "--nsigma", "48", "--out", tmp / "r"}).code == 0);
  const auto r = run({"compare", tmp / "r", tmp / "f", "--json"});
  REQUIRE(r.code == 0);
  CHECK(json::parse(r.out)["rel_l2"].get<double>() == rel_l2_error(read_gf1_scalar(tmp / "r"), read_gf1_scalar(tmp / "f")));
}

TEST_CASE("calibrate") {
  TempDir tmp;
  auto r = run({"calibrate", "t1", "--size", "24", "--json", "--out", tmp / "c.json"});
  REQUIRE(r.code == 0);
  const json rep = read_json_file(tmp / "c.json");
  CHECK(rep["alphas"].size() == 3);
  CHECK(rep["cv"].get<double>() <= 0.02);
  CHECK(rep.contains("ratio"));
  CHECK(rep.contains("paper_constant"));

  r = run({"calibrate", "t1", "--size", "24", "--phantoms",
           R"([{"kind":"gaussian","center":[0,0],"sigma":1},{"kind":"gaussian","center":[0,0],"sigma":1,"amplitude":0},{"kind":"gaussian","center":[1,0],"sigma":0.7}])"});
  CHECK(r.code == 1);
  CHECK(run({"calibrate", "slice"}).code == 1);
}

TEST_CASE("identical inputs and seed give bit-identical outputs") {
  TempDir tmp;
  for (const char* name : {"a", "b"}) {
    REQUIRE(run({"forward", "--phantom", gauss, "--size", "24", "--dirs", "6", "--seed", "7", "--out", tmp / (std::string("w") + name)}).code == 0);
    REQUIRE(run({"invert", "t1", "--phantom", gauss, "--size", "16", "--seed", "7", "--threads", "2", "--out", tmp / (std::string("r") + name)})
                .code == 0);
  }
  CHECK(bytes(tmp / "wa/values.bin") == bytes(tmp / "wb/values.bin"));
  CHECK(bytes(tmp / "ra/values.bin") == bytes(tmp / "rb/values.bin"));
}
