#include "wrtkit/io.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstring>
#include <fstream>

#include "wrtkit/error.hpp"

namespace wrtkit {
namespace {

const json& field(const json& j, const char* key, const std::string& ctx) {
  if (!j.is_object()) throw InvalidArgument(ctx + ": expected a JSON object");
  const auto it = j.find(key);
  if (it == j.end()) throw InvalidArgument(ctx + ": missing field '" + key + "'");
  return *it;
}

double number(const json& j, const char* key, const std::string& ctx) {
  const json& v = field(j, key, ctx);
  if (!v.is_number()) throw InvalidArgument(ctx + ": field '" + key + "' must be a number");
  return v.get<double>();
}

double number_or(const json& j, const char* key, double fallback, const std::string& ctx) {
  return j.is_object() && j.contains(key) ? number(j, key, ctx) : fallback;
}

std::vector<double> numbers(const json& j, const char* key, const std::string& ctx) {
  const json& v = field(j, key, ctx);
  if (!v.is_array()) throw InvalidArgument(ctx + ": field '" + key + "' must be an array of numbers");
  std::vector<double> out;
  for (const auto& x : v) {
    if (!x.is_number()) throw InvalidArgument(ctx + ": field '" + key + "' must be an array of numbers");
    out.push_back(x.get<double>());
  }
  return out;
}

std::string text(const json& j, const char* key, const std::string& ctx) {
  const json& v = field(j, key, ctx);
  if (!v.is_string()) throw InvalidArgument(ctx + ": field '" + key + "' must be a string");
  return v.get<std::string>();
}

std::size_t count(const json& j, const char* key, const std::string& ctx) {
  const json& v = field(j, key, ctx);
  if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<long long>() >= 0))
    throw InvalidArgument(ctx + ": field '" + key + "' must be a non-negative integer");
  return v.get<std::size_t>();
}

void write_doubles(const fs::path& path, const double* data, std::size_t n) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw InvalidArgument("cannot write " + path.string());
  if constexpr (std::endian::native == std::endian::little) {
    os.write(reinterpret_cast<const char*>(data), static_cast<std::streamsize>(n * sizeof(double)));
  } else {
    for (std::size_t i = 0; i < n; ++i) {
      auto bits = std::bit_cast<std::uint64_t>(data[i]);
      bits = __builtin_bswap64(bits);
      os.write(reinterpret_cast<const char*>(&bits), sizeof bits);
    }
  }
  if (!os) throw InvalidArgument("write failed: " + path.string());
}

std::vector<double> read_doubles(const fs::path& path, std::size_t n) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw InvalidArgument("cannot read " + path.string());
  std::vector<double> v(n);
  is.read(reinterpret_cast<char*>(v.data()), static_cast<std::streamsize>(n * sizeof(double)));
  if (static_cast<std::size_t>(is.gcount()) != n * sizeof(double))
    throw InvalidArgument(path.string() + ": expected " + std::to_string(n) + " values");
  if (is.peek() != std::char_traits<char>::eof()) throw InvalidArgument(path.string() + ": trailing bytes");
  if constexpr (std::endian::native != std::endian::little)
    for (auto& x : v) x = std::bit_cast<double>(__builtin_bswap64(std::bit_cast<std::uint64_t>(x)));
  return v;
}

void write_complex(const fs::path& path, const std::vector<cplx>& v) {
  write_doubles(path, reinterpret_cast<const double*>(v.data()), 2 * v.size());
}

std::vector<cplx> read_complex(const fs::path& path, std::size_t n) {
  const auto d = read_doubles(path, 2 * n);
  std::vector<cplx> v(n);
  for (std::size_t i = 0; i < n; ++i) v[i] = {d[2 * i], d[2 * i + 1]};
  return v;
}

void prepare_dir(const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw InvalidArgument("cannot create " + dir.string() + ": " + ec.message());
}

json grid_fields(const Grid& g) { return {{"shape", g.shape}, {"origin", g.origin}, {"spacing", g.spacing}}; }

}  // namespace

json to_json(const Grid& g) { return grid_fields(g); }

Grid grid_from_json(const json& j) {
  const std::string ctx = "grid";
  Grid g;
  const auto shape = numbers(j, "shape", ctx);
  for (double s : shape) {
    if (s < 0 || s != std::floor(s)) throw InvalidArgument("grid: field 'shape' must hold non-negative integers");
    g.shape.push_back(static_cast<std::size_t>(s));
  }
  g.origin = numbers(j, "origin", ctx);
  g.spacing = numbers(j, "spacing", ctx);
  g.validate();
  return g;
}

json to_json(const WindowSpec& w) {
  json j{{"kind", std::string(to_string(w.kind))}};
  if (w.kind == WindowSpec::Kind::gaussian || w.kind == WindowSpec::Kind::hermite1) j["sigma"] = w.sigma;
  if (w.kind == WindowSpec::Kind::bump) j["radius"] = w.radius;
  if (w.amplitude != 1.0) j["amplitude"] = w.amplitude;
  return j;
}

WindowSpec window_from_json(const json& j) {
  const std::string ctx = "window";
  WindowSpec w;
  w.kind = window_kind_from_string(text(j, "kind", ctx));
  w.sigma = number_or(j, "sigma", 1.0, ctx);
  w.radius = number_or(j, "radius", 1.0, ctx);
  w.amplitude = number_or(j, "amplitude", 1.0, ctx);
  w.validate();
  return w;
}

json to_json(const PhantomSpec& f) {
  auto bump = [](const GaussianBump& b) {
    return json{{"center", b.center}, {"sigma", b.sigma}, {"amplitude", b.amplitude}};
  };
  switch (f.kind) {
    case PhantomSpec::Kind::gaussian: {
      json j = bump(f.bumps.front());
      j["kind"] = "gaussian";
      return j;
    }
    case PhantomSpec::Kind::gaussian_mixture: {
      json arr = json::array();
      for (const auto& b : f.bumps) arr.push_back(bump(b));
      return {{"kind", "gaussian-mixture"}, {"bumps", arr}};
    }
    case PhantomSpec::Kind::smoothed_disk:
      return {{"kind", "smoothed-disk"},
              {"center", f.disk.center},
              {"radius", f.disk.radius},
              {"width", f.disk.width},
              {"amplitude", f.disk.amplitude}};
  }
  return {};
}

PhantomSpec phantom_from_json(const json& j) {
  const std::string ctx = "phantom";
  const std::string kind = text(j, "kind", ctx);
  auto bump = [](const json& b, const std::string& c) {
    return GaussianBump{numbers(b, "center", c), number(b, "sigma", c), number_or(b, "amplitude", 1.0, c)};
  };
  PhantomSpec f;
  if (kind == "gaussian") {
    const auto b = bump(j, ctx);
    f = gaussian_phantom(b.center, b.sigma, b.amplitude);
  } else if (kind == "gaussian-mixture") {
    const json& arr = field(j, "bumps", ctx);
    if (!arr.is_array() || arr.empty()) throw InvalidArgument("phantom: field 'bumps' must be a non-empty array");
    std::vector<GaussianBump> bumps;
    for (std::size_t i = 0; i < arr.size(); ++i) bumps.push_back(bump(arr[i], ctx + ".bumps[" + std::to_string(i) + "]"));
    f = gaussian_mixture(std::move(bumps));
  } else if (kind == "smoothed-disk") {
    f = smoothed_disk(numbers(j, "center", ctx), number(j, "radius", ctx), number(j, "width", ctx),
                      number_or(j, "amplitude", 1.0, ctx));
  } else {
    throw InvalidArgument("phantom: field 'kind' must be gaussian|gaussian-mixture|smoothed-disk, got '" + kind + "'");
  }
  f.validate();
  return f;
}

json to_json(const VSet& v) {
  switch (v.mode) {
    case VSet::Mode::full_grid:
      return {{"mode", "full-grid"}, {"v_grid", to_json(v.v_grid)}};
    case VSet::Mode::polar: {
      json j{{"mode", "polar"}, {"directions", v.directions}, {"radii", v.radii}};
      if (!v.direction_weights.empty()) j["direction_weights"] = v.direction_weights;
      return j;
    }
    case VSet::Mode::v1_line:
      return {{"mode", "v1-line"}, {"v1", v.v1}, {"vprime", v.vprime}};
    case VSet::Mode::perp:
      return {{"mode", "perp"}, {"rho", v.rho}, {"theta_count", v.theta_count}};
  }
  return {};
}

VSet vset_from_json(const json& j) {
  const std::string ctx = "vset";
  const std::string mode = text(j, "mode", ctx);
  VSet v;
  if (mode == "full-grid") {
    v.mode = VSet::Mode::full_grid;
    v.v_grid = grid_from_json(field(j, "v_grid", ctx));
  } else if (mode == "polar") {
    v.mode = VSet::Mode::polar;
    const json& d = field(j, "directions", ctx);
    if (!d.is_array()) throw InvalidArgument("vset: field 'directions' must be an array of vectors");
    for (const auto& row : d) {
      if (!row.is_array()) throw InvalidArgument("vset: field 'directions' must be an array of vectors");
      std::vector<double> x;
      for (const auto& c : row) {
        if (!c.is_number()) throw InvalidArgument("vset: field 'directions' must hold numbers");
        x.push_back(c.get<double>());
      }
      v.directions.push_back(std::move(x));
    }
    v.radii = numbers(j, "radii", ctx);
    if (j.contains("direction_weights")) v.direction_weights = numbers(j, "direction_weights", ctx);
  } else if (mode == "v1-line") {
    v.mode = VSet::Mode::v1_line;
    v.v1 = numbers(j, "v1", ctx);
    v.vprime = numbers(j, "vprime", ctx);
  } else if (mode == "perp") {
    v.mode = VSet::Mode::perp;
    v.rho = numbers(j, "rho", ctx);
    v.theta_count = count(j, "theta_count", ctx);
  } else {
    throw InvalidArgument("vset: field 'mode' must be full-grid|polar|v1-line|perp, got '" + mode + "'");
  }
  return v;
}

json read_json_file(const fs::path& path) {
  std::ifstream is(path);
  if (!is) throw InvalidArgument("cannot read " + path.string());
  try {
    return json::parse(is);
  } catch (const json::parse_error& e) {
    throw InvalidArgument(path.string() + ": malformed JSON: " + e.what());
  }
}

void write_json_file(const fs::path& path, const json& j) {
  std::ofstream os(path);
  if (!os) throw InvalidArgument("cannot write " + path.string());
  os << j.dump(2) << '\n';
}

void write_gf1(const fs::path& dir, const ScalarField& f) {
  f.validate();
  prepare_dir(dir);
  json meta = grid_fields(f.grid);
  meta["format"] = "gf1";
  meta["kind"] = "scalar";
  meta["n"] = f.grid.dim();
  meta["dtype"] = "f64";
  meta["order"] = "C";
  write_json_file(dir / "meta.json", meta);
  write_doubles(dir / "values.bin", f.values.data(), f.values.size());
}

void write_gf1(const fs::path& dir, const SpectralField& f) {
  prepare_dir(dir);
  json meta = grid_fields(f.grid);
  meta["format"] = "gf1";
  meta["kind"] = "spectral";
  meta["n"] = f.grid.dim();
  meta["dtype"] = "c128";
  meta["order"] = "C";
  meta["convention"] = SpectralField::convention;
  meta["spatial"] = grid_fields(f.spatial);
  write_json_file(dir / "meta.json", meta);
  write_complex(dir / "values.bin", f.values);
}

namespace {

json gf1_meta(const fs::path& dir, const char* kind) {
  const json meta = read_json_file(dir / "meta.json");
  if (!meta.is_object() || meta.value("format", "") != "gf1") throw InvalidArgument("gf1: field 'format' must be \"gf1\"");
  if (text(meta, "kind", "gf1") != kind) throw InvalidArgument(std::string("gf1: field 'kind' must be ") + kind);
  if (text(meta, "order", "gf1") != "C") throw InvalidArgument("gf1: field 'order' must be \"C\"");
  return meta;
}

}  // namespace

std::string gf1_kind(const fs::path& dir) {
  const json meta = read_json_file(dir / "meta.json");
  return text(meta, "kind", "gf1");
}

ScalarField read_gf1_scalar(const fs::path& dir) {
  const json meta = gf1_meta(dir, "scalar");
  if (text(meta, "dtype", "gf1") != "f64") throw InvalidArgument("gf1: scalar field needs dtype f64");
  Grid g = grid_from_json(meta);
  if (count(meta, "n", "gf1") != g.dim()) throw InvalidArgument("gf1: field 'n' does not match 'shape'");
  auto v = read_doubles(dir / "values.bin", g.size());
  return ScalarField(std::move(g), std::move(v));
}

SpectralField read_gf1_spectral(const fs::path& dir) {
  const json meta = gf1_meta(dir, "spectral");
  if (text(meta, "dtype", "gf1") != "c128") throw InvalidArgument("gf1: spectral field needs dtype c128");
  SpectralField f;
  f.grid = grid_from_json(meta);
  f.spatial = meta.contains("spatial") ? grid_from_json(meta["spatial"]) : f.grid;
  f.values = read_complex(dir / "values.bin", f.grid.size());
  return f;
}

void write_wrt1(const fs::path& dir, const WRTData& d) {
  d.validate();
  prepare_dir(dir);
  json meta{{"format", "wrt1"},
            {"u_grid", d.vset.mode == VSet::Mode::perp ? json(nullptr) : to_json(d.u_grid)},
            {"vset", to_json(d.vset)},
            {"window", to_json(d.window)},
            {"dtype", d.is_complex() ? "c128" : "f64"}};
  write_json_file(dir / "meta.json", meta);
  if (d.is_complex()) {
    write_complex(dir / "values.bin", d.values);
  } else {
    std::vector<double> re(d.values.size());
    for (std::size_t i = 0; i < re.size(); ++i) re[i] = d.values[i].real();
    write_doubles(dir / "values.bin", re.data(), re.size());
  }
}

WRTData read_wrt1(const fs::path& dir) {
  const json meta = read_json_file(dir / "meta.json");
  if (!meta.is_object() || meta.value("format", "") != "wrt1") throw InvalidArgument("wrt1: field 'format' must be \"wrt1\"");
  WRTData d;
  d.vset = vset_from_json(field(meta, "vset", "wrt1"));
  d.window = window_from_json(field(meta, "window", "wrt1"));
  const json& ug = field(meta, "u_grid", "wrt1");
  if (d.vset.mode != VSet::Mode::perp) {
    if (ug.is_null()) throw InvalidArgument("wrt1: field 'u_grid' is required unless the v-set is perp");
    d.u_grid = grid_from_json(ug);
  }
  const std::string dtype = text(meta, "dtype", "wrt1");
  const std::size_t n = d.vset.size() * (d.vset.mode == VSet::Mode::perp ? 1 : d.u_grid.size());
  if (dtype == "c128") {
    d.values = read_complex(dir / "values.bin", n);
  } else if (dtype == "f64") {
    const auto re = read_doubles(dir / "values.bin", n);
    d.values.assign(re.begin(), re.end());
  } else {
    throw InvalidArgument("wrt1: field 'dtype' must be f64 or c128");
  }
  d.validate();
  return d;
}

void write_pss1(const fs::path& dir, const PolarSpectralSamples& s) {
  s.validate();
  prepare_dir(dir);
  json meta{{"format", "pss1"},
            {"directions", s.directions},
            {"direction_weights", s.direction_weights},
            {"sigma", s.sigma},
            {"radii", s.radii},
            {"dtype", "c128"},
            {"order", "direction,sigma,radius"}};
  write_json_file(dir / "meta.json", meta);
  write_complex(dir / "values.bin", s.values);
}

PolarSpectralSamples read_pss1(const fs::path& dir) {
  const json meta = read_json_file(dir / "meta.json");
  if (!meta.is_object() || meta.value("format", "") != "pss1") throw InvalidArgument("pss1: field 'format' must be \"pss1\"");
  PolarSpectralSamples s;
  const VSet v = vset_from_json({{"mode", "polar"}, {"directions", field(meta, "directions", "pss1")}, {"radii", json::array({1.0})}});
  s.directions = v.directions;
  s.direction_weights = numbers(meta, "direction_weights", "pss1");
  s.sigma = numbers(meta, "sigma", "pss1");
  s.radii = numbers(meta, "radii", "pss1");
  s.values = read_complex(dir / "values.bin", s.directions.size() * s.sigma.size() * s.radii.size());
  s.validate();
  return s;
}

void write_pgm(const fs::path& path, const ScalarField& f) {
  f.validate();
  if (f.grid.dim() != 2) throw InvalidArgument("pgm: field must be 2-D");
  const auto [lo_it, hi_it] = std::minmax_element(f.values.begin(), f.values.end());
  const double lo = *lo_it, hi = *hi_it, span = hi > lo ? hi - lo : 1.0;
  const std::size_t rows = f.grid.shape[0], cols = f.grid.shape[1];
  std::ofstream os(path, std::ios::binary);
  if (!os) throw InvalidArgument("cannot write " + path.string());
  os << "P5\n" << cols << ' ' << rows << "\n255\n";
  for (double v : f.values) {
    const auto b = static_cast<unsigned char>(std::lround(255.0 * (v - lo) / span));
    os.put(static_cast<char>(b));
  }
  json side{{"min", lo}, {"max", hi}, {"scale", "linear"}, {"rows", rows}, {"cols", cols}, {"grid", to_json(f.grid)}};
  write_json_file(fs::path(path.string() + ".json"), side);
}

}  // namespace wrtkit
