#include "cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "wrtkit/calibrate.hpp"
#include "wrtkit/error.hpp"
#include "wrtkit/io.hpp"
#include "wrtkit/log.hpp"
#include "wrtkit/parallel.hpp"
#include "wrtkit/pipeline.hpp"
#include "wrtkit/selftest.hpp"

namespace wrtkit::cli {
namespace {

struct Common {
  std::string out;
  std::uint64_t seed = 0;
  unsigned threads = 0;
  bool json = false;
};

struct GridOpts {
  std::size_t size = 64;
  double extent = 8.0;
  std::vector<double> center;
};

void add_common(CLI::App* app, Common& c) {
  app->add_option("--out", c.out, "output path");
  app->add_option("--seed", c.seed, "seed for direction jitter (0: none)");
  app->add_option("--threads", c.threads, "worker threads (0: WRTKIT_THREADS or all cores)");
  app->add_flag("--json", c.json, "machine-readable report on stdout");
}

void add_grid(CLI::App* app, GridOpts& g, const std::string& what) {
  app->add_option("--size", g.size, what + " samples per axis")->capture_default_str();
  app->add_option("--extent", g.extent, what + " extent per axis")->capture_default_str();
  app->add_option("--center", g.center, what + " centre (one value per axis)");
}

Grid make_out_grid(const GridOpts& g, std::size_t n) {
  if (!g.center.empty() && g.center.size() != n)
    throw InvalidArgument("--center needs " + std::to_string(n) + " values");
  std::vector<std::size_t> shape(n, g.size);
  std::vector<double> ext(n, g.extent);
  return make_grid(shape, ext, g.center);
}

json load_json_arg(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\n");
  if (first != std::string::npos && (s[first] == '{' || s[first] == '[')) {
    try {
      return json::parse(s);
    } catch (const json::parse_error& e) {
      throw InvalidArgument(std::string("malformed JSON argument: ") + e.what());
    }
  }
  return read_json_file(s);
}

WindowSpec window_arg(const std::string& s) {
  if (s == "gaussian" || s == "hermite1" || s == "bump" || s == "analytic-signal") return window_from_json({{"kind", s}});
  return window_from_json(load_json_arg(s));
}

void require_out(const Common& c) {
  if (c.out.empty()) throw InvalidArgument("--out is required");
}

std::string list(const std::vector<std::size_t>& v) {
  std::ostringstream os;
  os << '[';
  for (std::size_t i = 0; i < v.size(); ++i) os << (i ? ", " : "") << v[i];
  os << ']';
  return os.str();
}

std::string list(const std::vector<double>& v) {
  std::ostringstream os;
  os << '[';
  for (std::size_t i = 0; i < v.size(); ++i) os << (i ? ", " : "") << v[i];
  os << ']';
  return os.str();
}

// phantom ------------------------------------------------------------------------------------

struct PhantomOpts {
  Common c;
  GridOpts g;
  std::string spec, pgm;
};

int cmd_phantom(const PhantomOpts& o, std::ostream& out) {
  require_out(o.c);
  const PhantomSpec f = phantom_from_json(load_json_arg(o.spec));
  const ScalarField field = sample_phantom(f, make_out_grid(o.g, f.dim()));
  write_gf1(o.c.out, field);
  if (!o.pgm.empty()) write_pgm(o.pgm, field);
  if (o.c.json) {
    out << json{{"out", o.c.out}, {"grid", to_json(field.grid)}}.dump(2) << '\n';
  } else {
    out << "wrote " << o.c.out << ": shape " << list(field.grid.shape) << " origin " << list(field.grid.origin)
        << " spacing " << list(field.grid.spacing) << '\n';
  }
  return 0;
}

// forward ------------------------------------------------------------------------------------

struct ForwardOpts {
  Common c;
  GridOpts g;
  std::string phantom, field, window = "gaussian", vmode = "polar";
  std::size_t dirs = 8, nr = 4;
  double r_min = 0.5, r_max = 4.0;
  bool full_circle = false;
  std::size_t v_size = 8;
  double v_extent = 4.0;
  double V = 16.0;
  std::size_t nv = 64;
  std::vector<double> vprime;
  double rho_min = 1.5e-8, rho_max = 3.5;
  std::size_t nrho = 600, ntheta = 64;
  std::size_t panels = 32, order = 16;
  bool oracle = false;
};

VSet forward_vset(const ForwardOpts& o, std::size_t n) {
  if (o.vmode == "polar") {
    const auto d = sphere_directions(n, o.dirs, !o.full_circle, seed_offset(o.c.seed));
    return polar_vset(d.directions, log_uniform(o.r_min, o.r_max, o.nr), d.weights);
  }
  if (o.vmode == "full-grid") return full_grid_vset(make_grid(n, o.v_size, o.v_extent, 0.0));
  if (o.vmode == "v1-line") {
    std::vector<double> vp = o.vprime.empty() ? std::vector<double>(n - 1, 0.0) : o.vprime;
    if (vp.size() != n - 1) throw InvalidArgument("--vprime needs n-1 values");
    return v1_line_vset(midpoint_v1_grid(o.V, o.nv), vp);
  }
  if (o.vmode == "perp") {
    VSet v;
    v.mode = VSet::Mode::perp;
    v.rho = log_uniform(o.rho_min, o.rho_max, o.nrho);
    v.theta_count = o.ntheta;
    return v;
  }
  throw InvalidArgument("--vmode must be polar|full-grid|v1-line|perp");
}

int cmd_forward(const ForwardOpts& o, std::ostream& out) {
  require_out(o.c);
  if (o.phantom.empty() == o.field.empty()) throw InvalidArgument("give exactly one of --phantom or --field");
  const WindowSpec w = window_arg(o.window);
  const QuadratureParams quad{o.panels, o.order};
  std::optional<PhantomSpec> f;
  std::optional<ScalarField> fld;
  std::size_t n;
  if (!o.phantom.empty()) {
    f = phantom_from_json(load_json_arg(o.phantom));
    n = f->dim();
  } else {
    fld = read_gf1_scalar(o.field);
    n = fld->grid.dim();
  }
  const VSet vs = forward_vset(o, n);
  if (vs.mode == VSet::Mode::perp && n != 2) throw InvalidArgument("perp v-set needs n = 2");
  const Grid u = make_out_grid(o.g, n);
  const WRTData d = f ? windowed_ray_transform(*f, w, u, vs, quad) : windowed_ray_transform(*fld, w, u, vs, quad);
  json rep{{"out", o.c.out}, {"values", d.values.size()}, {"dtype", d.is_complex() ? "c128" : "f64"}};
  if (f && vs.mode != VSet::Mode::perp) {
    const double change = quadrature_convergence(*f, w, u, vs, quad, 16, static_cast<unsigned>(o.c.seed));
    rep["quadrature_change"] = change;
    if (change > 1e-6)
      throw NumericalError("forward: quadrature did not converge (relative change " + std::to_string(change) +
                           " when halving panels)");
  }
  if (o.oracle) {
    if (!f || !f->has_closed_form_ft() || w.kind != WindowSpec::Kind::gaussian)
      throw InvalidArgument("--oracle needs a gaussian phantom and a gaussian window");
    const AnalyticGaussianRaySource a(*f, w);
    const WRTData e = sample_wrt(a, u, vs);
    double worst = 0.0, top = 0.0;
    for (std::size_t i = 0; i < e.values.size(); ++i) {
      worst = std::max(worst, std::abs(d.values[i] - e.values[i]));
      top = std::max(top, std::abs(e.values[i]));
    }
    rep["oracle_max_rel_deviation"] = top > 0.0 ? worst / top : worst;
  }
  write_wrt1(o.c.out, d);
  if (o.c.json) {
    out << rep.dump(2) << '\n';
  } else {
    out << "wrote " << o.c.out << ": " << d.values.size() << " values (" << rep["dtype"].get<std::string>() << ")\n";
    if (rep.contains("oracle_max_rel_deviation"))
      out << "oracle max rel deviation: " << rep["oracle_max_rel_deviation"].get<double>() << '\n';
  }
  return 0;
}

// invert -------------------------------------------------------------------------------------

struct InvertOpts {
  Common c;
  GridOpts g;
  std::string method, in, phantom, window = "gaussian", constant = "derived", pss, pgm;
  BPParams t1;
  std::size_t t2_dirs = 180, nsigma = 128;
  double sigma_max = 0.0;
  double a = 0.0, V = 16.0;
  std::size_t nv1 = 0;
  std::string apodize = "hann";
  int lmax = 16;
  double mellin_t = 1.5, mellin_T = 40.0, reg_lambda = 1e-6;
};

int cmd_invert(const InvertOpts& o, std::ostream& out) {
  require_out(o.c);
  const Method m = parse_method(o.method);
  if (o.in.empty() == o.phantom.empty()) throw InvalidArgument("give exactly one of --in or --phantom");
  MethodParams p;
  p.t1 = o.t1;
  p.t1.constant = parse_constant(o.constant);
  p.t1.direction_offset = seed_offset(o.c.seed);
  p.t2.directions = o.t2_dirs;
  p.t2.sigma_count = o.nsigma;
  p.t2.sigma_max = o.sigma_max;
  p.t2.params.constant = p.t1.constant;
  p.slice.V = o.V;
  p.slice.v1_count = o.nv1;
  p.slice.apodization = parse_apodization(o.apodize);
  p.slice_a = o.a;
  p.lmax = o.lmax;
  p.mellin.t = o.mellin_t;
  p.mellin.T = o.mellin_T;
  p.mellin.reg.lambda_rel = o.reg_lambda;

  // Validate the method against the window and geometry before computing anything.
  std::optional<WRTData> data;
  std::optional<PhantomSpec> f;
  WindowSpec w;
  std::size_t n;
  if (!o.in.empty()) {
    data = read_wrt1(o.in);
    w = data->window;
    check_method_window(m, w);
    check_method_data(m, *data);
    n = data->vset.mode == VSet::Mode::perp ? 2 : data->u_grid.dim();
  } else {
    f = phantom_from_json(load_json_arg(o.phantom));
    w = window_arg(o.window);
    check_method_window(m, w);
    n = f->dim();
  }
  if (m == Method::mellin && n != 2) throw InvalidArgument("mellin: n = 2 only");
  if (m == Method::slice && p.slice_a == 0.0 && std::abs(window_eval(w, 0.0)) < 1e-12)
    throw HypothesisError("slice: window vanishes at a = 0 (Theorem 3 needs h(a) != 0)");
  const Grid grid = make_out_grid(o.g, n);

  ScalarField r;
  if (data) {
    r = invert_from_data(m, *data, grid, p);
    if (m == Method::t2 && !o.pss.empty()) {
      T2Setup s = p.t2;
      s.sigma_max = std::min(t2_sigma_grid(grid, s).back(),
                             std::numbers::pi / *std::max_element(data->u_grid.spacing.begin(), data->u_grid.spacing.end()));
      write_pss1(o.pss, extract_polar_spectrum(*data, t2_sigma_grid(grid, s)));
    }
  } else {
    const auto src = make_ray_source(*f, w);
    r = invert_from_source(m, *src, grid, p);
    if (m == Method::t2 && !o.pss.empty()) {
      SpectrumGeometry geo;
      geo.directions = p.t2.directions;
      geo.sigma = t2_sigma_grid(grid, p.t2);
      geo.radii = t2_radii(w, geo.sigma, p.t2);
      write_pss1(o.pss, extract_polar_spectrum(*src, geo));
    }
  }
  write_gf1(o.c.out, r);
  if (!o.pgm.empty()) write_pgm(o.pgm, r);

  json rep{{"out", o.c.out}, {"method", std::string(to_string(m))}, {"window", w.name()}};
  if (m == Method::t1 || m == Method::t2) rep["constant"] = to_string(p.t1.constant);
  if (m == Method::slice) {
    rep["apodization"] = p.slice.apodization.name();
    rep["V"] = p.slice.V;
    rep["a"] = p.slice_a;
    rep["dc"] = "extrapolated from |sigma| in {d, 2d}";
  }
  if (m == Method::mellin) {
    rep["lmax"] = p.lmax;
    rep["t"] = p.mellin.t;
    rep["T"] = p.mellin.T;
  }
  if (f) rep["rel_l2_vs_phantom"] = rel_l2_error(r, sample_phantom(*f, grid));
  if (o.c.json) {
    out << rep.dump(2) << '\n';
  } else {
    out << "method " << rep["method"].get<std::string>() << ", window " << w.name();
    if (rep.contains("constant")) out << ", constant " << rep["constant"].get<std::string>();
    if (m == Method::slice) out << ", apodization " << p.slice.apodization.name() << ", V " << p.slice.V << ", a " << p.slice_a;
    if (m == Method::mellin) out << ", L " << p.lmax << ", t " << p.mellin.t << ", T " << p.mellin.T;
    out << '\n';
    if (f) out << "rel-L2 vs phantom: " << rep["rel_l2_vs_phantom"].get<double>() << '\n';
    out << "wrote " << o.c.out << '\n';
  }
  return 0;
}

// compare ------------------------------------------------------------------------------------

struct CompareOpts {
  Common c;
  std::string a, b, pgm;
};

int cmd_compare(const CompareOpts& o, std::ostream& out) {
  const ScalarField a = read_gf1_scalar(o.a), b = read_gf1_scalar(o.b);
  if (!a.grid.same_as(b.grid)) throw InvalidArgument("compare: grids differ");
  const double rel = rel_l2_error(a, b), mx = max_abs_difference(a, b);
  if (!o.pgm.empty()) {
    ScalarField d(a.grid);
    for (std::size_t i = 0; i < d.values.size(); ++i) d.values[i] = a.values[i] - b.values[i];
    write_pgm(o.pgm, d);
  }
  json rep{{"rel_l2", rel}, {"max_abs", mx}};
  if (!o.c.out.empty()) write_json_file(o.c.out, rep);
  if (o.c.json) {
    out << rep.dump(2) << '\n';
  } else {
    char line[128];
    std::snprintf(line, sizeof line, "rel-L2 %.17g\nmax-abs %.17g\n", rel, mx);
    out << line;
  }
  return 0;
}

// calibrate ----------------------------------------------------------------------------------

struct CalibrateOpts {
  Common c;
  GridOpts g;
  std::string method, window = "gaussian", phantoms;
  std::size_t n = 2;
};

int cmd_calibrate(const CalibrateOpts& o, std::ostream& out) {
  const Method m = parse_method(o.method);
  const WindowSpec w = window_arg(o.window);
  std::vector<PhantomSpec> set;
  if (o.phantoms.empty()) {
    set = calibration_phantoms(o.n);
  } else {
    const json arr = load_json_arg(o.phantoms);
    if (!arr.is_array()) throw InvalidArgument("--phantoms must hold a JSON array of phantom specs");
    for (const auto& j : arr) set.push_back(phantom_from_json(j));
  }
  if (set.empty()) throw InvalidArgument("calibrate: empty phantom set");
  MethodParams p;
  p.t1.direction_offset = seed_offset(o.c.seed);
  const CalibrationReport r = calibrate(m, set, w, make_out_grid(o.g, set.front().dim()), p);
  json rep{{"method", r.method},
           {"window", r.window},
           {"alpha", r.alpha},
           {"paper_constant", r.paper_constant},
           {"derived_constant", r.derived_constant},
           {"ratio", r.ratio},
           {"derived_ratio", r.derived_ratio},
           {"alphas", r.alphas},
           {"rel_l2_after_fit", r.errors},
           {"cv", r.cv}};
  if (!o.c.out.empty()) write_json_file(o.c.out, rep);
  if (o.c.json) {
    out << rep.dump(2) << '\n';
  } else {
    char line[256];
    std::snprintf(line, sizeof line,
                  "%s %s: alpha %.6g  paper %.6g  derived %.6g\nalpha/paper %.6f  alpha/derived %.6f  cv %.3g\n",
                  r.method.c_str(), r.window.c_str(), r.alpha, r.paper_constant, r.derived_constant, r.ratio,
                  r.derived_ratio, r.cv);
    out << line;
  }
  return 0;
}

// selftest -----------------------------------------------------------------------------------

struct SelftestOpts {
  Common c;
  bool corrupt = false;
};

int cmd_selftest(const SelftestOpts& o, std::ostream& out) {
  SelftestOptions so;
  so.seed = o.c.seed == 0 ? 1 : o.c.seed;
  so.corrupt_constant = o.corrupt;
  const SelftestReport r = run_selftest(so);
  json rep = json::array();
  for (const auto& c : r.checks)
    rep.push_back({{"name", c.name}, {"value", c.value}, {"limit", c.limit}, {"pass", c.pass}, {"seconds", c.seconds}});
  if (!o.c.out.empty()) write_json_file(o.c.out, {{"checks", rep}, {"passed", r.passed()}, {"seconds", r.seconds}});
  if (o.c.json)
    out << json{{"checks", rep}, {"passed", r.passed()}, {"seconds", r.seconds}}.dump(2) << '\n';
  else
    out << format_table(r);
  return r.passed() ? 0 : 2;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"windowed ray transform toolkit", "wrtkit"};
  app.require_subcommand(1);

  PhantomOpts po;
  auto* ph = app.add_subcommand("phantom", "sample a phantom onto a grid (GF1)");
  add_common(ph, po.c);
  add_grid(ph, po.g, "grid");
  ph->add_option("--spec", po.spec, "phantom JSON (file or literal)")->required();
  ph->add_option("--pgm", po.pgm, "also write a PGM image");

  ForwardOpts fo;
  auto* fw = app.add_subcommand("forward", "windowed ray transform of a phantom or field (WRT1)");
  add_common(fw, fo.c);
  add_grid(fw, fo.g, "u-grid");
  fw->add_option("--phantom", fo.phantom, "phantom JSON (file or literal)");
  fw->add_option("--field", fo.field, "GF1 scalar field");
  fw->add_option("--window", fo.window, "window JSON or kind")->capture_default_str();
  fw->add_option("--vmode", fo.vmode, "polar|full-grid|v1-line|perp")->capture_default_str();
  fw->add_option("--dirs", fo.dirs, "polar: directions")->capture_default_str();
  fw->add_option("--nr", fo.nr, "polar: radii")->capture_default_str();
  fw->add_option("--r-min", fo.r_min, "polar: smallest radius")->capture_default_str();
  fw->add_option("--r-max", fo.r_max, "polar: largest radius")->capture_default_str();
  fw->add_flag("--full-circle", fo.full_circle, "polar: directions on the whole circle");
  fw->add_option("--v-size", fo.v_size, "full-grid: samples per axis")->capture_default_str();
  fw->add_option("--v-extent", fo.v_extent, "full-grid: extent")->capture_default_str();
  fw->add_option("--V", fo.V, "v1-line: half width")->capture_default_str();
  fw->add_option("--nv", fo.nv, "v1-line: samples")->capture_default_str();
  fw->add_option("--vprime", fo.vprime, "v1-line: fixed v'");
  fw->add_option("--rho-min", fo.rho_min, "perp: smallest rho")->capture_default_str();
  fw->add_option("--rho-max", fo.rho_max, "perp: largest rho")->capture_default_str();
  fw->add_option("--nrho", fo.nrho, "perp: log-uniform rho samples")->capture_default_str();
  fw->add_option("--ntheta", fo.ntheta, "perp: theta samples (power of two)")->capture_default_str();
  fw->add_option("--panels", fo.panels, "quadrature panels")->capture_default_str();
  fw->add_option("--order", fo.order, "Gauss-Legendre order per panel")->capture_default_str();
  fw->add_flag("--oracle", fo.oracle, "report deviation from the closed form");

  InvertOpts io;
  auto* iv = app.add_subcommand("invert", "reconstruct f by one of the four inversions (GF1)");
  add_common(iv, io.c);
  add_grid(iv, io.g, "output grid");
  iv->add_option("method", io.method, "t1|t2|slice|mellin")->required();
  iv->add_option("--in", io.in, "WRT1 data");
  iv->add_option("--phantom", io.phantom, "phantom JSON: sample rays on demand");
  iv->add_option("--window", io.window, "window for --phantom")->capture_default_str();
  iv->add_option("--constant", io.constant, "derived|paper|none|calibrated:ALPHA")->capture_default_str();
  iv->add_option("--r-min", io.t1.r_min, "t1: smallest |v|")->capture_default_str();
  iv->add_option("--r-max", io.t1.r_max, "t1: largest |v|")->capture_default_str();
  iv->add_option("--nr", io.t1.radii, "t1: radii")->capture_default_str();
  iv->add_option("--t1-dirs", io.t1.directions, "t1: directions")->capture_default_str();
  iv->add_option("--t2-dirs", io.t2_dirs, "t2: directions")->capture_default_str();
  iv->add_option("--nsigma", io.nsigma, "t2: sigma samples")->capture_default_str();
  iv->add_option("--sigma-max", io.sigma_max, "t2: largest sigma (0: Nyquist)")->capture_default_str();
  iv->add_option("--pss", io.pss, "t2: dump spectral samples (pss1)");
  iv->add_option("--a", io.a, "slice: point with h(a) != 0")->capture_default_str();
  iv->add_option("--V", io.V, "slice: v1 half width")->capture_default_str();
  iv->add_option("--nv1", io.nv1, "slice: v1 samples (0: auto)")->capture_default_str();
  iv->add_option("--apodize", io.apodize, "slice: none|hann|kaiser:BETA")->capture_default_str();
  iv->add_option("--lmax", io.lmax, "mellin: harmonics -L..L")->capture_default_str();
  iv->add_option("--mellin-t", io.mellin_t, "mellin: contour abscissa t > 1")->capture_default_str();
  iv->add_option("--mellin-T", io.mellin_T, "mellin: contour half length")->capture_default_str();
  iv->add_option("--reg-lambda", io.reg_lambda, "mellin: relative Tikhonov level")->capture_default_str();
  iv->add_option("--pgm", io.pgm, "also write a PGM image");

  CompareOpts co;
  auto* cp = app.add_subcommand("compare", "rel-L2 and max-abs difference of two GF1 fields");
  add_common(cp, co.c);
  cp->add_option("a", co.a, "GF1 field")->required();
  cp->add_option("b", co.b, "GF1 reference")->required();
  cp->add_option("--pgm", co.pgm, "difference image");

  CalibrateOpts ko;
  auto* cb = app.add_subcommand("calibrate", "fit the t1/t2 constant against phantoms");
  add_common(cb, ko.c);
  add_grid(cb, ko.g, "grid");
  cb->add_option("method", ko.method, "t1|t2")->required();
  cb->add_option("--window", ko.window, "window JSON or kind")->capture_default_str();
  cb->add_option("--phantoms", ko.phantoms, "JSON array of phantom specs (default: 3 gaussians)");
  cb->add_option("--n", ko.n, "dimension of the default phantoms")->capture_default_str();

  SelftestOpts so;
  auto* st = app.add_subcommand("selftest", "property suite at reduced resolution");
  add_common(st, so.c);
  st->add_flag("--corrupt-constant", so.corrupt, "fault injection: scale the inversion constants");

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? 0 : 1;
  }

  const auto old_sink = set_warning_sink([&err](std::string_view m) { err << "warning: " << m << '\n'; });
  int code = 0;
  try {
    const Common* c = nullptr;
    if (*ph) c = &po.c;
    if (*fw) c = &fo.c;
    if (*iv) c = &io.c;
    if (*cp) c = &co.c;
    if (*cb) c = &ko.c;
    if (*st) c = &so.c;
    set_thread_count(c ? c->threads : 0);
    if (*ph) code = cmd_phantom(po, out);
    if (*fw) code = cmd_forward(fo, out);
    if (*iv) code = cmd_invert(io, out);
    if (*cp) code = cmd_compare(co, out);
    if (*cb) code = cmd_calibrate(ko, out);
    if (*st) code = cmd_selftest(so, out);
  } catch (const InvalidArgument& e) {
    err << "error: " << e.what() << '\n';
    code = 1;
  } catch (const NumericalError& e) {
    err << "error: " << e.what() << '\n';
    code = 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    code = 2;
  }
  set_warning_sink(old_sink);
  return code;
}

int run(int argc, char** argv, std::ostream& out, std::ostream& err) {
  std::vector<std::string> args;
  for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
  return run(args, out, err);
}

}  // namespace wrtkit::cli
