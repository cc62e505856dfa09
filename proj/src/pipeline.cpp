#include "wrtkit/pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "wrtkit/error.hpp"

namespace wrtkit {

std::string_view to_string(Method m) {
  switch (m) {
    case Method::t1:
      return "t1";
    case Method::t2:
      return "t2";
    case Method::slice:
      return "slice";
    case Method::mellin:
      return "mellin";
  }
  return "t1";
}

Method parse_method(std::string_view name) {
  if (name == "t1") return Method::t1;
  if (name == "t2") return Method::t2;
  if (name == "slice") return Method::slice;
  if (name == "mellin") return Method::mellin;
  throw InvalidArgument("method: expected t1|t2|slice|mellin, got '" + std::string(name) + "'");
}

std::unique_ptr<RaySource> make_ray_source(const PhantomSpec& f, const WindowSpec& w, const QuadratureParams& quad) {
  if (f.has_closed_form_ft() && w.kind == WindowSpec::Kind::gaussian)
    return std::make_unique<AnalyticGaussianRaySource>(f, w);
  return std::make_unique<QuadratureRaySource>(f, w, quad);
}

void check_method_window(Method m, const WindowSpec& w) {
  w.validate();
  switch (m) {
    case Method::t1:
    case Method::t2:
    case Method::slice:
      require_inversion_window(w, to_string(m));
      if (!w.is_real()) throw HypothesisError(std::string(to_string(m)) + ": inversion needs a real window");
      break;
    case Method::mellin:
      require_mellin_window(w);
      break;
  }
}

void check_method_data(Method m, const WRTData& data) {
  data.validate();
  const auto mode = data.vset.mode;
  const char* want = nullptr;
  switch (m) {
    case Method::t1:
    case Method::t2:
      if (mode != VSet::Mode::polar) want = "polar";
      break;
    case Method::slice:
      if (mode != VSet::Mode::v1_line) want = "v1-line";
      break;
    case Method::mellin:
      if (mode != VSet::Mode::perp) want = "perp";
      break;
  }
  if (want) throw InvalidArgument(std::string(to_string(m)) + " needs WRT data with a " + want + " v-set");
}

std::vector<double> t2_sigma_grid(const Grid& out, const T2Setup& s) {
  double smax = s.sigma_max;
  if (smax <= 0.0) smax = std::numbers::pi / *std::max_element(out.spacing.begin(), out.spacing.end());
  return uniform_sigma(smax, s.sigma_count);
}

std::vector<double> t2_radii(const WindowSpec& w, std::span<const double> sigma, const T2Setup& s) {
  if (sigma.size() < 2) throw InvalidArgument("t2: sigma grid needs two samples");
  const double smin = sigma[1] - sigma[0];
  const double rmax = std::max(spectral_reach(w) / smin, 10.0 * s.r_min);
  return log_uniform(s.r_min, rmax, s.radii);
}

namespace {

PolarWRT mellin_data(const RaySource& source, const MethodParams& p) {
  const Ball b = source.support().ball;
  double c = 0.0;
  for (double x : b.center) c += x * x;
  const double rho_max = 1.05 * (std::sqrt(c) + b.radius);
  const auto rho = log_uniform(p.mellin_rho_min, rho_max, p.mellin_rho);
  return wrt_polar_perp(source, rho, p.mellin_theta);
}

}  // namespace

ScalarField invert_from_source(Method m, const RaySource& source, const Grid& out, const MethodParams& p) {
  const WindowSpec& w = source.window();
  check_method_window(m, w);
  if (source.dim() != out.dim()) throw InvalidArgument("source and output grid differ in dimension");
  switch (m) {
    case Method::t1:
      return reconstruct_t1(source, out, p.t1);
    case Method::t2: {
      SpectrumGeometry geo;
      geo.directions = p.t2.directions;
      geo.sigma = t2_sigma_grid(out, p.t2);
      geo.radii = t2_radii(w, geo.sigma, p.t2);
      geo.spacing = p.t2.spacing;
      return reconstruct_t2(extract_polar_spectrum(source, geo), w, out, p.t2.params);
    }
    case Method::slice:
      return reconstruct_slice(source, out, p.slice, p.slice_a);
    case Method::mellin:
      if (out.dim() != 2) throw InvalidArgument("mellin: n = 2 only");
      return reconstruct_mellin(mellin_data(source, p), w, p.lmax, out, p.mellin);
  }
  throw InvalidArgument("unknown method");
}

ScalarField invert_from_data(Method m, const WRTData& data, const Grid& out, const MethodParams& p) {
  check_method_window(m, data.window);
  check_method_data(m, data);
  switch (m) {
    case Method::t1:
      return reconstruct_t1(data, out, p.t1);
    case Method::t2: {
      T2Setup s = p.t2;
      const double nyq = std::numbers::pi / *std::max_element(data.u_grid.spacing.begin(), data.u_grid.spacing.end());
      const auto out_sigma = t2_sigma_grid(out, s);
      s.sigma_max = std::min(out_sigma.back(), nyq);
      return reconstruct_t2(extract_polar_spectrum(data, t2_sigma_grid(out, s)), data.window, out, s.params);
    }
    case Method::slice: {
      const SliceDataset ds = slice_dataset_from_wrt(data, p.slice.apodization);
      SliceParams sp;
      sp.a = p.slice_a;
      sp.sigma = slice_sigma_grid(out);
      return reconstruct_slice(slice_extract(ds, data.window, sp), out);
    }
    case Method::mellin:
      return reconstruct_mellin(to_polar_wrt(data), data.window, p.lmax, out, p.mellin);
  }
  throw InvalidArgument("unknown method");
}

}  // namespace wrtkit
