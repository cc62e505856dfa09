#include "wrtkit/forward.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <string>

#include "wrtkit/error.hpp"
#include "wrtkit/fourier.hpp"
#include "wrtkit/interp.hpp"
#include "wrtkit/parallel.hpp"
#include "wrtkit/quadrature.hpp"

namespace wrtkit {
namespace {

constexpr double pi = std::numbers::pi;

double dot(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

double norm(std::span<const double> a) { return std::sqrt(dot(a, a)); }

bool is_power_of_two(std::size_t n) { return n >= 2 && (n & (n - 1)) == 0; }

Ball grid_ball(const Grid& g, double margin_cells) {
  Ball b;
  double r2 = 0.0;
  for (std::size_t a = 0; a < g.dim(); ++a) {
    const double lo = g.origin[a], hi = g.coord(a, g.shape[a] - 1);
    b.center.push_back(0.5 * (lo + hi));
    const double half = 0.5 * (hi - lo) + margin_cells * g.spacing[a];
    r2 += half * half;
  }
  b.radius = std::sqrt(r2);
  return b;
}

}  // namespace

// ---- VSet -------------------------------------------------------------------------------------

std::size_t VSet::size() const {
  switch (mode) {
    case Mode::full_grid:
      return v_grid.size();
    case Mode::polar:
      return directions.size() * radii.size();
    case Mode::v1_line:
      return v1.size();
    case Mode::perp:
      return rho.size() * theta_count;
  }
  return 0;
}

std::size_t VSet::dim() const {
  switch (mode) {
    case Mode::full_grid:
      return v_grid.dim();
    case Mode::polar:
      return directions.empty() ? 0 : directions.front().size();
    case Mode::v1_line:
      return 1 + vprime.size();
    case Mode::perp:
      return 2;
  }
  return 0;
}

std::vector<double> VSet::vector(std::size_t k) const {
  switch (mode) {
    case Mode::full_grid:
      return v_grid.point(k);
    case Mode::polar: {
      const auto& d = directions[k / radii.size()];
      const double r = radii[k % radii.size()];
      std::vector<double> v(d.size());
      for (std::size_t i = 0; i < d.size(); ++i) v[i] = r * d[i];
      return v;
    }
    case Mode::v1_line: {
      std::vector<double> v{v1[k]};
      v.insert(v.end(), vprime.begin(), vprime.end());
      return v;
    }
    case Mode::perp:
      break;
  }
  throw InvalidArgument("vset: perp mode has no fixed v per index");
}

void VSet::validate(std::size_t n) const {
  if (dim() != n)
    throw InvalidArgument("vset: dimension " + std::to_string(dim()) + " does not match " + std::to_string(n));
  switch (mode) {
    case Mode::full_grid:
      v_grid.validate();
      for (std::size_t k = 0; k < v_grid.size(); ++k)
        if (norm(v_grid.point(k)) == 0.0) throw InvalidArgument("vset: zero-norm v in full grid");
      break;
    case Mode::polar:
      if (directions.empty() || radii.empty()) throw InvalidArgument("vset: polar set is empty");
      for (const auto& d : directions) {
        if (d.size() != n) throw InvalidArgument("vset: direction of wrong dimension");
        if (std::abs(norm(d) - 1.0) > 1e-9) throw InvalidArgument("vset: directions must be unit vectors");
      }
      for (double r : radii)
        if (!(r > 0.0) || !std::isfinite(r)) throw InvalidArgument("vset: polar radii must be positive");
      if (!direction_weights.empty() && direction_weights.size() != directions.size())
        throw InvalidArgument("vset: one weight per direction required");
      break;
    case Mode::v1_line: {
      if (v1.empty()) throw InvalidArgument("vset: v1 list is empty");
      const double vp = norm(vprime);
      for (double a : v1)
        if (!std::isfinite(a) || (a == 0.0 && vp == 0.0)) throw InvalidArgument("vset: zero-norm v in v1 line");
      break;
    }
    case Mode::perp:
      if (n != 2) throw InvalidArgument("vset: perp mode requires n = 2");
      if (rho.empty()) throw InvalidArgument("vset: rho list is empty");
      for (double r : rho)
        if (!(r > 0.0)) throw InvalidArgument("vset: rho must be positive");
      if (!is_power_of_two(theta_count)) throw InvalidArgument("vset: theta count must be a power of two");
      break;
  }
}

VSet full_grid_vset(Grid v_grid) {
  VSet s;
  s.mode = VSet::Mode::full_grid;
  s.v_grid = std::move(v_grid);
  return s;
}

VSet polar_vset(std::vector<std::vector<double>> directions, std::vector<double> radii,
                std::vector<double> direction_weights) {
  VSet s;
  s.mode = VSet::Mode::polar;
  s.directions = std::move(directions);
  s.radii = std::move(radii);
  s.direction_weights = std::move(direction_weights);
  return s;
}

VSet v1_line_vset(std::vector<double> v1, std::vector<double> vprime) {
  VSet s;
  s.mode = VSet::Mode::v1_line;
  s.v1 = std::move(v1);
  s.vprime = std::move(vprime);
  return s;
}

DirectionSet sphere_directions(std::size_t n, std::size_t count, bool hemisphere, double offset) {
  if (count < 2) throw InvalidArgument("sphere_directions: count must be >= 2");
  DirectionSet d;
  if (n == 2) {
    const double step = (hemisphere ? pi : 2.0 * pi) / static_cast<double>(count);
    for (std::size_t j = 0; j < count; ++j) {
      const double a = (static_cast<double>(j) + offset) * step;
      d.directions.push_back({std::cos(a), std::sin(a)});
      d.weights.push_back(2.0 * pi / static_cast<double>(count));
    }
    return d;
  }
  if (n == 3) {
    const std::size_t mz = std::max<std::size_t>(2, count / 2);
    const auto& gl = gauss_legendre(mz);
    const double az_step = 2.0 * pi / static_cast<double>(count);
    for (std::size_t i = 0; i < mz; ++i) {
      const double z = hemisphere ? 0.5 * (gl.x[i] + 1.0) : gl.x[i];
      const double wz = gl.w[i];  // on [0,1] the weight halves and the mirror image doubles it
      const double rxy = std::sqrt(std::max(0.0, 1.0 - z * z));
      for (std::size_t j = 0; j < count; ++j) {
        const double a = (static_cast<double>(j) + offset) * az_step;
        d.directions.push_back({rxy * std::cos(a), rxy * std::sin(a), z});
        d.weights.push_back(wz * az_step);
      }
    }
    return d;
  }
  throw InvalidArgument("sphere_directions: only n = 2 and n = 3 are supported");
}

std::vector<double> direction_weights_of(const VSet& vset) {
  if (vset.mode != VSet::Mode::polar) throw InvalidArgument("direction weights need a polar v-set");
  if (!vset.direction_weights.empty()) return vset.direction_weights;
  if (vset.dim() != 2)
    throw InvalidArgument("direction weights must be stored explicitly for n != 2 polar data");
  const std::size_t m = vset.directions.size();
  std::vector<double> ang;
  for (const auto& d : vset.directions) {
    double a = std::atan2(d[1], d[0]);
    if (a < 0) a += 2.0 * pi;
    ang.push_back(a);
  }
  std::sort(ang.begin(), ang.end());
  if (m < 2) throw InvalidArgument("polar data needs at least two directions");
  const double step = ang[1] - ang[0];
  for (std::size_t i = 1; i < m; ++i)
    if (std::abs(ang[i] - ang[i - 1] - step) > 1e-6) throw InvalidArgument("polar directions are not equispaced");
  const double span = step * static_cast<double>(m);
  if (std::abs(span - 2.0 * pi) < 1e-6) return std::vector<double>(m, step);
  if (std::abs(span - pi) < 1e-6) return std::vector<double>(m, 2.0 * step);
  throw InvalidArgument("polar directions must cover a full or half circle");
}

std::vector<double> log_uniform(double lo, double hi, std::size_t count) {
  if (!(lo > 0.0) || !(hi > lo) || count < 2) throw InvalidArgument("log_uniform: need 0 < lo < hi and count >= 2");
  std::vector<double> r(count);
  const double a = std::log(lo), b = std::log(hi);
  for (std::size_t i = 0; i < count; ++i)
    r[i] = std::exp(a + (b - a) * static_cast<double>(i) / static_cast<double>(count - 1));
  return r;
}

std::vector<double> log_trapezoid_weights(std::span<const double> r) {
  if (r.size() < 2) throw InvalidArgument("radial grid needs at least two radii");
  const double d = std::log(r[1] / r[0]);
  if (!(d > 0.0)) throw InvalidArgument("radial grid must be increasing");
  for (std::size_t i = 1; i < r.size(); ++i)
    if (std::abs(std::log(r[i] / r[i - 1]) - d) > 1e-6 * d) throw InvalidArgument("radial grid is not log-uniform");
  std::vector<double> w(r.size(), d);
  w.front() = w.back() = 0.5 * d;
  return w;
}

// ---- data containers --------------------------------------------------------------------------

void WRTData::validate() const {
  window.validate();
  std::size_t n = 2;
  std::size_t expected = vset.size();
  if (vset.mode != VSet::Mode::perp) {
    u_grid.validate();
    n = u_grid.dim();
    expected *= u_grid.size();
  }
  vset.validate(n);
  if (values.size() != expected) throw InvalidArgument("wrt data: values do not match u-grid x v-set");
  for (const auto& v : values)
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) throw NumericalError("wrt data: non-finite value");
}

double PolarWRT::theta(std::size_t k) const {
  return 2.0 * pi * static_cast<double>(k) / static_cast<double>(theta_count);
}

void PolarWRT::validate() const {
  if (rho.empty()) throw InvalidArgument("polar wrt: empty rho grid");
  for (double r : rho)
    if (!(r > 0.0)) throw InvalidArgument("polar wrt: rho must be positive");
  if (!is_power_of_two(theta_count)) throw InvalidArgument("polar wrt: theta count must be a power of two");
  if (values.size() != rho.size() * theta_count) throw InvalidArgument("polar wrt: values do not match grid");
}

WRTData to_wrt_data(const PolarWRT& g) {
  WRTData d;
  d.vset.mode = VSet::Mode::perp;
  d.vset.rho = g.rho;
  d.vset.theta_count = g.theta_count;
  d.window = g.window;
  d.values = g.values;
  return d;
}

PolarWRT to_polar_wrt(const WRTData& d) {
  if (d.vset.mode != VSet::Mode::perp) throw InvalidArgument("expected WRT data with a perp v-set");
  PolarWRT g;
  g.rho = d.vset.rho;
  g.theta_count = d.vset.theta_count;
  g.window = d.window;
  g.values = d.values;
  g.validate();
  return g;
}

// ---- sources ----------------------------------------------------------------------------------

cplx RaySource::operator()(std::span<const double> u, std::span<const double> v) const {
  cplx out;
  sample(v, u, std::span(&out, 1));
  return out;
}

QuadratureRaySource::QuadratureRaySource(PhantomSpec phantom, WindowSpec window, QuadratureParams quad)
    : object_(std::move(phantom)), window_(window), quad_(quad) {
  const auto& p = std::get<PhantomSpec>(object_);
  p.validate();
  window_.validate();
  dim_ = p.dim();
  ball_ = phantom_support(p);
  reach_ = window_reach(window_, quad_.decay_threshold);
}

QuadratureRaySource::QuadratureRaySource(ScalarField field, WindowSpec window, QuadratureParams quad)
    : object_(std::move(field)), window_(window), quad_(quad) {
  const auto& f = std::get<ScalarField>(object_);
  f.validate();
  window_.validate();
  dim_ = f.grid.dim();
  ball_ = grid_ball(f.grid, 2.0);
  reach_ = window_reach(window_, quad_.decay_threshold);
}

RaySupport QuadratureRaySource::support() const { return {ball_, reach_}; }

double QuadratureRaySource::f(std::span<const double> x) const {
  if (const auto* p = std::get_if<PhantomSpec>(&object_)) return phantom_value(*p, x);
  const auto& s = std::get<ScalarField>(object_);
  return cubic_interpolate<double>(s.grid, s.values, x);
}

void QuadratureRaySource::sample(std::span<const double> v, std::span<const double> points,
                                 std::span<cplx> out) const {
  const std::size_t n = dim_;
  const double a = dot(v, v);
  if (!(a > 0.0)) throw InvalidArgument("windowed ray transform: zero-norm v");
  const auto& gl = gauss_legendre(quad_.order);
  const bool finite_reach = std::isfinite(reach_);
  const double base_width = finite_reach ? 2.0 * reach_ / static_cast<double>(quad_.panels) : 0.0;
  const bool real_window = window_.is_real();
  std::vector<double> d(n), x(n);
  for (std::size_t k = 0; k < out.size(); ++k) {
    const auto u = points.subspan(k * n, n);
    for (std::size_t i = 0; i < n; ++i) d[i] = u[i] - ball_.center[i];
    const double b = dot(d, v);
    const double c0 = dot(d, d) - ball_.radius * ball_.radius;
    const double disc = b * b - a * c0;
    if (disc <= 0.0) {
      out[k] = 0.0;
      continue;
    }
    const double sq = std::sqrt(disc);
    double t0 = (-b - sq) / a, t1 = (-b + sq) / a;
    if (finite_reach) {
      t0 = std::max(t0, -reach_);
      t1 = std::min(t1, reach_);
    }
    if (t1 <= t0) {
      out[k] = 0.0;
      continue;
    }
    std::size_t panels = quad_.panels;
    if (finite_reach)
      panels = std::clamp<std::size_t>(static_cast<std::size_t>(std::ceil((t1 - t0) / base_width)),
                                       std::min<std::size_t>(8, quad_.panels), quad_.panels);
    const double h = (t1 - t0) / static_cast<double>(panels);
    cplx acc = 0.0;
    double acc_re = 0.0;
    for (std::size_t p = 0; p < panels; ++p) {
      const double mid = t0 + h * (static_cast<double>(p) + 0.5);
      for (std::size_t q = 0; q < gl.x.size(); ++q) {
        const double t = mid + 0.5 * h * gl.x[q];
        for (std::size_t i = 0; i < n; ++i) x[i] = u[i] + t * v[i];
        const double fx = f(x);
        if (fx == 0.0) continue;
        const double w = 0.5 * h * gl.w[q] * fx;
        if (real_window)
          acc_re += w * window_eval(window_, t).real();
        else
          acc += w * window_eval(window_, t);
      }
    }
    out[k] = real_window ? cplx(acc_re) : acc;
  }
}

AnalyticGaussianRaySource::AnalyticGaussianRaySource(PhantomSpec phantom, WindowSpec window)
    : phantom_(std::move(phantom)), window_(window) {
  phantom_.validate();
  if (!phantom_.has_closed_form_ft()) throw InvalidArgument("analytic source needs a gaussian phantom");
  if (window_.kind != WindowSpec::Kind::gaussian) throw InvalidArgument("analytic source needs a gaussian window");
}

RaySupport AnalyticGaussianRaySource::support() const { return {phantom_support(phantom_), window_reach(window_)}; }

void AnalyticGaussianRaySource::sample(std::span<const double> v, std::span<const double> points,
                                       std::span<cplx> out) const {
  const std::size_t n = dim();
  for (std::size_t k = 0; k < out.size(); ++k) {
    double acc = 0.0;
    for (const auto& b : phantom_.bumps) acc += analytic_wrt_gaussian(b, window_, points.subspan(k * n, n), v);
    out[k] = acc;
  }
}

double analytic_wrt_gaussian(const GaussianBump& f, const WindowSpec& w, std::span<const double> u,
                             std::span<const double> v) {
  if (w.kind != WindowSpec::Kind::gaussian) throw InvalidArgument("analytic_wrt_gaussian: gaussian window required");
  const double s2 = f.sigma * f.sigma;
  double dd = 0.0, dv = 0.0, vv = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) {
    const double d = u[i] - f.center[i];
    dd += d * d;
    dv += d * v[i];
    vv += v[i] * v[i];
  }
  // exponent -(alpha t^2 + 2 beta t + gamma)/2, completed square.
  const double alpha = vv / s2 + 1.0 / (w.sigma * w.sigma);
  const double beta = dv / s2;
  const double gamma = dd / s2;
  return f.amplitude * w.amplitude * std::sqrt(2.0 * pi / alpha) * std::exp(-0.5 * (gamma - beta * beta / alpha));
}

StoredRaySource::StoredRaySource(const WRTData& data, double edge_tolerance)
    : data_(data), edge_tolerance_(edge_tolerance) {
  if (data_.vset.mode != VSet::Mode::polar && data_.vset.mode != VSet::Mode::full_grid)
    throw InvalidArgument("stored source needs polar or full-grid data");
  const std::size_t nv = data_.vset.size(), nu = data_.u_grid.size();
  double global = 0.0;
  for (const auto& x : data_.values) global = std::max(global, std::abs(x));
  edge_fraction_.assign(nv, 0.0);
  std::vector<cplx> col(nu);
  for (std::size_t k = 0; k < nv; ++k) {
    for (std::size_t i = 0; i < nu; ++i) col[i] = data_.values[i * nv + k];
    double edge = boundary_fraction(data_.u_grid, col);
    double peak = 0.0;
    for (const auto& x : col) peak = std::max(peak, std::abs(x));
    edge_fraction_[k] = global > 0.0 ? edge * peak / global : 0.0;
  }
}

RaySupport StoredRaySource::support() const { return {grid_ball(data_.u_grid, 0.0), 0.0}; }

std::size_t StoredRaySource::node_of(std::span<const double> v) const {
  const double tol = 1e-9 * std::max(1.0, norm(v));
  for (std::size_t k = 0; k < data_.vset.size(); ++k) {
    const auto w = data_.vset.vector(k);
    double d = 0.0;
    for (std::size_t i = 0; i < w.size(); ++i) d = std::max(d, std::abs(w[i] - v[i]));
    if (d <= tol) return k;
  }
  throw CoverageError("stored data does not contain the requested v");
}

void StoredRaySource::sample(std::span<const double> v, std::span<const double> points, std::span<cplx> out) const {
  const std::size_t k = node_of(v);
  const std::size_t n = dim(), nv = data_.vset.size(), nu = data_.u_grid.size();
  const Grid& g = data_.u_grid;
  std::vector<cplx> col(nu);
  for (std::size_t i = 0; i < nu; ++i) col[i] = data_.values[i * nv + k];
  const bool decayed = edge_fraction_[k] <= edge_tolerance_;
  for (std::size_t p = 0; p < out.size(); ++p) {
    const auto x = points.subspan(p * n, n);
    if (!decayed)
      for (std::size_t a = 0; a < n; ++a) {
        const double pos = (x[a] - g.origin[a]) / g.spacing[a];
        if (pos < -1e-9 || pos > static_cast<double>(g.shape[a] - 1) + 1e-9)
          throw CoverageError("stored data does not cover the required u range (P_h f has not decayed at the "
                              "u-grid boundary for v-node " + std::to_string(k) + ")");
      }
    out[p] = cubic_interpolate<cplx>(g, col, x);
  }
}

// ---- transforms -------------------------------------------------------------------------------

WRTData sample_wrt(const RaySource& source, const Grid& u_grid, const VSet& vset) {
  WRTData d;
  d.vset = vset;
  d.window = source.window();
  if (vset.mode == VSet::Mode::perp) {
    vset.validate(2);
    auto g = wrt_polar_perp(source, vset.rho, vset.theta_count);
    return to_wrt_data(g);
  }
  u_grid.validate();
  const std::size_t n = u_grid.dim();
  if (source.dim() != n) throw InvalidArgument("windowed ray transform: dimension mismatch");
  vset.validate(n);
  d.u_grid = u_grid;
  const std::size_t nu = u_grid.size(), nv = vset.size();
  std::vector<double> pts(nu * n);
  for (std::size_t i = 0; i < nu; ++i) u_grid.point(i, std::span(pts).subspan(i * n, n));
  d.values.assign(nu * nv, 0.0);
  parallel_for(nv, [&](std::size_t k) {
    const auto v = vset.vector(k);
    std::vector<cplx> col(nu);
    source.sample(v, pts, col);
    for (std::size_t i = 0; i < nu; ++i) {
      if (!std::isfinite(col[i].real()) || !std::isfinite(col[i].imag()))
        throw NumericalError("windowed ray transform: non-finite output");
      d.values[i * nv + k] = col[i];
    }
  });
  return d;
}

WRTData windowed_ray_transform(const PhantomSpec& f, const WindowSpec& w, const Grid& u_grid, const VSet& vset,
                               const QuadratureParams& quad) {
  return sample_wrt(QuadratureRaySource(f, w, quad), u_grid, vset);
}

WRTData windowed_ray_transform(const ScalarField& f, const WindowSpec& w, const Grid& u_grid, const VSet& vset,
                               const QuadratureParams& quad) {
  return sample_wrt(QuadratureRaySource(f, w, quad), u_grid, vset);
}

PolarWRT wrt_polar_perp(const RaySource& source, std::span<const double> rho, std::size_t theta_count) {
  if (source.dim() != 2) throw InvalidArgument("wrt_polar_perp: n must be 2");
  PolarWRT g;
  g.rho.assign(rho.begin(), rho.end());
  g.theta_count = theta_count;
  g.window = source.window();
  g.values.assign(rho.size() * theta_count, 0.0);
  for (double r : rho)
    if (!(r > 0.0)) throw InvalidArgument("wrt_polar_perp: rho must be positive");
  if (!is_power_of_two(theta_count)) throw InvalidArgument("wrt_polar_perp: theta count must be a power of two");
  parallel_for(rho.size(), [&](std::size_t i) {
    for (std::size_t k = 0; k < theta_count; ++k) {
      const double th = g.theta(k), c = std::cos(th), s = std::sin(th);
      const double u[2] = {rho[i] * c, rho[i] * s}, v[2] = {-rho[i] * s, rho[i] * c};
      g.values[i * theta_count + k] = source(u, v);
    }
  });
  return g;
}

PolarWRT wrt_polar_perp(const PhantomSpec& f, const WindowSpec& w, std::span<const double> rho,
                        std::size_t theta_count, const QuadratureParams& quad) {
  return wrt_polar_perp(QuadratureRaySource(f, w, quad), rho, theta_count);
}

double fourier_identity_residual(const WRTData& data, const PhantomSpec& phantom) {
  data.validate();
  if (data.vset.mode != VSet::Mode::polar && data.vset.mode != VSet::Mode::full_grid)
    throw InvalidArgument("fourier_identity_residual: needs polar or full-grid data");
  const Grid& g = data.u_grid;
  const std::size_t nu = g.size(), nv = data.vset.size();
  const Grid fg = frequency_grid(g);
  std::vector<cplx> fhat(fg.size());
  double fmax = 0.0;
  for (std::size_t i = 0; i < fg.size(); ++i) {
    fhat[i] = phantom_ft(phantom, fg.point(i));
    fmax = std::max(fmax, std::abs(fhat[i]));
  }
  if (fmax == 0.0) return 0.0;
  std::vector<double> worst(nv, 0.0);
  parallel_for(nv, [&](std::size_t k) {
    std::vector<cplx> col(nu);
    for (std::size_t i = 0; i < nu; ++i) col[i] = data.values[i * nv + k];
    const auto spec = continuous_ft(g, col);
    const auto v = data.vset.vector(k);
    for (std::size_t i = 0; i < fg.size(); ++i) {
      const auto xi = fg.point(i);
      const cplx rhs = fhat[i] * window_ft(data.window, -dot(xi, v));
      worst[k] = std::max(worst[k], std::abs(spec.values[i] - rhs));
    }
  });
  return *std::max_element(worst.begin(), worst.end()) / fmax;
}

double quadrature_convergence(const PhantomSpec& f, const WindowSpec& w, const Grid& u_grid, const VSet& vset,
                              const QuadratureParams& quad, std::size_t probes, unsigned seed) {
  if (vset.mode == VSet::Mode::perp) return 0.0;
  QuadratureRaySource coarse(f, w, quad);
  QuadratureParams fine_params = quad;
  fine_params.panels *= 2;
  QuadratureRaySource fine(f, w, fine_params);
  std::mt19937 rng(seed);
  std::uniform_int_distribution<std::size_t> pick_u(0, u_grid.size() - 1), pick_v(0, vset.size() - 1);
  double diff = 0.0, scale = 0.0;
  for (std::size_t p = 0; p < probes; ++p) {
    const auto u = u_grid.point(pick_u(rng));
    const auto v = vset.vector(pick_v(rng));
    const cplx a = coarse(u, v), b = fine(u, v);
    diff = std::max(diff, std::abs(a - b));
    scale = std::max(scale, std::abs(b));
  }
  return scale > 0.0 ? diff / scale : 0.0;
}

}  // namespace wrtkit
