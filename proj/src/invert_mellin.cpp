#include "wrtkit/invert_mellin.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "wrtkit/error.hpp"
#include "wrtkit/fourier.hpp"
#include "wrtkit/log.hpp"
#include "wrtkit/parallel.hpp"
#include "wrtkit/quadrature.hpp"

namespace wrtkit {
namespace {

constexpr double pi = std::numbers::pi;

void require_log_uniform(std::span<const double> r, const char* what) {
  if (r.size() < 2) throw InvalidArgument(std::string(what) + ": need at least two radii");
  const double d = std::log(r[1] / r[0]);
  if (!(r[0] > 0.0) || !(d > 0.0)) throw InvalidArgument(std::string(what) + ": radii must be positive and increasing");
  for (std::size_t i = 1; i < r.size(); ++i)
    if (std::abs(std::log(r[i] / r[i - 1]) - d) > 1e-8 * d)
      throw InvalidArgument(std::string(what) + ": radii must be log-uniform");
}

// K_l(alpha) on Gauss-Legendre nodes of [0, arctan R].
struct AlphaRule {
  std::vector<double> alpha, weight, lncos;
  std::vector<cplx> K;
};

AlphaRule alpha_rule(const WindowSpec& w, int l, bool literal) {
  AlphaRule a;
  const double top = std::atan(w.radius);
  const auto q = composite_gauss_legendre(0.0, top, 64, 16);
  a.alpha = q.x;
  a.weight = q.w;
  for (double al : a.alpha) {
    const double tau = std::tan(al);
    const cplx hp = window_eval(w, tau), hm = window_eval(w, -tau);
    a.K.push_back(literal ? (hp + hm) * std::polar(1.0, l * al)
                          : hp * std::polar(1.0, l * al) + hm * std::polar(1.0, -l * al));
    a.lncos.push_back(std::log(std::cos(al)));
  }
  return a;
}

}  // namespace

std::span<const cplx> HarmonicSeries::of(int l) const {
  if (l < -L || l > L) throw InvalidArgument("harmonic index out of range");
  return std::span(values).subspan(static_cast<std::size_t>(l + L) * rho.size(), rho.size());
}

std::span<cplx> HarmonicSeries::of(int l) {
  if (l < -L || l > L) throw InvalidArgument("harmonic index out of range");
  return std::span(values).subspan(static_cast<std::size_t>(l + L) * rho.size(), rho.size());
}

void HarmonicSeries::validate() const {
  if (L < 0 || rho.empty()) throw InvalidArgument("harmonic series: need L >= 0 and radii");
  if (values.size() != static_cast<std::size_t>(2 * L + 1) * rho.size())
    throw InvalidArgument("harmonic series: values do not match (2L+1) x rho");
}

HarmonicSeries circular_decompose(const PolarWRT& g, int L) {
  g.validate();
  if (L < 0) throw InvalidArgument("circular_decompose: L must be >= 0");
  const std::size_t nt = g.theta_count, nr = g.rho.size();
  if (nt < static_cast<std::size_t>(2 * L + 2))
    throw InvalidArgument("circular_decompose: theta count " + std::to_string(nt) + " < 2L+2");
  std::vector<cplx> buf(g.values);
  dft_rows_inplace(buf, nt, -1);
  HarmonicSeries s;
  s.L = L;
  s.rho = g.rho;
  s.values.assign(static_cast<std::size_t>(2 * L + 1) * nr, 0.0);
  double top = 0.0, edge = 0.0;
  for (int l = -L; l <= L; ++l) {
    const std::size_t b = static_cast<std::size_t>((l % static_cast<long>(nt) + static_cast<long>(nt)) % static_cast<long>(nt));
    auto c = s.of(l);
    for (std::size_t i = 0; i < nr; ++i) {
      c[i] = buf[i * nt + b] / static_cast<double>(nt);
      top = std::max(top, std::abs(c[i]));
      if (std::abs(l) == L) edge = std::max(edge, std::abs(c[i]));
    }
  }
  if (L > 0 && edge > 0.01 * top)
    warn("circular_decompose: |g_L| is " + std::to_string(edge / top) + " of the largest harmonic; series truncated");
  return s;
}

void require_mellin_window(const WindowSpec& w) {
  require_inversion_window(w, "mellin");
  if (!w.is_real()) throw HypothesisError("Theorem 4 requires a real window");
  if (w.parity() == Parity::odd) throw HypothesisError("Theorem 4 hypothesis violated: h is odd (even part vanishes)");
  if (!w.is_compact())
    throw HypothesisError("Theorem 4 requires a compactly supported, not-odd window (h in C_c^inf); " + w.name() +
                          " is not compact, use t1, t2 or slice instead");
}

KernelH kernel_H(const WindowSpec& w, int l, std::span<const double> r, bool literal) {
  w.validate();
  if (!w.is_real()) throw HypothesisError("Theorem 4 requires a real window");
  if (w.parity() == Parity::odd) throw HypothesisError("Theorem 4 hypothesis violated: h is odd (even part vanishes)");
  KernelH k;
  k.l = l;
  k.r.assign(r.begin(), r.end());
  k.window = w;
  k.literal = literal;
  for (double q : r) {
    if (!(q > 0.0)) throw InvalidArgument("kernel_H: r must be positive");
    if (q >= 1.0) {
      k.values.emplace_back(0.0);
      continue;
    }
    const double al = std::acos(q), tau = std::sqrt(1.0 / (q * q) - 1.0), s = std::sqrt(1.0 - q * q);
    const cplx hp = window_eval(w, tau), hm = window_eval(w, -tau);
    k.values.push_back((literal ? (hp + hm) * std::polar(1.0, l * al)
                                : hp * std::polar(1.0, l * al) + hm * std::polar(1.0, -l * al)) /
                       s);
  }
  return k;
}

std::vector<double> uniform_y_grid(double T, double dy) {
  if (!(T > 0.0) || !(dy > 0.0)) throw InvalidArgument("y grid: T and dy must be positive");
  const auto m = static_cast<std::size_t>(std::llround(T / dy));
  std::vector<double> y(2 * m + 1);
  for (std::size_t k = 0; k < y.size(); ++k) y[k] = (static_cast<double>(k) - static_cast<double>(m)) * T / static_cast<double>(m);
  return y;
}

MellinLine mellin_transform(std::span<const double> r, std::span<const cplx> f, double t, std::span<const double> y) {
  require_log_uniform(r, "mellin_transform");
  if (f.size() != r.size()) throw InvalidArgument("mellin_transform: samples and radii differ in length");
  const double u0 = std::log(r[0]), du = std::log(r[1] / r[0]);
  std::vector<cplx> v(f.size());
  double top = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i) {
    v[i] = f[i] * std::exp(t * (u0 + du * static_cast<double>(i)));
    top = std::max(top, std::abs(v[i]));
  }
  MellinLine m;
  m.t = t;
  m.y.assign(y.begin(), y.end());
  if (top == 0.0) {
    m.values.assign(y.size(), 0.0);
    return m;
  }
  if (std::abs(v.front()) > 1e-10 * top || std::abs(v.back()) > 1e-10 * top)
    throw NumericalError("mellin_transform: f(r) r^t has not decayed at the grid ends; widen the r grid");
  std::vector<double> xi(y.size());
  for (std::size_t k = 0; k < y.size(); ++k) xi[k] = -y[k];
  m.values = ft_at(u0, du, v, xi);
  return m;
}

MellinLine kernel_mellin(const WindowSpec& w, int l, double t, std::span<const double> y, bool literal) {
  require_mellin_window(w);
  const AlphaRule a = alpha_rule(w, l, literal);
  MellinLine m;
  m.t = t;
  m.y.assign(y.begin(), y.end());
  m.values.assign(y.size(), 0.0);
  for (std::size_t k = 0; k < y.size(); ++k) {
    cplx acc = 0.0;
    for (std::size_t i = 0; i < a.alpha.size(); ++i)
      acc += a.weight[i] * a.K[i] * std::exp(cplx(t - 1.0, y[k]) * a.lncos[i]);
    m.values[k] = acc;
  }
  return m;
}

std::vector<cplx> harmonic_forward(const std::function<cplx(double)>& fl, const WindowSpec& w, int l,
                                   std::span<const double> rho) {
  require_mellin_window(w);
  const AlphaRule a = alpha_rule(w, l, false);
  std::vector<cplx> g(rho.size(), 0.0);
  for (std::size_t j = 0; j < rho.size(); ++j)
    for (std::size_t i = 0; i < a.alpha.size(); ++i) {
      const double c = std::cos(a.alpha[i]);
      g[j] += a.weight[i] * fl(rho[j] / c) * a.K[i] / (c * c);
    }
  return g;
}

double mellin_convolution_residual(std::span<const double> rho, std::span<const cplx> gl, std::span<const cplx> fl,
                                   const WindowSpec& w, int l, double t, std::span<const double> y, bool literal) {
  if (gl.size() != rho.size() || fl.size() != rho.size())
    throw InvalidArgument("mellin residual: g_l, f_l and rho differ in length");
  std::vector<cplx> lhs_in(gl.begin(), gl.end());
  if (!literal)
    for (std::size_t i = 0; i < rho.size(); ++i) lhs_in[i] *= rho[i];
  const auto lhs = mellin_transform(rho, lhs_in, t, y);
  const auto mf = mellin_transform(rho, fl, t + 1.0, y);
  const auto mh = kernel_mellin(w, l, t, y, literal);
  double num = 0.0, den = 0.0;
  for (std::size_t k = 0; k < y.size(); ++k) {
    num = std::max(num, std::abs(lhs.values[k] - mf.values[k] * mh.values[k]));
    den = std::max(den, std::abs(lhs.values[k]));
  }
  return den == 0.0 ? num : num / den;
}

RadialRecovery recover_fl(const MellinLine& mg, const MellinLine& mh, double t, std::span<const double> r,
                          const RegParams& reg, double check_from) {
  if (!(t > 1.0)) throw InvalidArgument("recover_fl: the contour abscissa t must exceed 1");
  if (mg.y.size() != mh.y.size() || mg.values.size() != mg.y.size() || mh.values.size() != mh.y.size())
    throw InvalidArgument("recover_fl: Mellin lines must share the y grid");
  if (std::abs(mg.t - (t - 1.0)) > 1e-12 || std::abs(mh.t - (t - 1.0)) > 1e-12)
    throw InvalidArgument("recover_fl: Mellin lines must lie on Re s = t - 1");
  const std::size_t ny = mg.y.size();
  if (ny < 3) throw InvalidArgument("recover_fl: y grid too short");
  const double dy = mg.y[1] - mg.y[0], T = mg.y.back();
  for (std::size_t k = 0; k < ny; ++k)
    if (std::abs(mg.y[k] - mh.y[k]) > 1e-12 * (1.0 + T) || std::abs(mg.y[k] + mg.y[ny - 1 - k]) > 1e-9 * (1.0 + T))
      throw InvalidArgument("recover_fl: y grid must be shared, uniform and symmetric");

  double hmax = 0.0;
  for (const auto& v : mh.values) hmax = std::max(hmax, std::abs(v));
  const double floor = reg.lambda_rel * hmax;
  std::size_t small = 0;
  for (const auto& v : mh.values)
    if (std::abs(v) <= floor) ++small;
  if (hmax == 0.0 || 2 * small > ny) throw NumericalError("kernel spectrum too small; inversion ill-posed on this band");
  const double lambda = floor * floor;

  std::vector<cplx> q(ny), qh(ny);
  for (std::size_t k = 0; k < ny; ++k) {
    const double wk = (k == 0 || k + 1 == ny ? 0.5 : 1.0) * dy;
    const cplx Q = mg.values[k] * std::conj(mh.values[k]) / (std::norm(mh.values[k]) + lambda);
    q[k] = wk * Q;
    const double ay = std::abs(mg.y[k]);
    const double hw = ay < 0.5 * T - 1e-9 * T ? 1.0 : (ay <= 0.5 * T + 1e-9 * T ? 0.5 : 0.0);
    qh[k] = hw * dy * Q;
  }
  RadialRecovery out;
  out.values.resize(r.size());
  double top = 0.0, diff = 0.0;
  for (std::size_t i = 0; i < r.size(); ++i) {
    if (!(r[i] > 0.0)) throw InvalidArgument("recover_fl: radii must be positive");
    const double lr = std::log(r[i]);
    cplx ph = std::polar(std::exp(-t * lr), -mg.y[0] * lr);
    const cplx step = std::polar(1.0, -dy * lr);
    cplx full = 0.0, half = 0.0;
    for (std::size_t k = 0; k < ny; ++k) {
      full += ph * q[k];
      half += ph * qh[k];
      ph *= step;
    }
    out.values[i] = full / (2.0 * pi);
    if (r[i] < check_from) continue;
    top = std::max(top, std::abs(out.values[i]));
    diff = std::max(diff, std::abs(full - half) / (2.0 * pi));
  }
  out.truncation_delta = diff;
  out.truncation_change = top == 0.0 ? 0.0 : diff / top;
  return out;
}

ScalarField reconstruct_mellin(const PolarWRT& g, const WindowSpec& w, int L, const Grid& out, const MellinParams& p,
                               MellinReport* report) {
  require_mellin_window(w);
  g.validate();
  out.validate();
  if (out.dim() != 2) throw InvalidArgument("mellin: output grid must be 2-D");
  if (!(g.window == w)) throw InvalidArgument("mellin: window differs from the data window");
  if (!(p.r_floor > 0.0) || p.radial_table < 2) throw InvalidArgument("mellin: need r_floor > 0 and radial_table >= 2");
  require_log_uniform(g.rho, "mellin");
  const HarmonicSeries series = circular_decompose(g, L);
  const auto y = uniform_y_grid(p.T, p.dy);

  double rmax = 0.0;
  for (std::size_t i = 0; i < out.size(); ++i) {
    const auto x = out.point(i);
    rmax = std::max(rmax, std::hypot(x[0], x[1]));
  }
  rmax = std::max(rmax, p.r_floor);
  const std::size_t nr = p.radial_table;
  const double dr = rmax / static_cast<double>(nr - 1);
  std::vector<double> rt(nr);
  bool clamped = false;
  for (std::size_t i = 0; i < nr; ++i) {
    rt[i] = std::max(dr * static_cast<double>(i), p.r_floor);
    clamped = clamped || dr * static_cast<double>(i) < p.r_floor;
  }

  const std::size_t nl = static_cast<std::size_t>(2 * L + 1);
  std::vector<std::vector<cplx>> table(nl);
  std::vector<double> delta(nl, 0.0);
  parallel_for(nl, [&](std::size_t j) {
    const int l = static_cast<int>(j) - L;
    const auto gl = series.of(l);
    std::vector<cplx> G(gl.size());
    for (std::size_t i = 0; i < gl.size(); ++i) G[i] = series.rho[i] * gl[i];
    const auto mg = mellin_transform(series.rho, G, p.t - 1.0, y);
    const auto mh = kernel_mellin(w, l, p.t - 1.0, y);
    auto rec = recover_fl(mg, mh, p.t, rt, p.reg, 4.0 * p.r_floor);
    table[j] = std::move(rec.values);
    delta[j] = rec.truncation_delta;
  });
  double top = 0.0;
  for (const auto& t : table)
    for (const auto& v : t) top = std::max(top, std::abs(v));
  const double worst = top == 0.0 ? 0.0 : *std::max_element(delta.begin(), delta.end()) / top;
  if (worst > 0.01) warn("mellin: recoveries with T and T/2 differ by " + std::to_string(worst));
  if (report) {
    report->max_truncation_change = worst;
    report->dc_clamped = clamped;
  }

  ScalarField f(out);
  parallel_for(out.size(), [&](std::size_t i) {
    const auto x = out.point(i);
    const double r = std::hypot(x[0], x[1]), phi = std::atan2(x[1], x[0]);
    const double pos = std::min(r / dr, static_cast<double>(nr - 1));
    const auto i0 = std::min(static_cast<std::size_t>(pos), nr - 2);
    const double fr = pos - static_cast<double>(i0);
    cplx acc = 0.0;
    for (std::size_t j = 0; j < nl; ++j) {
      const int l = static_cast<int>(j) - L;
      acc += ((1.0 - fr) * table[j][i0] + fr * table[j][i0 + 1]) * std::polar(1.0, l * phi);
    }
    f.values[i] = acc.real();
  });
  return f;
}

}  // namespace wrtkit
