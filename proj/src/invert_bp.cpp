#include "wrtkit/invert_bp.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "wrtkit/error.hpp"
#include "wrtkit/fourier.hpp"
#include "wrtkit/interp.hpp"
#include "wrtkit/line_frame.hpp"
#include "wrtkit/parallel.hpp"

namespace wrtkit {
namespace {

constexpr double pi = std::numbers::pi;

double sphere_area(std::size_t n) { return 2.0 * std::pow(pi, 0.5 * n) / std::tgamma(0.5 * n); }

std::size_t nice_fft_size(std::size_t n) {
  for (;; ++n) {
    std::size_t m = n;
    for (std::size_t p : {2u, 3u, 5u})
      while (m % p == 0) m /= p;
    if (m == 1) return n;
  }
}

struct Node {
  std::vector<double> direction;
  double radius;
  double weight;
};

// Sum over (direction, radius) nodes of w * D(x; r theta), D(x; v) = \int P(x - v t, v) k(t) dt.
std::vector<double> accumulate_t1(const RaySource& source, const Grid& out, const std::vector<Node>& nodes,
                                  const BPParams& p) {
  const WindowSpec& w = source.window();
  const std::size_t n = out.dim();
  const RaySupport sup = source.support();
  if (!std::isfinite(sup.streak)) throw InvalidArgument("t1: window reach must be finite");
  const double E = spectral_reach(w);
  const double ds0 = *std::min_element(out.spacing.begin(), out.spacing.end()) / p.oversample;

  // Bounding ball of the output grid.
  std::vector<double> cout(n);
  double rout2 = 0.0;
  for (std::size_t a = 0; a < n; ++a) {
    const double lo = out.origin[a], hi = out.coord(a, out.shape[a] - 1);
    cout[a] = 0.5 * (lo + hi);
    rout2 += 0.25 * (hi - lo) * (hi - lo);
  }
  const double rout = std::sqrt(rout2);
  double center_gap = 0.0;
  for (std::size_t a = 0; a < n; ++a) center_gap += (cout[a] - sup.ball.center[a]) * (cout[a] - sup.ball.center[a]);
  center_gap = std::sqrt(center_gap);

  const std::size_t chunks = std::min<std::size_t>(thread_count(), nodes.size());
  std::vector<std::vector<double>> acc(chunks, std::vector<double>(out.size(), 0.0));

  parallel_for(chunks, [&](std::size_t c) {
    const std::size_t lo = nodes.size() * c / chunks, hi = nodes.size() * (c + 1) / chunks;
    double cached_r = -1.0;
    std::size_t npad = 0;
    double ds = 0.0;
    std::vector<cplx> mult;
    std::vector<double> x(n), q(n);
    for (std::size_t k = lo; k < hi; ++k) {
      const auto& node = nodes[k];
      const double r = node.radius;
      if (r != cached_r) {
        // Per-radius FFT geometry and filter multiplier k^(r omega) = r|omega| h^(r omega).
        ds = std::max(ds0, pi * r / (4.0 * E));
        const double reach = sup.ball.radius + r * sup.streak;
        const double span = center_gap + rout + reach + std::max(rout, reach) + 6.0 * ds;
        npad = nice_fft_size(static_cast<std::size_t>(std::ceil((span + std::max(span, p.period_factor * r)) / ds)));
        mult.assign(npad, 0.0);
        for (std::size_t m = 0; m < npad; ++m) {
          const long sm = m <= npad / 2 ? static_cast<long>(m) : static_cast<long>(m) - static_cast<long>(npad);
          const double omega = 2.0 * pi * static_cast<double>(sm) / (static_cast<double>(npad) * ds);
          mult[m] = riesz_filter_ft(w, r * omega) / static_cast<double>(npad);
        }
        cached_r = r;
      }
      const auto& th = node.direction;
      std::vector<double> v(n);
      for (std::size_t a = 0; a < n; ++a) v[a] = r * th[a];

      // Frame: s covers the output and the support of P(., v); p covers the output only.
      Interval so = projected_range(out, th);
      double cs = 0.0;
      for (std::size_t a = 0; a < n; ++a) cs += sup.ball.center[a] * th[a];
      const double reach = sup.ball.radius + r * sup.streak;
      Interval s{std::min(so.lo, cs - reach) - 3.0 * ds, std::max(so.hi, cs + reach) + 3.0 * ds};
      const auto across = orthonormal_complement(th);
      std::vector<Interval> pr;
      for (const auto& e : across) {
        Interval i = projected_range(out, e);
        pr.push_back({i.lo - 3.0 * ds0, i.hi + 3.0 * ds0});
      }
      LineFrame frame = make_line_frame(th, s, ds, pr, ds0);
      const std::size_t len = frame.line_length();
      if (len > npad) throw NumericalError("t1: frame longer than the FFT period");
      const auto P = sample_frame(source, frame, v);

      // Filter each line; D stored on a frame extended to npad samples along s.
      LineFrame dframe = frame;
      dframe.grid.shape.back() = npad;
      std::vector<cplx> D(dframe.grid.size(), 0.0);
      for (std::size_t line = 0; line < frame.line_count(); ++line)
        std::copy_n(P.begin() + static_cast<long>(line * len), len, D.begin() + static_cast<long>(line * npad));
      dft_rows_inplace(D, npad, -1);
      for (std::size_t i = 0; i < D.size(); ++i) D[i] *= mult[i % npad];
      dft_rows_inplace(D, npad, +1);
      auto& dst = acc[c];
      for (std::size_t i = 0; i < out.size(); ++i) {
        out.point(i, x);
        dframe.local(x, q);
        dst[i] += node.weight * cubic_interpolate<cplx>(dframe.grid, D, q).real();
      }
    }
  });
  std::vector<double> total(out.size(), 0.0);
  for (const auto& a : acc)
    for (std::size_t i = 0; i < total.size(); ++i) total[i] += a[i];
  return total;
}

std::vector<Node> polar_nodes(const DirectionSet& dirs, std::span<const double> radii) {
  const auto rw = log_trapezoid_weights(radii);
  std::vector<Node> nodes;
  for (std::size_t m = 0; m < radii.size(); ++m)
    for (std::size_t j = 0; j < dirs.directions.size(); ++j)
      nodes.push_back({dirs.directions[j], radii[m], dirs.weights[j] * rw[m]});
  return nodes;
}

void check_output_grid(const Grid& out) {
  out.validate();
  if (out.dim() != 2 && out.dim() != 3) throw InvalidArgument("t1: only n = 2 and n = 3 are supported");
}

}  // namespace

void BPParams::validate() const {
  if (!(r_min > 0.0) || !(r_max > r_min)) throw InvalidArgument("t1: need 0 < r_min < r_max");
  if (directions < 4) throw InvalidArgument("t1: direction count must be >= 4");
  if (radii < 2) throw InvalidArgument("t1: radius count must be >= 2");
  if (!(oversample >= 1.0)) throw InvalidArgument("t1: oversample must be >= 1");
  if (!(filter_dt > 0.0) || !(filter_extent > filter_dt)) throw InvalidArgument("t1: bad filter grid");
}

double t1_paper_constant(const WindowSpec& w, std::size_t n) {
  const auto c = window_constants(w);
  return std::pow(pi, -0.5 * static_cast<double>(n + 1)) * std::tgamma(0.5 * n) / c.c_hat_full;
}

double t1_derived_constant(const WindowSpec& w, std::size_t n) {
  const auto c = window_constants(w);
  return std::tgamma(0.5 * n) / (std::pow(pi, 0.5 * n) * c.c_hat_full);
}

double t1_constant(const ConstantChoice& c, const WindowSpec& w, std::size_t n) {
  switch (c.mode) {
    case ConstantMode::derived:
      return t1_derived_constant(w, n);
    case ConstantMode::paper:
      return t1_paper_constant(w, n);
    case ConstantMode::calibrated:
      return c.alpha;
    case ConstantMode::none:
      return 1.0;
  }
  return 1.0;
}

ScalarField reconstruct_t1(const RaySource& source, const Grid& out, const BPParams& p) {
  p.validate();
  check_output_grid(out);
  require_inversion_window(source.window(), "t1");
  if (source.dim() != out.dim()) throw InvalidArgument("t1: source and output grid differ in dimension");
  const double K = t1_constant(p.constant, source.window(), out.dim());
  // D_{-v} = D_v for real h, so half of the sphere with doubled weights suffices.
  const auto dirs = sphere_directions(out.dim(), p.directions, true, p.direction_offset);
  const auto radii = log_uniform(p.r_min, p.r_max, p.radii);
  auto raw = accumulate_t1(source, out, polar_nodes(dirs, radii), p);
  ScalarField f(out);
  for (std::size_t i = 0; i < raw.size(); ++i) f.values[i] = K * raw[i];
  return f;
}

ScalarField reconstruct_t1(const WRTData& data, const Grid& out, const BPParams& p) {
  data.validate();
  if (data.vset.mode != VSet::Mode::polar) throw InvalidArgument("t1 needs WRT data with a polar v-set");
  check_output_grid(out);
  require_inversion_window(data.window, "t1");
  if (data.u_grid.dim() != out.dim()) throw InvalidArgument("t1: data and output grid differ in dimension");
  const double K = t1_constant(p.constant, data.window, out.dim());
  DirectionSet dirs{data.vset.directions, direction_weights_of(data.vset)};
  StoredRaySource source(data);
  auto raw = accumulate_t1(source, out, polar_nodes(dirs, data.vset.radii), p);
  ScalarField f(out);
  for (std::size_t i = 0; i < raw.size(); ++i) f.values[i] = K * raw[i];
  return f;
}

std::vector<double> reconstruct_t1_direct(const RaySource& source, std::span<const std::vector<double>> points,
                                          const BPParams& p) {
  p.validate();
  const WindowSpec& w = source.window();
  require_inversion_window(w, "t1");
  const std::size_t n = source.dim();
  const double K = t1_constant(p.constant, w, n);
  const auto dirs = sphere_directions(n, p.directions, true, p.direction_offset);
  const auto radii = log_uniform(p.r_min, p.r_max, p.radii);
  const auto rw = log_trapezoid_weights(radii);
  const auto nt = static_cast<std::size_t>(std::round(p.filter_extent / p.filter_dt));
  std::vector<double> t(2 * nt + 1);
  for (std::size_t j = 0; j < t.size(); ++j) t[j] = (static_cast<double>(j) - static_cast<double>(nt)) * p.filter_dt;
  const auto k = riesz_filter(w, t);
  const RaySupport sup = source.support();

  std::vector<double> out(points.size(), 0.0);
  parallel_for(points.size(), [&](std::size_t ip) {
    const auto& x = points[ip];
    double total = 0.0;
    std::vector<double> pts, v(n);
    std::vector<cplx> vals;
    for (std::size_t j = 0; j < dirs.directions.size(); ++j) {
      const auto& th = dirs.directions[j];
      double s = 0.0, cs = 0.0, perp2 = 0.0;
      for (std::size_t a = 0; a < n; ++a) {
        s += x[a] * th[a];
        cs += sup.ball.center[a] * th[a];
      }
      for (std::size_t a = 0; a < n; ++a) {
        const double d = (x[a] - sup.ball.center[a]) - (s - cs) * th[a];
        perp2 += d * d;
      }
      if (perp2 > sup.ball.radius * sup.ball.radius) continue;
      for (std::size_t m = 0; m < radii.size(); ++m) {
        const double r = radii[m];
        for (std::size_t a = 0; a < n; ++a) v[a] = r * th[a];
        // P(x - v t, v) can be nonzero only for t in this window.
        const double tlo = (s - cs - sup.ball.radius) / r - sup.streak;
        const double thi = (s - cs + sup.ball.radius) / r + sup.streak;
        const long jlo = std::max<long>(0, static_cast<long>(std::floor(tlo / p.filter_dt)) + static_cast<long>(nt));
        const long jhi = std::min<long>(static_cast<long>(t.size()) - 1,
                                        static_cast<long>(std::ceil(thi / p.filter_dt)) + static_cast<long>(nt));
        if (jhi < jlo) continue;
        const std::size_t cnt = static_cast<std::size_t>(jhi - jlo + 1);
        pts.resize(cnt * n);
        vals.resize(cnt);
        for (std::size_t q = 0; q < cnt; ++q)
          for (std::size_t a = 0; a < n; ++a) pts[q * n + a] = x[a] - v[a] * t[static_cast<std::size_t>(jlo) + q];
        source.sample(v, pts, vals);
        double d = 0.0;
        for (std::size_t q = 0; q < cnt; ++q) d += vals[q].real() * k[static_cast<std::size_t>(jlo) + q];
        total += dirs.weights[j] * rw[m] * d * p.filter_dt;
      }
    }
    out[ip] = K * total;
  });
  return out;
}

FrequencyCheck t1_frequency_check(const WindowSpec& w, std::span<const std::vector<double>> xi,
                                  const FrequencyQuadrature& q) {
  require_inversion_window(w, "t1_frequency_check");
  if (xi.empty()) throw InvalidArgument("t1_frequency_check: no frequencies");
  const std::size_t n = xi.front().size();
  const auto radii = log_uniform(q.r_min, q.r_max, q.radii);
  const auto rw = log_trapezoid_weights(radii);
  // Directions relative to xi: only c = theta.xi/|xi| enters, so the rule is expressed in c.
  std::vector<double> cs, cw;
  if (n == 2) {
    const auto d = sphere_directions(2, q.directions, true, 0.5);
    for (std::size_t j = 0; j < d.directions.size(); ++j) {
      cs.push_back(d.directions[j][0]);
      cw.push_back(d.weights[j]);
    }
  } else if (n == 3) {
    const auto d = sphere_directions(3, q.directions, true, 0.0);
    for (std::size_t j = 0; j < d.directions.size(); ++j) {
      cs.push_back(d.directions[j][2]);
      cw.push_back(d.weights[j]);
    }
  } else {
    throw InvalidArgument("t1_frequency_check: n must be 2 or 3");
  }
  FrequencyCheck out;
  for (const auto& x : xi) {
    if (x.size() != n) throw InvalidArgument("t1_frequency_check: mixed dimensions");
    double nx = 0.0;
    for (double c : x) nx += c * c;
    nx = std::sqrt(nx);
    double J = 0.0;
    for (std::size_t j = 0; j < cs.size(); ++j) {
      const double proj = std::abs(cs[j]) * nx;
      double inner = 0.0;
      for (std::size_t m = 0; m < radii.size(); ++m) {
        // |v|^{-n} dv = dr/r dtheta = d(ln r) dtheta.
        const double e = radii[m] * proj;
        inner += rw[m] * e * std::norm(window_ft(w, e));
      }
      J += cw[j] * inner;
    }
    out.values.push_back(J);
  }
  for (double v : out.values) out.mean += v;
  out.mean /= static_cast<double>(out.values.size());
  for (double v : out.values) out.max_deviation = std::max(out.max_deviation, std::abs(v - out.mean) / out.mean);
  const auto c = window_constants(w);
  out.fitted_constant = out.mean / c.c_h2;
  out.expected = sphere_area(n) * c.c_hat_half;
  return out;
}

}  // namespace wrtkit
