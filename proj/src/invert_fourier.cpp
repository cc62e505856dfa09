#include "wrtkit/invert_fourier.hpp"

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

double uniform_step(std::span<const double> sigma) {
  if (sigma.size() < 2) throw InvalidArgument("t2: sigma grid needs at least two samples");
  const double d = sigma[1] - sigma[0];
  if (!(d > 0.0) || sigma[0] < 0.0) throw InvalidArgument("t2: sigma grid must be increasing and nonnegative");
  for (std::size_t k = 1; k < sigma.size(); ++k)
    if (std::abs(sigma[k] - sigma[k - 1] - d) > 1e-9 * d) throw InvalidArgument("t2: sigma grid must be uniform");
  return d;
}

}  // namespace

void PolarSpectralSamples::validate() const {
  if (directions.empty() || sigma.empty() || radii.empty()) throw InvalidArgument("t2: empty sample set");
  if (direction_weights.size() != directions.size()) throw InvalidArgument("t2: one weight per direction required");
  if (values.size() != directions.size() * sigma.size() * radii.size())
    throw InvalidArgument("t2: values do not match directions x sigma x radii");
}

std::vector<double> uniform_sigma(double sigma_max, std::size_t count) {
  if (count < 2 || !(sigma_max > 0.0)) throw InvalidArgument("uniform_sigma: need count >= 2 and sigma_max > 0");
  std::vector<double> s(count);
  for (std::size_t k = 0; k < count; ++k) s[k] = sigma_max * static_cast<double>(k) / static_cast<double>(count - 1);
  return s;
}

PolarSpectralSamples extract_polar_spectrum(const WRTData& data, std::span<const double> sigma, std::size_t padding) {
  data.validate();
  if (data.vset.mode != VSet::Mode::polar) throw InvalidArgument("t2 needs WRT data with a polar v-set");
  const Grid& g = data.u_grid;
  const std::size_t n = g.dim();
  double nyquist = pi / *std::max_element(g.spacing.begin(), g.spacing.end());
  for (double s : sigma)
    if (std::abs(s) > nyquist)
      throw InvalidArgument("t2: sigma " + std::to_string(s) + " exceeds the Nyquist band of the u-grid (" +
                            std::to_string(nyquist) + ")");
  PolarSpectralSamples out;
  out.directions = data.vset.directions;
  out.direction_weights = direction_weights_of(data.vset);
  out.sigma.assign(sigma.begin(), sigma.end());
  out.radii = data.vset.radii;
  out.values.assign(out.directions.size() * sigma.size() * out.radii.size(), 0.0);
  const std::size_t nu = g.size(), nv = data.vset.size(), nr = out.radii.size();
  parallel_for(nv, [&](std::size_t k) {
    std::vector<cplx> col(nu);
    for (std::size_t i = 0; i < nu; ++i) col[i] = data.values[i * nv + k];
    const auto spec = continuous_ft(g, col, padding);
    const std::size_t d = k / nr, m = k % nr;
    std::vector<double> xi(n);
    for (std::size_t s = 0; s < sigma.size(); ++s) {
      for (std::size_t a = 0; a < n; ++a) xi[a] = sigma[s] * out.directions[d][a];
      out.values[out.index(d, s, m)] = linear_interpolate<cplx>(spec.grid, spec.values, xi);
    }
  });
  return out;
}

PolarSpectralSamples extract_polar_spectrum(const RaySource& source, const SpectrumGeometry& geo) {
  const std::size_t n = source.dim();
  if (!(geo.spacing > 0.0)) throw InvalidArgument("t2: frame spacing must be positive");
  if (geo.radii.empty() || geo.sigma.empty()) throw InvalidArgument("t2: empty radius or sigma list");
  const auto dirs = sphere_directions(n, geo.directions, false, geo.direction_offset);
  const RaySupport sup = source.support();
  if (!std::isfinite(sup.streak)) throw InvalidArgument("t2: window reach must be finite");
  const double E = spectral_reach(source.window());

  PolarSpectralSamples out;
  out.directions = dirs.directions;
  out.direction_weights = dirs.weights;
  out.sigma = geo.sigma;
  out.radii = geo.radii;
  out.values.assign(out.directions.size() * out.sigma.size() * out.radii.size(), 0.0);

  parallel_for(out.directions.size(), [&](std::size_t d) {
    const auto& th = out.directions[d];
    const auto across = orthonormal_complement(th);
    double cs = 0.0;
    for (std::size_t a = 0; a < n; ++a) cs += sup.ball.center[a] * th[a];
    std::vector<Interval> pr;
    for (const auto& e : across) {
      double c = 0.0;
      for (std::size_t a = 0; a < n; ++a) c += sup.ball.center[a] * e[a];
      pr.push_back({c - sup.ball.radius, c + sup.ball.radius});
    }
    const double cell = std::pow(geo.spacing, static_cast<double>(n - 1));
    std::vector<double> v(n);
    for (std::size_t m = 0; m < out.radii.size(); ++m) {
      const double r = out.radii[m];
      for (std::size_t a = 0; a < n; ++a) v[a] = r * th[a];
      // Along theta P(., r theta) is band-limited by E / r; sample at twice that rate at most.
      const double ds = std::max(geo.spacing, pi * r / (2.0 * E));
      const double reach = sup.ball.radius + r * sup.streak;
      const LineFrame frame = make_line_frame(th, {cs - reach, cs + reach}, ds, pr, geo.spacing);
      const auto P = sample_frame(source, frame, v);
      const std::size_t len = frame.line_length();
      std::vector<cplx> Q(len, 0.0);
      for (std::size_t line = 0; line < frame.line_count(); ++line)
        for (std::size_t j = 0; j < len; ++j) Q[j] += cell * P[line * len + j];
      const double limit = pi / ds;
      std::vector<double> sig;
      for (double s : out.sigma)
        if (std::abs(s) <= limit) sig.push_back(s);
      const auto F = ft_at(frame.grid.origin.back(), ds, Q, sig);
      for (std::size_t k = 0; k < sig.size(); ++k) out.values[out.index(d, k, m)] = F[k];
    }
  });
  return out;
}

double t2_paper_constant(const WindowSpec& w, std::size_t n) {
  const double nn = static_cast<double>(n);
  return std::pow(2.0, -nn - 1.0) * std::pow(pi, -nn) / window_constants(w).c_h2;
}

double t2_derived_constant(const WindowSpec& w, std::size_t n) {
  return std::pow(2.0 * pi, -static_cast<double>(n)) / window_constants(w).c_hat_half;
}

double t2_constant(const ConstantChoice& c, const WindowSpec& w, std::size_t n) {
  switch (c.mode) {
    case ConstantMode::derived:
      return t2_derived_constant(w, n);
    case ConstantMode::paper:
      return t2_paper_constant(w, n);
    case ConstantMode::calibrated:
      return c.alpha;
    case ConstantMode::none:
      return 1.0;
  }
  return 1.0;
}

cplx inner_r_integral(const WindowSpec& w, double sigma, std::span<const double> radii, std::span<const cplx> values,
                      const T2Params& p) {
  if (radii.size() != values.size()) throw InvalidArgument("inner_r_integral: radii and values differ in length");
  const auto rw = log_trapezoid_weights(radii);
  std::vector<cplx> hh(radii.size());
  double hmax = 0.0;
  for (std::size_t m = 0; m < radii.size(); ++m) {
    hh[m] = window_ft(w, radii[m] * sigma);
    hmax = std::max(hmax, std::abs(hh[m]));
  }
  std::size_t last = 0;
  for (std::size_t m = 0; m < radii.size(); ++m)
    if (std::abs(hh[m]) >= p.hat_cutoff * hmax) last = m;
  last = std::max(last, std::min(p.min_radii, radii.size()) - 1);
  cplx acc = radii[0] * values[0] * hh[0];
  for (std::size_t m = 0; m <= last; ++m) acc += rw[m] * radii[m] * values[m] * hh[m];
  return acc;
}

double inner_window_integral(const WindowSpec& w, double sigma, std::span<const double> radii, const T2Params& p) {
  std::vector<cplx> vals(radii.size());
  for (std::size_t m = 0; m < radii.size(); ++m) vals[m] = window_ft(w, -radii[m] * sigma);
  return inner_r_integral(w, sigma, radii, vals, p).real();
}

ScalarField reconstruct_t2(const PolarSpectralSamples& s, const WindowSpec& w, const Grid& out, const T2Params& p) {
  require_inversion_window(w, "t2");
  s.validate();
  out.validate();
  const std::size_t n = out.dim();
  if (s.dim() != n) throw InvalidArgument("t2: samples and output grid differ in dimension");
  const double K = t2_constant(p.constant, w, n);
  const double dsig = uniform_step(s.sigma);
  const std::size_t nd = s.directions.size(), ns = s.sigma.size(), nr = s.radii.size();

  // Per (direction, sigma): weight * sigma^n * inner integral.
  std::vector<cplx> coef(nd * ns, 0.0);
  parallel_for(nd, [&](std::size_t d) {
    for (std::size_t k = 0; k < ns; ++k) {
      const double sg = s.sigma[k];
      if (sg == 0.0) continue;
      const auto vals = std::span(s.values).subspan(s.index(d, k, 0), nr);
      const double wk = (k + 1 == ns ? 0.5 : 1.0) * dsig;
      coef[d * ns + k] = s.direction_weights[d] * wk * std::pow(sg, static_cast<double>(n)) *
                         inner_r_integral(w, sg, s.radii, vals, p);
    }
  });

  ScalarField f(out);
  parallel_for(out.size(), [&](std::size_t i) {
    std::vector<double> x(n);
    out.point(i, x);
    cplx acc = 0.0;
    for (std::size_t d = 0; d < nd; ++d) {
      double proj = 0.0;
      for (std::size_t a = 0; a < n; ++a) proj += x[a] * s.directions[d][a];
      // e^{i sigma_k proj} by recurrence along the uniform sigma grid.
      cplx ph = std::polar(1.0, s.sigma[0] * proj);
      const cplx step = std::polar(1.0, dsig * proj);
      for (std::size_t k = 0; k < ns; ++k) {
        acc += coef[d * ns + k] * ph;
        ph *= step;
      }
    }
    f.values[i] = K * acc.real();
  });
  return f;
}

}  // namespace wrtkit
