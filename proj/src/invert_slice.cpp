#include "wrtkit/invert_slice.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <numbers>
#include <sstream>

#include "wrtkit/error.hpp"
#include "wrtkit/fourier.hpp"
#include "wrtkit/parallel.hpp"

namespace wrtkit {
namespace {

constexpr double pi = std::numbers::pi;

double norm_of(std::span<const double> x) {
  double s = 0.0;
  for (double v : x) s += v * v;
  return std::sqrt(s);
}

// FFT bin of sigma on a length-n line of spacing h, or -1.
long exact_bin(double sigma, std::size_t n, double h) {
  const double k = sigma * static_cast<double>(n) * h / (2.0 * pi);
  const double kr = std::round(k);
  if (std::abs(k - kr) > 1e-6 || std::abs(kr) > 0.5 * static_cast<double>(n)) return -1;
  const long b = static_cast<long>(kr);
  return b < 0 ? b + static_cast<long>(n) : b;
}

void fill_dc(SliceSpectrum& s) {
  double d = 0.0;
  for (double v : s.sigma)
    if (v != 0.0 && (d == 0.0 || std::abs(v) < d)) d = std::abs(v);
  auto find = [&](double target) {
    std::vector<std::size_t> idx;
    for (std::size_t k = 0; k < s.sigma.size(); ++k)
      if (std::abs(std::abs(s.sigma[k]) - target) <= 1e-9 * target) idx.push_back(k);
    return idx;
  };
  std::vector<std::size_t> zero;
  for (std::size_t k = 0; k < s.sigma.size(); ++k)
    if (s.sigma[k] == 0.0) zero.push_back(k);
  if (zero.empty()) return;
  const auto i1 = find(d), i2 = find(2.0 * d);
  if (d == 0.0 || i1.empty()) throw InvalidArgument("slice: sigma = 0 needs samples at +-d and +-2d");
  const std::size_t ns = s.sigma.size();
  for (std::size_t j = 0; j < s.zeta.size(); ++j) {
    auto mean = [&](const std::vector<std::size_t>& idx) {
      cplx m = 0.0;
      for (auto k : idx) m += s.values[j * ns + k];
      return m / static_cast<double>(idx.size());
    };
    const cplx f1 = mean(i1);
    const cplx dc = i2.empty() ? f1 : (4.0 * f1 - mean(i2)) / 3.0;
    for (auto k : zero) s.values[j * ns + k] = dc;
  }
  s.dc_extrapolated = true;
}

}  // namespace

double Apodization::weight(double v1, double V) const {
  const double x = v1 / V;
  if (std::abs(x) > 1.0) return 0.0;
  switch (kind) {
    case Kind::none:
      return 1.0;
    case Kind::hann:
      return 0.5 * (1.0 + std::cos(pi * x));
    case Kind::kaiser:
      return std::cyl_bessel_i(0.0, beta * std::sqrt(1.0 - x * x)) / std::cyl_bessel_i(0.0, beta);
  }
  return 1.0;
}

std::string Apodization::name() const {
  switch (kind) {
    case Kind::none:
      return "none";
    case Kind::hann:
      return "hann";
    case Kind::kaiser: {
      std::ostringstream os;
      os << "kaiser:" << beta;
      return os.str();
    }
  }
  return "none";
}

Apodization parse_apodization(std::string_view text) {
  Apodization a;
  if (text == "none") {
    a.kind = Apodization::Kind::none;
  } else if (text == "hann") {
    a.kind = Apodization::Kind::hann;
  } else if (text.starts_with("kaiser:")) {
    a.kind = Apodization::Kind::kaiser;
    const auto num = text.substr(7);
    const auto [ptr, ec] = std::from_chars(num.data(), num.data() + num.size(), a.beta);
    if (ec != std::errc() || ptr != num.data() + num.size() || !(a.beta >= 0.0))
      throw InvalidArgument("apodization: bad kaiser beta '" + std::string(num) + "'");
  } else {
    throw InvalidArgument("apodization: expected none|hann|kaiser:BETA, got '" + std::string(text) + "'");
  }
  return a;
}

std::vector<double> midpoint_v1_grid(double V, std::size_t count) {
  if (!(V > 0.0) || count == 0) throw InvalidArgument("v1 grid: need V > 0 and count > 0");
  const double dv = 2.0 * V / static_cast<double>(count);
  std::vector<double> v(count);
  for (std::size_t k = 0; k < count; ++k) v[k] = -V + (static_cast<double>(k) + 0.5) * dv;
  return v;
}

double SliceGeometry::v1_spacing() const { return v1.size() < 2 ? 2.0 * V() : v1[1] - v1[0]; }

double SliceGeometry::V() const {
  if (v1.empty()) return 0.0;
  if (v1.size() == 1) return std::abs(v1[0]) > 0.0 ? std::abs(v1[0]) : 1.0;
  return v1.back() + 0.5 * (v1[1] - v1[0]);
}

void SliceGeometry::validate() const {
  if (u1_count < 2 || !(u1_spacing > 0.0)) throw InvalidArgument("slice: u1 line needs >= 2 samples and positive spacing");
  if (v1.empty()) throw InvalidArgument("slice: empty v1 grid");
  if (uprime.empty() || uprime.size() != vprime.size()) throw InvalidArgument("slice: need one (u', v') pair per slice");
  const std::size_t m = uprime.front().size();
  if (m == 0) throw InvalidArgument("slice: transverse dimension must be >= 1");
  for (std::size_t j = 0; j < uprime.size(); ++j)
    if (uprime[j].size() != m || vprime[j].size() != m) throw InvalidArgument("slice: inconsistent transverse dimension");
  const double dv = v1_spacing();
  const double scale = std::max(1.0, std::abs(v1.back()));
  for (std::size_t k = 0; k < v1.size(); ++k) {
    if (std::abs(v1[k] + v1[v1.size() - 1 - k]) > 1e-9 * scale) throw InvalidArgument("slice: v1 grid must be symmetric about 0");
    if (k > 0 && std::abs(v1[k] - v1[k - 1] - dv) > 1e-9 * scale) throw InvalidArgument("slice: v1 grid must be uniform");
  }
  if (!(dv > 0.0) && v1.size() > 1) throw InvalidArgument("slice: v1 grid must be increasing");
}

void SliceDataset::validate() const {
  geometry.validate();
  if (values.size() != geometry.slice_count() * geometry.v1.size() * geometry.u1_count)
    throw InvalidArgument("slice: values do not match slices x v1 x u1");
}

SliceSpectrum slice_extract(const SliceGeometry& g, const SliceLineLoader& load, const WindowSpec& w,
                            const SliceParams& p) {
  require_inversion_window(w, "slice");
  g.validate();
  const cplx ha = window_eval(w, p.a);
  if (std::abs(ha) < 1e-12)
    throw HypothesisError("slice: window vanishes at a = " + std::to_string(p.a) + " (Theorem 3 needs h(a) != 0)");
  if (p.sigma.empty()) throw InvalidArgument("slice: empty sigma grid");
  if (p.mode == SliceParams::Mode::restricted) {
    if (p.a == 0.0) throw InvalidArgument("slice: restricted mode requires a != 0");
    for (const auto& u : g.uprime)
      if (norm_of(u) != 0.0) throw InvalidArgument("slice: restricted mode requires u' = 0");
  } else {
    for (const auto& v : g.vprime)
      if (norm_of(v) != 0.0) throw InvalidArgument("slice: full mode requires v' = 0");
  }
  const double du = g.u1_spacing, dv = g.v1_spacing(), V = g.V();
  for (double s : p.sigma) {
    if (std::abs(s) > pi / du * (1.0 + 1e-12))
      throw InvalidArgument("slice: sigma " + std::to_string(s) + " beyond the u1 Nyquist band");
    if (g.v1.size() > 1 && std::abs(p.a * s) > pi / dv * (1.0 + 1e-12))
      throw InvalidArgument("slice: a*sigma " + std::to_string(p.a * s) + " beyond the v1 Nyquist band");
  }

  const std::size_t N = g.u1_count, nv = g.v1.size(), ns = p.sigma.size(), nj = g.slice_count();
  std::vector<long> bins(ns);
  bool use_fft = true;
  for (std::size_t k = 0; k < ns; ++k) {
    bins[k] = exact_bin(p.sigma[k], N, du);
    use_fft = use_fft && bins[k] >= 0;
  }
  // w(v1) dv e^{-i a sigma v1}, then the u1 phase and spacing.
  std::vector<cplx> kern(ns * nv);
  for (std::size_t k = 0; k < ns; ++k)
    for (std::size_t m = 0; m < nv; ++m)
      kern[k * nv + m] = g.apodization.weight(g.v1[m], V) * dv * std::polar(1.0, -p.a * p.sigma[k] * g.v1[m]);
  std::vector<cplx> post(ns);
  for (std::size_t k = 0; k < ns; ++k)
    post[k] = std::abs(p.sigma[k]) * du * std::polar(1.0, -p.sigma[k] * g.u1_origin) / (2.0 * pi * ha);

  SliceSpectrum out;
  out.sigma = p.sigma;
  out.a = p.a;
  out.apodization = g.apodization.name();
  out.V = V;
  out.zeta.resize(nj);
  out.values.assign(nj * ns, 0.0);
  for (std::size_t j = 0; j < nj; ++j) {
    out.zeta[j] = g.uprime[j];
    for (std::size_t i = 0; i < out.zeta[j].size(); ++i) out.zeta[j][i] += p.a * g.vprime[j][i];
  }

  parallel_for(nj, [&](std::size_t j) {
    std::vector<cplx> acc(ns, 0.0);
    if (use_fft) {
      std::vector<cplx> buf(nv * N);
      for (std::size_t m = 0; m < nv; ++m) load(j, m, std::span(buf).subspan(m * N, N));
      dft_rows_inplace(buf, N, -1);
      for (std::size_t k = 0; k < ns; ++k)
        for (std::size_t m = 0; m < nv; ++m) acc[k] += kern[k * nv + m] * buf[m * N + static_cast<std::size_t>(bins[k])];
    } else {
      std::vector<cplx> line(N);
      std::vector<double> steps(ns);
      for (std::size_t k = 0; k < ns; ++k) steps[k] = p.sigma[k] * du;
      for (std::size_t m = 0; m < nv; ++m) {
        load(j, m, line);
        const auto F = ft_at(0.0, 1.0, line, steps);
        for (std::size_t k = 0; k < ns; ++k) acc[k] += kern[k * nv + m] * F[k];
      }
    }
    for (std::size_t k = 0; k < ns; ++k) out.values[j * ns + k] = post[k] * acc[k];
  });
  if (std::find(p.sigma.begin(), p.sigma.end(), 0.0) != p.sigma.end()) fill_dc(out);
  return out;
}

SliceSpectrum slice_extract(const SliceDataset& ds, const WindowSpec& w, const SliceParams& p) {
  ds.validate();
  const std::size_t N = ds.geometry.u1_count, nv = ds.geometry.v1.size();
  return slice_extract(
      ds.geometry,
      [&](std::size_t j, std::size_t m, std::span<cplx> line) {
        std::copy_n(ds.values.begin() + static_cast<std::ptrdiff_t>((j * nv + m) * N), N, line.begin());
      },
      w, p);
}

namespace {

SliceLineLoader source_loader(const RaySource& source, const SliceGeometry& g) {
  const std::size_t n = g.dim();
  const RaySupport sup = source.support();
  return [&source, &g, n, sup](std::size_t j, std::size_t m, std::span<cplx> line) {
    if (norm_of(g.vprime[j]) == 0.0) {
      double d2 = 0.0;
      for (std::size_t a = 1; a < n; ++a) d2 += std::pow(g.uprime[j][a - 1] - sup.ball.center[a], 2);
      if (d2 > sup.ball.radius * sup.ball.radius) {
        std::fill(line.begin(), line.end(), cplx(0.0));
        return;
      }
    }
    std::vector<double> pts(g.u1_count * n), v(n);
    for (std::size_t i = 0; i < g.u1_count; ++i) {
      pts[i * n] = g.u1_origin + g.u1_spacing * static_cast<double>(i);
      for (std::size_t a = 1; a < n; ++a) pts[i * n + a] = g.uprime[j][a - 1];
    }
    v[0] = g.v1[m];
    for (std::size_t a = 1; a < n; ++a) v[a] = g.vprime[j][a - 1];
    source.sample(v, pts, line);
  };
}

}  // namespace

SliceSpectrum slice_extract(const RaySource& source, const SliceGeometry& g, const SliceParams& p) {
  g.validate();
  if (source.dim() != g.dim()) throw InvalidArgument("slice: source and geometry differ in dimension");
  return slice_extract(g, source_loader(source, g), source.window(), p);
}

SliceDataset sample_slices(const RaySource& source, const SliceGeometry& g) {
  g.validate();
  if (source.dim() != g.dim()) throw InvalidArgument("slice: source and geometry differ in dimension");
  SliceDataset ds;
  ds.geometry = g;
  const std::size_t N = g.u1_count, nv = g.v1.size();
  ds.values.assign(g.slice_count() * nv * N, 0.0);
  const auto load = source_loader(source, g);
  parallel_for(g.slice_count() * nv, [&](std::size_t q) {
    load(q / nv, q % nv, std::span(ds.values).subspan(q * N, N));
  });
  return ds;
}

SliceDataset slice_dataset_from_wrt(const WRTData& data, Apodization apodization) {
  data.validate();
  if (data.vset.mode != VSet::Mode::v1_line) throw InvalidArgument("slice: WRT data must use a v1-line v-set");
  const Grid& u = data.u_grid;
  const std::size_t n = u.dim();
  if (n < 2) throw InvalidArgument("slice: needs n >= 2");
  SliceDataset ds;
  SliceGeometry& g = ds.geometry;
  g.u1_origin = u.origin[0];
  g.u1_spacing = u.spacing[0];
  g.u1_count = u.shape[0];
  g.v1 = data.vset.v1;
  g.apodization = apodization;
  Grid t;
  t.shape.assign(u.shape.begin() + 1, u.shape.end());
  t.origin.assign(u.origin.begin() + 1, u.origin.end());
  t.spacing.assign(u.spacing.begin() + 1, u.spacing.end());
  const std::size_t nt = t.size(), nv = g.v1.size(), N = g.u1_count, vcount = data.vset.size();
  for (std::size_t j = 0; j < nt; ++j) {
    g.uprime.push_back(t.point(j));
    g.vprime.push_back(data.vset.vprime);
  }
  ds.values.resize(nt * nv * N);
  for (std::size_t j = 0; j < nt; ++j)
    for (std::size_t m = 0; m < nv; ++m)
      for (std::size_t i = 0; i < N; ++i) ds.values[(j * nv + m) * N + i] = data.values[(i * nt + j) * vcount + m];
  g.validate();
  return ds;
}

std::vector<double> slice_sigma_grid(const Grid& out) {
  out.validate();
  const std::size_t N = out.shape[0];
  std::vector<double> s(N);
  for (std::size_t m = 0; m < N; ++m)
    s[m] = 2.0 * pi * (static_cast<double>(m) - static_cast<double>(N / 2)) / (static_cast<double>(N) * out.spacing[0]);
  return s;
}

SliceGeometry full_slice_geometry(const RaySource& source, const Grid& out, const SliceSetup& s, double a) {
  out.validate();
  const std::size_t n = out.dim();
  if (n < 2 || source.dim() != n) throw InvalidArgument("slice: output grid must match the source dimension (n >= 2)");
  if (!(s.V > 0.0)) throw InvalidArgument("slice: V must be positive");
  const RaySupport sup = source.support();
  if (!std::isfinite(sup.streak)) throw InvalidArgument("slice: window reach must be finite");
  SliceGeometry g;
  g.apodization = s.apodization;
  g.u1_spacing = out.spacing[0];
  const std::size_t Nout = out.shape[0];
  const double half = sup.ball.radius + s.V * sup.streak;
  const auto m = static_cast<std::size_t>(std::ceil(2.0 * half / (static_cast<double>(Nout) * g.u1_spacing)));
  g.u1_count = std::max<std::size_t>(1, m) * Nout;
  g.u1_origin = sup.ball.center[0] - 0.5 * static_cast<double>(g.u1_count) * g.u1_spacing;
  std::size_t nv = s.v1_count;
  if (nv == 0) {
    const double smax = pi / g.u1_spacing;
    const double dv = 2.0 * pi / (smax * (window_reach(source.window(), 1e-8) + std::abs(a)));
    nv = 2 * static_cast<std::size_t>(std::ceil(s.V / dv));
  }
  g.v1 = midpoint_v1_grid(s.V, nv);
  Grid t;
  t.shape.assign(out.shape.begin() + 1, out.shape.end());
  t.origin.assign(out.origin.begin() + 1, out.origin.end());
  t.spacing.assign(out.spacing.begin() + 1, out.spacing.end());
  for (std::size_t j = 0; j < t.size(); ++j) {
    g.uprime.push_back(t.point(j));
    g.vprime.emplace_back(n - 1, 0.0);
  }
  return g;
}

ScalarField reconstruct_slice(const SliceSpectrum& spec, const Grid& out) {
  out.validate();
  const std::size_t n = out.dim();
  if (n < 2) throw InvalidArgument("reconstruct_slice: needs n >= 2");
  const auto sig = slice_sigma_grid(out);
  const std::size_t N0 = sig.size(), ns = spec.sigma.size();
  if (ns != N0) throw InvalidArgument("reconstruct_slice: sigma grid must be the frequency grid of output axis 0");
  for (std::size_t k = 0; k < N0; ++k)
    if (std::abs(spec.sigma[k] - sig[k]) > 1e-9 * (1.0 + std::abs(sig[k])))
      throw InvalidArgument("reconstruct_slice: sigma grid must be the frequency grid of output axis 0");
  if (spec.values.size() != spec.zeta.size() * ns) throw InvalidArgument("reconstruct_slice: malformed spectrum");

  Grid t;
  t.shape.assign(out.shape.begin() + 1, out.shape.end());
  t.origin.assign(out.origin.begin() + 1, out.origin.end());
  t.spacing.assign(out.spacing.begin() + 1, out.spacing.end());
  const std::size_t nt = t.size();
  const double tol = 1e-6 * *std::min_element(t.spacing.begin(), t.spacing.end());
  std::vector<std::size_t> slice_of(nt);
  for (std::size_t q = 0; q < nt; ++q) {
    const auto x = t.point(q);
    bool found = false;
    for (std::size_t j = 0; j < spec.zeta.size() && !found; ++j) {
      if (spec.zeta[j].size() != n - 1) throw InvalidArgument("reconstruct_slice: zeta dimension mismatch");
      double d = 0.0;
      for (std::size_t a = 0; a < n - 1; ++a) d = std::max(d, std::abs(spec.zeta[j][a] - x[a]));
      if (d <= tol) {
        slice_of[q] = j;
        found = true;
      }
    }
    if (!found) throw InvalidArgument("reconstruct_slice: incomplete zeta coverage");
  }

  Grid line{{N0}, {out.origin[0]}, {out.spacing[0]}};
  ScalarField f(out);
  parallel_for(nt, [&](std::size_t q) {
    SpectralField sf;
    sf.spatial = line;
    sf.grid = frequency_grid(line, 1);
    const std::size_t j = slice_of[q];
    sf.values.assign(spec.values.begin() + static_cast<std::ptrdiff_t>(j * ns),
                     spec.values.begin() + static_cast<std::ptrdiff_t>((j + 1) * ns));
    const auto col = continuous_ift_complex(sf, line);
    for (std::size_t i = 0; i < N0; ++i) f.values[i * nt + q] = col[i].real();
  });
  return f;
}

ScalarField reconstruct_slice(const RaySource& source, const Grid& out, const SliceSetup& s, double a) {
  const SliceGeometry g = full_slice_geometry(source, out, s, a);
  SliceParams p;
  p.a = a;
  p.sigma = slice_sigma_grid(out);
  return reconstruct_slice(slice_extract(source, g, p), out);
}

double slice_identity_residual(const SliceSpectrum& spec, const PhantomSpec& phantom, double lo, double hi) {
  double num = 0.0, den = 0.0;
  const std::size_t ns = spec.sigma.size();
  for (std::size_t j = 0; j < spec.zeta.size(); ++j)
    for (std::size_t k = 0; k < ns; ++k) {
      const double s = std::abs(spec.sigma[k]);
      if (s < lo || s > hi) continue;
      const cplx ref = phantom_partial_ft(phantom, spec.sigma[k], spec.zeta[j]);
      num += std::norm(spec.values[j * ns + k] - ref);
      den += std::norm(ref);
    }
  if (den == 0.0) throw DegenerateReference("slice residual: reference spectrum vanishes on the band");
  return std::sqrt(num / den);
}

}  // namespace wrtkit
