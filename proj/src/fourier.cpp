#include "wrtkit/fourier.hpp"

#include <fftw3.h>

#include <cmath>
#include <mutex>
#include <numbers>
#include <sstream>

#include "wrtkit/error.hpp"
#include "wrtkit/log.hpp"

namespace wrtkit {
namespace {

std::mutex planner_mutex;

constexpr double two_pi = 2.0 * std::numbers::pi;

// Per-axis phase vectors e^{i sign xi_k o} for a centred frequency axis.
std::vector<cplx> axis_phase(std::size_t n, double dxi, double origin, double sign) {
  std::vector<cplx> p(n);
  const long half = static_cast<long>(n / 2);
  for (std::size_t m = 0; m < n; ++m) {
    const double xi = dxi * static_cast<double>(static_cast<long>(m) - half);
    p[m] = std::polar(1.0, sign * xi * origin);
  }
  return p;
}

// Permutation between centred index m and DFT index q = (m - N/2) mod N, applied per axis.
std::size_t centred_to_dft(std::size_t m, std::size_t n) { return (m + n - n / 2) % n; }

}  // namespace

void dft_inplace(std::span<cplx> data, std::span<const std::size_t> shape, int sign) {
  std::vector<int> dims(shape.begin(), shape.end());
  std::size_t total = 1;
  for (auto s : shape) total *= s;
  if (total != data.size()) throw InvalidArgument("dft: data size does not match shape");
  if (total == 0) return;
  auto* ptr = reinterpret_cast<fftw_complex*>(data.data());
  fftw_plan plan;
  {
    std::lock_guard lock(planner_mutex);
    plan = fftw_plan_dft(static_cast<int>(dims.size()), dims.data(), ptr, ptr,
                         sign < 0 ? FFTW_FORWARD : FFTW_BACKWARD, FFTW_ESTIMATE);
  }
  fftw_execute(plan);
  std::lock_guard lock(planner_mutex);
  fftw_destroy_plan(plan);
}

void dft_rows_inplace(std::span<cplx> data, std::size_t len, int sign) {
  if (len == 0 || data.size() % len != 0) throw InvalidArgument("dft: data is not a whole number of rows");
  if (data.empty()) return;
  const int n = static_cast<int>(len), howmany = static_cast<int>(data.size() / len);
  auto* ptr = reinterpret_cast<fftw_complex*>(data.data());
  fftw_plan plan;
  {
    std::lock_guard lock(planner_mutex);
    plan = fftw_plan_many_dft(1, &n, howmany, ptr, nullptr, 1, n, ptr, nullptr, 1, n,
                              sign < 0 ? FFTW_FORWARD : FFTW_BACKWARD, FFTW_ESTIMATE);
  }
  fftw_execute(plan);
  std::lock_guard lock(planner_mutex);
  fftw_destroy_plan(plan);
}

Grid frequency_grid(const Grid& spatial, std::size_t padding) {
  if (padding == 0) throw InvalidArgument("continuous_ft: padding must be >= 1");
  Grid f;
  for (std::size_t a = 0; a < spatial.dim(); ++a) {
    const std::size_t n = spatial.shape[a] * padding;
    const double dxi = two_pi / (static_cast<double>(n) * spatial.spacing[a]);
    f.shape.push_back(n);
    f.spacing.push_back(dxi);
    f.origin.push_back(-dxi * static_cast<double>(n / 2));
  }
  return f;
}

double boundary_fraction(const Grid& grid, std::span<const cplx> values) {
  double peak = 0.0, edge = 0.0;
  for (std::size_t i = 0; i < values.size(); ++i) {
    const double v = std::abs(values[i]);
    peak = std::max(peak, v);
    auto idx = grid.unravel(i);
    for (std::size_t a = 0; a < grid.dim(); ++a)
      if (idx[a] == 0 || idx[a] + 1 == grid.shape[a]) {
        edge = std::max(edge, v);
        break;
      }
  }
  return peak > 0.0 ? edge / peak : 0.0;
}

SpectralField continuous_ft(const Grid& grid, std::span<const cplx> values, std::size_t padding) {
  grid.validate();
  if (values.size() != grid.size()) throw InvalidArgument("continuous_ft: values do not match grid");
  for (const auto& v : values)
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
      throw NumericalError("continuous_ft: non-finite input");
  if (double b = boundary_fraction(grid, values); b > 1e-6) {
    std::ostringstream msg;
    msg << "continuous_ft: field does not decay at the grid boundary (edge/peak = " << b << ")";
    warn(msg.str());
  }

  SpectralField out;
  out.spatial = grid;
  out.grid = frequency_grid(grid, padding);
  const std::size_t n = grid.dim();
  const auto& pshape = out.grid.shape;

  // Zero-padded copy, samples placed at the leading indices (origin stays the first sample).
  std::vector<cplx> buf(out.grid.size(), cplx{});
  for (std::size_t i = 0; i < values.size(); ++i) {
    auto idx = grid.unravel(i);
    buf[out.grid.ravel(idx)] = values[i];
  }
  dft_inplace(buf, pshape, -1);

  std::vector<std::vector<cplx>> phase(n);
  for (std::size_t a = 0; a < n; ++a)
    phase[a] = axis_phase(pshape[a], out.grid.spacing[a], grid.origin[a], -1.0);
  const double scale = grid.cell_volume();

  out.values.resize(buf.size());
  std::vector<std::size_t> q(n);
  for (std::size_t flat = 0; flat < buf.size(); ++flat) {
    auto m = out.grid.unravel(flat);
    cplx ph = scale;
    for (std::size_t a = 0; a < n; ++a) {
      q[a] = centred_to_dft(m[a], pshape[a]);
      ph *= phase[a][m[a]];
    }
    out.values[flat] = ph * buf[out.grid.ravel(q)];
  }
  return out;
}

SpectralField continuous_ft(const ScalarField& field, std::size_t padding) {
  std::vector<cplx> v(field.values.begin(), field.values.end());
  return continuous_ft(field.grid, v, padding);
}

std::vector<cplx> continuous_ift_complex(const SpectralField& spectrum, const Grid& out) {
  const Grid& fg = spectrum.grid;
  const std::size_t n = fg.dim();
  if (out.dim() != n || out.shape != fg.shape)
    throw InvalidArgument("continuous_ift: output grid shape does not match the spectrum");
  for (std::size_t a = 0; a < n; ++a) {
    const double expected = two_pi / (static_cast<double>(fg.shape[a]) * fg.spacing[a]);
    if (std::abs(out.spacing[a] - expected) > 1e-9 * expected)
      throw InvalidArgument("continuous_ift: output grid spacing does not match the spectrum");
  }
  if (spectrum.values.size() != fg.size()) throw InvalidArgument("continuous_ift: values do not match grid");

  std::vector<std::vector<cplx>> phase(n);
  for (std::size_t a = 0; a < n; ++a) phase[a] = axis_phase(fg.shape[a], fg.spacing[a], out.origin[a], 1.0);

  std::vector<cplx> buf(fg.size());
  std::vector<std::size_t> q(n);
  for (std::size_t flat = 0; flat < buf.size(); ++flat) {
    auto m = fg.unravel(flat);
    cplx ph = 1.0;
    for (std::size_t a = 0; a < n; ++a) {
      q[a] = centred_to_dft(m[a], fg.shape[a]);
      ph *= phase[a][m[a]];
    }
    buf[fg.ravel(q)] = ph * spectrum.values[flat];
  }
  dft_inplace(buf, fg.shape, +1);
  double scale = 1.0;
  for (std::size_t a = 0; a < n; ++a) scale *= static_cast<double>(fg.shape[a]) * out.spacing[a];
  for (auto& v : buf) v /= scale;
  return buf;
}

ScalarField continuous_ift(const SpectralField& spectrum, const Grid& out) {
  auto c = continuous_ift_complex(spectrum, out);
  ScalarField f(out);
  double re_max = 0.0, im_max = 0.0;
  for (std::size_t i = 0; i < c.size(); ++i) {
    f.values[i] = c[i].real();
    re_max = std::max(re_max, std::abs(c[i].real()));
    im_max = std::max(im_max, std::abs(c[i].imag()));
  }
  if (im_max > 1e-8 * re_max && im_max > 1e-300) {
    std::ostringstream msg;
    msg << "continuous_ift: discarding imaginary part of relative size " << im_max / std::max(re_max, 1e-300);
    warn(msg.str());
  }
  return f;
}

ScalarField continuous_ift(const SpectralField& spectrum) {
  // With padding the spectrum is finer than the original grid; invert onto the padded
  // grid and crop back to the original samples.
  const Grid& sp = spectrum.spatial;
  if (sp.dim() == 0) throw InvalidArgument("continuous_ift: spectrum has no spatial grid");
  if (sp.shape == spectrum.grid.shape) return continuous_ift(spectrum, sp);
  Grid padded = sp;
  padded.shape = spectrum.grid.shape;
  auto full = continuous_ift(spectrum, padded);
  ScalarField f(sp);
  for (std::size_t i = 0; i < f.values.size(); ++i) f.values[i] = full.values[padded.ravel(sp.unravel(i))];
  return f;
}

std::vector<cplx> ft_at(double origin, double spacing, std::span<const cplx> values,
                        std::span<const double> xi) {
  std::vector<cplx> out(xi.size());
  for (std::size_t k = 0; k < xi.size(); ++k) {
    // Recurrence on the phase keeps this O(N) per frequency without trig calls per sample.
    const cplx step = std::polar(1.0, -xi[k] * spacing);
    cplx ph = std::polar(spacing, -xi[k] * origin);
    cplx acc = 0.0;
    for (const auto& v : values) {
      acc += v * ph;
      ph *= step;
    }
    out[k] = acc;
  }
  return out;
}

}  // namespace wrtkit
