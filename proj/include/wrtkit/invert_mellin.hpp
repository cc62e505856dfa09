#pragma once

#include <functional>
#include <span>
#include <vector>

#include "wrtkit/forward.hpp"
#include "wrtkit/grid.hpp"
#include "wrtkit/window.hpp"

namespace wrtkit {

// Angular Fourier coefficients c_l(rho), l = -L..L.
struct HarmonicSeries {
  int L = 0;
  std::vector<double> rho;
  std::vector<cplx> values;  // [l + L][rho]

  std::span<const cplx> of(int l) const;
  std::span<cplx> of(int l);
  void validate() const;
};

// g_l(rho) = (1/2pi) \int g(rho, theta) e^{-i l theta} d theta by FFT over theta.
HarmonicSeries circular_decompose(const PolarWRT& g, int L);

// Theorem 4 needs a real, compactly supported window that is not odd.
void require_mellin_window(const WindowSpec& w);

struct KernelH {
  int l = 0;
  std::vector<double> r;
  std::vector<cplx> values;
  WindowSpec window;
  bool literal = false;
};

// H_l(q) = [h(tau) e^{i l alpha} + h(-tau) e^{-i l alpha}] / sqrt(1 - q^2), alpha = arccos q,
// tau = tan alpha, zero for q >= 1. literal: [h(tau) + h(-tau)] e^{i l alpha} / sqrt(1 - q^2).
KernelH kernel_H(const WindowSpec& w, int l, std::span<const double> r, bool literal = false);

struct MellinLine {
  double t = 0.0;
  std::vector<double> y;  // uniform, symmetric
  std::vector<cplx> values;
};

std::vector<double> uniform_y_grid(double T, double dy);

// Mf(t + iy) = \int f(r) r^{t + iy - 1} dr on a log-uniform r grid, as a direct 1-D transform of
// f(e^u) e^{tu} in u = ln r. Throws NumericalError if f r^t has not decayed at both grid ends.
MellinLine mellin_transform(std::span<const double> r, std::span<const cplx> f, double t,
                            std::span<const double> y);

// MH_l(t + iy) = \int_0^{arctan R} K_l(alpha) cos^{t + iy - 1}(alpha) d alpha (substitution q = cos alpha).
MellinLine kernel_mellin(const WindowSpec& w, int l, double t, std::span<const double> y, bool literal = false);

// g_l(rho) = \int f_l(rho / cos alpha) K_l(alpha) / cos^2(alpha) d alpha: the harmonic of the
// perpendicular-line data for a known radial profile.
std::vector<cplx> harmonic_forward(const std::function<cplx(double)>& fl, const WindowSpec& w, int l,
                                   std::span<const double> rho);

// max_y |M[rho g_l](s) - Mf_l(s + 1) MH_l(s)| / max_y |M[rho g_l](s)| on the line Re s = t.
// literal: the printed form Mg_l(s) = Mf_l(s + 1) MH(s).
double mellin_convolution_residual(std::span<const double> rho, std::span<const cplx> gl,
                                   std::span<const cplx> fl, const WindowSpec& w, int l, double t,
                                   std::span<const double> y, bool literal = false);

struct RegParams {
  double lambda_rel = 1e-6;  // lambda = (lambda_rel * max|MH|)^2
};

struct RadialRecovery {
  std::vector<cplx> values;
  double truncation_delta = 0.0;   // max |f(T) - f(T/2)|
  double truncation_change = 0.0;  // truncation_delta / max |f(T)|
};

// f_l(r) = (1/2pi) \int_{-T}^{T} r^{-t-iy} Q(t+iy) dy, Q = MG conj(MH) / (|MH|^2 + lambda), with
// MG = M[rho g_l] and MH = MH_l both on the line Re = t - 1. The T/2 comparison only looks at
// r >= check_from.
RadialRecovery recover_fl(const MellinLine& mg, const MellinLine& mh, double t, std::span<const double> r,
                          const RegParams& reg = {}, double check_from = 0.0);

struct MellinParams {
  double t = 1.5;
  double T = 40.0;
  double dy = 0.1;
  RegParams reg;
  double r_floor = 0.05;        // radii below are clamped
  std::size_t radial_table = 512;
};

struct MellinReport {
  // max over l of |f_l(T) - f_l(T/2)| / max over l of |f_l(T)|, for r >= 4 r_floor
  double max_truncation_change = 0.0;
  bool dc_clamped = false;
};

ScalarField reconstruct_mellin(const PolarWRT& g, const WindowSpec& w, int L, const Grid& out,
                               const MellinParams& p = {}, MellinReport* report = nullptr);

}  // namespace wrtkit
