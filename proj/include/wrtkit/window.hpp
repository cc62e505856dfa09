#pragma once

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "wrtkit/grid.hpp"

namespace wrtkit {

enum class Parity { even, odd, none };

struct WindowSpec {
  enum class Kind { gaussian, hermite1, bump, analytic_signal };
  Kind kind = Kind::gaussian;
  double sigma = 1.0;      // gaussian, hermite1
  double radius = 1.0;     // bump
  double amplitude = 1.0;  // overall scale; 0 gives the zero window

  bool is_real() const noexcept { return kind != Kind::analytic_signal; }
  bool is_compact() const noexcept { return kind == Kind::bump; }
  bool is_zero() const noexcept { return amplitude == 0.0; }
  Parity parity() const noexcept;
  std::string name() const;
  void validate() const;
  bool operator==(const WindowSpec&) const = default;
};

WindowSpec gaussian_window(double sigma = 1.0);
WindowSpec hermite1_window(double sigma = 1.0);
WindowSpec bump_window(double radius = 1.0);
WindowSpec analytic_signal_window();

std::string_view to_string(WindowSpec::Kind kind);
WindowSpec::Kind window_kind_from_string(std::string_view name);

// h(t). The bump is exp(1 - 1/(1 - (t/R)^2)) on |t| < R, so h(0) = 1.
cplx window_eval(const WindowSpec& w, double t);
// h^(eta) = \int h(t) e^{-i eta t} dt.
cplx window_ft(const WindowSpec& w, double eta);

// T with |h(t)| < eps * max|h| for |t| > T (infinite for the analytic-signal window).
double window_reach(const WindowSpec& w, double eps = 1e-14);
// Frequency beyond which |h^| < eps * max|h^|.
double spectral_reach(const WindowSpec& w, double eps = 1e-14);

// Samples of I^{-1}h, the inverse transform of |eta| h^(eta).
std::vector<double> riesz_filter(const WindowSpec& w, std::span<const double> t);
// |eta| h^(eta).
cplx riesz_filter_ft(const WindowSpec& w, double eta);

struct WindowConstants {
  double c_h2 = 0.0;        // \int |h|^2
  double c_hat_half = 0.0;  // \int_0^inf |h^|^2
  double c_hat_full = 0.0;  // \int_R |h^|^2
  cplx hat_at_zero;         // h^(0)
};

// Cached per window. Throws HypothesisError for the zero window and InvalidArgument for complex windows.
WindowConstants window_constants(const WindowSpec& w);

// Rejects windows an inversion cannot use: complex (analytic-signal) or identically zero.
void require_inversion_window(const WindowSpec& w, std::string_view method);

}  // namespace wrtkit
