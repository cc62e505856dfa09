#include "wrtkit/window.hpp"

#include <cmath>
#include <limits>
#include <mutex>
#include <numbers>
#include <utility>

#include "wrtkit/error.hpp"
#include "wrtkit/quadrature.hpp"

namespace wrtkit {
namespace {

constexpr double pi = std::numbers::pi;
const double sqrt_2pi = std::sqrt(2.0 * pi);

double bump_profile(double t, double radius) {
  const double x = t / radius;
  if (std::abs(x) >= 1.0) return 0.0;
  return std::exp(1.0 - 1.0 / (1.0 - x * x));
}

// h^ of the unit-amplitude bump: 2 \int_0^R h(t) cos(eta t) dt, panels scaled with the oscillation.
double bump_ft(double eta, double radius) {
  const std::size_t panels = 32 + static_cast<std::size_t>(std::abs(eta) * radius / 2.0);
  const auto rule = composite_gauss_legendre(0.0, radius, panels);
  double s = 0.0;
  for (std::size_t i = 0; i < rule.x.size(); ++i) s += rule.w[i] * bump_profile(rule.x[i], radius) * std::cos(eta * rule.x[i]);
  return 2.0 * s;
}

template <class V>
struct Cache {
  std::mutex mutex;
  std::vector<std::pair<WindowSpec, V>> entries;

  template <class Make>
  V get(const WindowSpec& w, Make&& make) {
    {
      std::lock_guard lock(mutex);
      for (const auto& [k, v] : entries)
        if (k == w) return v;
    }
    V v = make();
    std::lock_guard lock(mutex);
    entries.emplace_back(w, v);
    return v;
  }
};

// Largest x with f(x) >= target, for f decreasing beyond `start`.
template <class F>
double decreasing_crossing(F&& f, double start, double target) {
  double lo = start, hi = std::max(start, 1e-3) * 2.0;
  while (f(hi) > target) {
    lo = hi;
    hi *= 2.0;
    if (hi > 1e12) return std::numeric_limits<double>::infinity();
  }
  for (int i = 0; i < 200 && hi - lo > 1e-12 * hi; ++i) {
    const double mid = 0.5 * (lo + hi);
    (f(mid) > target ? lo : hi) = mid;
  }
  return hi;
}

}  // namespace

Parity WindowSpec::parity() const noexcept {
  switch (kind) {
    case Kind::gaussian:
    case Kind::bump:
      return Parity::even;
    case Kind::hermite1:
      return Parity::odd;
    default:
      return Parity::none;
  }
}

std::string_view to_string(WindowSpec::Kind kind) {
  switch (kind) {
    case WindowSpec::Kind::gaussian:
      return "gaussian";
    case WindowSpec::Kind::hermite1:
      return "hermite1";
    case WindowSpec::Kind::bump:
      return "bump";
    case WindowSpec::Kind::analytic_signal:
      return "analytic-signal";
  }
  return "unknown";
}

WindowSpec::Kind window_kind_from_string(std::string_view name) {
  if (name == "gaussian") return WindowSpec::Kind::gaussian;
  if (name == "hermite1") return WindowSpec::Kind::hermite1;
  if (name == "bump") return WindowSpec::Kind::bump;
  if (name == "analytic-signal") return WindowSpec::Kind::analytic_signal;
  throw InvalidArgument("window: unknown kind '" + std::string(name) + "'");
}

std::string WindowSpec::name() const {
  std::string s(to_string(kind));
  if (kind == Kind::gaussian || kind == Kind::hermite1) s += "(sigma=" + std::to_string(sigma) + ")";
  if (kind == Kind::bump) s += "(radius=" + std::to_string(radius) + ")";
  return s;
}

void WindowSpec::validate() const {
  if ((kind == Kind::gaussian || kind == Kind::hermite1) && !(sigma > 0.0 && std::isfinite(sigma)))
    throw InvalidArgument("window: sigma must be positive");
  if (kind == Kind::bump && !(radius > 0.0 && std::isfinite(radius)))
    throw InvalidArgument("window: radius must be positive");
  if (!std::isfinite(amplitude)) throw InvalidArgument("window: amplitude must be finite");
}

WindowSpec gaussian_window(double sigma) { return {WindowSpec::Kind::gaussian, sigma, 1.0, 1.0}; }
WindowSpec hermite1_window(double sigma) { return {WindowSpec::Kind::hermite1, sigma, 1.0, 1.0}; }
WindowSpec bump_window(double radius) { return {WindowSpec::Kind::bump, 1.0, radius, 1.0}; }
WindowSpec analytic_signal_window() { return {WindowSpec::Kind::analytic_signal, 1.0, 1.0, 1.0}; }

cplx window_eval(const WindowSpec& w, double t) {
  const double a = w.amplitude;
  switch (w.kind) {
    case WindowSpec::Kind::gaussian:
      return a * std::exp(-0.5 * t * t / (w.sigma * w.sigma));
    case WindowSpec::Kind::hermite1:
      return a * t * std::exp(-0.5 * t * t / (w.sigma * w.sigma));
    case WindowSpec::Kind::bump:
      return a * bump_profile(t, w.radius);
    case WindowSpec::Kind::analytic_signal:
      return a / (cplx(0.0, 2.0 * pi) * cplx(t, -1.0));
  }
  return 0.0;
}

cplx window_ft(const WindowSpec& w, double eta) {
  const double a = w.amplitude;
  switch (w.kind) {
    case WindowSpec::Kind::gaussian: {
      const double s = w.sigma;
      return a * s * sqrt_2pi * std::exp(-0.5 * s * s * eta * eta);
    }
    case WindowSpec::Kind::hermite1: {
      const double s = w.sigma;
      return cplx(0.0, -a * sqrt_2pi * s * s * s * eta * std::exp(-0.5 * s * s * eta * eta));
    }
    case WindowSpec::Kind::bump:
      return a == 0.0 ? 0.0 : a * bump_ft(eta, w.radius);
    case WindowSpec::Kind::analytic_signal:
      if (eta < 0.0) return a * std::exp(eta);
      return eta > 0.0 ? 0.0 : 0.5 * a;
  }
  return 0.0;
}

cplx riesz_filter_ft(const WindowSpec& w, double eta) { return std::abs(eta) * window_ft(w, eta); }

double window_reach(const WindowSpec& w, double eps) {
  const double s = w.sigma;
  switch (w.kind) {
    case WindowSpec::Kind::gaussian:
      return s * std::sqrt(-2.0 * std::log(eps));
    case WindowSpec::Kind::hermite1: {
      const double peak = s * std::exp(-0.5);
      return decreasing_crossing([s](double t) { return t * std::exp(-0.5 * t * t / (s * s)); }, s, eps * peak);
    }
    case WindowSpec::Kind::bump:
      return w.radius;
    case WindowSpec::Kind::analytic_signal:
      return std::numeric_limits<double>::infinity();
  }
  return 0.0;
}

double spectral_reach(const WindowSpec& w, double eps) {
  const double s = w.sigma;
  switch (w.kind) {
    case WindowSpec::Kind::gaussian:
      return std::sqrt(-2.0 * std::log(eps)) / s;
    case WindowSpec::Kind::hermite1: {
      const double peak = std::exp(-0.5) / s;
      return decreasing_crossing([s](double e) { return e * std::exp(-0.5 * s * s * e * e); }, 1.0 / s, eps * peak);
    }
    case WindowSpec::Kind::bump: {
      static Cache<double> cache;
      WindowSpec key = w;
      key.amplitude = 1.0;
      return cache.get(key, [&] {
        // |h^| oscillates; use the envelope max over [x, 2x] on a dense sample.
        const double peak = std::abs(bump_ft(0.0, w.radius));
        auto envelope = [&](double x) {
          double m = 0.0;
          for (int i = 0; i <= 64; ++i) m = std::max(m, std::abs(bump_ft(x * (1.0 + i / 64.0), w.radius)));
          return m;
        };
        double x = 4.0 / w.radius;
        while (envelope(x) > eps * peak && x < 1e6) x *= 1.25;
        return x;
      });
    }
    case WindowSpec::Kind::analytic_signal:
      return -std::log(eps);
  }
  return 0.0;
}

std::vector<double> riesz_filter(const WindowSpec& w, std::span<const double> t) {
  if (!w.is_real()) throw HypothesisError("riesz_filter: window must be real (analytic-signal rejected)");
  std::vector<double> out(t.size(), 0.0);
  if (w.is_zero() || t.empty()) return out;
  // k(t) = (1/pi) Re \int_0^E eta h^(eta) e^{i eta t} d eta for real h.
  double tmax = 0.0;
  for (double v : t) tmax = std::max(tmax, std::abs(v));
  const double E = spectral_reach(w);
  const std::size_t panels = 64 + static_cast<std::size_t>(E * (1.0 + tmax) / 2.0);
  const auto rule = composite_gauss_legendre(0.0, E, panels);
  std::vector<cplx> weighted(rule.x.size());
  for (std::size_t i = 0; i < rule.x.size(); ++i) weighted[i] = rule.w[i] * rule.x[i] * window_ft(w, rule.x[i]);
  for (std::size_t j = 0; j < t.size(); ++j) {
    double acc = 0.0;
    for (std::size_t i = 0; i < rule.x.size(); ++i) {
      const double ph = rule.x[i] * t[j];
      acc += weighted[i].real() * std::cos(ph) - weighted[i].imag() * std::sin(ph);
    }
    out[j] = acc / pi;
  }
  return out;
}

WindowConstants window_constants(const WindowSpec& w) {
  w.validate();
  if (!w.is_real()) throw InvalidArgument("window_constants: window must be real");
  if (w.is_zero()) throw HypothesisError("window is identically zero; h must be non-zero");
  static Cache<WindowConstants> cache;
  return cache.get(w, [&] {
    WindowConstants c;
    const double a2 = w.amplitude * w.amplitude;
    const double s = w.sigma;
    switch (w.kind) {
      case WindowSpec::Kind::gaussian:
        c.c_h2 = a2 * s * std::sqrt(pi);
        c.c_hat_half = a2 * std::pow(pi, 1.5) * s;
        break;
      case WindowSpec::Kind::hermite1:
        c.c_h2 = a2 * s * s * s * std::sqrt(pi) / 2.0;
        c.c_hat_half = a2 * std::pow(pi, 1.5) * s * s * s / 2.0;
        break;
      default: {
        const double R = w.radius;
        c.c_h2 = integrate_adaptive([&](double t) { return std::norm(window_eval(w, t)); }, -R, R, 1e-13);
        const double E = spectral_reach(w);
        c.c_hat_half = integrate_adaptive([&](double e) { return std::norm(window_ft(w, e)); }, 0.0, E, 1e-12, 16);
        break;
      }
    }
    c.c_hat_full = 2.0 * c.c_hat_half;
    c.hat_at_zero = window_ft(w, 0.0);
    return c;
  });
}

void require_inversion_window(const WindowSpec& w, std::string_view method) {
  w.validate();
  if (!w.is_real())
    throw HypothesisError(std::string(method) +
                          ": analytic-signal window is forward-only; inversions require a real window");
  if (w.is_zero()) throw HypothesisError(std::string(method) + ": window is identically zero; h must be non-zero");
}

}  // namespace wrtkit
