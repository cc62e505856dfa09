#include "wrtkit/quadrature.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <numbers>

#include "wrtkit/error.hpp"

namespace wrtkit {

const QuadratureRule& gauss_legendre(std::size_t order) {
  static std::mutex mutex;
  static std::map<std::size_t, QuadratureRule> cache;
  std::lock_guard lock(mutex);
  if (auto it = cache.find(order); it != cache.end()) return it->second;
  if (order == 0) throw InvalidArgument("gauss_legendre: order must be positive");

  QuadratureRule r;
  r.x.resize(order);
  r.w.resize(order);
  const double n = static_cast<double>(order);
  for (std::size_t i = 0; i < (order + 1) / 2; ++i) {
    double x = std::cos(std::numbers::pi * (static_cast<double>(i) + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0, p1 = x;
      for (std::size_t k = 2; k <= order; ++k) {
        const double kk = static_cast<double>(k);
        const double p2 = ((2.0 * kk - 1.0) * x * p1 - (kk - 1.0) * p0) / kk;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    if (order == 1) {
      x = 0.0;
      dp = 1.0;
    }
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    r.x[i] = -x;
    r.x[order - 1 - i] = x;
    r.w[i] = r.w[order - 1 - i] = w;
  }
  return cache.emplace(order, std::move(r)).first->second;
}

QuadratureRule composite_gauss_legendre(double a, double b, std::size_t panels, std::size_t order) {
  if (panels == 0) throw InvalidArgument("composite_gauss_legendre: panels must be positive");
  const auto& gl = gauss_legendre(order);
  QuadratureRule r;
  r.x.reserve(panels * order);
  r.w.reserve(panels * order);
  const double h = (b - a) / static_cast<double>(panels);
  for (std::size_t p = 0; p < panels; ++p) {
    const double mid = a + h * (static_cast<double>(p) + 0.5);
    for (std::size_t i = 0; i < order; ++i) {
      r.x.push_back(mid + 0.5 * h * gl.x[i]);
      r.w.push_back(0.5 * h * gl.w[i]);
    }
  }
  return r;
}

}  // namespace wrtkit
