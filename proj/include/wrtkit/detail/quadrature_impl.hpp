#pragma once

#include <cmath>

#include "wrtkit/error.hpp"

namespace wrtkit {

template <class F>
auto integrate_adaptive(F&& f, double a, double b, double rel_tol, std::size_t panels, std::size_t max_panels) {
  auto apply = [&](std::size_t p) {
    auto rule = composite_gauss_legendre(a, b, p);
    decltype(f(a)) sum{};
    for (std::size_t i = 0; i < rule.x.size(); ++i) sum += rule.w[i] * f(rule.x[i]);
    return sum;
  };
  auto prev = apply(panels);
  for (std::size_t p = 2 * panels; p <= max_panels; p *= 2) {
    auto next = apply(p);
    if (std::abs(next - prev) <= rel_tol * std::abs(next) || std::abs(next - prev) < 1e-300) return next;
    prev = next;
  }
  throw NumericalError("integrate_adaptive: no convergence");
}

}  // namespace wrtkit
