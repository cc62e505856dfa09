#pragma once

#include <cstddef>
#include <vector>

namespace wrtkit {

struct QuadratureRule {
  std::vector<double> x;
  std::vector<double> w;
};

// Gauss-Legendre nodes and weights on [-1, 1]; cached per order.
const QuadratureRule& gauss_legendre(std::size_t order);

// `panels` equal panels on [a, b], `order` Gauss-Legendre nodes each.
QuadratureRule composite_gauss_legendre(double a, double b, std::size_t panels, std::size_t order = 16);

// Integrates f over [a, b], doubling the panel count until two successive results agree to
// rel_tol. Throws NumericalError if that does not happen within max_panels.
template <class F>
auto integrate_adaptive(F&& f, double a, double b, double rel_tol = 1e-12, std::size_t panels = 8,
                        std::size_t max_panels = 1 << 14);

}  // namespace wrtkit

#include "wrtkit/detail/quadrature_impl.hpp"
