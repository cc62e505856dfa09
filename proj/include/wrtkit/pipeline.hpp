#pragma once

#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "wrtkit/forward.hpp"
#include "wrtkit/invert_bp.hpp"
#include "wrtkit/invert_fourier.hpp"
#include "wrtkit/invert_mellin.hpp"
#include "wrtkit/invert_slice.hpp"

namespace wrtkit {

enum class Method { t1, t2, slice, mellin };

std::string_view to_string(Method m);
Method parse_method(std::string_view name);

// Closed form when the phantom and window allow it, Gauss-Legendre quadrature otherwise.
std::unique_ptr<RaySource> make_ray_source(const PhantomSpec& f, const WindowSpec& w, const QuadratureParams& quad = {});

struct T2Setup {
  std::size_t directions = 180;
  std::size_t sigma_count = 128;
  double sigma_max = 0.0;  // 0: Nyquist of the output grid
  double r_min = 1e-3;
  std::size_t radii = 48;
  double spacing = 0.125;
  T2Params params;
};

struct MethodParams {
  BPParams t1;
  T2Setup t2;
  SliceSetup slice;
  double slice_a = 0.0;
  MellinParams mellin;
  int lmax = 16;
  std::size_t mellin_rho = 1000;
  std::size_t mellin_theta = 128;
  double mellin_rho_min = 1.5e-8;
};

// Rejects windows the method cannot use before anything is computed.
void check_method_window(Method m, const WindowSpec& w);
// Rejects stored data whose v-set does not fit the method.
void check_method_data(Method m, const WRTData& data);

// Sigma grid and radii used by t2 for an output grid and window.
std::vector<double> t2_sigma_grid(const Grid& out, const T2Setup& s);
std::vector<double> t2_radii(const WindowSpec& w, std::span<const double> sigma, const T2Setup& s);

// Reconstruction from a ray source, sampling whatever slice of the data the method consumes.
ScalarField invert_from_source(Method m, const RaySource& source, const Grid& out, const MethodParams& p);
// Reconstruction from stored data.
ScalarField invert_from_data(Method m, const WRTData& data, const Grid& out, const MethodParams& p);

}  // namespace wrtkit
