#pragma once

#include <memory>
#include <span>
#include <variant>
#include <vector>

#include "wrtkit/grid.hpp"
#include "wrtkit/phantom.hpp"
#include "wrtkit/window.hpp"

namespace wrtkit {

// Parametrised set of direction vectors v.
struct VSet {
  enum class Mode { full_grid, polar, v1_line, perp };
  Mode mode = Mode::polar;

  Grid v_grid;  // full_grid

  // polar: v = r theta, index = direction * radii.size() + radius.
  std::vector<std::vector<double>> directions;
  std::vector<double> direction_weights;  // optional quadrature weights on the sphere
  std::vector<double> radii;

  // v1_line: v = (v1, vprime).
  std::vector<double> v1;
  std::vector<double> vprime;

  // perp (n = 2): u = rho theta, v = rho theta_perp; index = rho * theta_count + theta.
  std::vector<double> rho;
  std::size_t theta_count = 0;

  std::size_t size() const;
  std::size_t dim() const;
  std::vector<double> vector(std::size_t k) const;  // not for perp
  void validate(std::size_t n) const;
};

VSet full_grid_vset(Grid v_grid);
VSet polar_vset(std::vector<std::vector<double>> directions, std::vector<double> radii,
                std::vector<double> direction_weights = {});
VSet v1_line_vset(std::vector<double> v1, std::vector<double> vprime);

struct DirectionSet {
  std::vector<std::vector<double>> directions;
  std::vector<double> weights;  // sum to |S^{n-1}|
};

// Quadrature on S^{n-1} (n = 2 or 3). With `hemisphere` only one of each antipodal pair is kept and
// its weight doubled. n = 2: `count` equispaced angles shifted by offset * step. n = 3: `count`
// azimuths times count/2 Gauss-Legendre nodes in cos(polar angle).
DirectionSet sphere_directions(std::size_t n, std::size_t count, bool hemisphere, double offset = 0.0);
// Weights for stored directions: given weights, or uniform circle spacing inferred for n = 2.
std::vector<double> direction_weights_of(const VSet& vset);

std::vector<double> log_uniform(double lo, double hi, std::size_t count);
// Trapezoid weights in ln r for a log-uniform grid; throws unless the grid is log-uniform.
std::vector<double> log_trapezoid_weights(std::span<const double> r);

struct WRTData {
  Grid u_grid;  // unused (empty) for perp data
  VSet vset;
  WindowSpec window;
  std::vector<cplx> values;  // u-major, v-minor

  std::size_t v_count() const { return vset.size(); }
  bool is_complex() const { return !window.is_real(); }
  void validate() const;
};

struct PolarWRT {
  std::vector<double> rho;
  std::size_t theta_count = 0;
  WindowSpec window;
  std::vector<cplx> values;  // [rho][theta], theta_k = 2 pi k / theta_count

  double theta(std::size_t k) const;
  void validate() const;
};

WRTData to_wrt_data(const PolarWRT& g);
PolarWRT to_polar_wrt(const WRTData& d);

struct QuadratureParams {
  std::size_t panels = 32;
  std::size_t order = 16;
  double decay_threshold = 1e-14;
};

// Support of P(., v): zero unless u is within `ball.radius` of the line ball.center + R v and
// within ball.radius + |v| * streak of the centre along v.
struct RaySupport {
  Ball ball;
  double streak = 0.0;
};

// Anything that can evaluate P_h f(u, v) for a batch of base points sharing one v.
class RaySource {
 public:
  virtual ~RaySource() = default;
  virtual std::size_t dim() const = 0;
  virtual const WindowSpec& window() const = 0;
  virtual RaySupport support() const = 0;
  // points holds dim() coordinates per base point.
  virtual void sample(std::span<const double> v, std::span<const double> points, std::span<cplx> out) const = 0;

  cplx operator()(std::span<const double> u, std::span<const double> v) const;
};

// Composite Gauss-Legendre in t over [-T, T] intersected with the chord of the object's support ball.
class QuadratureRaySource final : public RaySource {
 public:
  QuadratureRaySource(PhantomSpec phantom, WindowSpec window, QuadratureParams quad = {});
  // Sampled field, cubic interpolation with zero extension.
  QuadratureRaySource(ScalarField field, WindowSpec window, QuadratureParams quad = {});

  std::size_t dim() const override { return dim_; }
  const WindowSpec& window() const override { return window_; }
  RaySupport support() const override;
  void sample(std::span<const double> v, std::span<const double> points, std::span<cplx> out) const override;

 private:
  double f(std::span<const double> x) const;

  std::variant<PhantomSpec, ScalarField> object_;
  WindowSpec window_;
  QuadratureParams quad_;
  std::size_t dim_;
  Ball ball_;
  double reach_;
};

// Closed form for gaussian phantoms and gaussian windows.
class AnalyticGaussianRaySource final : public RaySource {
 public:
  AnalyticGaussianRaySource(PhantomSpec phantom, WindowSpec window);

  std::size_t dim() const override { return phantom_.dim(); }
  const WindowSpec& window() const override { return window_; }
  RaySupport support() const override;
  void sample(std::span<const double> v, std::span<const double> points, std::span<cplx> out) const override;

 private:
  PhantomSpec phantom_;
  WindowSpec window_;
};

// Stored WRT data: v must be one of the data's vectors, u is interpolated cubically with zero
// extension. Reading outside the grid where the data has not decayed raises CoverageError.
class StoredRaySource final : public RaySource {
 public:
  explicit StoredRaySource(const WRTData& data, double edge_tolerance = 1e-3);

  std::size_t dim() const override { return data_.u_grid.dim(); }
  const WindowSpec& window() const override { return data_.window; }
  RaySupport support() const override;
  void sample(std::span<const double> v, std::span<const double> points, std::span<cplx> out) const override;

 private:
  std::size_t node_of(std::span<const double> v) const;

  const WRTData& data_;
  double edge_tolerance_;
  std::vector<double> edge_fraction_;
};

// P_h f(u, v) = \int f(u + t v) h(t) dt for a gaussian bump and a gaussian window (v = 0 allowed).
double analytic_wrt_gaussian(const GaussianBump& f, const WindowSpec& w, std::span<const double> u,
                             std::span<const double> v);

// Samples a source over a u-grid and v-set (perp sets ignore u_grid).
WRTData sample_wrt(const RaySource& source, const Grid& u_grid, const VSet& vset);

WRTData windowed_ray_transform(const PhantomSpec& f, const WindowSpec& w, const Grid& u_grid, const VSet& vset,
                               const QuadratureParams& quad = {});
WRTData windowed_ray_transform(const ScalarField& f, const WindowSpec& w, const Grid& u_grid, const VSet& vset,
                               const QuadratureParams& quad = {});

// g(rho, theta) = P_h f(rho theta, rho theta_perp); theta_count must be a power of two.
PolarWRT wrt_polar_perp(const RaySource& source, std::span<const double> rho, std::size_t theta_count);
PolarWRT wrt_polar_perp(const PhantomSpec& f, const WindowSpec& w, std::span<const double> rho,
                        std::size_t theta_count, const QuadratureParams& quad = {});

// max |FT_u P(xi, v) - f^(xi) h^(-xi.v)| / max |f^| over the frequency grid of the u-grid.
double fourier_identity_residual(const WRTData& data, const PhantomSpec& phantom);

// Largest relative change of sampled outputs when the panel count is halved; used to flag
// non-converged quadrature.
double quadrature_convergence(const PhantomSpec& f, const WindowSpec& w, const Grid& u_grid, const VSet& vset,
                              const QuadratureParams& quad, std::size_t probes, unsigned seed);

}  // namespace wrtkit
