#include "wrtkit/calibrate.hpp"

#include <cmath>

#include "wrtkit/error.hpp"

namespace wrtkit {

double fit_alpha(const ScalarField& raw, const ScalarField& ref) {
  if (!raw.grid.same_as(ref.grid)) throw InvalidArgument("fit_alpha: grids differ");
  double num = 0.0, den = 0.0, rr = 0.0;
  for (std::size_t i = 0; i < raw.values.size(); ++i) {
    num += raw.values[i] * ref.values[i];
    den += raw.values[i] * raw.values[i];
    rr += ref.values[i] * ref.values[i];
  }
  if (rr == 0.0) throw DegenerateReference("fit_alpha: reference phantom is identically zero");
  if (den == 0.0) throw DegenerateReference("fit_alpha: raw reconstruction is identically zero");
  return num / den;
}

std::vector<PhantomSpec> calibration_phantoms(std::size_t n) {
  if (n == 2)
    return {gaussian_phantom({0.3, -0.2}, 0.5), gaussian_phantom({-0.4, 0.5}, 0.6, 0.7),
            gaussian_phantom({0.0, 0.3}, 0.45, 1.3)};
  if (n == 3)
    return {gaussian_phantom({0.3, -0.2, 0.1}, 0.5), gaussian_phantom({-0.4, 0.5, 0.0}, 0.6, 0.7),
            gaussian_phantom({0.0, 0.3, -0.3}, 0.45, 1.3)};
  throw InvalidArgument("calibration phantoms exist for n = 2, 3");
}

CalibrationReport calibrate(Method m, const std::vector<PhantomSpec>& phantoms, const WindowSpec& w, const Grid& out,
                            const MethodParams& p, double cv_limit) {
  if (m != Method::t1 && m != Method::t2) throw InvalidArgument("calibrate: only t1 and t2 carry a constant");
  if (phantoms.size() < 3) throw InvalidArgument("calibrate: need at least 3 phantoms");
  check_method_window(m, w);
  const std::size_t n = out.dim();
  CalibrationReport rep;
  rep.method = std::string(to_string(m));
  rep.window = w.name();
  MethodParams raw = p;
  raw.t1.constant = {ConstantMode::none, 1.0};
  raw.t2.params.constant = {ConstantMode::none, 1.0};
  for (const auto& f : phantoms) {
    const ScalarField ref = sample_phantom(f, out);
    const auto src = make_ray_source(f, w);
    const ScalarField r = invert_from_source(m, *src, out, raw);
    const double a = fit_alpha(r, ref);
    ScalarField scaled = r;
    for (auto& v : scaled.values) v *= a;
    rep.alphas.push_back(a);
    rep.errors.push_back(rel_l2_error(scaled, ref));
  }
  double mean = 0.0;
  for (double a : rep.alphas) mean += a;
  mean /= static_cast<double>(rep.alphas.size());
  double var = 0.0;
  for (double a : rep.alphas) var += (a - mean) * (a - mean);
  var /= static_cast<double>(rep.alphas.size());
  rep.alpha = mean;
  rep.cv = std::sqrt(var) / std::abs(mean);
  rep.paper_constant = m == Method::t1 ? t1_paper_constant(w, n) : t2_paper_constant(w, n);
  rep.derived_constant = m == Method::t1 ? t1_derived_constant(w, n) : t2_derived_constant(w, n);
  rep.ratio = mean / rep.paper_constant;
  rep.derived_ratio = mean / rep.derived_constant;
  if (rep.cv > cv_limit)
    throw NumericalError("calibration unstable: coefficient of variation " + std::to_string(rep.cv) + " > " +
                         std::to_string(cv_limit));
  return rep;
}

}  // namespace wrtkit
