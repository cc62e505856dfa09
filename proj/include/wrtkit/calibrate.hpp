#pragma once

#include <string>
#include <vector>

#include "wrtkit/pipeline.hpp"

namespace wrtkit {

// Least-squares scale alpha minimising ||alpha raw - ref||.
double fit_alpha(const ScalarField& raw, const ScalarField& ref);

struct CalibrationReport {
  std::string method;
  std::string window;
  double alpha = 0.0;  // mean over phantoms
  double paper_constant = 0.0;
  double derived_constant = 0.0;
  double ratio = 0.0;          // alpha / paper_constant
  double derived_ratio = 0.0;  // alpha / derived_constant
  std::vector<double> alphas;
  std::vector<double> errors;  // rel-L2 after scaling by alpha_i
  double cv = 0.0;             // std / mean of alphas
};

std::vector<PhantomSpec> calibration_phantoms(std::size_t n);

// Runs t1 or t2 without a constant on every phantom and fits alpha against the phantom itself.
// Throws NumericalError("calibration unstable") when the coefficient of variation exceeds cv_limit.
CalibrationReport calibrate(Method m, const std::vector<PhantomSpec>& phantoms, const WindowSpec& w, const Grid& out,
                            const MethodParams& p, double cv_limit = 0.10);

}  // namespace wrtkit
