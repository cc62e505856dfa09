#pragma once

#include <functional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "wrtkit/forward.hpp"
#include "wrtkit/grid.hpp"
#include "wrtkit/phantom.hpp"
#include "wrtkit/window.hpp"

namespace wrtkit {

// Taper applied in v1 before the transform.
struct Apodization {
  enum class Kind { none, hann, kaiser };
  Kind kind = Kind::hann;
  double beta = 8.0;  // kaiser

  double weight(double v1, double V) const;
  std::string name() const;  // "none" | "hann" | "kaiser:BETA"
};

Apodization parse_apodization(std::string_view text);

// Midpoints of count equal cells covering [-V, V].
std::vector<double> midpoint_v1_grid(double V, std::size_t count);

// Sampling layout: one slice per transverse pair (u', v'); each slice holds P(u1, u', v1, v') on a
// uniform u1 line for every v1.
struct SliceGeometry {
  double u1_origin = 0.0;
  double u1_spacing = 0.125;
  std::size_t u1_count = 0;
  std::vector<double> v1;                   // symmetric, uniform
  std::vector<std::vector<double>> uprime;  // n-1 each
  std::vector<std::vector<double>> vprime;  // n-1 each
  Apodization apodization;

  std::size_t slice_count() const { return uprime.size(); }
  std::size_t dim() const { return uprime.empty() ? 0 : uprime.front().size() + 1; }
  double V() const;
  double v1_spacing() const;
  void validate() const;
};

struct SliceDataset {
  SliceGeometry geometry;
  std::vector<cplx> values;  // [slice][v1][u1]
  void validate() const;
};

struct SliceParams {
  enum class Mode { full, restricted };
  double a = 0.0;
  std::vector<double> sigma;
  Mode mode = Mode::full;
};

// f^_1(sigma, zeta) for zeta = u' + a v', f^_1 the Fourier transform in x1 only.
struct SliceSpectrum {
  std::vector<double> sigma;
  std::vector<std::vector<double>> zeta;
  std::vector<cplx> values;  // [slice][sigma]
  double a = 0.0;
  bool dc_extrapolated = false;
  std::string apodization;
  double V = 0.0;
};

// Writes P(., u'_j, v1_k, v'_j) for slice j and v1 index k into line (u1_count values).
using SliceLineLoader = std::function<void(std::size_t slice, std::size_t v1_index, std::span<cplx> line)>;

SliceSpectrum slice_extract(const SliceGeometry& g, const SliceLineLoader& load, const WindowSpec& w,
                            const SliceParams& p);
SliceSpectrum slice_extract(const SliceDataset& ds, const WindowSpec& w, const SliceParams& p);
SliceSpectrum slice_extract(const RaySource& source, const SliceGeometry& g, const SliceParams& p);

// Samples a source into a dataset.
SliceDataset sample_slices(const RaySource& source, const SliceGeometry& g);
// Full-mode dataset from stored data on a v1-line v-set: axis 0 of the u-grid is u1, the remaining
// axes are u'.
SliceDataset slice_dataset_from_wrt(const WRTData& data, Apodization apodization);

// Frequencies 2 pi k / (N h) of axis 0 of the output grid, k = -N/2 .. N/2 - 1.
std::vector<double> slice_sigma_grid(const Grid& out);

struct SliceSetup {
  double V = 16.0;
  std::size_t v1_count = 0;  // 0: chosen from the window reach and the largest |sigma|
  Apodization apodization;
};

// Full-mode geometry for the output grid: u' over the transverse grid points, v' = 0, u1 lines on
// the output spacing, long enough to hold the streak and a whole multiple of the output length.
SliceGeometry full_slice_geometry(const RaySource& source, const Grid& out, const SliceSetup& s, double a);

// Inverse transform in sigma for every transverse grid point; the spectrum must hold
// slice_sigma_grid(out) and one zeta per transverse grid point.
ScalarField reconstruct_slice(const SliceSpectrum& spec, const Grid& out);
ScalarField reconstruct_slice(const RaySource& source, const Grid& out, const SliceSetup& s, double a = 0.0);

// ||est - f^_1|| / ||f^_1|| over the samples with lo <= |sigma| <= hi.
double slice_identity_residual(const SliceSpectrum& spec, const PhantomSpec& phantom, double lo = 1.0,
                               double hi = 4.0);

}  // namespace wrtkit
