#pragma once

#include <filesystem>
#include <string>

#include "json.hpp"

#include "wrtkit/forward.hpp"
#include "wrtkit/grid.hpp"
#include "wrtkit/invert_fourier.hpp"
#include "wrtkit/phantom.hpp"
#include "wrtkit/window.hpp"

namespace wrtkit {

using json = nlohmann::json;
namespace fs = std::filesystem;

// JSON forms. Parsers throw InvalidArgument naming the offending field.
json to_json(const Grid& g);
json to_json(const WindowSpec& w);
json to_json(const PhantomSpec& f);
json to_json(const VSet& v);
Grid grid_from_json(const json& j);
WindowSpec window_from_json(const json& j);
PhantomSpec phantom_from_json(const json& j);
VSet vset_from_json(const json& j);

json read_json_file(const fs::path& path);
void write_json_file(const fs::path& path, const json& j);

// GF1: a directory holding meta.json and values.bin (little-endian, row-major, complex interleaved).
void write_gf1(const fs::path& dir, const ScalarField& f);
void write_gf1(const fs::path& dir, const SpectralField& f);
ScalarField read_gf1_scalar(const fs::path& dir);
SpectralField read_gf1_spectral(const fs::path& dir);
std::string gf1_kind(const fs::path& dir);

// WRT1: meta.json (u_grid, vset, window, dtype) and values.bin, u-major and v-minor.
void write_wrt1(const fs::path& dir, const WRTData& d);
WRTData read_wrt1(const fs::path& dir);

// pss1: PolarSpectralSamples for inspection.
void write_pss1(const fs::path& dir, const PolarSpectralSamples& s);
PolarSpectralSamples read_pss1(const fs::path& dir);

// 8-bit binary PGM of a 2-D field with linear min-max scaling; the scaling goes to path + ".json".
void write_pgm(const fs::path& path, const ScalarField& f);

}  // namespace wrtkit
