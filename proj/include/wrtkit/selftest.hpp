#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace wrtkit {

struct SelftestOptions {
  std::uint64_t seed = 1;
  bool corrupt_constant = false;  // fault injection: scale the derived constants by 1.5
};

struct SelftestCheck {
  std::string name;
  double value = 0.0;
  double limit = 0.0;
  bool pass = false;
  double seconds = 0.0;
  std::string note;
};

struct SelftestReport {
  std::vector<SelftestCheck> checks;
  double seconds = 0.0;
  bool passed() const;
};

// Property suite at reduced resolution; every check is deterministic for a given seed.
SelftestReport run_selftest(const SelftestOptions& opt = {});
std::string format_table(const SelftestReport& r);

// Direction jitter in [0, 1) derived from a seed; seed 0 gives no jitter.
double seed_offset(std::uint64_t seed);

}  // namespace wrtkit
