#pragma once

#include <string>
#include <string_view>

namespace wrtkit {

// How the raw inversion integral is scaled: the constant derived under our Fourier convention,
// the constant printed in the paper, a calibrated scalar alpha, or no scaling at all.
enum class ConstantMode { derived, paper, calibrated, none };

struct ConstantChoice {
  ConstantMode mode = ConstantMode::derived;
  double alpha = 1.0;  // calibrated only
};

std::string to_string(const ConstantChoice& c);
// "derived" | "paper" | "none" | "calibrated:ALPHA"
ConstantChoice parse_constant(std::string_view text);

}  // namespace wrtkit
