#include "wrtkit/constants.hpp"

#include <sstream>

#include "wrtkit/error.hpp"

namespace wrtkit {

std::string to_string(const ConstantChoice& c) {
  switch (c.mode) {
    case ConstantMode::derived:
      return "derived";
    case ConstantMode::paper:
      return "paper";
    case ConstantMode::none:
      return "none";
    case ConstantMode::calibrated: {
      std::ostringstream s;
      s.precision(17);
      s << "calibrated:" << c.alpha;
      return s.str();
    }
  }
  return "unknown";
}

ConstantChoice parse_constant(std::string_view text) {
  if (text == "derived") return {ConstantMode::derived, 1.0};
  if (text == "paper") return {ConstantMode::paper, 1.0};
  if (text == "none") return {ConstantMode::none, 1.0};
  constexpr std::string_view prefix = "calibrated:";
  if (text.starts_with(prefix)) {
    try {
      std::size_t used = 0;
      const std::string num(text.substr(prefix.size()));
      const double a = std::stod(num, &used);
      if (used == num.size()) return {ConstantMode::calibrated, a};
    } catch (...) {
    }
  }
  throw InvalidArgument("constant mode must be derived, paper, none or calibrated:ALPHA (got '" +
                        std::string(text) + "')");
}

}  // namespace wrtkit
