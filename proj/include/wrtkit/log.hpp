#pragma once

#include <functional>
#include <string>
#include <string_view>

namespace wrtkit {

using WarningSink = std::function<void(std::string_view)>;

// Replaces the warning sink and returns the previous one. An empty sink restores stderr output.
WarningSink set_warning_sink(WarningSink sink);
void warn(std::string_view message);

}  // namespace wrtkit
