#pragma once

#include <functional>
#include <string_view>

namespace qpsf {

using WarningSink = std::function<void(std::string_view)>;

// Replaces the warning sink (default writes to stderr); returns the previous one.
WarningSink set_warning_sink(WarningSink sink);

void warn(std::string_view message);

}  // namespace qpsf
