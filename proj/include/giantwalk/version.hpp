#pragma once

#include <string_view>

namespace giantwalk {

inline constexpr std::string_view kVersion = "giantwalk 0.1.0";

}  // namespace giantwalk
