#pragma once

#include <string_view>

namespace rickart {

  inline constexpr std::string_view kEngineVersion = "0.1.0";

}  // namespace rickart
