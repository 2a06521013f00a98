#pragma once

#include <string_view>

namespace rickart {

  enum class Status { holds, fails, unsupported, undecided };

  constexpr std::string_view to_string(Status s) noexcept {
    switch (s) {
      case Status::holds:
        return "HOLDS";
      case Status::fails:
        return "FAILS";
      case Status::unsupported:
        return "UNSUPPORTED";
      case Status::undecided:
        return "UNDECIDED";
    }
    return "?";
  }

  constexpr Status from_bool(bool b) noexcept {
    return b ? Status::holds : Status::fails;
  }

}  // namespace rickart
