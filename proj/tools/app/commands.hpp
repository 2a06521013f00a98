#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace rickart::app {

  // Process exit codes.
  inline constexpr int kExitHolds     = 0;
  inline constexpr int kExitFails     = 1;
  inline constexpr int kExitError     = 2;
  inline constexpr int kExitUndecided = 3;

  // 64-bit FNV-1a, rendered as 16 hex digits.
  std::string fnv1a_hex(std::string_view bytes);

  // Runs the command line `args` (without the program name) and returns the
  // exit code. Reports go to `out`, diagnostics to `err`.
  int run_cli(std::vector<std::string> const& args, std::ostream& out, std::ostream& err);

}  // namespace rickart::app
