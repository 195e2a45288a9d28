#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace detlab::cli {

inline constexpr std::string_view kVersion = "1.0.0";

/// Exit codes: 0 success, 1 a checked bound failed, 2 usage or input error,
/// 3 fuel exhausted under --strict.
enum ExitCode : int { kOk = 0, kBoundFailed = 1, kUsage = 2, kFuelExhausted = 3 };

/// Runs one command line. `args` excludes the program name. `in` backs the
/// path "-" for inputs, data goes to `out`, diagnostics to `err`.
int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err);

/// Expectations embedded in an automaton file as `#@ key value` comment lines.
/// Only `max_det_states N` is understood; it adds a `fixture` bound row that
/// verify and batch check against the actual determinized size.
struct Fixtures {
  std::optional<std::size_t> max_det_states;
};
Fixtures parse_fixtures(std::string_view text);

}  // namespace detlab::cli
