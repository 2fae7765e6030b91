#pragma once

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace jumpsift {

inline constexpr std::string_view kToolVersion = "0.1.0";

inline constexpr int kExitOk = 0;
inline constexpr int kExitConfigError = 2;
inline constexpr int kExitRuntimeError = 3;

/// Subcommands: simulate, estimate, detect, mc, compare. Returns 0 on success,
/// 2 on usage/config errors and 3 on runtime errors.
int cli_dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int cli_dispatch(int argc, char** argv);

}  // namespace jumpsift
