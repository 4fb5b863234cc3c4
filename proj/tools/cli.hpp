// SPDX-License-Identifier: Apache-2.0
//
// Command-line front end. run_cli is the whole program minus process setup,
// so tests can drive it in-process.

#ifndef DUALARC_TOOLS_CLI_HPP_
#define DUALARC_TOOLS_CLI_HPP_

#include <iosfwd>
#include <string>
#include <vector>

namespace dualarc::cli {

// Exit codes.
inline constexpr int kOk = 0;
inline constexpr int kFailed = 1;         // verification failed, not extendable, below threshold
inline constexpr int kUsage = 2;          // bad flags or unreadable input
inline constexpr int kInconsistent = 3;   // axiom violation found mid-algorithm

// args excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace dualarc::cli

#endif  // DUALARC_TOOLS_CLI_HPP_
