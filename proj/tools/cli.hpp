#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace ibc::cli {

// Exit codes.
inline constexpr int kOk = 0;
inline constexpr int kProtocolFailure = 1;
inline constexpr int kUsageError = 2;

/// Runs one command line (without the program name). Transcripts and reports
/// go to `out`; usage errors go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace ibc::cli
