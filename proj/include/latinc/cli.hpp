#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace latinc::cli {

// Parses arguments (without the program name), runs the selected
// subcommand, writes data to `out` and diagnostics to `err`.
// Exit codes: 0 success, 1 failed verification or computation error,
// 2 usage error. Output for identical arguments is byte-identical across
// runs and thread counts.
int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err);

}  // namespace latinc::cli
