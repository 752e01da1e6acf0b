#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace ecoscope::cli {

/// Dispatches one subcommand. Exit codes: 0 success / user confirmed,
/// 1 alerts raised and declined, 2 usage or configuration error.
/// Analysis output goes to `out`, diagnostics to `err`; prompts read `in`.
int run(const std::vector<std::string>& argv, std::istream& in, std::ostream& out,
        std::ostream& err);

int run_main(int argc, char** argv);

} // namespace ecoscope::cli
