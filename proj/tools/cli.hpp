#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace qnblp::cli {

/// Runs one command line (program name excluded). Results go to `out`,
/// diagnostics to `err`. Returns the process exit code: 0 on success, 2 on
/// invalid input, 3 when a feasibility inequality fails.
int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err);

}  // namespace qnblp::cli
