#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace ccspec::cli {

// Runs one command line (argv without the program name). Primary output (CSV
// or report) goes to `out`; human-readable summaries to `summary`; errors are
// printed to `err` as "error: ..." lines. Returns the process exit code:
// 0 success, 1 validation/usage error, 2 numerical non-convergence.
int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& summary, std::ostream& err);

// main() adapter: routes to run() with std::cout/std::cerr, honoring --out.
int main_entry(int argc, char** argv);

}  // namespace ccspec::cli
