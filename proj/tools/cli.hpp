#ifndef HEATCONTENT_TOOLS_CLI_HPP
#define HEATCONTENT_TOOLS_CLI_HPP

#include <iosfwd>
#include <string>
#include <vector>

namespace heatcontent::cli {

enum ExitCode : int { kSuccess = 0, kVerificationFailure = 1, kUsageError = 2 };

/// Runs one command line (args[0] is the subcommand, no program name).
/// Output and diagnostics go to the given streams.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Entry point for main(): strips argv[0].
int main_entry(int argc, char** argv);

}  // namespace heatcontent::cli

#endif
