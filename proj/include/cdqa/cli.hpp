#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace cdqa {

enum ExitCode : int { kExitOk = 0, kExitUsage = 1, kExitData = 2 };

/// Entry point for the `cdqa` tool: ingest, ask, eval and serve.
/// args[0] is the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace cdqa
