#ifndef ROBUSTPRED_TOOLS_COMMANDS_H_
#define ROBUSTPRED_TOOLS_COMMANDS_H_

#include <iosfwd>
#include <string>
#include <vector>

namespace robustpred::cli {

// Runs the command line `args` (args[0] is the program name). Data and
// summaries go to `out`, diagnostics to `err`. Returns the exit status.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace robustpred::cli

#endif  // ROBUSTPRED_TOOLS_COMMANDS_H_
