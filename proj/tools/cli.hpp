/* cli.hpp -- command-line front end, separated from main() for testability */

#ifndef SSA_CLI_HPP
#define SSA_CLI_HPP

#include <iosfwd>
#include <string>
#include <vector>

namespace ssa {

/* Runs one invocation.  `args` excludes the program name and is in natural
 * order.  Returns the process exit code: 0 success, 1 domain errors (JSON
 * {code, message, context} on `err`), 2 usage errors. */
int cli_run(std::vector<std::string> args, std::istream& in, std::ostream& out,
            std::ostream& err);

}  // namespace ssa

#endif
