#ifndef HLR3_CLI_HPP
#define HLR3_CLI_HPP

#include <ostream>
#include <string>
#include <vector>

namespace hlr3 {

/// Runs one CLI invocation. Exit code 0 means success and every checked
/// property passed, 1 means the input was well formed but a mathematical
/// check failed (axiom violation, no equivalence, not trivializable), 2
/// means the input itself was unusable (unreadable file, schema violation,
/// unknown name, bad flags).
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace hlr3

#endif
