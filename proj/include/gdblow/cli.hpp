#ifndef GDBLOW_CLI_HPP
#define GDBLOW_CLI_HPP

namespace gdblow::cli {

// Exit codes: 0 smooth / success, 2 blow-up predicted, 3 cross-validation
// discrepant, 1 input or configuration error.
int run(int argc, const char* const* argv);

}  // namespace gdblow::cli

#endif  // GDBLOW_CLI_HPP
