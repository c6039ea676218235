#pragma once

namespace wnv {

enum ExitCode : int {
  kExitOk = 0,
  kExitUsage = 1,
  kExitNumerical = 2,
  kExitVerification = 3,
};

/// Entry point of the `wnv` tool. Subcommands: simulate, lyapunov,
/// sweep-lambda, find-lstar, find-mustar, classify, verify, reproduce-paper.
int cli_main(int argc, const char* const* argv);

}  // namespace wnv
