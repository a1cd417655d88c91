#pragma once

namespace ilap::cli {

/// Exit codes: 0 success, 1 input or usage error, 2 solver did not converge.
int run(int argc, char** argv);

}  // namespace ilap::cli
