#pragma once

namespace tlab {

// Full command-line front end. Returns the process exit code: 0 success,
// 1 computation error, 2 validation failure, 64 usage error.
int run_cli(int argc, const char* const* argv);

}  // namespace tlab
