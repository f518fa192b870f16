#pragma once

namespace ptm {

/// Entry point for the ptmetric command-line tool. Returns the process exit
/// code: 0 on success, 1 on domain errors (exceptional points,
/// ill-conditioned metrics, ...), 2 on usage or parse errors.
int run_cli(int argc, const char* const* argv);

} // namespace ptm
