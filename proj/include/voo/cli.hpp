#pragma once

namespace voo {

/// Entry point behind the `voo` executable. Subcommands: parse, expand,
/// bench, demo. Returns a process exit code; errors go to stderr.
int cli_main(int argc, const char* const* argv);

} // namespace voo
