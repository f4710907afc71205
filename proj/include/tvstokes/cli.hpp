#pragma once

#include <iosfwd>

namespace tvstokes {

/// Command-line entry point. Returns 0 on success, 2 for bad flags or
/// invalid parameters (after printing usage or the violated requirement),
/// 1 for runtime failures such as unreadable input.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace tvstokes
