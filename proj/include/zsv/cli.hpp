#pragma once

#include <iosfwd>

namespace zsv {

// Exit codes: 0 success, 1 validation/assumption failure, 2 numeric failure
// (enumeration cap, non-isolated root), 3 I/O.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace zsv
