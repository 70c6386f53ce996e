#pragma once

#include <iosfwd>

namespace elmono::cli {

// Exit codes: 0 success, 1 usage or configuration error, 2 data or numerical
// error (including a failed validation run).
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace elmono::cli
