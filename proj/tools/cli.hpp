#pragma once

// The ckforms command line, callable in-process so tests can drive it.

#include <iosfwd>
#include <string>
#include <vector>

namespace ckf::cli {

enum Exit : int { ok = 0, selftest_failed = 1, parse_error = 2, validation_error = 3, low_confidence = 4 };

/// args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace ckf::cli
