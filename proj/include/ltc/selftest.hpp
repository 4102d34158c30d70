#pragma once

#include <iosfwd>

namespace ltc {

// Built-in golden checks: the reference 4x4 square family and a full pipeline
// transcript are embedded so the binary can verify itself without external
// files. Prints one line per check; returns the number of failures.
int run_selftest(std::ostream& out);

}  // namespace ltc
