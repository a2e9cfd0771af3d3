#pragma once

#include <ostream>

namespace obstructo {

/// Entry point of the obstructo tool. Returns 0 on success, 1 when a verdict
/// or check does not come out as expected, 2 on usage and parse errors.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace obstructo
