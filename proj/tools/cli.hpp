#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace riss::cli {

/// Runs the `riss` command line. Returns 0 on success, 2 on configuration
/// errors, 3 on numerical failures.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace riss::cli
