#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace scanwin::cli {

/// Runs one command line (without the program name). Returns the process
/// exit code: 0 on success, 1 on a runtime error, 2 on a usage error. Errors
/// are written to `err` as {"error": {"kind", "message"}}.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace scanwin::cli
