#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace feq::cli {

/// Runs one command line (without the program name). Returns 0 on success,
/// 1 when a verification fails and 2 on parse or usage errors.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace feq::cli
