#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace ek::cli {

// 0 ok, 1 verification failed, 2 input error
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace ek::cli
