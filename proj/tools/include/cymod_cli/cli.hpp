#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace cymod::cli {

// Exit codes: 0 all records ok, 1 a record failed or an operation threw, 2 usage error.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int run(int argc, char** argv);

}  // namespace cymod::cli
