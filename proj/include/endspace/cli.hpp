#pragma once
// Command-line front end, stream-injectable so tests can drive it
// without a process boundary. Exit codes: 0 success, 1 domain error
// (invalid input object, failed precondition), 2 usage error.

#include <iosfwd>
#include <string>
#include <vector>

namespace endspace {

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace endspace
