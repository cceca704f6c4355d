#pragma once

// Command-line front end. Data goes to `out` (or --out), diagnostics to `err`.
// Exit codes: 0 success, 1 input or validation error, 2 computation error.

#include <iosfwd>
#include <string>
#include <vector>

namespace decisive::cli {

/// args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

int main(int argc, char** argv);

}  // namespace decisive::cli
