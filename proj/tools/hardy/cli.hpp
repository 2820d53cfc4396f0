#pragma once

// Command-line front end of the library. main() is a thin wrapper around
// run_cli so the commands can be driven in-process by the tests.

#include <iosfwd>
#include <string>
#include <vector>

namespace hardy::cli {

// Exit codes.
inline constexpr int kOk = 0;
inline constexpr int kFailed = 1;      // a verification failed, or a computation missed its accuracy
inline constexpr int kBadParams = 2;   // bad flags or values outside a function's domain

// args excludes the program name. Results go to out unless -o is given;
// diagnostics go to err.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

// Sample axis syntax: "a,b,c" lists values, "log:lo:hi:n" and "lin:lo:hi:n"
// give n log- or linearly spaced values including both ends.
std::vector<double> parse_axis(const std::string& spec);

} // namespace hardy::cli
