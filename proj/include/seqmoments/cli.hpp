#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace seqmoments {

// Runs the command line (args exclude the program name). Returns the exit
// code: 0 success, 2 input validation, 3 prediction coverage, 4 internal
// consistency. Data goes to `out`, diagnostics to `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

// Parses "1,2,5" and ranges like "1-5" or "1..5".
std::vector<std::size_t> parse_lengths(const std::string& text);

} // namespace seqmoments
