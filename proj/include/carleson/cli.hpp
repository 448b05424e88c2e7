#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "carleson/summing_analysis.hpp"

namespace carleson {

// Exit codes: 0 certified verdict or passing suite, 2 inconclusive, 1 error.
inline constexpr int kExitOk = 0;
inline constexpr int kExitError = 1;
inline constexpr int kExitInconclusive = 2;

// args excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

std::string csv_header();
// One CSV row (no newline), numbers as %.12g.
std::string csv_row(const std::string& case_id, const SummingVerdict& v);

}  // namespace carleson
