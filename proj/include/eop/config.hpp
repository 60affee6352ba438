#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "eop/core.hpp"

namespace eop {

// "RE,IM", "i", "1.2i", "-0.3+1.1i", or a plain real. Throws Usage.
cplx parse_tau(const std::string& s);

// "a,b" -> {a, b}
std::pair<double, double> parse_range(const std::string& s);
// "NxM"
std::pair<int, int> parse_grid(const std::string& s);
std::vector<int> parse_int_list(const std::string& s);
std::vector<double> parse_double_list(const std::string& s);
// "NAME=VAL"
std::pair<std::string, double> parse_tol(const std::string& s);

// Flat key=value file; '#' starts a comment, blank lines ignored. Throws
// Usage with the path and line number on malformed input or a missing file.
std::vector<std::pair<std::string, std::string>> read_config(const std::string& path);

// argv with the subcommand's config file folded in: every key becomes
// --key value unless the same flag is already on the command line. Repeatable
// keys (tol) are appended only when absent from the command line.
std::vector<std::string> merge_config(const std::vector<std::string>& args);

} // namespace eop
