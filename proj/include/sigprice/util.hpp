#pragma once

#include <string>
#include <vector>

namespace sigprice {

// shortest decimal string that parses back to exactly the same double.
// keeps csv output deterministic and diff-friendly.
std::string format_double(double v);

// strict double parse, whole string must be consumed. throws InputError.
double parse_double(const std::string& s, const std::string& what);

// strict non-negative integer parse. throws InputError.
long parse_long(const std::string& s, const std::string& what);

// split one csv line on commas (no quoting; our formats never need it).
std::vector<std::string> split_csv(const std::string& line);

}  // namespace sigprice
