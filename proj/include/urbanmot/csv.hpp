#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace urbanmot {

// Splits one CSV record on commas. No quoting; fields are trimmed of
// surrounding spaces and tabs.
std::vector<std::string_view> split_csv_fields(std::string_view line);

// Shortest decimal representation that parses back to the same double.
std::string format_double(double value);

// Strict numeric parsers; on failure the message names `what` so callers
// can prepend file/line context.
double parse_double_field(std::string_view text, std::string_view what);
long parse_int_field(std::string_view text, std::string_view what);

}  // namespace urbanmot
