#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace uam::csv {

// Splits text into LF-terminated lines; a trailing CR is stripped so files
// edited on Windows still load.
std::vector<std::string_view> SplitLines(std::string_view text);

std::vector<std::string_view> SplitFields(std::string_view line);

// Strict integer parse; the whole field must be consumed.
bool ParseInt(std::string_view field, long long& out);
bool ParseDouble(std::string_view field, double& out);

// Fixed-point decimal with the given number of fractional digits.
std::string FormatFixed(double value, int decimals);

// Shortest text that round-trips to the same double.
std::string FormatShortest(double value);

std::string ReadFile(const std::string& path);
void WriteFile(const std::string& path, std::string_view contents);

}  // namespace uam::csv
