#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace debatenet {

/// Locale-independent decimal formatting that round-trips doubles exactly
/// (17 significant digits, shortest form within that budget).
std::string format_double(double value);

/// Locale-independent parse; throws format_error on trailing garbage.
double parse_double(std::string_view text);

long long parse_int(std::string_view text);

std::string to_lower_ascii(std::string_view text);

std::vector<std::string_view> split(std::string_view line, char sep);

/// One CSV record per call, RFC-4180 quoting. Returns false at end of input.
/// Handles quoted fields containing separators, escaped quotes and newlines.
bool read_csv_record(std::istream& in, std::vector<std::string>& fields, char sep = ',');

std::string csv_escape(std::string_view field, char sep = ',');

/// Whole-file reader; throws io_error when the file cannot be opened.
std::string read_file(const std::filesystem::path& path);

void write_file(const std::filesystem::path& path, std::string_view content);

} // namespace debatenet
