#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace scripta {

/// Whole-file helpers; failures raise Error(IoFailure).
std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, std::string_view contents);

/// Shortest decimal that parses back to the same double.
std::string format_double(double value);
/// Strict parse of a complete token; throws MalformedFile otherwise.
double parse_double(std::string_view token);
unsigned long long parse_unsigned(std::string_view token);

std::vector<std::string_view> split_fields(std::string_view line, char sep);
std::vector<std::string_view> split_whitespace(std::string_view line);
std::vector<std::string_view> split_lines(std::string_view text);

}  // namespace scripta
