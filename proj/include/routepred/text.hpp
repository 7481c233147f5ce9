#pragma once

// Small text helpers shared by the file formats.

#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace routepred::text {

/// Shortest decimal form that parses back to the same double.
std::string format_real(double value);

/// Strict decimal parse: the whole field must be consumed and the value finite.
std::optional<double> parse_real(std::string_view field);

std::vector<std::string_view> split(std::string_view line, char sep);

/// Splits on '\n'. A single trailing newline does not produce an empty last line.
std::vector<std::string_view> lines(std::string_view content);

std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, std::string_view content);

}  // namespace routepred::text
