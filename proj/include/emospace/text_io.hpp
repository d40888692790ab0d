#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace emospace {

// Shortest decimal form that parses back to the identical double.
std::string format_double(double x);

// Fixed 17-significant-digit form used by model checkpoints.
std::string format_double17(double x);

// Strict full-token parse; nullopt on any trailing garbage.
std::optional<double> parse_double(std::string_view token);
std::optional<long long> parse_int(std::string_view token);

std::vector<std::string_view> split_ws(std::string_view line);
std::vector<std::string_view> split_on(std::string_view line, char sep);

std::string to_lower_ascii(std::string_view s);

// Whole-file helpers; throw IoError on failure.
std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, std::string_view content);

// Splits into lines on '\n', tolerating a trailing '\r' per line.
std::vector<std::string> read_lines(const std::filesystem::path& path);

}  // namespace emospace
