#pragma once

#include <cstdio>
#include <filesystem>
#include <string>
#include <vector>

namespace tsyb {

// Shortest exact decimal form that round-trips a double.
std::string format_double(double v);

// Splits one CSV line on commas; no quoting (none of our formats need it).
std::vector<std::string> split_csv_line(const std::string& line);

// Reads all lines, dropping a trailing empty line.
std::vector<std::string> read_lines(const std::filesystem::path& path);

// Key=value sidecar files (metadata next to primary outputs).
void write_kv(const std::filesystem::path& path,
              const std::vector<std::pair<std::string, std::string>>& kv);
std::vector<std::pair<std::string, std::string>> read_kv(
    const std::filesystem::path& path);

}  // namespace tsyb
