#include "tsyb/csv.hpp"

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <stdexcept>

namespace tsyb {

std::string format_double(double v) {
  char buf[40];
  // Try increasing precision until the value round-trips.
  for (int prec = 15; prec <= 17; ++prec) {
    std::snprintf(buf, sizeof(buf), "%.*g", prec, v);
    if (std::strtod(buf, nullptr) == v) return buf;
  }
  return buf;
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> out;
  size_t start = 0;
  while (true) {
    const size_t pos = line.find(',', start);
    if (pos == std::string::npos) {
      out.push_back(line.substr(start));
      break;
    }
    out.push_back(line.substr(start, pos - start));
    start = pos + 1;
  }
  return out;
}

std::vector<std::string> read_lines(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::vector<std::string> lines;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    lines.push_back(line);
  }
  return lines;
}

void write_kv(const std::filesystem::path& path,
              const std::vector<std::pair<std::string, std::string>>& kv) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  for (const auto& [k, v] : kv) out << k << "=" << v << "\n";
}

std::vector<std::pair<std::string, std::string>> read_kv(
    const std::filesystem::path& path) {
  std::vector<std::pair<std::string, std::string>> kv;
  for (const auto& line : read_lines(path)) {
    if (line.empty()) continue;
    const size_t eq = line.find('=');
    if (eq == std::string::npos)
      throw std::runtime_error("malformed key=value line: " + line);
    kv.emplace_back(line.substr(0, eq), line.substr(eq + 1));
  }
  return kv;
}

}  // namespace tsyb
