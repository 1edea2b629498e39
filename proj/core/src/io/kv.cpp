#include "splidar/io/kv.hpp"

#include <charconv>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "splidar/common.hpp"

namespace splidar::io {

namespace {
std::string trim(const std::string& s) {
  const char* ws = " \t\r";
  auto b = s.find_first_not_of(ws);
  if (b == std::string::npos) return "";
  auto e = s.find_last_not_of(ws);
  return s.substr(b, e - b + 1);
}
}  // namespace

std::vector<std::pair<std::string, std::string>> parse_kv_text(const std::string& text,
                                                               const std::string& origin) {
  std::vector<std::pair<std::string, std::string>> out;
  std::istringstream in(text);
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    auto eq = line.find('=');
    if (eq == std::string::npos)
      throw InputError(origin + ":" + std::to_string(lineno) + ": expected key = value");
    std::string key = trim(line.substr(0, eq));
    std::string value = trim(line.substr(eq + 1));
    if (key.empty() || value.empty())
      throw InputError(origin + ":" + std::to_string(lineno) + ": empty key or value");
    out.emplace_back(std::move(key), std::move(value));
  }
  return out;
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open: " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::vector<std::pair<std::string, std::string>> parse_kv_file(const std::filesystem::path& path) {
  return parse_kv_text(read_text_file(path), path.string());
}

double kv_double(const std::string& key, const std::string& value) {
  const char* begin = value.c_str();
  char* end = nullptr;
  double v = std::strtod(begin, &end);
  if (end == begin || *end != '\0')
    throw InputError("config key '" + key + "': cannot parse '" + value + "' as a number");
  return v;
}

std::int64_t kv_int(const std::string& key, const std::string& value) {
  std::int64_t v = 0;
  auto [p, ec] = std::from_chars(value.data(), value.data() + value.size(), v);
  if (ec != std::errc{} || p != value.data() + value.size())
    throw InputError("config key '" + key + "': cannot parse '" + value + "' as an integer");
  return v;
}

std::uint64_t kv_uint(const std::string& key, const std::string& value) {
  std::uint64_t v = 0;
  auto [p, ec] = std::from_chars(value.data(), value.data() + value.size(), v);
  if (ec != std::errc{} || p != value.data() + value.size())
    throw InputError("config key '" + key + "': cannot parse '" + value +
                     "' as a non-negative integer");
  return v;
}

std::vector<double> kv_double_list(const std::string& key, const std::string& value) {
  std::vector<double> out;
  std::string item;
  std::istringstream in(value);
  while (std::getline(in, item, ',')) {
    item.erase(0, item.find_first_not_of(" \t"));
    auto last = item.find_last_not_of(" \t");
    if (last != std::string::npos) item.erase(last + 1);
    if (item.empty())
      throw InputError("config key '" + key + "': empty list element");
    out.push_back(kv_double(key, item));
  }
  if (out.empty()) throw InputError("config key '" + key + "': empty list");
  return out;
}

}  // namespace splidar::io
