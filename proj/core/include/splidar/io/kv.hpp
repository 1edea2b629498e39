#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <utility>
#include <vector>

namespace splidar::io {

/// Ordered key/value pairs from "key = value" lines. '#' starts a comment,
/// blank lines are skipped. Malformed lines raise InputError with the line
/// number.
std::vector<std::pair<std::string, std::string>> parse_kv_text(const std::string& text,
                                                               const std::string& origin);
std::vector<std::pair<std::string, std::string>> parse_kv_file(const std::filesystem::path& path);

std::string read_text_file(const std::filesystem::path& path);

/// Value parsers that reject trailing garbage and report the key on failure.
double kv_double(const std::string& key, const std::string& value);
std::int64_t kv_int(const std::string& key, const std::string& value);
std::uint64_t kv_uint(const std::string& key, const std::string& value);
std::vector<double> kv_double_list(const std::string& key, const std::string& value);

}  // namespace splidar::io
