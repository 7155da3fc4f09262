#pragma once

#include <filesystem>
#include <string>

#include <json.hpp>

namespace rwprune {

// All throw IoError on filesystem failures.
std::string read_text_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, const std::string& text);
// Throws ConfigError when the file is not valid JSON.
nlohmann::json read_json_file(const std::filesystem::path& path);
void ensure_directory(const std::filesystem::path& dir);

} // namespace rwprune
