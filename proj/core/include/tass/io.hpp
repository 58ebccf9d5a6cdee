#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>

namespace tass {

/// Whole file contents; throws IoError if the file cannot be read.
std::string read_file(const std::filesystem::path& path);

/// Writes to a sibling temporary file and renames it over `path`, so readers
/// never observe a partial file. Throws IoError on failure.
void write_file_atomic(const std::filesystem::path& path, std::string_view content);

/// Lowercase hex SHA-256.
std::string sha256_hex(std::string_view data);

} // namespace tass
