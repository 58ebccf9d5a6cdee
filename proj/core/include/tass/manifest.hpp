#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace tass {

struct FileDigest {
  /// What the file is to the command, e.g. "pfx2as" or "targets".
  std::string role;
  std::string path;
  std::string sha256;
  std::uint64_t bytes = 0;

  friend bool operator==(const FileDigest&, const FileDigest&) = default;
};

/// Provenance record written next to every output set. Apart from
/// `created_at`, identical inputs and parameters give an identical manifest.
struct RunManifest {
  std::string command;
  std::string tool_version;
  /// UTC, ISO-8601. The only field that varies between identical runs.
  std::string created_at;
  std::map<std::string, std::string> parameters;
  std::vector<FileDigest> inputs;
  std::vector<FileDigest> outputs;

  friend bool operator==(const RunManifest&, const RunManifest&) = default;

  [[nodiscard]] const FileDigest* find_input(std::string_view role) const noexcept;
  [[nodiscard]] const FileDigest* find_output(std::string_view role) const noexcept;
};

/// Digest of in-memory content that is about to be (or was) written to `path`.
FileDigest digest_of(std::string role, const std::filesystem::path& path, std::string_view content);

/// Stable, pretty-printed JSON with sorted keys.
std::string to_json(const RunManifest& manifest);

/// Throws ParseError on malformed JSON or missing fields.
RunManifest parse_manifest(std::string_view json);

/// `<path>.manifest.json`
std::filesystem::path manifest_path_for(const std::filesystem::path& output);

/// Current UTC time as `YYYY-MM-DDTHH:MM:SSZ`.
std::string utc_timestamp();

} // namespace tass
