#include "tass/manifest.hpp"

#include <chrono>
#include <ctime>

#include "json.hpp"
#include "tass/error.hpp"
#include "tass/io.hpp"

namespace tass {

namespace {

using nlohmann::json;

json digests_to_json(const std::vector<FileDigest>& files) {
  json arr = json::array();
  for (const auto& f : files)
    arr.push_back({{"role", f.role}, {"path", f.path}, {"sha256", f.sha256}, {"bytes", f.bytes}});
  return arr;
}

std::vector<FileDigest> digests_from_json(const json& arr) {
  std::vector<FileDigest> files;
  for (const auto& f : arr)
    files.push_back({f.at("role").get<std::string>(), f.at("path").get<std::string>(),
                     f.at("sha256").get<std::string>(), f.at("bytes").get<std::uint64_t>()});
  return files;
}

const FileDigest* find_role(const std::vector<FileDigest>& files, std::string_view role) {
  for (const auto& f : files)
    if (f.role == role)
      return &f;
  return nullptr;
}

} // namespace

const FileDigest* RunManifest::find_input(std::string_view role) const noexcept {
  return find_role(inputs, role);
}

const FileDigest* RunManifest::find_output(std::string_view role) const noexcept {
  return find_role(outputs, role);
}

FileDigest digest_of(std::string role, const std::filesystem::path& path,
                     std::string_view content) {
  return {std::move(role), path.string(), sha256_hex(content), content.size()};
}

std::string to_json(const RunManifest& m) {
  json j;
  j["command"] = m.command;
  j["tool_version"] = m.tool_version;
  j["created_at"] = m.created_at;
  j["parameters"] = m.parameters;
  j["inputs"] = digests_to_json(m.inputs);
  j["outputs"] = digests_to_json(m.outputs);
  return j.dump(2) + "\n";
}

RunManifest parse_manifest(std::string_view text) {
  try {
    auto j = json::parse(text);
    RunManifest m;
    m.command = j.at("command").get<std::string>();
    m.tool_version = j.at("tool_version").get<std::string>();
    m.created_at = j.value("created_at", "");
    m.parameters = j.at("parameters").get<std::map<std::string, std::string>>();
    m.inputs = digests_from_json(j.at("inputs"));
    m.outputs = digests_from_json(j.at("outputs"));
    return m;
  } catch (const json::exception& e) {
    throw ParseError(std::string("malformed manifest: ") + e.what());
  }
}

std::filesystem::path manifest_path_for(const std::filesystem::path& output) {
  auto p = output;
  p += ".manifest.json";
  return p;
}

std::string utc_timestamp() {
  const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

} // namespace tass
