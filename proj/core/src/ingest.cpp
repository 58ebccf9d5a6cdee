#include "tass/ingest.hpp"

#include <algorithm>
#include <charconv>
#include <istream>
#include <optional>
#include <ostream>
#include <string_view>

#include "tass/error.hpp"

namespace tass {

namespace {

constexpr bool is_space(char c) noexcept {
  return c == ' ' || c == '\t' || c == '\r' || c == '\n' || c == '\v' || c == '\f';
}

std::string_view trim(std::string_view s) noexcept {
  while (!s.empty() && is_space(s.front()))
    s.remove_prefix(1);
  while (!s.empty() && is_space(s.back()))
    s.remove_suffix(1);
  return s;
}

std::string_view rtrim(std::string_view s) noexcept {
  while (!s.empty() && is_space(s.back()))
    s.remove_suffix(1);
  return s;
}

void reject(LoadReport& report) {
  ++report.rejected;
  if (report.rejected_lines.size() < LoadReport::max_recorded_rejects)
    report.rejected_lines.push_back(report.total_lines);
}

std::optional<Ipv4Prefix> parse_pfx2as_prefix(std::string_view addr_field,
                                              std::string_view len_field) {
  auto addr = try_parse_address(addr_field);
  if (!addr || len_field.empty() || len_field.size() > 2)
    return std::nullopt;
  int length = -1;
  auto [ptr, ec] = std::from_chars(len_field.data(), len_field.data() + len_field.size(), length);
  if (ec != std::errc{} || ptr != len_field.data() + len_field.size() || length < 0 || length > 32)
    return std::nullopt;
  try {
    return Ipv4Prefix(*addr, length);
  } catch (const InvalidInput&) {
    return std::nullopt;
  }
}

std::optional<AnnouncedPrefixTable::Origins> split_origins(std::string_view field) {
  AnnouncedPrefixTable::Origins origins;
  while (true) {
    auto sep = field.find_first_of("_,");
    auto token = field.substr(0, sep);
    if (token.empty())
      return std::nullopt;
    origins.emplace(token);
    if (sep == std::string_view::npos)
      break;
    field.remove_prefix(sep + 1);
  }
  return origins;
}

void check_stream(const std::istream& in) {
  if (in.bad())
    throw IoError("read error on input stream");
}

} // namespace

std::size_t ScanSnapshot::normalize() {
  std::sort(addresses.begin(), addresses.end());
  auto end = std::unique(addresses.begin(), addresses.end());
  auto dups = static_cast<std::size_t>(addresses.end() - end);
  addresses.erase(end, addresses.end());
  return dups;
}

Pfx2asLoad load_pfx2as(std::istream& in) {
  Pfx2asLoad result;
  auto& report = result.report;
  std::string line;
  while (std::getline(in, line)) {
    ++report.total_lines;
    std::string_view text = rtrim(line);
    if (trim(text).empty() || trim(text).front() == '#') {
      ++report.skipped;
      continue;
    }
    auto tab1 = text.find('\t');
    auto tab2 = tab1 == std::string_view::npos ? tab1 : text.find('\t', tab1 + 1);
    if (tab2 == std::string_view::npos || text.find('\t', tab2 + 1) != std::string_view::npos) {
      reject(report);
      continue;
    }
    auto prefix = parse_pfx2as_prefix(text.substr(0, tab1), text.substr(tab1 + 1, tab2 - tab1 - 1));
    auto origins = split_origins(text.substr(tab2 + 1));
    if (!prefix || !origins) {
      reject(report);
      continue;
    }
    ++report.accepted;
    if (!result.table.add(*prefix, std::move(*origins)))
      ++report.duplicates;
  }
  check_stream(in);
  return result;
}

void write_pfx2as(const AnnouncedPrefixTable& table, std::ostream& out) {
  for (const auto& [prefix, origins] : table.entries()) {
    out << format_address(prefix.network()) << '\t' << prefix.length() << '\t';
    bool first = true;
    for (const auto& as : origins) {
      if (!first)
        out << '_';
      out << as;
      first = false;
    }
    out << '\n';
  }
  if (!out)
    throw IoError("write error on output stream");
}

SnapshotLoad load_snapshot(std::istream& in, std::string protocol, std::string captured_at,
                           std::string source_id) {
  SnapshotLoad result;
  auto& report = result.report;
  auto& snap = result.snapshot;
  snap.protocol = std::move(protocol);
  snap.captured_at = std::move(captured_at);
  snap.source_id = std::move(source_id);

  std::string line;
  while (std::getline(in, line)) {
    ++report.total_lines;
    std::string_view text = trim(line);
    if (text.empty()) {
      ++report.skipped;
      continue;
    }
    if (text.front() == '#') {
      ++report.skipped;
      auto body = trim(text.substr(1));
      if (auto colon = body.find(':'); colon != std::string_view::npos) {
        auto key = trim(body.substr(0, colon));
        if (!key.empty() && key.find(' ') == std::string_view::npos)
          result.header.emplace(std::string(key), std::string(trim(body.substr(colon + 1))));
      }
      continue;
    }
    if (auto addr = try_parse_address(text)) {
      ++report.accepted;
      snap.addresses.push_back(*addr);
    } else {
      reject(report);
    }
  }
  check_stream(in);
  report.duplicates = snap.normalize();
  return result;
}

std::vector<Ipv4Prefix> load_prefix_list(std::istream& in) {
  std::vector<Ipv4Prefix> prefixes;
  std::string line;
  std::uint64_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto text = trim(line);
    if (text.empty() || text.front() == '#')
      continue;
    try {
      prefixes.push_back(parse_prefix(text));
    } catch (const ParseError& e) {
      throw ParseError("line " + std::to_string(lineno) + ": " + e.what());
    }
  }
  check_stream(in);
  return prefixes;
}

void write_prefix_list(std::span<const Ipv4Prefix> prefixes, std::ostream& out) {
  for (const auto& p : prefixes)
    out << p.to_string() << '\n';
  if (!out)
    throw IoError("write error on prefix list output");
}

RoutedPartition load_partition(std::istream& in, PartitionMode mode) {
  return {mode, load_prefix_list(in)};
}

} // namespace tass
