#include "cli.hpp"

#include <algorithm>
#include <filesystem>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "tass/error.hpp"
#include "tass/evaluator.hpp"
#include "tass/ingest.hpp"
#include "tass/io.hpp"
#include "tass/manifest.hpp"
#include "tass/partition.hpp"
#include "tass/selector.hpp"
#include "tass/version.hpp"

namespace fs = std::filesystem;

namespace tass::cli {

namespace {

/// Bad flag values discovered after CLI11 parsing.
class UsageError : public Error {
public:
  using Error::Error;
  [[nodiscard]] const char* kind() const noexcept override { return "usage"; }
};

struct Input {
  std::string path;
  std::string content;
};

Input read_input(const std::string& path) {
  if (path == "-") {
    std::ostringstream ss;
    ss << std::cin.rdbuf();
    if (std::cin.bad())
      throw IoError("read error on standard input");
    return {path, ss.str()};
  }
  return {path, read_file(path)};
}

RunManifest new_manifest(std::string command) {
  RunManifest m;
  m.command = std::move(command);
  m.tool_version = version;
  m.created_at = utc_timestamp();
  return m;
}

// Writes every output, then the manifest, each atomically.
void commit(RunManifest& manifest, const fs::path& manifest_path,
            const std::vector<std::pair<std::string, std::pair<fs::path, std::string>>>& files) {
  for (const auto& [role, file] : files)
    manifest.outputs.push_back(digest_of(role, file.first, file.second));
  for (const auto& [role, file] : files)
    write_file_atomic(file.first, file.second);
  write_file_atomic(manifest_path, to_json(manifest));
}

std::optional<RunManifest> sibling_manifest(const fs::path& output) {
  auto path = manifest_path_for(output);
  if (!fs::exists(path))
    return std::nullopt;
  return parse_manifest(read_file(path));
}

std::string percent(std::uint64_t part, std::uint64_t whole) {
  if (whole == 0)
    return "0.0";
  std::ostringstream ss;
  ss << std::fixed << std::setprecision(1) << 100.0 * static_cast<double>(part) / static_cast<double>(whole);
  return ss.str();
}

// Resolves the partition mode for commands that read a partition file:
// explicit flag first, then the partition's manifest.
PartitionMode partition_mode_for(const std::string& flag, const fs::path& partition_path,
                                 std::optional<PartitionMode> fallback) {
  if (!flag.empty())
    return parse_partition_mode(flag);
  if (auto m = sibling_manifest(partition_path)) {
    auto it = m->parameters.find("mode");
    if (it != m->parameters.end())
      return parse_partition_mode(it->second);
  }
  if (fallback)
    return *fallback;
  throw UsageError("partition mode unknown: pass --mode or keep the partition's manifest");
}

struct SnapshotMeta {
  std::string protocol;
  std::string captured_at;
};

// Header comments (`# protocol: ftp`) override the command-line defaults.
ScanSnapshot read_snapshot(const Input& input, const SnapshotMeta& defaults, std::ostream& out) {
  std::istringstream in(input.content);
  auto load = load_snapshot(in, defaults.protocol, defaults.captured_at);
  auto& snap = load.snapshot;
  if (auto it = load.header.find("protocol"); it != load.header.end())
    snap.protocol = it->second;
  if (auto it = load.header.find("captured_at"); it != load.header.end())
    snap.captured_at = it->second;
  if (auto it = load.header.find("source_id"); it != load.header.end())
    snap.source_id = it->second;
  else
    snap.source_id = input.path == "-" ? "stdin" : fs::path(input.path).filename().string();
  const auto& r = load.report;
  out << "snapshot " << input.path << ": lines=" << r.total_lines << " addresses=" << snap.size()
      << " duplicates=" << r.duplicates << " rejected=" << r.rejected
      << " skipped=" << r.skipped << '\n';
  return snap;
}

Ratio parse_phi(const std::string& text) {
  Ratio phi;
  try {
    phi = parse_decimal(text);
  } catch (const ParseError&) {
    throw UsageError("--phi must be a decimal in (0, 1], got '" + text + "'");
  }
  if (phi.num == 0 || phi.num > phi.den)
    throw UsageError("--phi must be a decimal in (0, 1], got '" + text + "'");
  return phi;
}

std::string hex64(std::uint64_t v) {
  std::ostringstream ss;
  ss << std::hex << std::setw(16) << std::setfill('0') << v;
  return ss.str();
}

// --- partition -------------------------------------------------------------

struct PartitionArgs {
  std::string pfx2as;
  std::string mode;
  std::string out;
};

int cmd_partition(const PartitionArgs& args, std::ostream& out) {
  const auto mode = parse_partition_mode(args.mode);
  const auto input = read_input(args.pfx2as);
  std::istringstream in(input.content);
  const auto load = load_pfx2as(in);
  if (load.table.empty())
    throw InvalidInput("pfx2as input '" + args.pfx2as + "' contains no valid prefixes");

  const auto partition = build_partition(load.table, mode);
  const auto summary = summarize(load.table);

  std::ostringstream body;
  write_prefix_list(partition.prefixes(), body);

  auto manifest = new_manifest("partition");
  manifest.parameters["mode"] = std::string(to_string(mode));
  manifest.parameters["partition_digest"] = hex64(partition.digest());
  manifest.inputs.push_back(digest_of("pfx2as", input.path, input.content));
  commit(manifest, manifest_path_for(args.out), {{"partition", {args.out, body.str()}}});

  const auto& r = load.report;
  out << "pfx2as: lines=" << r.total_lines << " accepted=" << r.accepted
      << " duplicates=" << r.duplicates << " rejected=" << r.rejected << '\n';
  out << "announced prefixes: " << summary.prefixes << " (m-prefixes: " << summary.m_prefixes
      << ", " << percent(summary.m_prefixes, summary.prefixes) << "%; "
      << percent(summary.m_prefix_addresses, summary.advertised_addresses)
      << "% of advertised space)\n";
  out << "partition (" << to_string(mode) << "): " << partition.size() << " prefixes, "
      << partition.total_addresses() << " addresses\n";
  return exit_ok;
}

// --- select ----------------------------------------------------------------

struct SelectArgs {
  std::string partition;
  std::string snapshot;
  std::string phi;
  std::string stats;
  std::string targets;
  std::string mode;
  SnapshotMeta meta{"unspecified", ""};
};

int cmd_select(const SelectArgs& args, std::ostream& out) {
  const auto phi = parse_phi(args.phi);
  const auto mode = partition_mode_for(args.mode, args.partition, std::nullopt);
  const auto part_in = read_input(args.partition);
  std::istringstream part_stream(part_in.content);
  const auto partition = load_partition(part_stream, mode);
  if (partition.empty())
    throw InvalidInput("partition '" + args.partition + "' is empty");

  const auto snap_in = read_input(args.snapshot);
  const auto seed = read_snapshot(snap_in, args.meta, out);
  if (!seed.usable_as_seed())
    throw InvalidInput("seed snapshot '" + args.snapshot + "' is empty");

  const auto [counts, selection] = select_from_snapshot(partition, seed, phi);

  std::ostringstream targets;
  write_target_list(selection, targets);
  std::ostringstream stats;
  write_statistics_csv(emit_statistics(selection), stats);

  auto manifest = new_manifest("select");
  manifest.parameters["phi"] = args.phi;
  manifest.parameters["mode"] = std::string(to_string(mode));
  manifest.parameters["protocol"] = seed.protocol;
  manifest.parameters["captured_at"] = seed.captured_at;
  manifest.parameters["partition_digest"] = hex64(partition.digest());
  manifest.inputs.push_back(digest_of("partition", part_in.path, part_in.content));
  manifest.inputs.push_back(digest_of("seed_snapshot", snap_in.path, snap_in.content));
  commit(manifest, manifest_path_for(args.targets),
         {{"targets", {args.targets, targets.str()}}, {"stats", {args.stats, stats.str()}}});

  out << "N=" << selection.total_hosts << " unrouted=" << counts.unrouted
      << " responsive_prefixes=" << selection.ranked.size() << " k=" << selection.k << '\n';
  out << "cum_host_coverage=" << format_fixed(selection.cum_host_coverage(), 6)
      << " cum_addr_coverage=" << format_fixed(selection.cum_address_coverage(), 6)
      << " selected_addresses=" << selection.selected_addresses << '\n';
  return exit_ok;
}

// --- evaluate --------------------------------------------------------------

struct EvaluateArgs {
  std::string targets_manifest;
  std::vector<std::string> snapshots;
  std::string strategy = "both";
  std::string out;
  std::string delta;
};

// Manifest paths are recorded as given; fall back to the manifest's directory
// for relative paths that do not resolve from the working directory.
std::string locate(const std::string& recorded, const fs::path& manifest_path) {
  fs::path p(recorded);
  if (p.is_relative() && !fs::exists(p)) {
    auto alt = manifest_path.parent_path() / p;
    if (fs::exists(alt))
      return alt.string();
  }
  return recorded;
}

Input read_verified(const FileDigest& digest, const fs::path& manifest_path) {
  const auto path = locate(digest.path, manifest_path);
  if (!fs::exists(path))
    throw IoError("input '" + digest.path + "' recorded in the manifest is missing");
  auto input = read_input(path);
  if (sha256_hex(input.content) != digest.sha256)
    throw InvalidInput("input '" + digest.path + "' changed since the manifest was written");
  return input;
}

int cmd_evaluate(const EvaluateArgs& args, std::ostream& out) {
  const bool want_tass = args.strategy == "tass" || args.strategy == "both";
  const bool want_hitlist = args.strategy == "hitlist" || args.strategy == "both";
  if (!want_tass && !want_hitlist)
    throw UsageError("--strategy must be tass, hitlist or both");

  const fs::path manifest_path = args.targets_manifest;
  const auto manifest = parse_manifest(read_file(manifest_path));
  if (manifest.command != "select")
    throw InvalidInput("'" + args.targets_manifest + "' is not a select manifest");
  const auto* part_digest = manifest.find_input("partition");
  const auto* seed_digest = manifest.find_input("seed_snapshot");
  const auto* targets_digest = manifest.find_output("targets");
  if (seed_digest == nullptr)
    throw InvalidInput("manifest does not name a seed snapshot");
  if (part_digest == nullptr || targets_digest == nullptr)
    throw InvalidInput("manifest does not name a partition and target list");

  const auto param = [&](const std::string& key) {
    auto it = manifest.parameters.find(key);
    if (it == manifest.parameters.end())
      throw InvalidInput("manifest lacks parameter '" + key + "'");
    return it->second;
  };
  const auto mode = parse_partition_mode(param("mode"));
  const auto phi = parse_phi(param("phi"));
  const SnapshotMeta seed_meta{param("protocol"), param("captured_at")};

  const auto part_in = read_verified(*part_digest, manifest_path);
  std::istringstream part_stream(part_in.content);
  const auto partition = load_partition(part_stream, mode);
  const auto seed = read_snapshot(read_verified(*seed_digest, manifest_path), seed_meta, out);
  const auto targets_in = read_verified(*targets_digest, manifest_path);

  // The selection is recomputed from the frozen seed and must reproduce the
  // recorded target list exactly.
  const auto selection = select_from_snapshot(partition, seed, phi).selection;
  std::ostringstream targets;
  write_target_list(selection, targets);
  if (targets.str() != targets_in.content)
    throw InvalidInput("target list does not match the selection recorded in the manifest");

  std::vector<ScanSnapshot> later;
  std::vector<Input> later_inputs;
  for (const auto& path : args.snapshots) {
    later_inputs.push_back(read_input(path));
    later.push_back(read_snapshot(later_inputs.back(), {seed.protocol, ""}, out));
  }

  std::optional<HitrateSeries> tass_series;
  std::optional<HitrateSeries> hitlist_series;
  if (want_tass)
    tass_series = simulate_tass(selection, partition, later);
  if (want_hitlist)
    hitlist_series = simulate_hitlist(seed, later);

  std::ostringstream series;
  bool header = true;
  for (const auto* s : {&tass_series, &hitlist_series}) {
    if (*s) {
      write_series_csv(**s, series, header);
      header = false;
    }
  }

  auto run = new_manifest("evaluate");
  run.parameters["strategy"] = args.strategy;
  run.parameters["phi"] = param("phi");
  run.parameters["mode"] = std::string(to_string(mode));
  run.parameters["protocol"] = seed.protocol;
  run.inputs.push_back(digest_of("targets_manifest", args.targets_manifest, to_json([&] {
                                   auto m = manifest;
                                   m.created_at.clear();
                                   return m;
                                 }())));
  for (const auto& in : later_inputs)
    run.inputs.push_back(digest_of("snapshot", in.path, in.content));

  std::vector<std::pair<std::string, std::pair<fs::path, std::string>>> files{
      {"series", {args.out, series.str()}}};
  if (tass_series && hitlist_series) {
    std::ostringstream delta;
    write_delta_csv(compare_series(*tass_series, *hitlist_series), delta);
    fs::path delta_path = args.delta.empty() ? fs::path(args.out + ".delta.csv") : fs::path(args.delta);
    files.push_back({"delta", {delta_path, delta.str()}});
  }
  commit(run, manifest_path_for(args.out), files);

  for (const auto* s : {&tass_series, &hitlist_series}) {
    if (!*s)
      continue;
    for (const auto& p : (*s)->points) {
      auto rate = p.hitrate();
      out << to_string((*s)->strategy) << ' ' << p.snapshot_id << ": hitrate="
          << (rate ? format_fixed(*rate, 6) : std::string("undefined (empty snapshot)")) << '\n';
    }
  }
  return exit_ok;
}

// --- histogram -------------------------------------------------------------

struct HistogramArgs {
  std::string partition;
  std::string snapshot;
  std::string out;
  std::string mode;
  SnapshotMeta meta{"unspecified", ""};
};

int cmd_histogram(const HistogramArgs& args, std::ostream& out) {
  const auto mode = partition_mode_for(args.mode, args.partition, PartitionMode::less_specific);
  const auto part_in = read_input(args.partition);
  std::istringstream part_stream(part_in.content);
  const auto partition = load_partition(part_stream, mode);
  const auto snap_in = read_input(args.snapshot);
  const auto snapshot = read_snapshot(snap_in, args.meta, out);

  const auto histogram = prefix_length_histogram(partition, snapshot);
  std::ostringstream body;
  write_histogram_csv(histogram, body);

  auto manifest = new_manifest("histogram");
  manifest.parameters["mode"] = std::string(to_string(mode));
  manifest.inputs.push_back(digest_of("partition", part_in.path, part_in.content));
  manifest.inputs.push_back(digest_of("snapshot", snap_in.path, snap_in.content));
  commit(manifest, manifest_path_for(args.out), {{"histogram", {args.out, body.str()}}});

  out << "hosts=" << snapshot.size() << " routed=" << snapshot.size() - histogram.unrouted
      << " unrouted=" << histogram.unrouted << '\n';
  return exit_ok;
}

void single_line(std::ostream& err, std::string_view kind, std::string message) {
  std::replace(message.begin(), message.end(), '\n', ' ');
  while (!message.empty() && message.back() == ' ')
    message.pop_back();
  err << "tass: error[" << kind << "]: " << message << '\n';
}

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Topology-aware scan target planning and evaluation", "tass"};
  app.set_version_flag("--version", std::string(version));
  app.require_subcommand(1);

  PartitionArgs part;
  auto* partition = app.add_subcommand("partition", "Build a disjoint routed partition from pfx2as");
  partition->add_option("--pfx2as", part.pfx2as, "pfx2as file, or - for stdin")->required();
  partition->add_option("--mode", part.mode, "less | more")->required();
  partition->add_option("--out", part.out, "Partition output file")->required();

  SelectArgs sel;
  auto* select = app.add_subcommand("select", "Rank prefixes by density and emit scan targets");
  select->add_option("--partition", sel.partition, "Partition file")->required();
  select->add_option("--snapshot", sel.snapshot, "Seed snapshot, or - for stdin")->required();
  select->add_option("--phi", sel.phi, "Host coverage target in (0, 1]")->required();
  select->add_option("--stats", sel.stats, "Statistics CSV output")->required();
  select->add_option("--targets", sel.targets, "Target list output")->required();
  select->add_option("--mode", sel.mode, "Partition mode (default: from partition manifest)");
  select->add_option("--protocol", sel.meta.protocol, "Protocol label if not in snapshot header");
  select->add_option("--captured-at", sel.meta.captured_at, "Capture date if not in header");

  EvaluateArgs eval;
  auto* evaluate = app.add_subcommand("evaluate", "Replay later snapshots against a selection");
  evaluate->add_option("--targets-manifest", eval.targets_manifest, "Manifest written by select")
      ->required();
  evaluate->add_option("--snapshots", eval.snapshots, "Later snapshots")->required()->expected(1, -1);
  evaluate->add_option("--strategy", eval.strategy, "tass | hitlist | both");
  evaluate->add_option("--out", eval.out, "Series CSV output")->required();
  evaluate->add_option("--delta", eval.delta, "Delta CSV output (default: <out>.delta.csv)");

  HistogramArgs hist;
  auto* histogram = app.add_subcommand("histogram", "Host counts by partition prefix length");
  histogram->add_option("--partition", hist.partition, "Partition file")->required();
  histogram->add_option("--snapshot", hist.snapshot, "Snapshot, or - for stdin")->required();
  histogram->add_option("--out", hist.out, "Histogram CSV output")->required();
  histogram->add_option("--mode", hist.mode, "Partition mode (default: from partition manifest)");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    single_line(err, "usage", e.what());
    return exit_usage;
  }

  try {
    if (partition->parsed())
      return cmd_partition(part, out);
    if (select->parsed())
      return cmd_select(sel, out);
    if (evaluate->parsed())
      return cmd_evaluate(eval, out);
    return cmd_histogram(hist, out);
  } catch (const UsageError& e) {
    single_line(err, e.kind(), e.what());
    return exit_usage;
  } catch (const Error& e) {
    single_line(err, e.kind(), e.what());
    return exit_failure;
  } catch (const std::exception& e) {
    single_line(err, "internal", e.what());
    return exit_failure;
  }
}

} // namespace tass::cli
