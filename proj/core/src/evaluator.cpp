#include "tass/evaluator.hpp"

#include <algorithm>
#include <cstdio>
#include <ostream>

#include "tass/error.hpp"

namespace tass {

namespace {

void check_later(std::span<const ScanSnapshot> later, const std::string& protocol) {
  if (later.empty())
    throw InvalidInput("no later snapshots to evaluate");
  for (const auto& s : later)
    if (s.protocol != protocol)
      throw InvalidInput("protocol mismatch: '" + s.protocol + "' vs '" + protocol + "'");
}

// Visits later snapshots in captured_at order, stable for equal labels.
template <class Fn>
std::vector<HitratePoint> points_in_time_order(std::span<const ScanSnapshot> later, Fn&& covered) {
  std::vector<const ScanSnapshot*> order;
  for (const auto& s : later)
    order.push_back(&s);
  std::stable_sort(order.begin(), order.end(), [](const ScanSnapshot* a, const ScanSnapshot* b) {
    return a->captured_at < b->captured_at;
  });
  std::vector<HitratePoint> points;
  for (const auto* s : order)
    points.push_back({snapshot_label(*s), s->captured_at, s->size(), covered(*s)});
  return points;
}

std::string format_rate(const std::optional<Ratio>& r) {
  return r ? format_fixed(*r, 6) : "nan";
}

std::string format_double(const std::optional<double>& v) {
  if (!v)
    return "nan";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6f", *v);
  return buf;
}

} // namespace

std::string_view to_string(Strategy s) noexcept {
  return s == Strategy::hitlist ? "hitlist" : "tass";
}

std::string snapshot_label(const ScanSnapshot& s) {
  return s.source_id.empty() ? s.captured_at : s.source_id;
}

HitrateSeries simulate_hitlist(const ScanSnapshot& seed, std::span<const ScanSnapshot> later) {
  check_later(later, seed.protocol);
  HitrateSeries series;
  series.strategy = Strategy::hitlist;
  series.points = points_in_time_order(later, [&](const ScanSnapshot& s) {
    // Both address lists are sorted and unique.
    std::uint64_t hits = 0;
    auto a = seed.addresses.begin();
    auto b = s.addresses.begin();
    while (a != seed.addresses.end() && b != s.addresses.end()) {
      if (*a < *b) {
        ++a;
      } else if (*b < *a) {
        ++b;
      } else {
        ++hits;
        ++a;
        ++b;
      }
    }
    return hits;
  });
  return series;
}

HitrateSeries simulate_tass(const SelectionResult& selection, const RoutedPartition& partition,
                            std::span<const ScanSnapshot> later) {
  if (selection.partition_digest != partition.digest() ||
      selection.partition_mode != partition.mode())
    throw InvalidInput("selection was built from a different partition");
  if (later.empty())
    throw InvalidInput("no later snapshots to evaluate");
  check_later(later, later.front().protocol);

  std::vector<bool> selected(partition.size(), false);
  for (const auto& p : selection.selected_prefixes) {
    auto idx = partition.index_of(p);
    if (!idx)
      throw InvalidInput("selected prefix " + p.to_string() + " missing from partition");
    selected[*idx] = true;
  }

  HitrateSeries series;
  series.strategy = Strategy::tass;
  series.phi_target = selection.phi_target;
  series.partition_mode = selection.partition_mode;
  series.points = points_in_time_order(later, [&](const ScanSnapshot& s) {
    std::uint64_t hits = 0;
    for (auto addr : s.addresses)
      if (auto idx = partition.index_of(addr); idx && selected[*idx])
        ++hits;
    return hits;
  });
  return series;
}

std::uint64_t PrefixLengthHistogram::total() const noexcept {
  std::uint64_t sum = longer + unrouted;
  for (auto c : by_length)
    sum += c;
  return sum;
}

PrefixLengthHistogram prefix_length_histogram(const RoutedPartition& partition,
                                              const ScanSnapshot& snapshot) {
  PrefixLengthHistogram h;
  h.snapshot_id = snapshot_label(snapshot);
  for (auto addr : snapshot.addresses) {
    auto idx = partition.index_of(addr);
    if (!idx) {
      ++h.unrouted;
      continue;
    }
    const int len = partition.prefixes()[*idx].length();
    if (len > PrefixLengthHistogram::last_exact_length)
      ++h.longer;
    else
      ++h.by_length[static_cast<std::size_t>(len)];
  }
  return h;
}

std::vector<SeriesDelta> compare_series(const HitrateSeries& a, const HitrateSeries& b) {
  if (a.points.size() != b.points.size())
    throw InvalidInput("series cover different numbers of snapshots");
  std::vector<SeriesDelta> out;
  for (std::size_t i = 0; i < a.points.size(); ++i) {
    const auto& pa = a.points[i];
    const auto& pb = b.points[i];
    if (pa.snapshot_id != pb.snapshot_id)
      throw InvalidInput("snapshot mismatch: '" + pa.snapshot_id + "' vs '" + pb.snapshot_id + "'");
    SeriesDelta d{pa.snapshot_id, pa.snapshot_time, std::nullopt, std::nullopt, std::nullopt};
    if (auto r = pa.hitrate())
      d.hitrate_a = r->value();
    if (auto r = pb.hitrate())
      d.hitrate_b = r->value();
    if (d.hitrate_a && d.hitrate_b)
      d.delta = *d.hitrate_a - *d.hitrate_b;
    out.push_back(std::move(d));
  }
  return out;
}

void write_series_csv(const HitrateSeries& series, std::ostream& out, bool header) {
  if (header)
    out << "snapshot_id,snapshot_time,strategy,phi,ground_truth,covered,hitrate\n";
  const std::string phi = series.phi_target ? format_fixed(*series.phi_target, 6) : "";
  for (const auto& p : series.points) {
    out << p.snapshot_id << ',' << p.snapshot_time << ',' << to_string(series.strategy) << ','
        << phi << ',' << p.ground_truth_hosts << ',' << p.covered_hosts << ','
        << format_rate(p.hitrate()) << '\n';
  }
  if (!out)
    throw IoError("write error on series output");
}

void write_histogram_csv(const PrefixLengthHistogram& histogram, std::ostream& out) {
  out << "length,host_count\n";
  for (std::size_t len = 0; len < histogram.by_length.size(); ++len)
    out << len << ',' << histogram.by_length[len] << '\n';
  out << "ge25," << histogram.longer << '\n';
  out << "unrouted," << histogram.unrouted << '\n';
  if (!out)
    throw IoError("write error on histogram output");
}

void write_delta_csv(const std::vector<SeriesDelta>& deltas, std::ostream& out) {
  out << "snapshot_id,snapshot_time,hitrate_a,hitrate_b,delta\n";
  for (const auto& d : deltas)
    out << d.snapshot_id << ',' << d.snapshot_time << ',' << format_double(d.hitrate_a) << ','
        << format_double(d.hitrate_b) << ',' << format_double(d.delta) << '\n';
  if (!out)
    throw IoError("write error on delta output");
}

} // namespace tass
