#include <random>
#include <vector>

#include "doctest.h"
#include "fixtures.hpp"
#include "oracles.hpp"
#include "tass/error.hpp"
#include "tass/partition.hpp"

using namespace tass;

namespace {

std::vector<Ipv4Prefix> prefixes(std::initializer_list<const char*> texts) {
  std::vector<Ipv4Prefix> out;
  for (const auto* t : texts)
    out.push_back(parse_prefix(t));
  return out;
}

const std::vector<Ipv4Prefix> slash12_split = prefixes(
    {"100.0.0.0/12", "100.16.0.0/12", "100.32.0.0/11", "100.64.0.0/10", "100.128.0.0/9"});

} // namespace

TEST_CASE("deaggregate splits an l-prefix around one m-prefix") {
  const auto l = parse_prefix("100.0.0.0/8");
  const auto m = prefixes({"100.0.0.0/12"});
  CHECK(deaggregate(l, m) == slash12_split);
}

TEST_CASE("deaggregate trivial cases") {
  const auto p = parse_prefix("10.0.0.0/23");
  CHECK(deaggregate(p, {}) == std::vector<Ipv4Prefix>{p});
  CHECK(deaggregate(p, prefixes({"10.0.0.0/24"})) == prefixes({"10.0.0.0/24", "10.0.1.0/24"}));
}

TEST_CASE("deaggregate rejects bad m-prefixes") {
  const auto l = parse_prefix("100.0.0.0/8");
  CHECK_THROWS_AS(deaggregate(l, prefixes({"101.0.0.0/12"})), InvalidInput);
  CHECK_THROWS_AS(deaggregate(l, prefixes({"100.0.0.0/8"})), InvalidInput);
  CHECK_THROWS_AS(deaggregate(l, prefixes({"96.0.0.0/4"})), InvalidInput);
  CHECK_THROWS_AS(deaggregate(l, prefixes({"100.0.0.0/12", "100.0.0.0/12"})), InvalidInput);
}

TEST_CASE("deaggregate recurses into nested m-prefixes") {
  // 100.0.0.0/8 > 100.0.0.0/12 > 100.0.0.0/16: the /12 is itself split.
  const auto l = parse_prefix("100.0.0.0/8");
  const auto out = deaggregate(l, prefixes({"100.0.0.0/12", "100.0.0.0/16"}));
  auto expected = oracle::complement_cidrs(l, prefixes({"100.0.0.0/16"}));
  expected.push_back(parse_prefix("100.0.0.0/16"));
  std::sort(expected.begin(), expected.end());
  CHECK(out == expected);
  CHECK(out.size() == 1 + (16 - 8));
}

TEST_CASE("property: deaggregate equals the greedy range cover oracle") {
  fixtures::Rng rng(11);
  for (int round = 0; round < 300; ++round) {
    const int l_len = fixtures::uniform_int(rng, 8, 20);
    const auto l = Ipv4Prefix::covering(static_cast<Ipv4Address>(rng()), l_len);
    // disjoint maximal m-prefixes
    std::vector<Ipv4Prefix> ms;
    for (int i = 0, n = fixtures::uniform_int(rng, 0, 6); i < n; ++i) {
      const auto addr = static_cast<Ipv4Address>(l.network() + rng() % l.size());
      const auto m = Ipv4Prefix::covering(addr, fixtures::uniform_int(rng, l_len + 1, 32));
      if (std::none_of(ms.begin(), ms.end(),
                       [&](const Ipv4Prefix& x) { return x.contains(m) || m.contains(x); }))
        ms.push_back(m);
    }
    const auto out = deaggregate(l, ms);
    auto expected = oracle::complement_cidrs(l, ms);
    expected.insert(expected.end(), ms.begin(), ms.end());
    std::sort(expected.begin(), expected.end());
    CHECK(out == expected);
    if (ms.size() == 1)
      CHECK(out.size() - 1 == static_cast<std::size_t>(ms[0].length() - l_len));
  }
}

TEST_CASE("build_partition on the nested pair") {
  const auto table = fixtures::nested_pair_table();
  const auto more = build_partition(table, PartitionMode::more_specific);
  CHECK(std::vector<Ipv4Prefix>(more.prefixes().begin(), more.prefixes().end()) == slash12_split);
  CHECK(more.total_addresses() == 1u << 24);

  const auto less = build_partition(table, PartitionMode::less_specific);
  REQUIRE(less.size() == 1);
  CHECK(less.prefixes()[0] == parse_prefix("100.0.0.0/8"));
  CHECK(less.total_addresses() == more.total_addresses());
}

TEST_CASE("build_partition without nesting keeps prefixes in both modes") {
  AnnouncedPrefixTable t;
  for (const auto& p : prefixes({"10.0.0.0/8", "192.0.2.0/24", "198.51.100.0/22"}))
    t.add(p, {"1"});
  for (auto mode : {PartitionMode::less_specific, PartitionMode::more_specific}) {
    const auto part = build_partition(t, mode);
    CHECK(part.size() == 3);
    for (const auto& [p, o] : t.entries())
      CHECK(part.index_of(p).has_value());
  }
}

TEST_CASE("build_partition of an empty table is empty") {
  const auto part = build_partition({}, PartitionMode::more_specific);
  CHECK(part.empty());
  CHECK(part.total_addresses() == 0);
  CHECK_FALSE(longest_match(part, 0x01020304u));
}

TEST_CASE("duplicate announcements merge origin sets") {
  AnnouncedPrefixTable t;
  CHECK(t.add(parse_prefix("10.0.0.0/8"), {"1"}));
  CHECK_FALSE(t.add(parse_prefix("10.0.0.0/8"), {"2", "3"}));
  REQUIRE(t.size() == 1);
  CHECK(t.entries().begin()->second == AnnouncedPrefixTable::Origins{"1", "2", "3"});
}

TEST_CASE("longest_match against the nested-pair partition") {
  const auto part = build_partition(fixtures::nested_pair_table(), PartitionMode::more_specific);
  const auto addr = parse_address("100.1.2.3");
  // brute force over the five prefixes
  const auto expected = oracle::brute_force_matches(part.prefixes(), addr);
  REQUIRE(expected.size() == 1);
  CHECK(expected[0] == parse_prefix("100.0.0.0/12"));
  CHECK(longest_match(part, addr) == expected[0]);
  CHECK_FALSE(longest_match(part, parse_address("9.0.0.1")));
  CHECK(longest_match(part, parse_address("100.255.255.255")) == parse_prefix("100.128.0.0/9"));

  const RoutedPartition single(PartitionMode::less_specific, prefixes({"192.0.2.0/24"}));
  CHECK(longest_match(single, parse_address("192.0.2.77")) == parse_prefix("192.0.2.0/24"));
  CHECK_FALSE(longest_match(single, parse_address("192.0.3.0")));
}

TEST_CASE("RoutedPartition rejects overlapping prefixes") {
  CHECK_THROWS_AS(RoutedPartition(PartitionMode::less_specific, prefixes({"10.0.0.0/8", "10.1.0.0/16"})),
                  InvalidInput);
  CHECK_THROWS_AS(RoutedPartition(PartitionMode::less_specific, prefixes({"10.0.0.0/8", "10.0.0.0/8"})),
                  InvalidInput);
}

TEST_CASE("digest identifies topology and mode") {
  const auto t = fixtures::nested_pair_table();
  const auto a = build_partition(t, PartitionMode::more_specific);
  const RoutedPartition b(PartitionMode::more_specific, slash12_split);
  CHECK(a.digest() == b.digest());
  CHECK(a.digest() != build_partition(t, PartitionMode::less_specific).digest());
  const RoutedPartition c(PartitionMode::less_specific, slash12_split);
  CHECK(b.digest() != c.digest());
}

TEST_CASE("summarize counts m-prefixes and their address share") {
  auto t = fixtures::nested_pair_table();
  t.add(parse_prefix("100.0.0.0/16"), {"3"});
  t.add(parse_prefix("8.0.0.0/8"), {"4"});
  const auto s = summarize(t);
  CHECK(s.prefixes == 4);
  CHECK(s.m_prefixes == 2);
  CHECK(s.advertised_addresses == 2u << 24);
  CHECK(s.m_prefix_addresses == 1u << 20);
}

TEST_CASE("property: partitions cover exactly the announced space") {
  fixtures::Rng rng(23);
  const auto region = parse_prefix("10.0.0.0/16");
  for (int round = 0; round < 40; ++round) {
    const auto table = fixtures::random_table(rng, region, 1 + rng() % 200, 16, 32);
    std::vector<std::uint8_t> covered(region.size(), 0);
    for (const auto& [p, o] : table.entries())
      for (std::uint64_t i = 0; i < p.size(); ++i)
        covered[p.network() - region.network() + i] = 1;

    const auto less = build_partition(table, PartitionMode::less_specific);
    const auto more = build_partition(table, PartitionMode::more_specific);
    CHECK(less.size() <= table.size());
    CHECK(less.total_addresses() == more.total_addresses());

    // innermost announced prefixes survive verbatim
    for (const auto& [p, o] : table.entries()) {
      const bool innermost = std::none_of(table.entries().begin(), table.entries().end(),
                                          [&](const auto& e) { return e.first != p && p.contains(e.first); });
      if (innermost)
        CHECK(more.index_of(p).has_value());
    }

    for (const auto* part : {&less, &more}) {
      std::vector<std::uint8_t> hits(region.size(), 0);
      for (const auto& p : part->prefixes())
        for (std::uint64_t i = 0; i < p.size(); ++i)
          ++hits[p.network() - region.network() + i];
      for (std::uint64_t a = 0; a < region.size(); ++a) {
        if (hits[a] != covered[a]) {
          FAIL("address ", format_address(static_cast<Ipv4Address>(region.network() + a)),
               " covered ", int(hits[a]), " times, expected ", int(covered[a]));
        }
      }
    }
  }
}
