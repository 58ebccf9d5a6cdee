#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>

namespace tass {

/// A host address in host byte order.
using Ipv4Address = std::uint32_t;

/// Parses a dotted-quad address such as `192.0.2.1`.
/// Throws ParseError on anything else (leading/trailing junk, octet > 255).
Ipv4Address parse_address(std::string_view text);

/// Non-throwing variant used by the tolerant feed loaders.
std::optional<Ipv4Address> try_parse_address(std::string_view text) noexcept;

std::string format_address(Ipv4Address addr);

/// A canonical IPv4 CIDR block: every bit of the network below the prefix
/// length is zero. Instances can only be created in canonical form.
class Ipv4Prefix {
public:
  static constexpr int max_length = 32;

  /// The whole address space, `0.0.0.0/0`.
  constexpr Ipv4Prefix() noexcept = default;

  /// Throws InvalidInput if `length` is out of range or host bits are set.
  Ipv4Prefix(Ipv4Address network, int length);

  /// Builds the prefix of the given length that contains `addr`.
  static Ipv4Prefix covering(Ipv4Address addr, int length);

  [[nodiscard]] constexpr Ipv4Address network() const noexcept { return network_; }
  [[nodiscard]] constexpr int length() const noexcept { return length_; }

  /// Number of addresses in the block, 2^(32 - length).
  [[nodiscard]] constexpr std::uint64_t size() const noexcept {
    return std::uint64_t{1} << (max_length - length_);
  }

  /// Last address inside the block.
  [[nodiscard]] constexpr Ipv4Address last() const noexcept {
    return static_cast<Ipv4Address>(network_ + (size() - 1));
  }

  [[nodiscard]] constexpr bool contains(Ipv4Address addr) const noexcept {
    return addr >= network_ && addr <= last();
  }

  /// True iff `other` lies entirely inside this block (reflexive).
  [[nodiscard]] constexpr bool contains(const Ipv4Prefix& other) const noexcept {
    return length_ <= other.length_ && contains(other.network_);
  }

  /// The two halves of this block. Requires length() < 32.
  [[nodiscard]] Ipv4Prefix lower_half() const;
  [[nodiscard]] Ipv4Prefix upper_half() const;

  /// `a.b.c.d/len`
  [[nodiscard]] std::string to_string() const;

  /// Ordered by network, then by length; a block sorts before its subblocks
  /// that share its network address.
  friend constexpr auto operator<=>(const Ipv4Prefix&, const Ipv4Prefix&) = default;
  friend constexpr bool operator==(const Ipv4Prefix&, const Ipv4Prefix&) = default;

private:
  Ipv4Address network_ = 0;
  std::uint8_t length_ = 0;
};

/// Parses `a.b.c.d/len`. Non-canonical input (host bits set) is rejected,
/// never masked.
Ipv4Prefix parse_prefix(std::string_view text);

inline bool contains(const Ipv4Prefix& outer, const Ipv4Prefix& inner) noexcept {
  return outer.contains(inner);
}

} // namespace tass

template <>
struct std::hash<tass::Ipv4Prefix> {
  std::size_t operator()(const tass::Ipv4Prefix& p) const noexcept {
    return std::hash<std::uint64_t>{}(
        (std::uint64_t{p.network()} << 8) | static_cast<std::uint64_t>(p.length()));
  }
};
