#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>

namespace tass {

namespace detail {
__extension__ typedef unsigned __int128 uint128;
} // namespace detail

/// Non-negative exact fraction num/den with den > 0. Comparisons are exact
/// (128-bit cross multiplication); no normalization is required.
struct Ratio {
  std::uint64_t num = 0;
  std::uint64_t den = 1;

  [[nodiscard]] double value() const noexcept {
    return static_cast<double>(num) / static_cast<double>(den);
  }

  friend std::strong_ordering operator<=>(const Ratio& a, const Ratio& b) noexcept {
    using u128 = detail::uint128;
    const u128 lhs = u128{a.num} * b.den;
    const u128 rhs = u128{b.num} * a.den;
    return lhs <=> rhs;
  }
  friend bool operator==(const Ratio& a, const Ratio& b) noexcept {
    return (a <=> b) == std::strong_ordering::equal;
  }
};

/// Parses a plain decimal such as "0.95", "1", "1.0" or ".5" into an exact
/// ratio in lowest terms. Throws ParseError on anything else.
Ratio parse_decimal(std::string_view text);

/// Formats with exactly `digits` fractional digits, rounding half up on the
/// exact value. Deterministic across platforms.
std::string format_fixed(const Ratio& r, int digits);

} // namespace tass
