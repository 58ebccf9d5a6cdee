#include "tass/ratio.hpp"

#include <numeric>

#include "tass/error.hpp"

namespace tass {

Ratio parse_decimal(std::string_view text) {
  const std::string original(text);
  auto fail = [&]() -> Ratio { throw ParseError("malformed decimal '" + original + "'"); };
  if (text.empty())
    return fail();

  std::uint64_t num = 0;
  std::uint64_t den = 1;
  bool seen_dot = false;
  bool seen_digit = false;
  int digits = 0;
  for (char c : text) {
    if (c == '.') {
      if (seen_dot)
        return fail();
      seen_dot = true;
      continue;
    }
    if (c < '0' || c > '9')
      return fail();
    seen_digit = true;
    // 18 significant digits keep num and den below 2^63.
    if (++digits > 18)
      return fail();
    num = num * 10 + static_cast<std::uint64_t>(c - '0');
    if (seen_dot)
      den *= 10;
  }
  if (!seen_digit)
    return fail();
  const auto g = std::gcd(num, den);
  if (g > 1) {
    num /= g;
    den /= g;
  }
  return {num, den};
}

std::string format_fixed(const Ratio& r, int digits) {
  if (r.den == 0)
    throw InvalidInput("ratio with zero denominator");
  using u128 = detail::uint128;
  u128 scale = 1;
  for (int i = 0; i < digits; ++i)
    scale *= 10;
  // round(num * scale / den), half up
  const u128 scaled = (u128{r.num} * scale * 2 + r.den) / (u128{r.den} * 2);
  const auto whole = static_cast<std::uint64_t>(scaled / scale);
  auto frac = static_cast<std::uint64_t>(scaled % scale);

  std::string out = std::to_string(whole);
  if (digits > 0) {
    std::string tail(static_cast<std::size_t>(digits), '0');
    for (int i = digits - 1; i >= 0; --i) {
      tail[static_cast<std::size_t>(i)] = static_cast<char>('0' + frac % 10);
      frac /= 10;
    }
    out += '.';
    out += tail;
  }
  return out;
}

} // namespace tass
