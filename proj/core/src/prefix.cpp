#include "tass/prefix.hpp"

#include <charconv>
#include <cstdio>

#include "tass/error.hpp"

namespace tass {

namespace {

// Parses a decimal integer of at most `max_digits` digits with no sign and
// no leading/trailing characters.
std::optional<unsigned> parse_small_uint(std::string_view text, std::size_t max_digits) noexcept {
  if (text.empty() || text.size() > max_digits)
    return std::nullopt;
  unsigned value = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc{} || ptr != text.data() + text.size())
    return std::nullopt;
  return value;
}

constexpr Ipv4Address host_mask(int length) noexcept {
  return length == 0 ? ~Ipv4Address{0} : (Ipv4Address{1} << (32 - length)) - 1;
}

} // namespace

std::optional<Ipv4Address> try_parse_address(std::string_view text) noexcept {
  Ipv4Address result = 0;
  for (int octet = 0; octet < 4; ++octet) {
    auto dot = text.find('.');
    if (octet < 3 && dot == std::string_view::npos)
      return std::nullopt;
    auto field = octet < 3 ? text.substr(0, dot) : text;
    auto value = parse_small_uint(field, 3);
    if (!value || *value > 255)
      return std::nullopt;
    result = (result << 8) | *value;
    if (octet < 3)
      text.remove_prefix(dot + 1);
  }
  return result;
}

Ipv4Address parse_address(std::string_view text) {
  if (auto addr = try_parse_address(text))
    return *addr;
  throw ParseError("malformed IPv4 address '" + std::string(text) + "'");
}

std::string format_address(Ipv4Address addr) {
  char buf[16];
  std::snprintf(buf, sizeof buf, "%u.%u.%u.%u", (addr >> 24) & 0xffu, (addr >> 16) & 0xffu,
                (addr >> 8) & 0xffu, addr & 0xffu);
  return buf;
}

Ipv4Prefix::Ipv4Prefix(Ipv4Address network, int length) {
  if (length < 0 || length > max_length)
    throw InvalidInput("prefix length " + std::to_string(length) + " out of range [0, 32]");
  if ((network & host_mask(length)) != 0)
    throw InvalidInput("non-canonical prefix " + format_address(network) + "/" +
                       std::to_string(length) + ": host bits set");
  network_ = network;
  length_ = static_cast<std::uint8_t>(length);
}

Ipv4Prefix Ipv4Prefix::covering(Ipv4Address addr, int length) {
  if (length < 0 || length > max_length)
    throw InvalidInput("prefix length " + std::to_string(length) + " out of range [0, 32]");
  return {addr & ~host_mask(length), length};
}

Ipv4Prefix Ipv4Prefix::lower_half() const {
  if (length_ == max_length)
    throw InvalidInput("cannot split a /32");
  return {network_, length_ + 1};
}

Ipv4Prefix Ipv4Prefix::upper_half() const {
  if (length_ == max_length)
    throw InvalidInput("cannot split a /32");
  return {network_ | (Ipv4Address{1} << (max_length - length_ - 1)), length_ + 1};
}

std::string Ipv4Prefix::to_string() const {
  return format_address(network_) + "/" + std::to_string(length_);
}

Ipv4Prefix parse_prefix(std::string_view text) {
  auto slash = text.find('/');
  if (slash == std::string_view::npos)
    throw ParseError("malformed prefix '" + std::string(text) + "': missing '/'");
  auto addr = try_parse_address(text.substr(0, slash));
  if (!addr)
    throw ParseError("malformed prefix '" + std::string(text) + "': bad address");
  auto length = parse_small_uint(text.substr(slash + 1), 2);
  if (!length || *length > 32)
    throw ParseError("malformed prefix '" + std::string(text) + "': bad length");
  if ((*addr & host_mask(static_cast<int>(*length))) != 0)
    throw ParseError("non-canonical prefix '" + std::string(text) + "': host bits set");
  return {*addr, static_cast<int>(*length)};
}

} // namespace tass
