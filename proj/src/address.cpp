#include "sbas/address.hpp"

#include <arpa/inet.h>

#include <charconv>

#include "sbas/error.hpp"

namespace sbas {

AsNumber::AsNumber(std::uint64_t value) : value_(value) {
  if (value == 0) throw InvalidArgument("AS number must be positive");
}

AsNumber parse_asn(std::string_view text) {
  std::uint64_t v = 0;
  const char* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, v);
  if (ec != std::errc{} || ptr != end || text.empty()) {
    throw ParseError("invalid AS number '" + std::string(text) + "'");
  }
  if (v == 0) throw ParseError("AS number must be positive");
  return AsNumber(v);
}

IpAddress::IpAddress(IpVersion version, const std::array<std::uint8_t, 16>& bytes)
    : version_(version), bytes_(bytes) {
  if (version == IpVersion::V4) {
    for (int i = 4; i < 16; ++i) bytes_[i] = 0;
  }
}

IpAddress IpAddress::v4(std::uint32_t host_order) {
  std::array<std::uint8_t, 16> b{};
  b[0] = static_cast<std::uint8_t>(host_order >> 24);
  b[1] = static_cast<std::uint8_t>(host_order >> 16);
  b[2] = static_cast<std::uint8_t>(host_order >> 8);
  b[3] = static_cast<std::uint8_t>(host_order);
  return IpAddress(IpVersion::V4, b);
}

IpAddress IpAddress::parse(std::string_view text) {
  std::string s(text);
  std::array<std::uint8_t, 16> b{};
  if (s.find(':') != std::string::npos) {
    if (inet_pton(AF_INET6, s.c_str(), b.data()) != 1) throw ParseError("invalid IPv6 address '" + s + "'");
    return IpAddress(IpVersion::V6, b);
  }
  if (inet_pton(AF_INET, s.c_str(), b.data()) != 1) throw ParseError("invalid IPv4 address '" + s + "'");
  return IpAddress(IpVersion::V4, b);
}

std::string IpAddress::to_string() const {
  char buf[INET6_ADDRSTRLEN] = {};
  inet_ntop(version_ == IpVersion::V4 ? AF_INET : AF_INET6, bytes_.data(), buf, sizeof buf);
  return buf;
}

Prefix::Prefix(const IpAddress& network, unsigned length) : length_(length) {
  if (length > max_length(network.version())) {
    throw InvalidArgument("prefix length " + std::to_string(length) + " out of range");
  }
  auto b = network.bytes();
  for (unsigned i = 0; i < 16; ++i) {
    unsigned first_bit = i * 8;
    if (first_bit >= length) {
      b[i] = 0;
    } else if (first_bit + 8 > length) {
      b[i] &= static_cast<std::uint8_t>(0xFF << (8 - (length - first_bit)));
    }
  }
  network_ = IpAddress(network.version(), b);
}

Prefix Prefix::parse(std::string_view text) {
  auto slash = text.find('/');
  if (slash == std::string_view::npos) {
    return host(IpAddress::parse(text));
  }
  IpAddress addr = IpAddress::parse(text.substr(0, slash));
  auto len_text = text.substr(slash + 1);
  unsigned len = 0;
  auto [ptr, ec] = std::from_chars(len_text.data(), len_text.data() + len_text.size(), len);
  if (ec != std::errc{} || ptr != len_text.data() + len_text.size() || len_text.empty() ||
      len > max_length(addr.version())) {
    throw ParseError("invalid prefix length in '" + std::string(text) + "'");
  }
  return Prefix(addr, len);
}

bool Prefix::contains(const IpAddress& addr) const {
  if (addr.version() != version()) return false;
  const auto& a = addr.bytes();
  const auto& n = network_.bytes();
  unsigned full = length_ / 8;
  for (unsigned i = 0; i < full; ++i) {
    if (a[i] != n[i]) return false;
  }
  unsigned rem = length_ % 8;
  if (rem == 0) return true;
  auto mask = static_cast<std::uint8_t>(0xFF << (8 - rem));
  return (a[full] & mask) == n[full];
}

bool Prefix::covers(const Prefix& other) const {
  return other.version() == version() && other.length_ >= length_ && contains(other.network_);
}

std::string Prefix::to_string() const { return network_.to_string() + "/" + std::to_string(length_); }

}  // namespace sbas
