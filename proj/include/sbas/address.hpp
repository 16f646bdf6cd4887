#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <functional>
#include <string>
#include <string_view>

namespace sbas {

// Autonomous system number. Zero is reserved and never a valid identifier.
class AsNumber {
 public:
  constexpr AsNumber() = default;
  explicit AsNumber(std::uint64_t value);

  constexpr std::uint64_t value() const { return value_; }
  constexpr bool valid() const { return value_ != 0; }

  friend constexpr auto operator<=>(AsNumber, AsNumber) = default;

  std::string to_string() const { return std::to_string(value_); }

 private:
  std::uint64_t value_ = 0;
};

AsNumber parse_asn(std::string_view text);

enum class IpVersion : std::uint8_t { V4, V6 };

constexpr unsigned max_length(IpVersion v) { return v == IpVersion::V4 ? 32 : 128; }

// A single IPv4 or IPv6 address. v4 addresses occupy the first four bytes.
class IpAddress {
 public:
  IpAddress() = default;
  IpAddress(IpVersion version, const std::array<std::uint8_t, 16>& bytes);

  static IpAddress v4(std::uint32_t host_order);
  static IpAddress parse(std::string_view text);

  IpVersion version() const { return version_; }
  const std::array<std::uint8_t, 16>& bytes() const { return bytes_; }

  // Bit `i` counted from the most significant bit of the address.
  bool bit(unsigned i) const { return (bytes_[i / 8] >> (7 - i % 8)) & 1U; }

  std::string to_string() const;

  friend auto operator<=>(const IpAddress&, const IpAddress&) = default;

 private:
  IpVersion version_ = IpVersion::V4;
  std::array<std::uint8_t, 16> bytes_{};
};

// Network prefix with host bits forced to zero on construction.
class Prefix {
 public:
  Prefix() = default;
  Prefix(const IpAddress& network, unsigned length);

  static Prefix parse(std::string_view text);
  static Prefix host(const IpAddress& addr) { return Prefix(addr, max_length(addr.version())); }

  IpVersion version() const { return network_.version(); }
  const IpAddress& network() const { return network_; }
  unsigned length() const { return length_; }

  bool contains(const IpAddress& addr) const;
  // True when every address of `other` lies inside this prefix.
  bool covers(const Prefix& other) const;
  bool overlaps(const Prefix& other) const { return covers(other) || other.covers(*this); }

  std::string to_string() const;

  friend auto operator<=>(const Prefix&, const Prefix&) = default;

 private:
  IpAddress network_;
  unsigned length_ = 0;
};

}  // namespace sbas

template <>
struct std::hash<sbas::AsNumber> {
  std::size_t operator()(sbas::AsNumber a) const noexcept { return std::hash<std::uint64_t>{}(a.value()); }
};
