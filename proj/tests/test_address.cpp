#include <gtest/gtest.h>

#include <random>

#include "sbas/address.hpp"
#include "sbas/error.hpp"

using namespace sbas;

TEST(AsNumber, RejectsZero) {
  EXPECT_THROW(AsNumber(0), InvalidArgument);
  EXPECT_FALSE(AsNumber().valid());
  EXPECT_EQ(AsNumber(4200000000ULL).value(), 4200000000ULL);
}

TEST(AsNumber, Parse) {
  EXPECT_EQ(parse_asn("64512"), AsNumber(64512));
  EXPECT_THROW(parse_asn("0"), Error);
  EXPECT_THROW(parse_asn("12a"), ParseError);
  EXPECT_THROW(parse_asn(""), ParseError);
  EXPECT_THROW(parse_asn("-3"), ParseError);
}

TEST(Prefix, MasksHostBits) {
  Prefix p = Prefix::parse("10.1.2.3/16");
  EXPECT_EQ(p.to_string(), "10.1.0.0/16");
  EXPECT_EQ(p, Prefix::parse("10.1.0.0/16"));
  EXPECT_EQ(Prefix::parse("2001:db8::1/32").to_string(), "2001:db8::/32");
}

TEST(Prefix, BareAddressIsHostRoute) {
  EXPECT_EQ(Prefix::parse("192.0.2.9").length(), 32U);
  EXPECT_EQ(Prefix::parse("::1").length(), 128U);
}

TEST(Prefix, RejectsBadInput) {
  EXPECT_THROW(Prefix::parse("10.0.0.0/33"), ParseError);
  EXPECT_THROW(Prefix::parse("::/129"), ParseError);
  EXPECT_THROW(Prefix::parse("10.0.0/8"), ParseError);
  EXPECT_THROW(Prefix::parse("10.0.0.0/x"), ParseError);
}

TEST(Prefix, ContainmentAcrossFamilies) {
  Prefix v4 = Prefix::parse("0.0.0.0/0");
  EXPECT_TRUE(v4.contains(IpAddress::parse("8.8.8.8")));
  EXPECT_FALSE(v4.contains(IpAddress::parse("2001:db8::1")));
  EXPECT_TRUE(Prefix::parse("10.0.0.0/8").covers(Prefix::parse("10.9.0.0/16")));
  EXPECT_FALSE(Prefix::parse("10.9.0.0/16").covers(Prefix::parse("10.0.0.0/8")));
  EXPECT_TRUE(Prefix::parse("10.9.0.0/16").overlaps(Prefix::parse("10.0.0.0/8")));
  EXPECT_FALSE(Prefix::parse("10.0.0.0/8").overlaps(Prefix::parse("11.0.0.0/8")));
}

TEST(Prefix, RandomContainsMatchesMaskArithmetic) {
  std::mt19937_64 rng(3);
  for (int i = 0; i < 20000; ++i) {
    std::uint32_t net = static_cast<std::uint32_t>(rng());
    std::uint32_t addr = static_cast<std::uint32_t>(rng());
    unsigned len = static_cast<unsigned>(rng() % 33);
    if (rng() % 2) addr = (net & 0xFFFF0000U) | (addr & 0xFFFFU);
    std::uint32_t mask = len == 0 ? 0 : ~0U << (32 - len);
    Prefix p(IpAddress::v4(net), len);
    EXPECT_EQ(p.contains(IpAddress::v4(addr)), (net & mask) == (addr & mask));
  }
}

TEST(IpAddress, RoundTrip) {
  for (const char* s : {"0.0.0.0", "255.255.255.255", "192.0.2.1", "2001:db8::8", "::"}) {
    EXPECT_EQ(IpAddress::parse(s).to_string(), s);
  }
  EXPECT_THROW(IpAddress::parse("300.1.1.1"), ParseError);
}
