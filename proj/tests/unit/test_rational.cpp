#include <gtest/gtest.h>

#include "unialign/error.hpp"
#include "unialign/rational.hpp"

using namespace unialign;

TEST(Rational, ParsesIntegersFractionsAndDecimals) {
  EXPECT_EQ(parse_rational("3"), Rational(3));
  EXPECT_EQ(parse_rational("-2/7"), Rational(-2, 7));
  EXPECT_EQ(parse_rational("1.5"), Rational(3, 2));
  EXPECT_EQ(parse_rational("0.1"), Rational(1, 10));
  EXPECT_EQ(parse_rational("1e-6"), Rational(1, 1000000));
  EXPECT_EQ(parse_rational("2.5E+3"), Rational(2500));
  EXPECT_EQ(parse_rational("4/6"), Rational(2, 3));
}

TEST(Rational, RejectsMalformedText) {
  for (const char* bad : {"", "abc", "1/0", "1..2", "1/", "/3", "1e", "--1"}) {
    EXPECT_THROW(parse_rational(bad), InvalidInput) << bad;
  }
}

TEST(Rational, CanonicalText) {
  EXPECT_EQ(ratio(2, 10), Rational(1, 5));
  EXPECT_THROW(ratio(1, 0), InvalidInput);
  EXPECT_EQ(to_string(Rational(4)), "4");
  EXPECT_EQ(to_string(Rational(2000001, 500000)), "2000001/500000");
  EXPECT_EQ(to_string(ratio(-6, 4)), "-3/2");
}

TEST(Rational, CeilAndIntegerConversion) {
  EXPECT_EQ(ceil(Rational(7, 2)), Rational(4));
  EXPECT_EQ(ceil(Rational(-7, 2)), Rational(-3));
  EXPECT_EQ(ceil(Rational(5)), Rational(5));
  EXPECT_EQ(ceil(Rational(1, 1000000)), Rational(1));
  EXPECT_EQ(to_int64(Rational(-42)), -42);
  EXPECT_THROW(to_int64(Rational(1, 2)), InternalInvariantError);
  EXPECT_DOUBLE_EQ(to_double(Rational(1, 4)), 0.25);
}
