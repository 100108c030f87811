#include <gtest/gtest.h>

#include "iazf/core.hpp"
#include "iazf/rational.hpp"

using namespace iazf;

TEST(Rational, ReducedWithPositiveDenominator) {
    const Rational q(6, -8);
    EXPECT_EQ(q.numerator(), -3);
    EXPECT_EQ(q.denominator(), 4);
    EXPECT_EQ(q.to_string(), "-3/4");
    EXPECT_EQ(Rational(8, 2).to_string(), "4");
    EXPECT_EQ(Rational(8, 2).to_fraction(), "4/1");
    EXPECT_THROW(Rational(1, 0), DomainError);
}

TEST(Rational, ArithmeticAndOrder) {
    EXPECT_EQ(Rational(3, 20) - Rational(13, 100), Rational(1, 50));
    EXPECT_EQ(Rational(2, 3) * Rational(5, 24), Rational(5, 36));
    EXPECT_EQ(Rational(1, 2) / Rational(1, 4), Rational(2));
    EXPECT_LT(Rational(13, 100), Rational(3, 20));
    EXPECT_THROW(Rational(1) / Rational(0), DomainError);
    EXPECT_EQ(Rational::parse("13/100"), Rational(13, 100));
    EXPECT_EQ(Rational::parse("-7"), Rational(-7));
    EXPECT_THROW(Rational::parse("x/2"), DomainError);
    EXPECT_EQ(Rational(13, 100).to_decimal(), "0.13");
    EXPECT_EQ(Rational(5, 36).to_decimal(), "0.138889");
}
