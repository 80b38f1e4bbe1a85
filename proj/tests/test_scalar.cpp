#include <doctest.h>

#include <numeric>

#include "tatecalc/scalar.hpp"
#include "tatecalc/verify.hpp"

using namespace tatecalc;

TEST_CASE("rationals stay in lowest terms with positive denominator")
{
    RandomSource rng(101);
    for (int i = 0; i < 300; ++i) {
        long num = rng.range(-400, 400);
        long den = rng.range(1, 60) * (rng.one_in(2) ? 1 : -1);
        const Rational q(num, den);
        if (den < 0) {
            num = -num;
            den = -den;
        }
        const long g = std::gcd(num < 0 ? -num : num, den);
        const long rnum = g == 0 ? 0 : num / g;
        const long rden = g == 0 ? 1 : den / g;
        CHECK(q.numerator_string() == std::to_string(num == 0 ? 0 : rnum));
        CHECK(q.denominator_string() == std::to_string(num == 0 ? 1 : rden));
    }
}

TEST_CASE("rational arithmetic and parsing")
{
    CHECK(Rational(1, 2) + Rational(1, 3) == Rational(5, 6));
    CHECK(Rational(1, 2) * Rational(2, 3) == Rational(1, 3));
    CHECK((Rational(3) / Rational(6)).to_string() == "1/2");
    CHECK(Rational(-4, 8).to_string() == "-1/2");
    CHECK(Rational(7).to_string() == "7");
    CHECK(Rational::parse("-3/9") == Rational(-1, 3));
    CHECK(Rational::parse("12") == Rational(12));
    CHECK_THROWS_AS(Rational::parse("1/0"), schema_error);
    CHECK_THROWS_AS(Rational::parse("1/2/3"), schema_error);
    CHECK_THROWS_AS(Rational::parse("x"), schema_error);
    CHECK_THROWS_AS(Rational::parse(""), schema_error);
    CHECK_THROWS_AS(Rational::parse("1/-2"), schema_error);
    CHECK_THROWS_AS(Rational(1, 0), error);
    CHECK_THROWS_AS(Rational(1, 2) / Rational(0), error);
}

TEST_CASE("one plus one is zero in characteristic 2")
{
    const Scalar one = Scalar::one(2);
    CHECK((one + one).is_zero());
    CHECK((one * one).is_one());
    CHECK(Scalar::from_integer(5, 2).is_one());
    CHECK(Scalar::from_integer(-4, 2).is_zero());
    CHECK((-one) == one);
}

TEST_CASE("scalars refuse mixed-characteristic arithmetic")
{
    CHECK_THROWS_AS(Scalar::one(0) + Scalar::one(2), mismatch_error);
    CHECK_THROWS_AS(Scalar::one(2) * Scalar::one(0), mismatch_error);
    CHECK(Scalar::one(0) != Scalar::one(2));
}

TEST_CASE("unit detection matches the inversion precondition")
{
    CHECK(Scalar(Rational(1)).is_unit());
    CHECK(Scalar(Rational(-1)).is_unit());
    CHECK_FALSE(Scalar(Rational(2)).is_unit());
    CHECK_FALSE(Scalar(Rational(1, 2)).is_unit());
    CHECK(Scalar::one(2).is_unit());
    CHECK_FALSE(Scalar::zero(2).is_unit());
}
