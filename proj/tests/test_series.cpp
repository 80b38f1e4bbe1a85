#include <doctest.h>

#include <utility>
#include <vector>

#include "tatecalc/fgl.hpp"
#include "tatecalc/series.hpp"
#include "tatecalc/verify.hpp"

using namespace tatecalc;

namespace {

const RingPtr& mu()
{
    static const RingPtr ring = RingDescriptor::mu_rational(10);
    return ring;
}

const RingPtr& nm2()
{
    static const RingPtr ring = RingDescriptor::n_mod2(10);
    return ring;
}

GradedPolynomial gen(const RingPtr& ring, const std::string& name, int power = 1)
{
    return GradedPolynomial::monomial(
        ring, Monomial::generator(ring->find_generator(name), power),
        Scalar::one(ring->characteristic()));
}

GradedPolynomial scal(const RingPtr& ring, long num, long den = 1)
{
    if (ring->characteristic() == 2) {
        return GradedPolynomial::constant(ring, Scalar::from_integer(num, 2));
    }
    return GradedPolynomial::constant(ring, Scalar(Rational(num, den)));
}

LaurentSeries make(const RingPtr& ring, const std::string& var, int degree,
                   int order, std::vector<std::pair<int, GradedPolynomial>> cs)
{
    std::map<int, GradedPolynomial> coeffs;
    for (auto& [n, c] : cs) {
        coeffs.emplace(n, std::move(c));
    }
    return LaurentSeries(ring, var, degree, order, std::move(coeffs));
}

} // namespace

TEST_CASE("sum, negation and the additive identity")
{
    const LaurentSeries a =
        make(mu(), "w", 1, 6, {{-1, scal(mu(), 1)}, {0, gen(mu(), "m1")}});
    const LaurentSeries b = make(mu(), "w", 1, 6, {{-1, scal(mu(), -1)}});
    const LaurentSeries sum = ser_add(a, b);
    CHECK(series_agree(sum, make(mu(), "w", 1, 6, {{0, gen(mu(), "m1")}})));
    CHECK(sum.order() == 6);
    CHECK(series_agree(ser_add(a, LaurentSeries::zero(mu(), "w", 1, 9)), a));
    CHECK(ser_add(a, ser_neg(a)).is_zero());
}

TEST_CASE("characteristic-2 series cancel in pairs")
{
    const PowerSeries pi = class_generating_series(nm2(), "w", 6);
    CHECK(ser_add(pi, pi).is_zero());
}

TEST_CASE("products of Laurent monomials and the worked quadratic")
{
    const LaurentSeries winv = LaurentSeries::variable_power(mu(), "w", -1, 8);
    const LaurentSeries w = LaurentSeries::variable_power(mu(), "w", 1, 8);
    const LaurentSeries prod = ser_mul(winv, w);
    CHECK(series_agree(prod, LaurentSeries::variable_power(mu(), "w", 0, 6)));
    CHECK(prod.degree() == 0);

    // (z + m1 z^2)(z - m1 z^2) = z^2 - m1^2 z^4
    const LaurentSeries f =
        make(mu(), "z", -1, 8, {{1, scal(mu(), 1)}, {2, gen(mu(), "m1")}});
    const LaurentSeries g =
        make(mu(), "z", -1, 8, {{1, scal(mu(), 1)}, {2, -gen(mu(), "m1")}});
    const LaurentSeries expected =
        make(mu(), "z", -2, 9,
             {{2, scal(mu(), 1)}, {4, -gen(mu(), "m1", 2)}});
    CHECK(series_agree(ser_mul(f, g), expected));
}

TEST_CASE("truncation propagates through products at the tightest bound")
{
    // a known to 8 with valuation -2, b known to 5 with valuation 1:
    // the product is reliable to min(8 + 1, 5 - 2) = 3 only.
    const LaurentSeries a =
        make(mu(), "w", 3, 8, {{-2, gen(mu(), "m1")}, {0, gen(mu(), "m3")}});
    const LaurentSeries b =
        make(mu(), "w", 2, 5, {{1, gen(mu(), "m3")}, {2, gen(mu(), "m4")}});
    const LaurentSeries ab = ser_mul(a, b);
    CHECK(ab.order() == 3);
    CHECK(ab.degree() == 5);
    CHECK(ab.valuation() == -1);
}

TEST_CASE("multiplication is associative and commutative up to truncation")
{
    for (const RingPtr& ring : {mu(), nm2()}) {
        RandomSource rng(ring->characteristic() + 40);
        for (int i = 0; i < 60; ++i) {
            const LaurentSeries a =
                random_series(rng, ring, "w", rng.range(0, 3), rng.range(-2, 0), 7, 2);
            const LaurentSeries b =
                random_series(rng, ring, "w", rng.range(0, 3), rng.range(-2, 0), 7, 2);
            const LaurentSeries c =
                random_series(rng, ring, "w", rng.range(0, 3), rng.range(-2, 0), 7, 2);
            CHECK(series_agree(ser_mul(a, b), ser_mul(b, a)));
            CHECK(series_agree(ser_mul(ser_mul(a, b), c), ser_mul(a, ser_mul(b, c))));
        }
    }
}

TEST_CASE("inversion: units, monomials and the pi series")
{
    const LaurentSeries one = LaurentSeries::variable_power(mu(), "w", 0, 7);
    CHECK(series_agree(ser_invert(one), one));

    const LaurentSeries w = LaurentSeries::variable_power(mu(), "w", 1, 7);
    CHECK(series_agree(ser_invert(w),
                       LaurentSeries::variable_power(mu(), "w", -1, 5)));

    // (1 + x2 w^2 + x4 w^4 + x6 w^6)^{-1}
    // = 1 + x2 w^2 + (x2^2 + x4) w^4 + (x2^3 + x6) w^6 mod 2
    const PowerSeries pi = class_generating_series(nm2(), "w", 6);
    const LaurentSeries inv = ser_invert(pi);
    const LaurentSeries expected =
        make(nm2(), "w", 0, 6,
             {{0, scal(nm2(), 1)},
              {2, gen(nm2(), "x2")},
              {4, poly_add(gen(nm2(), "x2", 2), gen(nm2(), "x4"))},
              {6, poly_add(gen(nm2(), "x2", 3), gen(nm2(), "x6"))}});
    CHECK(series_agree(inv, expected));
    CHECK(inv.order() == 6);

    // geometric-series oracle: (1 + r)^{-1} = 1 + r + r^2 + r^3 mod 2
    const LaurentSeries one2 = LaurentSeries::variable_power(nm2(), "w", 0, 6);
    const LaurentSeries r = ser_sub(pi, one2);
    LaurentSeries geo = LaurentSeries::variable_power(nm2(), "w", 0, 6);
    LaurentSeries pow = r;
    geo = ser_add(geo, pow);
    for (int k = 2; k <= 3; ++k) {
        pow = ser_mul(pow, r).truncated(6);
        geo = ser_add(geo, pow);
    }
    CHECK(series_agree(inv, geo.truncated(6)));

    CHECK(series_agree(ser_mul(pi, inv),
                       LaurentSeries::variable_power(nm2(), "w", 0, 6)));
}

TEST_CASE("inversion demands a unit leading coefficient")
{
    const LaurentSeries two = make(mu(), "w", 0, 5, {{0, scal(mu(), 2)}});
    CHECK_THROWS_AS(ser_invert(two), error);
    const LaurentSeries m1w = make(mu(), "w", 0, 5, {{1, gen(mu(), "m1")}});
    CHECK_THROWS_AS(ser_invert(m1w), error);
    CHECK_THROWS_AS(ser_invert(LaurentSeries::zero(mu(), "w", 0, 5)), error);
}

TEST_CASE("derivative acts termwise with the characteristic")
{
    // d/du (u + (m1/2)u^2 + (m2/3)u^3) = 1 + m1 u + m2 u^2
    const LaurentSeries log3 =
        make(mu(), "u", -1, 8,
             {{1, scal(mu(), 1)},
              {2, gen(mu(), "m1").scaled(Scalar(Rational(1, 2)))},
              {3, gen(mu(), "m2").scaled(Scalar(Rational(1, 3)))}});
    const LaurentSeries expected =
        make(mu(), "u", 0, 7,
             {{0, scal(mu(), 1)}, {1, gen(mu(), "m1")}, {2, gen(mu(), "m2")}});
    CHECK(series_agree(ser_derivative(log3), expected));
    CHECK(ser_derivative(log3).degree() == 0);
    CHECK(ser_derivative(log3).order() == 7);

    const LaurentSeries constant = make(mu(), "w", 1, 6, {{0, gen(mu(), "m1")}});
    CHECK(ser_derivative(constant).is_zero());

    const LaurentSeries zinv = LaurentSeries::variable_power(mu(), "z", -1, 6);
    CHECK(series_agree(ser_derivative(zinv),
                       make(mu(), "z", 2, 5, {{-2, scal(mu(), -1)}})));

    // In characteristic 2 even exponents die.
    const LaurentSeries char2 =
        make(nm2(), "w", 0, 6, {{2, gen(nm2(), "x2")}, {5, gen(nm2(), "x5")}});
    CHECK(series_agree(ser_derivative(char2),
                       make(nm2(), "w", 1, 5, {{4, gen(nm2(), "x5")}})));
}

TEST_CASE("residue reads the coefficient at exponent -1")
{
    CHECK(ser_residue(LaurentSeries::variable_power(mu(), "z", -1, 5)).is_one());
    RandomSource rng(55);
    for (int i = 0; i < 50; ++i) {
        const LaurentSeries s =
            random_series(rng, mu(), "z", rng.range(0, 3), 0, 6, 2);
        CHECK(ser_residue(s).is_zero());
    }
    const LaurentSeries shallow = make(mu(), "z", 4, -2, {{-3, gen(mu(), "m1")}});
    CHECK_THROWS_AS(ser_residue(shallow), precision_error);
}

TEST_CASE("residue of a derivative vanishes")
{
    for (const RingPtr& ring : {mu(), nm2()}) {
        RandomSource rng(60 + ring->characteristic());
        for (int i = 0; i < 100; ++i) {
            const LaurentSeries a = random_series(rng, ring, "z", rng.range(0, 4),
                                                  rng.range(-3, 0), 7, 3);
            CHECK(ser_residue(ser_derivative(a)).is_zero());
        }
    }
}

TEST_CASE("composition with the identity outer series")
{
    RandomSource rng(70);
    const PowerSeries f = random_unit_series(rng, mu(), "z", 7, 2);
    const LaurentSeries outer = LaurentSeries::variable_power(mu(), "c", 1, 9);
    CHECK(series_agree(ser_compose(outer, f), f));
}

TEST_CASE("composition expands negative powers through inversion")
{
    // c^{-1} at c = z + m1 z^2:  z^{-1} - m1 + m1^2 z - m1^3 z^2 + ...
    const PowerSeries inner(
        make(mu(), "z", -1, 6, {{1, scal(mu(), 1)}, {2, gen(mu(), "m1")}}));
    const LaurentSeries outer = LaurentSeries::variable_power(mu(), "c", -1, 9);
    const LaurentSeries composed = ser_compose(outer, inner);
    const LaurentSeries expected =
        make(mu(), "z", 1, 4,
             {{-1, scal(mu(), 1)},
              {0, -gen(mu(), "m1")},
              {1, gen(mu(), "m1", 2)},
              {2, -gen(mu(), "m1", 3)},
              {3, gen(mu(), "m1", 4)},
              {4, -gen(mu(), "m1", 5)}});
    CHECK(series_agree(composed, expected));
    CHECK(composed.order() == 4);

    // geometric oracle: z^{-1} * sum_k (-m1 z)^k, using only mul and add
    LaurentSeries geo = LaurentSeries::zero(mu(), "z", 0, 5);
    LaurentSeries term = LaurentSeries::variable_power(mu(), "z", 0, 5);
    const LaurentSeries ratio = make(mu(), "z", 0, 5, {{1, -gen(mu(), "m1")}});
    for (int k = 0; k <= 5; ++k) {
        geo = ser_add(geo, term);
        term = ser_mul(term, ratio).truncated(5);
    }
    CHECK(series_agree(composed, geo.shifted(-1)));

    CHECK_THROWS_AS(
        ser_compose(outer, PowerSeries(make(mu(), "z", -1, 6,
                                            {{2, gen(mu(), "m1")}}))),
        error); // valuation 2
    CHECK_THROWS_AS(
        ser_compose(outer, PowerSeries(make(mu(), "z", -1, 6,
                                            {{1, scal(mu(), 2)}}))),
        error); // non-unit lead
}

TEST_CASE("reversion on the worked cubic and the involution law")
{
    // reverse(u + (m1/2)u^2 + (m2/3)u^3) = z - (m1/2)z^2 + (m1^2/2 - m2/3)z^3
    const PowerSeries f(
        make(mu(), "u", -1, 3,
             {{1, scal(mu(), 1)},
              {2, gen(mu(), "m1").scaled(Scalar(Rational(1, 2)))},
              {3, gen(mu(), "m2").scaled(Scalar(Rational(1, 3)))}}));
    const PowerSeries g = ser_reverse(f, "z");
    const LaurentSeries expected =
        make(mu(), "z", -1, 3,
             {{1, scal(mu(), 1)},
              {2, gen(mu(), "m1").scaled(Scalar(Rational(-1, 2)))},
              {3, poly_add(gen(mu(), "m1", 2).scaled(Scalar(Rational(1, 2))),
                           gen(mu(), "m2").scaled(Scalar(Rational(-1, 3))))}});
    CHECK(series_agree(g, expected));

    const PowerSeries z_id(LaurentSeries::variable_power(mu(), "z", 1, 6));
    CHECK(series_agree(ser_reverse(z_id, "u"),
                       LaurentSeries::variable_power(mu(), "u", 1, 6)));

    for (const RingPtr& ring : {mu(), nm2()}) {
        RandomSource rng(80 + ring->characteristic());
        for (int i = 0; i < 40; ++i) {
            const PowerSeries h = random_unit_series(rng, ring, "z", 7, 2);
            const PowerSeries hh = ser_reverse(ser_reverse(h, "u"), "z");
            CHECK(series_agree(h, hh));
            CHECK(common_order(h, hh) == 7);
            // f(g(u)) = u as well
            const LaurentSeries round =
                ser_compose(h, ser_reverse(h, "u"));
            CHECK(series_agree(round,
                               LaurentSeries::variable_power(ring, "u", 1, 7)));
        }
    }
}

TEST_CASE("reversion agrees with the Lagrange residue formula")
{
    RandomSource rng(90);
    for (int i = 0; i < 50; ++i) {
        const PowerSeries f = random_unit_series(rng, mu(), "z", 8, 3);
        const PowerSeries g1 = ser_reverse(f, "u");
        const PowerSeries g2 = reverse_by_residues(f, "u");
        CHECK(series_agree(g1, g2));
        CHECK(common_order(g1, g2) == 8);
    }
}

TEST_CASE("change of variables preserves the residue")
{
    for (const RingPtr& ring : {mu(), nm2()}) {
        RandomSource rng(95 + ring->characteristic());
        for (int i = 0; i < 100; ++i) {
            const PowerSeries f = random_unit_series(rng, ring, "z", 8, 3);
            const LaurentSeries L = random_series(rng, ring, "c", rng.range(0, 4),
                                                  rng.range(-3, 0), 8, 3);
            const LaurentSeries pulled =
                ser_mul(ser_compose(L, f), ser_derivative(f));
            CHECK(ser_residue(pulled) == ser_residue(L));
        }
    }
}

TEST_CASE("holomorphic and principal parts split exactly")
{
    // shaped like w^{-2} + 3 + w, with grading-valid coefficients
    const LaurentSeries s_fixed =
        make(mu(), "w", 2, 6,
             {{-2, scal(mu(), 1)}, {0, gen(mu(), "m2")}, {1, gen(mu(), "m3")}});
    const PowerSeries hol = holomorphic_part(s_fixed);
    const PrincipalTail prin = principal_part(s_fixed);
    CHECK(series_agree(hol, make(mu(), "w", 2, 6,
                                 {{0, gen(mu(), "m2")}, {1, gen(mu(), "m3")}})));
    CHECK(series_agree(prin, make(mu(), "w", 2, 6, {{-2, scal(mu(), 1)}})));
    CHECK(series_agree(ser_add(hol, prin), s_fixed));

    const LaurentSeries cinv = LaurentSeries::variable_power(mu(), "c", -1, 6);
    CHECK(holomorphic_part(cinv).series().is_zero());
    CHECK(series_agree(principal_part(cinv), cinv));

    for (const RingPtr& ring : {mu(), nm2()}) {
        RandomSource rng(99 + ring->characteristic());
        for (int i = 0; i < 100; ++i) {
            const LaurentSeries L = random_series(rng, ring, "w", rng.range(0, 4),
                                                  rng.range(-3, 0), 7, 3);
            const PowerSeries h = holomorphic_part(L);
            CHECK(series_agree(ser_add(h, principal_part(L)), L));
            CHECK(common_order(ser_add(h, principal_part(L)), L) == L.order());
            CHECK(series_agree(holomorphic_part(h), h));
            CHECK(principal_part(h).series().is_zero());
        }
    }
}

TEST_CASE("grading is preserved by every operation")
{
    for (const RingPtr& ring : {mu(), nm2()}) {
        RandomSource rng(110 + ring->characteristic());
        for (int i = 0; i < 220; ++i) {
            const int degree = rng.range(0, 4);
            const LaurentSeries a = random_series(rng, ring, "w", degree,
                                                  rng.range(-3, 0), 7, 3);
            const LaurentSeries b = random_series(rng, ring, "w", degree,
                                                  rng.range(-3, 0), 7, 3);
            for (const LaurentSeries& out :
                 {ser_add(a, b), ser_mul(a, b), ser_derivative(a),
                  a.shifted(rng.range(-2, 2))}) {
                for (const auto& [n, c] : out.support()) {
                    CHECK(c.degree() == out.degree() + n);
                }
            }
        }
    }
}

TEST_CASE("series operand mismatches are rejected")
{
    const LaurentSeries a = LaurentSeries::variable_power(mu(), "w", 1, 5);
    const LaurentSeries b = LaurentSeries::variable_power(mu(), "c", 1, 5);
    CHECK_THROWS_AS(ser_add(a, b), mismatch_error);
    CHECK_THROWS_AS(ser_mul(a, b), mismatch_error);
    const LaurentSeries c = LaurentSeries::variable_power(nm2(), "w", 1, 5);
    CHECK_THROWS_AS(ser_add(a, c), mismatch_error);
    const LaurentSeries d = LaurentSeries::variable_power(mu(), "w", 2, 5);
    CHECK_THROWS_AS(ser_add(a, d), mismatch_error);
    CHECK_THROWS_AS(
        PowerSeries(LaurentSeries::variable_power(mu(), "w", -1, 5)), error);
    CHECK_THROWS_AS(
        PrincipalTail(LaurentSeries::variable_power(mu(), "w", 0, 5)), error);
}
