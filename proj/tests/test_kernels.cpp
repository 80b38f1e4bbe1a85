#include <doctest.h>

#include "tatecalc/kernels.hpp"
#include "tatecalc/verify.hpp"

using namespace tatecalc;

namespace {

// Dense integer-coefficient power series of declared degree 0 with
// single-monomial m1^n coefficients: the shape the benchmark uses and big
// enough to exercise the parallel path.
LaurentSeries dense_series(const RingPtr& ring, const std::string& var,
                           int order, RandomSource& rng)
{
    const int m1 = ring->find_generator("m1");
    std::map<int, GradedPolynomial> coeffs;
    for (int n = 0; n <= order; ++n) {
        const long value = rng.range(-9, 9);
        if (value == 0) {
            continue;
        }
        GradedPolynomial c =
            n == 0 ? GradedPolynomial::constant(ring, Scalar(Rational(value)))
                   : GradedPolynomial::monomial(ring, Monomial::generator(m1, n),
                                                Scalar(Rational(value)));
        coeffs.emplace(n, std::move(c));
    }
    return LaurentSeries(ring, var, 0, order, std::move(coeffs));
}

} // namespace

TEST_CASE("parallel and serial convolutions agree exactly")
{
    for (const RingPtr& ring :
         {RingDescriptor::mu_rational(8), RingDescriptor::n_mod2(8)}) {
        RandomSource rng(7 + ring->characteristic());
        for (int i = 0; i < 40; ++i) {
            const LaurentSeries a = random_series(rng, ring, "w", rng.range(0, 4),
                                                  rng.range(-3, 0), 8, 3);
            const LaurentSeries b = random_series(rng, ring, "w", rng.range(0, 4),
                                                  rng.range(-3, 0), 8, 3);
            const int out_order =
                std::min(a.order() + b.valuation(), b.order() + a.valuation());
            CHECK(kernels::convolve_serial(a, b, out_order) ==
                  kernels::convolve_parallel(a, b, out_order));
        }
    }
}

TEST_CASE("kernels handle empty and monomial operands")
{
    const RingPtr ring = RingDescriptor::mu_rational(4);
    const LaurentSeries zero = LaurentSeries::zero(ring, "w", 0, 6);
    const LaurentSeries w = LaurentSeries::variable_power(ring, "w", 1, 6);
    CHECK(kernels::convolve_parallel(zero, w, 6).empty());
    CHECK(kernels::convolve_serial(zero, w, 6).empty());
    CHECK(kernels::convolve_parallel(w, w, 7) == kernels::convolve_serial(w, w, 7));
}

TEST_CASE("large products take the parallel path and stay exact")
{
    const RingPtr ring = RingDescriptor::mu_rational(1);
    RandomSource rng(11);
    const LaurentSeries a = dense_series(ring, "w", 130, rng);
    const LaurentSeries b = dense_series(ring, "w", 130, rng);
    REQUIRE(kernels::convolution_cost(a, b) >= kernels::parallel_threshold);
    const LaurentSeries via_dispatch = ser_mul(a, b); // dispatches parallel
    const auto reference = kernels::convolve_serial(a, b, via_dispatch.order());
    CHECK(via_dispatch.support() == reference);
}
