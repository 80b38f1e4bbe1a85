#include <functional>
// Compares the serial reference convolution against the OpenMP kernel on
// dense integer-coefficient series, and times the Boardman transform at a
// large order. Exact arithmetic means both kernels must agree bit for bit;
// the benchmark checks that while it times them.

#include <chrono>
#include <cstdio>
#include <string>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "tatecalc/kernels.hpp"
#include "tatecalc/tate.hpp"
#include "tatecalc/verify.hpp"

using namespace tatecalc;

namespace {

double seconds_of(const std::function<void()>& body, int repeats)
{
    double best = 1e100;
    for (int i = 0; i < repeats; ++i) {
        const auto start = std::chrono::steady_clock::now();
        body();
        const double s =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
                .count();
        best = std::min(best, s);
    }
    return best;
}

LaurentSeries dense_rational(const RingPtr& ring, int order, RandomSource& rng)
{
    const int m1 = ring->find_generator("m1");
    std::map<int, GradedPolynomial> coeffs;
    for (int n = 0; n <= order; ++n) {
        const long value = rng.range(1, 9);
        GradedPolynomial c =
            n == 0 ? GradedPolynomial::constant(ring, Scalar(Rational(value)))
                   : GradedPolynomial::monomial(ring, Monomial::generator(m1, n),
                                                Scalar(Rational(value)));
        coeffs.emplace(n, std::move(c));
    }
    return LaurentSeries(ring, "w", 0, order, std::move(coeffs));
}

LaurentSeries dense_mod2(const RingPtr& ring, int order, RandomSource& rng)
{
    const int x2 = ring->find_generator("x2");
    std::map<int, GradedPolynomial> coeffs;
    for (int n = 0; n <= order; n += 2) {
        if (rng.one_in(5)) {
            continue;
        }
        GradedPolynomial c =
            n == 0 ? GradedPolynomial::one(ring)
                   : GradedPolynomial::monomial(ring, Monomial::generator(x2, n / 2),
                                                Scalar::one(2));
        coeffs.emplace(n, std::move(c));
    }
    return LaurentSeries(ring, "w", 0, order, std::move(coeffs));
}

void bench_mul(const char* label, const LaurentSeries& a, const LaurentSeries& b)
{
    const int out = std::min(a.order() + b.valuation(), b.order() + a.valuation());
    std::map<int, GradedPolynomial> serial;
    std::map<int, GradedPolynomial> parallel;
    const double ts =
        seconds_of([&] { serial = kernels::convolve_serial(a, b, out); }, 3);
    const double tp =
        seconds_of([&] { parallel = kernels::convolve_parallel(a, b, out); }, 3);
    const bool equal = serial == parallel;
    std::printf("%-28s %8.2f ms %8.2f ms %6.2fx  %s\n", label, ts * 1e3, tp * 1e3,
                ts / tp, equal ? "exact-match" : "MISMATCH");
}

} // namespace

int main()
{
#ifdef _OPENMP
    std::printf("OpenMP threads: %d\n", omp_get_max_threads());
#else
    std::printf("OpenMP not enabled; both columns run serially\n");
#endif
    std::printf("%-28s %11s %11s %7s\n", "kernel", "serial", "parallel",
                "speedup");

    RandomSource rng(2024);
    for (int order : {128, 256, 512}) {
        const RingPtr mu = RingDescriptor::mu_rational(1);
        const LaurentSeries a = dense_rational(mu, order, rng);
        const LaurentSeries b = dense_rational(mu, order, rng);
        const std::string label = "mu-rational mul n=" + std::to_string(order);
        bench_mul(label.c_str(), a, b);
    }
    for (int order : {256, 512, 1024}) {
        const RingPtr nr = RingDescriptor::n_mod2(2);
        const LaurentSeries a = dense_mod2(nr, order, rng);
        const LaurentSeries b = dense_mod2(nr, order, rng);
        const std::string label = "n-mod2 mul n=" + std::to_string(order);
        bench_mul(label.c_str(), a, b);
    }

    // Moment extraction fans out across k; time the full transform.
    {
        const int order = 64;
        const RingPtr nr = RingDescriptor::n_mod2(order);
        const TateModel model(nr, "w", order);
        RandomSource trng(77);
        const LaurentSeries L = random_series(trng, nr, "w", 6, -2, order, 3);
        PowerSeries out = boardman_transform(model, L);
        const double t =
            seconds_of([&] { out = boardman_transform(model, L); }, 3);
        std::printf("%-28s %8.2f ms (order %d, depth %d)\n", "boardman transform",
                    t * 1e3, order, std::max(0, -L.valuation()));
    }
    return 0;
}
