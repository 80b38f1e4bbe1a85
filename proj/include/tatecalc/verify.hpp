#ifndef TATECALC_VERIFY_HPP
#define TATECALC_VERIFY_HPP

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include <json.hpp>

#include "tatecalc/series.hpp"
#include "tatecalc/tate.hpp"

namespace tatecalc {

/// Deterministic random stream. Values are drawn from the raw engine with
/// explicit reduction, so a (suite, order, seed) triple reproduces the
/// same inputs on every platform and thread count.
class RandomSource {
public:
    explicit RandomSource(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next() { return engine_(); }
    // Inclusive bounds.
    int range(int lo, int hi);
    bool one_in(int n) { return range(1, n) == 1; }

    // Stream for one trial of a fanned-out loop: independent of how trials
    // are scheduled across threads.
    static RandomSource for_trial(std::uint64_t seed, int trial);

private:
    std::mt19937_64 engine_;
};

// All monomials of the exact degree over the ring's generators.
std::vector<Monomial> monomials_of_degree(const RingPtr& ring, int degree);

// Random homogeneous polynomial with at most max_support monomials; zero
// when the graded piece is empty (or on a sampled miss).
GradedPolynomial random_poly(RandomSource& rng, const RingPtr& ring, int degree,
                             int max_support);

// Random homogeneous Laurent series with support in [min_exp, order].
LaurentSeries random_series(RandomSource& rng, const RingPtr& ring,
                            const std::string& variable, int degree, int min_exp,
                            int order, int max_support);

// Random valuation-1 series with unit leading coefficient and degree -1.
PowerSeries random_unit_series(RandomSource& rng, const RingPtr& ring,
                               const std::string& variable, int order,
                               int max_support);

// Lagrange-inversion route to the compositional inverse: n g_n = res(f^{-n}).
// Characteristic 0 only; cross-checks the coefficient recursion.
PowerSeries reverse_by_residues(const PowerSeries& f,
                                const std::string& result_variable);

struct CheckRecord {
    std::string name;
    bool pass = false;
    std::string witness; // offending trial / exponent when failing
};

/// Outcome of one verification suite. Deterministic given (suite, order,
/// seed); the wall-clock duration is reported in text output only so JSON
/// output stays byte-identical across runs.
struct VerificationReport {
    std::string suite;
    std::string ring_name;
    int order = 0;
    int trials = 0;
    std::uint64_t seed = 0;
    std::vector<CheckRecord> checks;
    double duration_ms = 0.0;

    bool all_pass() const;
};

struct VerifyOptions {
    int order = 8;
    int trials = 100;
    std::uint64_t seed = 1;
    int max_support = 3;
};

std::vector<std::string> suite_names();
bool suite_requires_char0(const std::string& suite);

VerificationReport run_suite(const std::string& suite, const RingPtr& ring,
                             const VerifyOptions& options);

nlohmann::json report_to_json(const VerificationReport& report);
std::string report_to_text(const VerificationReport& report);

} // namespace tatecalc

#endif
