#include "tatecalc/verify.hpp"

#include <algorithm>
#include <chrono>
#include <exception>
#include <functional>
#include <set>
#include <sstream>
#include <utility>

#include "tatecalc/io.hpp"

namespace tatecalc {

namespace {

std::uint64_t splitmix64(std::uint64_t x)
{
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

std::uint64_t fnv1a(const std::string& s)
{
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : s) {
        h = (h ^ c) * 0x100000001b3ULL;
    }
    return h;
}

} // namespace

int RandomSource::range(int lo, int hi)
{
    const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
    return lo + static_cast<int>(next() % span);
}

RandomSource RandomSource::for_trial(std::uint64_t seed, int trial)
{
    return RandomSource(splitmix64(seed + 0x9e3779b97f4a7c15ULL *
                                              (static_cast<std::uint64_t>(trial) + 1)));
}

std::vector<Monomial> monomials_of_degree(const RingPtr& ring, int degree)
{
    std::vector<Monomial> out;
    if (degree < 0) {
        return out;
    }
    // Depth-first over generator indices with a degree budget.
    std::function<void(int, int, Monomial)> walk = [&](int index, int budget,
                                                       Monomial acc) {
        if (budget == 0) {
            out.push_back(std::move(acc));
            return;
        }
        if (index >= ring->generator_count()) {
            return;
        }
        const int g = ring->generator(index).degree;
        for (int e = 0; e * g <= budget; ++e) {
            Monomial next = e == 0 ? acc : acc.times(Monomial::generator(index, e));
            walk(index + 1, budget - e * g, std::move(next));
        }
    };
    walk(0, degree, Monomial::unit());
    return out;
}

GradedPolynomial random_poly(RandomSource& rng, const RingPtr& ring, int degree,
                             int max_support)
{
    const auto monomials = monomials_of_degree(ring, degree);
    if (monomials.empty()) {
        return GradedPolynomial::zero(ring, degree);
    }
    const int want = rng.range(1, std::max(1, max_support));
    std::map<Monomial, Scalar> terms;
    for (int i = 0; i < want; ++i) {
        const auto& m = monomials[static_cast<std::size_t>(
            rng.range(0, static_cast<int>(monomials.size()) - 1))];
        Scalar c = Scalar::one(ring->characteristic());
        if (ring->characteristic() == 0) {
            int num = rng.range(-9, 9);
            if (num == 0) {
                num = 1;
            }
            c = Scalar(Rational(num, rng.range(1, 4)));
        }
        terms.insert_or_assign(m, c);
    }
    return GradedPolynomial::from_terms(ring, degree, std::move(terms));
}

LaurentSeries random_series(RandomSource& rng, const RingPtr& ring,
                            const std::string& variable, int degree, int min_exp,
                            int order, int max_support)
{
    std::map<int, GradedPolynomial> coeffs;
    for (int n = min_exp; n <= order; ++n) {
        if (degree + n < 0 || rng.one_in(3)) {
            continue;
        }
        GradedPolynomial c = random_poly(rng, ring, degree + n, max_support);
        if (!c.is_zero()) {
            coeffs.emplace(n, std::move(c));
        }
    }
    return LaurentSeries(ring, variable, degree, order, std::move(coeffs));
}

PowerSeries random_unit_series(RandomSource& rng, const RingPtr& ring,
                               const std::string& variable, int order,
                               int max_support)
{
    std::map<int, GradedPolynomial> coeffs;
    Scalar lead = Scalar::one(ring->characteristic());
    if (ring->characteristic() == 0 && rng.one_in(2)) {
        lead = -lead;
    }
    coeffs.emplace(1, GradedPolynomial::constant(ring, lead));
    for (int n = 2; n <= order; ++n) {
        if (rng.one_in(4)) {
            continue;
        }
        GradedPolynomial c = random_poly(rng, ring, n - 1, max_support);
        if (!c.is_zero()) {
            coeffs.emplace(n, std::move(c));
        }
    }
    return PowerSeries(LaurentSeries(ring, variable, -1, order, std::move(coeffs)));
}

PowerSeries reverse_by_residues(const PowerSeries& f,
                                const std::string& result_variable)
{
    const LaurentSeries& fs = f.series();
    if (fs.ring()->characteristic() != 0) {
        throw mismatch_error("the residue route to reversion divides by n");
    }
    if (fs.is_zero() || fs.valuation() != 1 || !fs.coeff(1).is_unit_scalar()) {
        throw error("reversion requires valuation exactly 1 with a unit lead");
    }
    const RingPtr& ring = fs.ring();
    const int n_max = fs.order();
    const LaurentSeries inv = ser_invert(fs);
    LaurentSeries pow = inv;
    std::map<int, GradedPolynomial> coeffs;
    for (int n = 1; n <= n_max; ++n) {
        GradedPolynomial gn = ser_residue(pow).scaled(Scalar(Rational(1, n)));
        if (!gn.is_zero()) {
            coeffs.emplace(n, std::move(gn));
        }
        if (n < n_max) {
            pow = ser_mul(pow, inv);
        }
    }
    return PowerSeries(
        LaurentSeries(ring, result_variable, -1, n_max, std::move(coeffs)));
}

bool VerificationReport::all_pass() const
{
    return std::all_of(checks.begin(), checks.end(),
                       [](const CheckRecord& c) { return c.pass; });
}

namespace {

bool grading_ok(const LaurentSeries& s)
{
    for (const auto& [n, c] : s.support()) {
        if (c.is_zero() || c.degree() != s.degree() + n) {
            return false;
        }
    }
    return true;
}

using TrialFn = std::function<std::optional<std::string>(RandomSource&)>;

// Fans the trials out across threads; the verdict is merged in trial order
// so the reported witness does not depend on scheduling.
CheckRecord run_trials(const std::string& name, int trials, std::uint64_t seed,
                       const TrialFn& trial)
{
    const std::uint64_t salted = seed ^ fnv1a(name);
    std::vector<std::optional<std::string>> failures(
        static_cast<std::size_t>(trials));
#pragma omp parallel for schedule(dynamic)
    for (int t = 0; t < trials; ++t) {
        RandomSource rng = RandomSource::for_trial(salted, t);
        try {
            failures[static_cast<std::size_t>(t)] = trial(rng);
        } catch (const std::exception& e) {
            failures[static_cast<std::size_t>(t)] =
                std::string("exception: ") + e.what();
        }
    }
    for (int t = 0; t < trials; ++t) {
        if (failures[static_cast<std::size_t>(t)]) {
            return {name, false,
                    "trial " + std::to_string(t) + ": " +
                        *failures[static_cast<std::size_t>(t)]};
        }
    }
    return {name, true, ""};
}

CheckRecord run_once(const std::string& name, const std::function<bool()>& check,
                     const std::string& witness_on_fail = "")
{
    try {
        const bool ok = check();
        return {name, ok, ok ? "" : witness_on_fail};
    } catch (const std::exception& e) {
        return {name, false, std::string("exception: ") + e.what()};
    }
}

std::string series_witness(const char* label, const LaurentSeries& s)
{
    return std::string(label) + " = " + series_text(s);
}

std::vector<CheckRecord> proposition_suite(const RingPtr& ring,
                                           const VerifyOptions& opt)
{
    std::vector<CheckRecord> checks;
    const TateModel model = TateModel::with_fgl(ring, "c", opt.order);
    for (int k = 0; k <= opt.order; ++k) {
        checks.push_back(run_once(
            "proposition-k" + std::to_string(k),
            [&] {
                const LaurentSeries c_pow = LaurentSeries::variable_power(
                    ring, "c", -k - 1, order_exact);
                return residue_functional(model, c_pow) == designated_class(ring, k);
            },
            "res exp^{-" + std::to_string(k + 1) + "} != p_" + std::to_string(k)));
    }
    return checks;
}

std::vector<CheckRecord> lagrange_suite(const RingPtr& ring,
                                        const VerifyOptions& opt)
{
    std::vector<CheckRecord> checks;
    checks.push_back(run_trials(
        "lagrange-generating", opt.trials, opt.seed, [&](RandomSource& rng) {
            const PowerSeries f =
                random_unit_series(rng, ring, "z", opt.order, opt.max_support);
            const PowerSeries g = ser_reverse(f, "u");
            const LaurentSeries gprime = ser_derivative(g);
            const LaurentSeries inv = ser_invert(f);
            LaurentSeries pow = inv;
            std::map<int, GradedPolynomial> sum;
            for (int k = 0; k + 1 <= opt.order; ++k) {
                GradedPolynomial rk = ser_residue(pow);
                if (!rk.is_zero()) {
                    sum.emplace(k, std::move(rk));
                }
                pow = ser_mul(pow, inv);
            }
            const LaurentSeries generating(ring, "u", 0, opt.order - 1,
                                           std::move(sum));
            if (!series_agree(generating, gprime)) {
                return std::optional<std::string>(
                    series_witness("f", f.series()));
            }
            return std::optional<std::string>();
        }));
    checks.push_back(run_trials(
        "lagrange-reversion-agreement", opt.trials, opt.seed,
        [&](RandomSource& rng) {
            const PowerSeries f =
                random_unit_series(rng, ring, "z", opt.order, opt.max_support);
            const PowerSeries g = ser_reverse(f, "u");
            const PowerSeries g2 = reverse_by_residues(f, "u");
            if (!series_agree(g, g2) ||
                common_order(g, g2) < opt.order) {
                return std::optional<std::string>(
                    series_witness("f", f.series()));
            }
            return std::optional<std::string>();
        }));
    checks.push_back(run_trials(
        "residue-of-derivative", opt.trials, opt.seed, [&](RandomSource& rng) {
            const int degree = rng.range(0, 4);
            const LaurentSeries a =
                random_series(rng, ring, "z", degree, rng.range(-3, 0), opt.order,
                              opt.max_support);
            if (!ser_residue(ser_derivative(a)).is_zero()) {
                return std::optional<std::string>(series_witness("a", a));
            }
            return std::optional<std::string>();
        }));
    checks.push_back(run_trials(
        "residue-change-of-variables", opt.trials, opt.seed,
        [&](RandomSource& rng) {
            const PowerSeries f =
                random_unit_series(rng, ring, "z", opt.order, opt.max_support);
            const int degree = rng.range(0, 4);
            const LaurentSeries L =
                random_series(rng, ring, "c", degree, rng.range(-3, 0), opt.order,
                              opt.max_support);
            const LaurentSeries pulled =
                ser_mul(ser_compose(L, f), ser_derivative(f));
            if (!(ser_residue(pulled) == ser_residue(L))) {
                return std::optional<std::string>(series_witness("L", L));
            }
            return std::optional<std::string>();
        }));
    return checks;
}

std::vector<CheckRecord> boardman_suite(const RingPtr& ring,
                                        const VerifyOptions& opt)
{
    const std::string var = ring->characteristic() == 2 ? "w" : "c";
    const TateModel model(ring, var, opt.order);
    std::vector<CheckRecord> checks;

    auto random_input = [&](RandomSource& rng, int degree) {
        return random_series(rng, ring, var, degree, rng.range(-3, 0), opt.order,
                             opt.max_support);
    };

    checks.push_back(run_trials(
        "boardman-idempotent", opt.trials, opt.seed, [&](RandomSource& rng) {
            const LaurentSeries L = random_input(rng, rng.range(0, 4));
            const PowerSeries B = boardman_transform(model, L);
            const PowerSeries BB = boardman_transform(model, B);
            if (!series_agree(B, BB)) {
                return std::optional<std::string>(series_witness("L", L));
            }
            return std::optional<std::string>();
        }));
    checks.push_back(run_trials(
        "boardman-degree-preserving", opt.trials, opt.seed,
        [&](RandomSource& rng) {
            const int degree = rng.range(0, 4);
            const LaurentSeries L = random_input(rng, degree);
            if (boardman_transform(model, L).series().degree() != degree) {
                return std::optional<std::string>(series_witness("L", L));
            }
            return std::optional<std::string>();
        }));
    checks.push_back(run_trials(
        "boardman-factorization", opt.trials, opt.seed, [&](RandomSource& rng) {
            const LaurentSeries L = random_input(rng, rng.range(0, 4));
            const PowerSeries B = boardman_transform(model, L);
            const LaurentSeries split_route = ser_mul(
                model.pi_inverse(),
                holomorphic_part(ser_mul(L, model.pi())));
            if (!series_agree(B, split_route) ||
                common_order(B, split_route) < B.series().order()) {
                return std::optional<std::string>(series_witness("L", L));
            }
            return std::optional<std::string>();
        }));
    checks.push_back(run_trials(
        "boardman-holomorphic-fixpoint", opt.trials, opt.seed,
        [&](RandomSource& rng) {
            const PowerSeries S =
                holomorphic_part(random_input(rng, rng.range(0, 4)));
            const PowerSeries B = boardman_transform(model, S);
            if (!series_agree(B, S)) {
                return std::optional<std::string>(series_witness("S", S));
            }
            return std::optional<std::string>();
        }));
    checks.push_back(run_trials(
        "boardman-holomorphy-iff-fixed", opt.trials, opt.seed,
        [&](RandomSource& rng) {
            const LaurentSeries L = random_input(rng, rng.range(0, 4));
            const PowerSeries B = boardman_transform(model, L);
            const bool fixed = series_agree(B, L);
            if (fixed != is_holomorphic(model, L).holomorphic) {
                return std::optional<std::string>(series_witness("L", L));
            }
            return std::optional<std::string>();
        }));
    checks.push_back(run_trials(
        "boardman-moment-roundtrip", opt.trials, opt.seed,
        [&](RandomSource& rng) {
            const LaurentSeries L = random_input(rng, rng.range(0, 4));
            const PowerSeries B = boardman_transform(model, L);
            const PowerSeries R =
                reconstruct_from_moments(model, moments_of(model, L));
            if (!series_agree(B, R) ||
                common_order(B, R) != B.series().order()) {
                return std::optional<std::string>(series_witness("L", L));
            }
            return std::optional<std::string>();
        }));
    checks.push_back(run_trials(
        "boardman-linearity", opt.trials, opt.seed, [&](RandomSource& rng) {
            const int degree = rng.range(0, 3);
            const LaurentSeries L = random_input(rng, degree);
            const GradedPolynomial r =
                random_poly(rng, ring, rng.range(0, 3), opt.max_support);
            const LaurentSeries L2 = random_input(rng, degree + r.degree());
            const PowerSeries lhs =
                boardman_transform(model, ser_add(ser_scale(L, r), L2));
            const LaurentSeries rhs =
                ser_add(ser_scale(boardman_transform(model, L), r),
                        boardman_transform(model, L2));
            if (!series_agree(lhs, rhs)) {
                return std::optional<std::string>(series_witness("L", L));
            }
            return std::optional<std::string>();
        }));
    return checks;
}

std::vector<CheckRecord> exactness_suite(const RingPtr& ring,
                                         const VerifyOptions& opt)
{
    const std::string var = ring->characteristic() == 2 ? "w" : "c";
    std::vector<CheckRecord> checks;
    checks.push_back(run_trials(
        "split-sum-identity", opt.trials, opt.seed, [&](RandomSource& rng) {
            const LaurentSeries L =
                random_series(rng, ring, var, rng.range(0, 4), rng.range(-3, 0),
                              opt.order, opt.max_support);
            const LaurentSeries sum =
                ser_add(holomorphic_part(L), principal_part(L));
            if (!series_agree(sum, L) || common_order(sum, L) != L.order()) {
                return std::optional<std::string>(series_witness("L", L));
            }
            return std::optional<std::string>();
        }));
    checks.push_back(run_trials(
        "split-hol-idempotent", opt.trials, opt.seed, [&](RandomSource& rng) {
            const LaurentSeries L =
                random_series(rng, ring, var, rng.range(0, 4), rng.range(-3, 0),
                              opt.order, opt.max_support);
            const PowerSeries H = holomorphic_part(L);
            if (!series_agree(holomorphic_part(H), H)) {
                return std::optional<std::string>(series_witness("L", L));
            }
            return std::optional<std::string>();
        }));
    checks.push_back(run_trials(
        "split-principal-kills-holomorphic", opt.trials, opt.seed,
        [&](RandomSource& rng) {
            const LaurentSeries L =
                random_series(rng, ring, var, rng.range(0, 4), rng.range(-3, 0),
                              opt.order, opt.max_support);
            // Inclusion of the power-series part followed by the quotient.
            if (!principal_part(holomorphic_part(L)).series().is_zero()) {
                return std::optional<std::string>(series_witness("L", L));
            }
            return std::optional<std::string>();
        }));
    return checks;
}

std::vector<CheckRecord> grading_suite(const RingPtr& ring,
                                       const VerifyOptions& opt)
{
    const std::string var = ring->characteristic() == 2 ? "w" : "c";
    std::vector<CheckRecord> checks;
    const std::uint64_t before = grading_violations().load();
    checks.push_back(run_trials(
        "grading-closure", opt.trials, opt.seed, [&](RandomSource& rng) {
            const int degree = rng.range(0, 4);
            const LaurentSeries a =
                random_series(rng, ring, var, degree, rng.range(-3, 0), opt.order,
                              opt.max_support);
            const LaurentSeries b =
                random_series(rng, ring, var, degree, rng.range(-3, 0), opt.order,
                              opt.max_support);
            const PowerSeries f =
                random_unit_series(rng, ring, "z", opt.order, opt.max_support);
            const LaurentSeries outputs[] = {
                ser_add(a, b),           ser_mul(a, b),
                ser_derivative(a),       a.shifted(rng.range(-2, 2)),
                ser_compose(a, f),       ser_invert(f),
                holomorphic_part(a),     principal_part(b),
            };
            for (const LaurentSeries& s : outputs) {
                if (!grading_ok(s)) {
                    return std::optional<std::string>(series_witness("bad", s));
                }
            }
            return std::optional<std::string>();
        }));
    checks.push_back(run_once(
        "grading-violation-counter",
        [&] { return grading_violations().load() == before; },
        "grading violations were recorded during the suite"));
    return checks;
}

std::vector<CheckRecord> fgl_suite(const RingPtr& ring, const VerifyOptions& opt)
{
    std::vector<CheckRecord> checks;
    const FGLContext ctx(ring, opt.order);

    checks.push_back(run_once("fgl-mutual-inversion", [&] {
        for (int n = 0; n <= std::min(opt.order, 12); ++n) {
            const FGLContext c(ring, n);
            const LaurentSeries log_of_exp = ser_compose(c.log(), c.exp());
            const LaurentSeries exp_of_log = ser_compose(c.exp(), c.log());
            const LaurentSeries id_z =
                LaurentSeries::variable_power(ring, "z", 1, n + 1);
            const LaurentSeries id_u =
                LaurentSeries::variable_power(ring, "u", 1, n + 1);
            if (!series_agree(log_of_exp, id_z) || !series_agree(exp_of_log, id_u)) {
                return false;
            }
        }
        return true;
    }));
    checks.push_back(run_once("fgl-log-derivative", [&] {
        return series_agree(ser_derivative(ctx.log()), ctx.log_prime()) &&
               common_order(ser_derivative(ctx.log()), ctx.log_prime()) ==
                   opt.order;
    }));

    const MultiSeries F = group_law(ctx);
    const std::vector<std::string> vars{"x", "y"};
    checks.push_back(run_once("fgl-unit", [&] {
        const MultiSeries x = MultiSeries::variable(ring, vars, 0, opt.order);
        const MultiSeries y = MultiSeries::variable(ring, vars, 1, opt.order);
        return ms_equal(F.at_zero(1), x) && ms_equal(F.at_zero(0), y);
    }));
    checks.push_back(run_once("fgl-commutative",
                              [&] { return ms_equal(F, F.with_swapped(0, 1)); }));
    checks.push_back(run_once("fgl-associative", [&] {
        const int assoc_order = std::min(opt.order, 6);
        const FGLContext c6(ring, assoc_order);
        const MultiSeries F6 = group_law(c6);
        const std::vector<std::string> vars3{"x", "y", "t"};
        const MultiSeries X = MultiSeries::variable(ring, vars3, 0, assoc_order);
        const MultiSeries Y = MultiSeries::variable(ring, vars3, 1, assoc_order);
        const MultiSeries T = MultiSeries::variable(ring, vars3, 2, assoc_order);
        const MultiSeries lhs = ms_eval_bivariate(F6, X, ms_eval_bivariate(F6, Y, T));
        const MultiSeries rhs = ms_eval_bivariate(F6, ms_eval_bivariate(F6, X, Y), T);
        return ms_equal(lhs, rhs);
    }));
    return checks;
}

} // namespace

std::vector<std::string> suite_names()
{
    return {"proposition", "lagrange", "boardman", "exactness",
            "grading",     "fgl",      "all"};
}

bool suite_requires_char0(const std::string& suite)
{
    return suite == "proposition" || suite == "lagrange" || suite == "fgl";
}

VerificationReport run_suite(const std::string& suite, const RingPtr& ring,
                             const VerifyOptions& options)
{
    const auto names = suite_names();
    if (std::find(names.begin(), names.end(), suite) == names.end()) {
        throw error("unknown suite '" + suite + "'");
    }
    if (suite_requires_char0(suite) && ring->characteristic() != 0) {
        throw mismatch_error("suite '" + suite +
                             "' requires a characteristic-0 ring");
    }

    const auto start = std::chrono::steady_clock::now();
    VerificationReport report;
    report.suite = suite;
    report.ring_name = ring->name();
    report.order = options.order;
    report.trials = options.trials;
    report.seed = options.seed;

    auto append = [&](std::vector<CheckRecord> more) {
        for (auto& c : more) {
            report.checks.push_back(std::move(c));
        }
    };
    const bool char0 = ring->characteristic() == 0;
    if (suite == "proposition" || (suite == "all" && char0)) {
        append(proposition_suite(ring, options));
    }
    if (suite == "lagrange" || (suite == "all" && char0)) {
        append(lagrange_suite(ring, options));
    }
    if (suite == "boardman" || suite == "all") {
        append(boardman_suite(ring, options));
    }
    if (suite == "exactness" || suite == "all") {
        append(exactness_suite(ring, options));
    }
    if (suite == "grading" || suite == "all") {
        append(grading_suite(ring, options));
    }
    if (suite == "fgl" || (suite == "all" && char0)) {
        append(fgl_suite(ring, options));
    }

    const auto stop = std::chrono::steady_clock::now();
    report.duration_ms =
        std::chrono::duration<double, std::milli>(stop - start).count();
    return report;
}

nlohmann::json report_to_json(const VerificationReport& report)
{
    nlohmann::json checks = nlohmann::json::array();
    for (const auto& c : report.checks) {
        nlohmann::json entry{{"name", c.name}, {"status", c.pass ? "pass" : "fail"}};
        if (!c.pass) {
            entry["witness"] = c.witness;
        }
        checks.push_back(std::move(entry));
    }
    return nlohmann::json{{"suite", report.suite},
                          {"ring", report.ring_name},
                          {"order", report.order},
                          {"trials", report.trials},
                          {"seed", report.seed},
                          {"status", report.all_pass() ? "pass" : "fail"},
                          {"checks", std::move(checks)}};
}

std::string report_to_text(const VerificationReport& report)
{
    std::ostringstream out;
    out << "suite " << report.suite << "  ring " << report.ring_name << "  order "
        << report.order << "  trials " << report.trials << "  seed " << report.seed
        << "\n";
    int passed = 0;
    for (const auto& c : report.checks) {
        out << (c.pass ? "  PASS " : "  FAIL ") << c.name;
        if (!c.pass && !c.witness.empty()) {
            out << "  (" << c.witness << ")";
        }
        out << "\n";
        passed += c.pass ? 1 : 0;
    }
    out << (report.all_pass() ? "result: PASS" : "result: FAIL") << " (" << passed
        << "/" << report.checks.size() << " checks, " << report.duration_ms
        << " ms)\n";
    return out.str();
}

} // namespace tatecalc
