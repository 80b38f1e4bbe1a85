#include "tatecalc/fgl.hpp"

#include <algorithm>
#include <numeric>
#include <utility>

namespace tatecalc {

PowerSeries class_generating_series(const RingPtr& ring,
                                    const std::string& variable, int order)
{
    if (ring->max_class_index() < order) {
        throw table_error("class table covers 0.." +
                          std::to_string(ring->max_class_index()) +
                          ", series requested to order " + std::to_string(order));
    }
    std::map<int, GradedPolynomial> coeffs;
    for (int k = 0; k <= order; ++k) {
        GradedPolynomial pk = designated_class(ring, k);
        if (!pk.is_zero()) {
            coeffs.emplace(k, std::move(pk));
        }
    }
    return PowerSeries(LaurentSeries(ring, variable, 0, order, std::move(coeffs)));
}

MultiSeries::MultiSeries(RingPtr ring, std::vector<std::string> variables,
                         int degree, int order,
                         std::map<std::vector<int>, GradedPolynomial> coefficients)
    : ring_(std::move(ring)),
      vars_(std::move(variables)),
      degree_(degree),
      order_(order)
{
    if (!ring_ || vars_.empty()) {
        throw error("multivariate series needs a ring and variables");
    }
    for (auto it = coefficients.begin(); it != coefficients.end();) {
        const auto& [e, c] = *it;
        if (c.is_zero()) {
            it = coefficients.erase(it);
            continue;
        }
        if (e.size() != vars_.size()) {
            throw error("exponent vector length mismatch");
        }
        int total = 0;
        for (int x : e) {
            if (x < 0) {
                throw error("negative exponent in a multivariate power series");
            }
            total += x;
        }
        if (total > order_) {
            throw precision_error("multivariate coefficient past the truncation order");
        }
        require_compatible(ring_, c.ring());
        if (c.degree() != degree_ + total) {
            throw_grading("multivariate coefficient of degree " +
                          std::to_string(c.degree()) + " at total exponent " +
                          std::to_string(total) + " in a series of degree " +
                          std::to_string(degree_));
        }
        ++it;
    }
    coefficients_ = std::move(coefficients);
}

MultiSeries MultiSeries::zero(RingPtr ring, std::vector<std::string> variables,
                              int degree, int order)
{
    return MultiSeries(std::move(ring), std::move(variables), degree, order, {});
}

MultiSeries MultiSeries::constant(RingPtr ring, std::vector<std::string> variables,
                                  GradedPolynomial value, int order)
{
    const int degree = value.degree();
    std::map<std::vector<int>, GradedPolynomial> coeffs;
    if (!value.is_zero()) {
        coeffs.emplace(std::vector<int>(variables.size(), 0), std::move(value));
    }
    return MultiSeries(std::move(ring), std::move(variables), degree, order,
                       std::move(coeffs));
}

MultiSeries MultiSeries::variable(RingPtr ring, std::vector<std::string> variables,
                                  int which, int order)
{
    std::vector<int> e(variables.size(), 0);
    e.at(static_cast<std::size_t>(which)) = 1;
    std::map<std::vector<int>, GradedPolynomial> coeffs;
    coeffs.emplace(std::move(e), GradedPolynomial::one(ring));
    return MultiSeries(std::move(ring), std::move(variables), -1, order,
                       std::move(coeffs));
}

MultiSeries MultiSeries::from_univariate(const LaurentSeries& f,
                                         std::vector<std::string> variables,
                                         int which, int order)
{
    if (!f.is_zero() && f.valuation() < 0) {
        throw error("only power series embed into the multivariate truncation");
    }
    std::map<std::vector<int>, GradedPolynomial> coeffs;
    for (const auto& [n, c] : f.support()) {
        if (n > order) {
            break;
        }
        std::vector<int> e(variables.size(), 0);
        e.at(static_cast<std::size_t>(which)) = n;
        coeffs.emplace(std::move(e), c);
    }
    const int out_order = std::min(order, f.order());
    return MultiSeries(f.ring(), std::move(variables), f.degree(), out_order,
                       std::move(coeffs));
}

GradedPolynomial MultiSeries::coeff(const std::vector<int>& exponents) const
{
    auto it = coefficients_.find(exponents);
    if (it != coefficients_.end()) {
        return it->second;
    }
    const int total = std::accumulate(exponents.begin(), exponents.end(), 0);
    if (total > order_) {
        throw precision_error("multivariate coefficient past the truncation order");
    }
    return GradedPolynomial::zero(ring_, degree_ + total);
}

bool MultiSeries::has_constant_term() const
{
    if (coefficients_.empty()) {
        return false;
    }
    const auto& first = coefficients_.begin()->first;
    return std::all_of(first.begin(), first.end(), [](int x) { return x == 0; });
}

MultiSeries MultiSeries::at_zero(int which) const
{
    std::map<std::vector<int>, GradedPolynomial> coeffs;
    for (const auto& [e, c] : coefficients_) {
        if (e.at(static_cast<std::size_t>(which)) == 0) {
            coeffs.emplace(e, c);
        }
    }
    return MultiSeries(ring_, vars_, degree_, order_, std::move(coeffs));
}

MultiSeries MultiSeries::with_swapped(int i, int j) const
{
    std::map<std::vector<int>, GradedPolynomial> coeffs;
    for (const auto& [e, c] : coefficients_) {
        std::vector<int> swapped = e;
        std::swap(swapped.at(static_cast<std::size_t>(i)),
                  swapped.at(static_cast<std::size_t>(j)));
        coeffs.emplace(std::move(swapped), c);
    }
    return MultiSeries(ring_, vars_, degree_, order_, std::move(coeffs));
}

namespace {

void require_same_frame(const MultiSeries& a, const MultiSeries& b)
{
    require_compatible(a.ring(), b.ring());
    if (a.variables() != b.variables()) {
        throw mismatch_error("multivariate series over different variable lists");
    }
}

} // namespace

MultiSeries ms_add(const MultiSeries& a, const MultiSeries& b)
{
    require_same_frame(a, b);
    if (a.degree() != b.degree() && !a.is_zero() && !b.is_zero()) {
        throw mismatch_error("adding multivariate series of different degrees");
    }
    const int degree = a.is_zero() && !b.is_zero() ? b.degree() : a.degree();
    const int order = std::min(a.order(), b.order());
    std::map<std::vector<int>, GradedPolynomial> coeffs;
    for (const auto& [e, c] : a.support()) {
        if (std::accumulate(e.begin(), e.end(), 0) <= order) {
            coeffs.emplace(e, c);
        }
    }
    for (const auto& [e, c] : b.support()) {
        if (std::accumulate(e.begin(), e.end(), 0) > order) {
            continue;
        }
        auto it = coeffs.find(e);
        if (it == coeffs.end()) {
            coeffs.emplace(e, c);
        } else {
            it->second = poly_add(it->second, c);
        }
    }
    return MultiSeries(richer_ring(a.ring(), b.ring()), a.variables(), degree, order,
                       std::move(coeffs));
}

MultiSeries ms_neg(const MultiSeries& a)
{
    std::map<std::vector<int>, GradedPolynomial> coeffs;
    for (const auto& [e, c] : a.support()) {
        coeffs.emplace(e, -c);
    }
    return MultiSeries(a.ring(), a.variables(), a.degree(), a.order(),
                       std::move(coeffs));
}

MultiSeries ms_mul(const MultiSeries& a, const MultiSeries& b)
{
    require_same_frame(a, b);
    const int order = std::min(a.order(), b.order());
    std::map<std::vector<int>, GradedPolynomial> coeffs;
    for (const auto& [ea, ca] : a.support()) {
        for (const auto& [eb, cb] : b.support()) {
            std::vector<int> e(ea.size());
            int total = 0;
            for (std::size_t i = 0; i < e.size(); ++i) {
                e[i] = ea[i] + eb[i];
                total += e[i];
            }
            if (total > order) {
                continue;
            }
            GradedPolynomial prod = poly_mul(ca, cb);
            if (prod.is_zero()) {
                continue;
            }
            auto it = coeffs.find(e);
            if (it == coeffs.end()) {
                coeffs.emplace(std::move(e), std::move(prod));
            } else {
                it->second = poly_add(it->second, prod);
            }
        }
    }
    return MultiSeries(richer_ring(a.ring(), b.ring()), a.variables(),
                       a.degree() + b.degree(), order, std::move(coeffs));
}

MultiSeries ms_scale(const MultiSeries& a, const GradedPolynomial& c)
{
    std::map<std::vector<int>, GradedPolynomial> coeffs;
    for (const auto& [e, p] : a.support()) {
        GradedPolynomial scaled = poly_mul(p, c);
        if (!scaled.is_zero()) {
            coeffs.emplace(e, std::move(scaled));
        }
    }
    return MultiSeries(richer_ring(a.ring(), c.ring()), a.variables(),
                       a.degree() + c.degree(), a.order(), std::move(coeffs));
}

bool ms_equal(const MultiSeries& a, const MultiSeries& b)
{
    if (!ring_compatible(a.ring(), b.ring()) || a.variables() != b.variables()) {
        return false;
    }
    if (!a.is_zero() && !b.is_zero() && a.degree() != b.degree()) {
        return false;
    }
    const int order = std::min(a.order(), b.order());
    auto within = [order](const std::vector<int>& e) {
        return std::accumulate(e.begin(), e.end(), 0) <= order;
    };
    for (const auto& [e, c] : a.support()) {
        if (within(e) && !(c == b.coeff(e))) {
            return false;
        }
    }
    for (const auto& [e, c] : b.support()) {
        if (within(e) && !(c == a.coeff(e))) {
            return false;
        }
    }
    return true;
}

MultiSeries ms_compose_univariate(const LaurentSeries& h, const MultiSeries& S)
{
    if (!h.is_zero() && h.valuation() < 0) {
        throw error("only power series compose into a multivariate argument");
    }
    if (S.has_constant_term()) {
        throw error("multivariate substitution requires a zero constant term");
    }
    const int order = std::min(S.order(), h.order());
    // Horner in S: r_k = h_k + S * r_{k+1} stays homogeneous of degree
    // deg(h) + k at every step.
    MultiSeries result =
        MultiSeries::constant(S.ring(), S.variables(), h.coeff(order), order);
    for (int k = order - 1; k >= 0; --k) {
        result = ms_add(ms_mul(S, result),
                        MultiSeries::constant(S.ring(), S.variables(), h.coeff(k), order));
    }
    return result;
}

MultiSeries ms_eval_bivariate(const MultiSeries& F, const MultiSeries& A,
                              const MultiSeries& B)
{
    require_same_frame(A, B);
    if (F.variables().size() != 2) {
        throw mismatch_error("expected a two-variable series to evaluate");
    }
    if (A.has_constant_term() || B.has_constant_term()) {
        throw error("multivariate substitution requires zero constant terms");
    }
    const int order = std::min({F.order(), A.order(), B.order()});

    auto powers = [&](const MultiSeries& base, int up_to) {
        std::vector<MultiSeries> p;
        p.push_back(MultiSeries::constant(base.ring(), base.variables(),
                                          GradedPolynomial::one(base.ring()), order));
        for (int i = 1; i <= up_to; ++i) {
            p.push_back(ms_mul(p.back(), base));
        }
        return p;
    };
    int max_a = 0;
    int max_b = 0;
    for (const auto& [e, c] : F.support()) {
        if (e[0] + e[1] <= order) {
            max_a = std::max(max_a, e[0]);
            max_b = std::max(max_b, e[1]);
        }
    }
    const auto pa = powers(A, max_a);
    const auto pb = powers(B, max_b);

    MultiSeries result =
        MultiSeries::zero(A.ring(), A.variables(), F.degree(), order);
    for (const auto& [e, c] : F.support()) {
        if (e[0] + e[1] > order) {
            continue;
        }
        const MultiSeries term =
            ms_scale(ms_mul(pa[static_cast<std::size_t>(e[0])],
                            pb[static_cast<std::size_t>(e[1])]),
                     c);
        result = ms_add(result, term);
    }
    return result;
}

namespace {

RingPtr require_char0(RingPtr ring)
{
    if (!ring || ring->characteristic() != 0) {
        throw mismatch_error(
            "formal-group-law context requires a characteristic-0 ring");
    }
    return ring;
}

// Termwise integral of the class generating series: sum p_k u^{k+1}/(k+1).
PowerSeries build_log(const RingPtr& ring, int order)
{
    if (ring->max_class_index() < order) {
        throw table_error("class table too short for the logarithm to order " +
                          std::to_string(order));
    }
    std::map<int, GradedPolynomial> coeffs;
    for (int k = 0; k <= order; ++k) {
        GradedPolynomial term =
            designated_class(ring, k).scaled(Scalar(Rational(1, k + 1)));
        if (!term.is_zero()) {
            coeffs.emplace(k + 1, std::move(term));
        }
    }
    return PowerSeries(LaurentSeries(ring, "u", -1, order + 1, std::move(coeffs)));
}

} // namespace

FGLContext::FGLContext(RingPtr ring, int order)
    : ring_(require_char0(std::move(ring))),
      order_(order),
      log_prime_(class_generating_series(ring_, "u", order)),
      log_(build_log(ring_, order)),
      exp_(ser_reverse(log_, "z"))
{
    validate();
}

FGLContext::FGLContext(RingPtr ring, int order, PowerSeries cached_exp)
    : ring_(require_char0(std::move(ring))),
      order_(order),
      log_prime_(class_generating_series(ring_, "u", order)),
      log_(build_log(ring_, order)),
      exp_(std::move(cached_exp))
{
    validate();
}

void FGLContext::validate() const
{
    if (order_ < 0) {
        throw error("negative truncation order");
    }
    const LaurentSeries& e = exp_.series();
    if (e.is_zero() || e.valuation() != 1 || !e.coeff(1).is_one() ||
        e.variable() != "z" || e.degree() != -1 || e.order() < order_ + 1) {
        throw error("exponential series fails its shape invariants");
    }
    const LaurentSeries composed = ser_compose(log_, exp_);
    const LaurentSeries identity =
        LaurentSeries::variable_power(ring_, "z", 1, order_ + 1);
    if (common_order(composed, identity) < order_ + 1 ||
        !series_agree(composed, identity)) {
        throw error("log and exp are not mutually inverse to the context order");
    }
}

LaurentSeries FGLContext::to_additive(const LaurentSeries& series_in_c) const
{
    require_compatible(ring_, series_in_c.ring());
    return ser_compose(series_in_c, exp_);
}

MultiSeries group_law(const FGLContext& ctx)
{
    const std::vector<std::string> vars{"x", "y"};
    const MultiSeries log_x =
        MultiSeries::from_univariate(ctx.log(), vars, 0, ctx.order());
    const MultiSeries log_y =
        MultiSeries::from_univariate(ctx.log(), vars, 1, ctx.order());
    return ms_compose_univariate(ctx.exp(), ms_add(log_x, log_y));
}

} // namespace tatecalc
