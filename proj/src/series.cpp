#include "tatecalc/series.hpp"

#include <algorithm>
#include <utility>

#include "tatecalc/kernels.hpp"

namespace tatecalc {

LaurentSeries::LaurentSeries(RingPtr ring, std::string variable, int degree,
                             int order, std::map<int, GradedPolynomial> coefficients)
    : ring_(std::move(ring)),
      variable_(std::move(variable)),
      degree_(degree),
      order_(order)
{
    if (!ring_) {
        throw error("series without a ring");
    }
    if (variable_.empty()) {
        throw error("series without a variable name");
    }
    for (auto it = coefficients.begin(); it != coefficients.end();) {
        if (it->second.is_zero()) {
            it = coefficients.erase(it);
            continue;
        }
        require_compatible(ring_, it->second.ring());
        if (it->first > order_) {
            throw precision_error("coefficient stored past the reliable order");
        }
        if (it->second.degree() != degree_ + it->first) {
            throw_grading("coefficient at exponent " + std::to_string(it->first) +
                          " has degree " + std::to_string(it->second.degree()) +
                          ", grading law requires " +
                          std::to_string(degree_ + it->first));
        }
        ++it;
    }
    coefficients_ = std::move(coefficients);
    min_exp_ = coefficients_.empty() ? order_ + 1 : coefficients_.begin()->first;
}

LaurentSeries LaurentSeries::zero(RingPtr ring, std::string variable, int degree,
                                  int order)
{
    return LaurentSeries(std::move(ring), std::move(variable), degree, order, {});
}

LaurentSeries LaurentSeries::monomial(std::string variable, int exponent,
                                      GradedPolynomial coeff, int order)
{
    RingPtr ring = coeff.ring();
    const int degree = coeff.degree() - exponent;
    std::map<int, GradedPolynomial> coeffs;
    coeffs.emplace(exponent, std::move(coeff));
    return LaurentSeries(std::move(ring), std::move(variable), degree, order,
                         std::move(coeffs));
}

LaurentSeries LaurentSeries::variable_power(RingPtr ring, std::string variable,
                                            int k, int order)
{
    GradedPolynomial unit = GradedPolynomial::one(ring);
    return monomial(std::move(variable), k, std::move(unit), order);
}

GradedPolynomial LaurentSeries::coeff(int exponent) const
{
    if (exponent > order_) {
        throw precision_error("coefficient at exponent " + std::to_string(exponent) +
                              " requested past reliable order " +
                              std::to_string(order_));
    }
    auto it = coefficients_.find(exponent);
    if (it != coefficients_.end()) {
        return it->second;
    }
    return GradedPolynomial::zero(ring_, degree_ + exponent);
}

LaurentSeries LaurentSeries::shifted(int shift) const
{
    std::map<int, GradedPolynomial> coeffs;
    for (const auto& [n, c] : coefficients_) {
        coeffs.emplace(n + shift, c);
    }
    return LaurentSeries(ring_, variable_, degree_ - shift, order_ + shift,
                         std::move(coeffs));
}

LaurentSeries LaurentSeries::truncated(int new_order) const
{
    const int order = std::min(order_, new_order);
    std::map<int, GradedPolynomial> coeffs;
    for (const auto& [n, c] : coefficients_) {
        if (n <= order) {
            coeffs.emplace(n, c);
        }
    }
    return LaurentSeries(ring_, variable_, degree_, order, std::move(coeffs));
}

LaurentSeries LaurentSeries::with_variable(std::string variable) const
{
    return LaurentSeries(ring_, std::move(variable), degree_, order_, coefficients_);
}

PowerSeries::PowerSeries(LaurentSeries s) : s_(std::move(s))
{
    if (!s_.is_zero() && s_.valuation() < 0) {
        throw error("power series with negative-exponent support");
    }
}

PrincipalTail::PrincipalTail(LaurentSeries s) : s_(std::move(s))
{
    if (!s_.is_zero() && s_.support().rbegin()->first >= 0) {
        throw error("principal tail with nonnegative-exponent support");
    }
}

namespace {

void require_same_axis(const LaurentSeries& a, const LaurentSeries& b)
{
    require_compatible(a.ring(), b.ring());
    if (a.variable() != b.variable()) {
        throw mismatch_error("series in different variables ('" + a.variable() +
                             "' vs '" + b.variable() + "')");
    }
}

} // namespace

LaurentSeries ser_add(const LaurentSeries& a, const LaurentSeries& b)
{
    require_same_axis(a, b);
    if (a.degree() != b.degree() && !a.is_zero() && !b.is_zero()) {
        throw mismatch_error("adding series of degrees " + std::to_string(a.degree()) +
                             " and " + std::to_string(b.degree()));
    }
    const int degree = a.is_zero() && !b.is_zero() ? b.degree() : a.degree();
    const int order = std::min(a.order(), b.order());
    std::map<int, GradedPolynomial> coeffs;
    for (const auto& [n, c] : a.support()) {
        if (n <= order) {
            coeffs.emplace(n, c);
        }
    }
    for (const auto& [n, c] : b.support()) {
        if (n > order) {
            continue;
        }
        auto it = coeffs.find(n);
        if (it == coeffs.end()) {
            coeffs.emplace(n, c);
        } else {
            it->second = poly_add(it->second, c);
        }
    }
    return LaurentSeries(richer_ring(a.ring(), b.ring()), a.variable(), degree, order,
                         std::move(coeffs));
}

LaurentSeries ser_neg(const LaurentSeries& a)
{
    std::map<int, GradedPolynomial> coeffs;
    for (const auto& [n, c] : a.support()) {
        coeffs.emplace(n, -c);
    }
    return LaurentSeries(a.ring(), a.variable(), a.degree(), a.order(),
                         std::move(coeffs));
}

LaurentSeries ser_sub(const LaurentSeries& a, const LaurentSeries& b)
{
    return ser_add(a, ser_neg(b));
}

LaurentSeries ser_scale(const LaurentSeries& a, const GradedPolynomial& c)
{
    require_compatible(a.ring(), c.ring());
    std::map<int, GradedPolynomial> coeffs;
    for (const auto& [n, p] : a.support()) {
        GradedPolynomial scaled = poly_mul(p, c);
        if (!scaled.is_zero()) {
            coeffs.emplace(n, std::move(scaled));
        }
    }
    return LaurentSeries(richer_ring(a.ring(), c.ring()), a.variable(),
                         a.degree() + c.degree(), a.order(), std::move(coeffs));
}

LaurentSeries ser_mul(const LaurentSeries& a, const LaurentSeries& b)
{
    require_same_axis(a, b);
    const int order = std::min(a.order() + b.valuation(), b.order() + a.valuation());
    const bool parallel = kernels::convolution_cost(a, b) >= kernels::parallel_threshold;
    auto coeffs = parallel ? kernels::convolve_parallel(a, b, order)
                           : kernels::convolve_serial(a, b, order);
    return LaurentSeries(richer_ring(a.ring(), b.ring()), a.variable(),
                         a.degree() + b.degree(), order, std::move(coeffs));
}

LaurentSeries ser_invert(const LaurentSeries& a)
{
    if (a.is_zero()) {
        throw error("inverting a series with no known nonzero coefficient");
    }
    const int v = a.valuation();
    const GradedPolynomial lead = a.coeff(v);
    if (!lead.is_unit_scalar()) {
        throw error("series inversion requires a unit leading coefficient");
    }
    const Scalar u = lead.unit_scalar(); // self-inverse: +-1 or 1
    const RingPtr& ring = a.ring();

    if (a.support().size() == 1) {
        // A unit monomial inverts exactly.
        const int out_order =
            a.order() >= order_exact ? a.order() : a.order() - 2 * v;
        std::map<int, GradedPolynomial> coeffs;
        coeffs.emplace(-v, GradedPolynomial::constant(ring, u));
        return LaurentSeries(ring, a.variable(), -a.degree(), out_order,
                             std::move(coeffs));
    }
    if (a.order() >= order_exact) {
        throw precision_error("truncate an exact series before inverting it");
    }

    // Solve sum_{i<=j} a_{v+i} * b_{-v+j-i} = [j == 0] degree by degree,
    // touching only the stored coefficients of either side.
    const int out_order = a.order() - 2 * v;
    std::map<int, GradedPolynomial> inv; // keyed by offset j from exponent -v
    inv.emplace(0, GradedPolynomial::constant(ring, u));
    for (int j = 1; j <= out_order + v; ++j) {
        GradedPolynomial acc = GradedPolynomial::zero(ring, j);
        for (const auto& [m, c] : a.support()) {
            const int i = m - v;
            if (i < 1) {
                continue;
            }
            if (i > j) {
                break;
            }
            auto prev = inv.find(j - i);
            if (prev != inv.end()) {
                acc = poly_add(acc, poly_mul(c, prev->second));
            }
        }
        if (!acc.is_zero()) {
            inv.emplace(j, (-acc).scaled(u));
        }
    }
    std::map<int, GradedPolynomial> coeffs;
    for (auto& [j, c] : inv) {
        coeffs.emplace(-v + j, std::move(c));
    }
    return LaurentSeries(ring, a.variable(), -a.degree(), out_order, std::move(coeffs));
}

LaurentSeries ser_derivative(const LaurentSeries& a)
{
    std::map<int, GradedPolynomial> coeffs;
    for (const auto& [n, c] : a.support()) {
        GradedPolynomial scaled = c.scaled_by_int(n);
        if (!scaled.is_zero()) {
            coeffs.emplace(n - 1, std::move(scaled));
        }
    }
    return LaurentSeries(a.ring(), a.variable(), a.degree() + 1, a.order() - 1,
                         std::move(coeffs));
}

GradedPolynomial ser_residue(const LaurentSeries& a)
{
    if (a.order() < -1) {
        throw precision_error("residue needs the series through exponent -1");
    }
    return a.coeff(-1);
}

LaurentSeries ser_compose(const LaurentSeries& outer, const PowerSeries& inner)
{
    const LaurentSeries& in = inner.series();
    require_compatible(outer.ring(), in.ring());
    if (in.is_zero() || in.valuation() != 1) {
        throw error("composition requires an inner series of valuation exactly 1");
    }
    if (!in.coeff(1).is_unit_scalar()) {
        throw error("composition requires a unit leading inner coefficient");
    }
    if (in.degree() != -1) {
        throw mismatch_error("inner series must have declared degree -1");
    }

    const RingPtr ring = richer_ring(outer.ring(), in.ring());
    const std::string& var = in.variable();
    const int degree = outer.degree();

    int order = outer.order();
    std::map<int, GradedPolynomial> acc;
    auto add_term = [&](const LaurentSeries& power, const GradedPolynomial& c) {
        order = std::min(order, power.order());
        for (const auto& [n, p] : power.support()) {
            GradedPolynomial term = poly_mul(p, c);
            if (term.is_zero()) {
                continue;
            }
            auto it = acc.find(n);
            if (it == acc.end()) {
                acc.emplace(n, std::move(term));
            } else {
                it->second = poly_add(it->second, term);
            }
        }
    };

    // Nonnegative powers of the inner series, built incrementally.
    LaurentSeries pow = LaurentSeries::variable_power(ring, var, 0, order_exact);
    int pow_exp = 0;
    for (const auto& [n, c] : outer.support()) {
        if (n < 0) {
            continue;
        }
        while (pow_exp < n) {
            pow = ser_mul(pow, in);
            ++pow_exp;
        }
        add_term(pow, c);
    }
    // Negative powers expand through the inverse of the inner series.
    if (outer.valuation() < 0) {
        const LaurentSeries inv = ser_invert(in);
        LaurentSeries neg_pow = inv;
        int neg_exp = -1;
        for (auto it = outer.support().rbegin(); it != outer.support().rend(); ++it) {
            const auto& [n, c] = *it;
            if (n >= 0) {
                continue;
            }
            while (neg_exp > n) {
                neg_pow = ser_mul(neg_pow, inv);
                --neg_exp;
            }
            add_term(neg_pow, c);
        }
    }

    for (auto it = acc.begin(); it != acc.end();) {
        if (it->first > order || it->second.is_zero()) {
            it = acc.erase(it);
        } else {
            ++it;
        }
    }
    return LaurentSeries(ring, var, degree, order, std::move(acc));
}

PowerSeries ser_reverse(const PowerSeries& f, const std::string& result_variable)
{
    const LaurentSeries& fs = f.series();
    if (fs.order() < 1) {
        throw precision_error("reversion needs the linear coefficient");
    }
    if (fs.order() >= order_exact) {
        throw precision_error("truncate an exact series before reverting it");
    }
    if (fs.is_zero() || fs.valuation() != 1) {
        throw error("reversion requires valuation exactly 1");
    }
    if (!fs.coeff(1).is_unit_scalar()) {
        throw error("reversion requires a unit leading coefficient");
    }
    if (fs.degree() != -1) {
        throw mismatch_error("reversion expects a series of declared degree -1");
    }
    const RingPtr& ring = fs.ring();
    const Scalar u = fs.coeff(1).unit_scalar();
    const int n_max = fs.order();

    // g_1 = u; for n >= 2, the exponent-n coefficient of f(g_partial)
    // equals f_1 * g_n + (known terms), so each g_n is solved in turn.
    std::map<int, GradedPolynomial> g_coeffs;
    g_coeffs.emplace(1, GradedPolynomial::constant(ring, u));
    for (int n = 2; n <= n_max; ++n) {
        LaurentSeries g_partial(ring, result_variable, -1, n, g_coeffs);
        LaurentSeries power = g_partial; // g^i truncated at exponent n
        GradedPolynomial known = GradedPolynomial::zero(ring, n - 1);
        for (int i = 2; i <= n; ++i) {
            power = ser_mul(power, g_partial).truncated(n);
            known = poly_add(known, poly_mul(fs.coeff(i), power.coeff(n)));
        }
        GradedPolynomial gn = (-known).scaled(u);
        if (!gn.is_zero()) {
            g_coeffs.emplace(n, std::move(gn));
        }
    }
    return PowerSeries(LaurentSeries(ring, result_variable, -1, n_max,
                                     std::move(g_coeffs)));
}

PowerSeries holomorphic_part(const LaurentSeries& a)
{
    std::map<int, GradedPolynomial> coeffs;
    for (const auto& [n, c] : a.support()) {
        if (n >= 0) {
            coeffs.emplace(n, c);
        }
    }
    return PowerSeries(LaurentSeries(a.ring(), a.variable(), a.degree(), a.order(),
                                     std::move(coeffs)));
}

PrincipalTail principal_part(const LaurentSeries& a)
{
    std::map<int, GradedPolynomial> coeffs;
    for (const auto& [n, c] : a.support()) {
        if (n < 0) {
            coeffs.emplace(n, c);
        }
    }
    return PrincipalTail(LaurentSeries(a.ring(), a.variable(), a.degree(), a.order(),
                                       std::move(coeffs)));
}

int common_order(const LaurentSeries& a, const LaurentSeries& b)
{
    return std::min(a.order(), b.order());
}

bool series_agree(const LaurentSeries& a, const LaurentSeries& b)
{
    if (!ring_compatible(a.ring(), b.ring()) || a.variable() != b.variable()) {
        return false;
    }
    const int order = common_order(a, b);
    bool a_live = false;
    bool b_live = false;
    for (const auto& [n, c] : a.support()) {
        if (n > order) {
            break;
        }
        a_live = true;
        if (!(c == b.coeff(n))) {
            return false;
        }
    }
    for (const auto& [n, c] : b.support()) {
        if (n > order) {
            break;
        }
        b_live = true;
        if (!(c == a.coeff(n))) {
            return false;
        }
    }
    if (a_live && b_live && a.degree() != b.degree()) {
        return false;
    }
    return true;
}

} // namespace tatecalc
