#ifndef TATECALC_FGL_HPP
#define TATECALC_FGL_HPP

#include <map>
#include <string>
#include <vector>

#include "tatecalc/series.hpp"

namespace tatecalc {

// Sum_{k=0..order} p_k * variable^k: the generating series of the ring's
// designated projective classes, homogeneous of degree 0. Backs both the
// logarithm derivative and the pi series.
PowerSeries class_generating_series(const RingPtr& ring,
                                    const std::string& variable, int order);

/// Power series in several variables (each of degree -1), truncated at a
/// total degree. Coefficient at exponent vector e is homogeneous of ring
/// degree D + |e|.
class MultiSeries {
public:
    MultiSeries(RingPtr ring, std::vector<std::string> variables, int degree,
                int order, std::map<std::vector<int>, GradedPolynomial> coefficients);

    static MultiSeries zero(RingPtr ring, std::vector<std::string> variables,
                            int degree, int order);
    static MultiSeries constant(RingPtr ring, std::vector<std::string> variables,
                                GradedPolynomial value, int order);
    static MultiSeries variable(RingPtr ring, std::vector<std::string> variables,
                                int which, int order);
    // f(vars[which]) for a univariate power series f.
    static MultiSeries from_univariate(const LaurentSeries& f,
                                       std::vector<std::string> variables,
                                       int which, int order);

    const RingPtr& ring() const { return ring_; }
    const std::vector<std::string>& variables() const { return vars_; }
    int degree() const { return degree_; }
    int order() const { return order_; }
    const std::map<std::vector<int>, GradedPolynomial>& support() const
    {
        return coefficients_;
    }

    bool is_zero() const { return coefficients_.empty(); }
    GradedPolynomial coeff(const std::vector<int>& exponents) const;
    bool has_constant_term() const;

    // Coefficients with exponent zero in the given slot (substituting 0).
    MultiSeries at_zero(int which) const;
    MultiSeries with_swapped(int i, int j) const;

private:
    RingPtr ring_;
    std::vector<std::string> vars_;
    int degree_;
    int order_;
    std::map<std::vector<int>, GradedPolynomial> coefficients_;
};

MultiSeries ms_add(const MultiSeries& a, const MultiSeries& b);
MultiSeries ms_neg(const MultiSeries& a);
MultiSeries ms_mul(const MultiSeries& a, const MultiSeries& b);
MultiSeries ms_scale(const MultiSeries& a, const GradedPolynomial& c);
bool ms_equal(const MultiSeries& a, const MultiSeries& b);

// h(S) for a univariate h and an argument with no constant term, by Horner
// evaluation in S.
MultiSeries ms_compose_univariate(const LaurentSeries& h, const MultiSeries& S);

// F(A, B) for a two-variable F; both arguments must share variables and
// have no constant term.
MultiSeries ms_eval_bivariate(const MultiSeries& F, const MultiSeries& A,
                              const MultiSeries& B);

/// Formal-group-law data for a characteristic-0 coefficient ring: the
/// logarithm (valuation 1, leading coefficient 1), its derivative, and the
/// exponential obtained by reversion. All three are computed eagerly and
/// the mutual-inversion identity is validated at construction.
class FGLContext {
public:
    FGLContext(RingPtr ring, int order);
    // Accepts a previously computed exponential (e.g. from a cache) and
    // validates it against the log; throws if it fails.
    FGLContext(RingPtr ring, int order, PowerSeries cached_exp);

    const RingPtr& ring() const { return ring_; }
    int order() const { return order_; }

    // Sum p_k u^k to the context order; degree 0.
    const PowerSeries& log_prime() const { return log_prime_; }
    // Sum p_k u^{k+1}/(k+1) to order+1; valuation 1, degree -1.
    const PowerSeries& log() const { return log_; }
    // Compositional inverse of log, in the additive coordinate z.
    const PowerSeries& exp() const { return exp_; }

    // Substitution c = exp(z): rewrites a series in the multiplicative
    // coordinate as a Laurent series in z, preserving the declared degree.
    LaurentSeries to_additive(const LaurentSeries& series_in_c) const;

private:
    RingPtr ring_;
    int order_;
    PowerSeries log_prime_;
    PowerSeries log_;
    PowerSeries exp_;

    void validate() const;
};

// F(x, y) = exp(log x + log y) truncated at total degree ctx.order().
MultiSeries group_law(const FGLContext& ctx);

} // namespace tatecalc

#endif
