#ifndef TATECALC_SERIES_HPP
#define TATECALC_SERIES_HPP

#include <map>
#include <string>

#include "tatecalc/ring.hpp"

namespace tatecalc {

/// Truncated homogeneous formal Laurent series in one variable.
///
/// The variable carries degree -1, so the coefficient at exponent n is
/// homogeneous of ring degree D + n, where D is the declared degree of the
/// series. Coefficients are reliable for exponents up to order(); absent
/// entries in range are zero, entries past the order are unknown. Every
/// constructed value re-validates the grading law.
///
/// Truncation is propagated through each operation as the tightest order
/// that is still guaranteed correct, so precision loss (from inversion,
/// composition against deep principal parts, and so on) is always explicit.
class LaurentSeries {
public:
    LaurentSeries(RingPtr ring, std::string variable, int degree, int order,
                  std::map<int, GradedPolynomial> coefficients);

    static LaurentSeries zero(RingPtr ring, std::string variable, int degree,
                              int order);
    // The series coeff * var^exponent; declared degree deg(coeff) - exponent.
    static LaurentSeries monomial(std::string variable, int exponent,
                                  GradedPolynomial coeff, int order);
    // var^k with unit coefficient; declared degree -k.
    static LaurentSeries variable_power(RingPtr ring, std::string variable,
                                        int k, int order);

    const RingPtr& ring() const { return ring_; }
    const std::string& variable() const { return variable_; }
    int degree() const { return degree_; }
    int order() const { return order_; }

    // Smallest exponent that can carry a nonzero coefficient: the least
    // stored exponent, or order()+1 for a series with no known support.
    int valuation() const { return min_exp_; }

    bool is_zero() const { return coefficients_.empty(); }

    // Zero for absent in-range exponents; throws precision_error past order().
    GradedPolynomial coeff(int exponent) const;
    const std::map<int, GradedPolynomial>& support() const { return coefficients_; }

    // Multiplication by variable^shift (degree drops by shift).
    LaurentSeries shifted(int shift) const;
    // Same coefficients, reliable order lowered to new_order.
    LaurentSeries truncated(int new_order) const;
    LaurentSeries with_variable(std::string variable) const;

private:
    RingPtr ring_;
    std::string variable_;
    int degree_;
    int min_exp_;
    int order_;
    std::map<int, GradedPolynomial> coefficients_;
};

// Orders at least this large mean "exact": the value is a Laurent
// polynomial known in full, not a truncation of something longer.
inline constexpr int order_exact = 1 << 20;

/// Laurent series supported in nonnegative exponents.
class PowerSeries {
public:
    explicit PowerSeries(LaurentSeries s);

    const LaurentSeries& series() const { return s_; }
    operator const LaurentSeries&() const { return s_; }

private:
    LaurentSeries s_;
};

/// Finite Laurent tail supported in exponents <= -1.
class PrincipalTail {
public:
    explicit PrincipalTail(LaurentSeries s);

    const LaurentSeries& series() const { return s_; }
    operator const LaurentSeries&() const { return s_; }

private:
    LaurentSeries s_;
};

// Coefficientwise sum; result order min(order a, order b).
LaurentSeries ser_add(const LaurentSeries& a, const LaurentSeries& b);
LaurentSeries ser_sub(const LaurentSeries& a, const LaurentSeries& b);
LaurentSeries ser_neg(const LaurentSeries& a);

// Coefficientwise product with a homogeneous ring element.
LaurentSeries ser_scale(const LaurentSeries& a, const GradedPolynomial& c);

// Cauchy product; result order min(order a + val b, order b + val a).
LaurentSeries ser_mul(const LaurentSeries& a, const LaurentSeries& b);

// Multiplicative inverse. Requires a unit leading coefficient (the scalar
// +-1 in characteristic 0, 1 in characteristic 2). Result order drops by
// twice the valuation.
LaurentSeries ser_invert(const LaurentSeries& a);

// Termwise n * a_n at exponent n - 1; the integer n acts through the
// ring's characteristic. Result degree D + 1.
LaurentSeries ser_derivative(const LaurentSeries& a);

// Coefficient at exponent -1, homogeneous of degree D - 1. Requires the
// series to be reliable through exponent -1.
GradedPolynomial ser_residue(const LaurentSeries& a);

// Substitution outer(inner). The inner series must have valuation exactly
// 1, a unit leading coefficient and declared degree -1; negative powers of
// the outer variable expand through ser_invert.
LaurentSeries ser_compose(const LaurentSeries& outer, const PowerSeries& inner);

// Compositional inverse g of f, with f(g) = g(f) = id up to truncation.
// Degree-by-degree coefficient recursion, characteristic-independent.
PowerSeries ser_reverse(const PowerSeries& f, const std::string& result_variable);

// Nonnegative- and negative-exponent truncations; they sum back to the
// input exactly.
PowerSeries holomorphic_part(const LaurentSeries& a);
PrincipalTail principal_part(const LaurentSeries& a);

// Agreement on the common reliable range [-inf, min(order a, order b)].
// Declared degrees must match unless a side is zero on the range.
bool series_agree(const LaurentSeries& a, const LaurentSeries& b);
int common_order(const LaurentSeries& a, const LaurentSeries& b);

} // namespace tatecalc

#endif
