#ifndef TATECALC_TATE_HPP
#define TATECALC_TATE_HPP

#include <optional>
#include <string>
#include <vector>

#include "tatecalc/fgl.hpp"
#include "tatecalc/series.hpp"

namespace tatecalc {

/// Ambient data for the Tate-sequence calculus over one coefficient ring:
/// the unit power series pi = sum p_k var^k, its inverse, and (for
/// characteristic-0 rings, on request) a formal-group-law context for the
/// residue functional.
class TateModel {
public:
    TateModel(RingPtr ring, std::string variable, int order);
    // Accepts a previously computed pi inverse (e.g. from a cache) and
    // validates pi * candidate = 1; throws if it fails.
    TateModel(RingPtr ring, std::string variable, int order,
              PowerSeries cached_pi_inverse);

    static TateModel with_fgl(RingPtr ring, std::string variable, int order);

    const RingPtr& ring() const { return ring_; }
    const std::string& variable() const { return variable_; }
    int order() const { return order_; }

    const PowerSeries& pi() const { return pi_; }
    const PowerSeries& pi_inverse() const { return pi_inverse_; }

    bool has_fgl() const { return fgl_.has_value(); }
    const FGLContext& fgl() const;
    TateModel& attach_fgl();
    TateModel& attach_fgl(FGLContext ctx);

private:
    RingPtr ring_;
    std::string variable_;
    int order_;
    PowerSeries pi_;
    PowerSeries pi_inverse_;
    std::optional<FGLContext> fgl_;

    void validate() const;
};

/// Boundary data m_0 ... m_N of a class of declared degree d, with
/// deg(m_k) = d + k.
class MomentSequence {
public:
    MomentSequence(RingPtr ring, int degree, std::vector<GradedPolynomial> moments);

    const RingPtr& ring() const { return ring_; }
    int degree() const { return degree_; }
    const std::vector<GradedPolynomial>& moments() const { return moments_; }
    int count() const { return static_cast<int>(moments_.size()); }

private:
    RingPtr ring_;
    int degree_;
    std::vector<GradedPolynomial> moments_;
};

struct HolomorphyVerdict {
    bool holomorphic = false;
    // Lowest exponent carrying a nonzero principal coefficient.
    std::optional<int> witness;
};

PowerSeries pi_series(const TateModel& model);

// The boundary functional: sends var^{-k-1} to p_k and kills power series,
// extended linearly over the coefficient ring. Lowers degree by one.
GradedPolynomial p_star_del(const TateModel& model, const LaurentSeries& series);

// Residue in the additive coordinate: res_{z=0} of the series rewritten
// through c = exp(z). Agrees with p_star_del; requires an attached
// formal-group-law context.
GradedPolynomial residue_functional(const TateModel& model,
                                    const LaurentSeries& series);

MomentSequence moments_of(const TateModel& model, const LaurentSeries& series);

// pi^{-1} * sum_k p_star_del(var^{-k-1} * L) var^k: the reconstruction of
// the holomorphic content of L from its boundary data. Output reliable to
// model order minus the depth of L's principal part.
PowerSeries boardman_transform(const TateModel& model, const LaurentSeries& series);

PowerSeries reconstruct_from_moments(const TateModel& model,
                                     const MomentSequence& moments);

HolomorphyVerdict is_holomorphic(const TateModel& model,
                                 const LaurentSeries& series);

} // namespace tatecalc

#endif
