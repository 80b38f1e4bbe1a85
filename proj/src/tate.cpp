#include "tatecalc/tate.hpp"

#include <algorithm>
#include <exception>
#include <utility>

namespace tatecalc {

TateModel::TateModel(RingPtr ring, std::string variable, int order)
    : ring_(std::move(ring)),
      variable_(std::move(variable)),
      order_(order),
      pi_(class_generating_series(ring_, variable_, order)),
      pi_inverse_(PowerSeries(ser_invert(pi_)))
{
    validate();
}

TateModel::TateModel(RingPtr ring, std::string variable, int order,
                     PowerSeries cached_pi_inverse)
    : ring_(std::move(ring)),
      variable_(std::move(variable)),
      order_(order),
      pi_(class_generating_series(ring_, variable_, order)),
      pi_inverse_(std::move(cached_pi_inverse))
{
    validate();
}

TateModel TateModel::with_fgl(RingPtr ring, std::string variable, int order)
{
    TateModel model(std::move(ring), std::move(variable), order);
    model.attach_fgl();
    return model;
}

TateModel& TateModel::attach_fgl()
{
    if (!fgl_) {
        fgl_.emplace(ring_, order_);
    }
    return *this;
}

TateModel& TateModel::attach_fgl(FGLContext ctx)
{
    if (!ring_compatible(ctx.ring(), ring_) || ctx.order() < order_) {
        throw mismatch_error("formal-group-law context does not fit this model");
    }
    fgl_.emplace(std::move(ctx));
    return *this;
}

const FGLContext& TateModel::fgl() const
{
    if (!fgl_) {
        throw mismatch_error("no formal-group-law context attached to this model");
    }
    return *fgl_;
}

void TateModel::validate() const
{
    if (order_ < 0) {
        throw error("negative truncation order");
    }
    const LaurentSeries& inv = pi_inverse_.series();
    if (inv.variable() != variable_ || inv.order() < order_) {
        throw error("pi inverse fails its shape invariants");
    }
    const LaurentSeries product = ser_mul(pi_, inv);
    const LaurentSeries one =
        LaurentSeries::variable_power(ring_, variable_, 0, order_);
    if (common_order(product, one) < order_ || !series_agree(product, one)) {
        throw error("pi * pi^{-1} is not 1 to the model order");
    }
}

MomentSequence::MomentSequence(RingPtr ring, int degree,
                               std::vector<GradedPolynomial> moments)
    : ring_(std::move(ring)), degree_(degree), moments_(std::move(moments))
{
    for (std::size_t k = 0; k < moments_.size(); ++k) {
        const GradedPolynomial& m = moments_[k];
        require_compatible(ring_, m.ring());
        if (!m.is_zero() && m.degree() != degree_ + static_cast<int>(k)) {
            throw_grading("moment " + std::to_string(k) + " has degree " +
                          std::to_string(m.degree()) + ", expected " +
                          std::to_string(degree_ + static_cast<int>(k)));
        }
    }
}

namespace {

void require_model_axis(const TateModel& model, const LaurentSeries& series)
{
    require_compatible(model.ring(), series.ring());
    if (series.variable() != model.variable()) {
        throw mismatch_error("series variable '" + series.variable() +
                             "' does not match the model variable '" +
                             model.variable() + "'");
    }
}

} // namespace

PowerSeries pi_series(const TateModel& model)
{
    return model.pi();
}

GradedPolynomial p_star_del(const TateModel& model, const LaurentSeries& series)
{
    require_model_axis(model, series);
    if (series.order() < -1) {
        throw precision_error("boundary functional needs the full principal part");
    }
    const RingPtr ring = richer_ring(model.ring(), series.ring());
    GradedPolynomial acc = GradedPolynomial::zero(ring, series.degree() - 1);
    for (const auto& [n, c] : series.support()) {
        if (n >= 0) {
            break;
        }
        acc = poly_add(acc, poly_mul(c, designated_class(ring, -n - 1)));
    }
    return acc;
}

GradedPolynomial residue_functional(const TateModel& model,
                                    const LaurentSeries& series)
{
    require_model_axis(model, series);
    return ser_residue(model.fgl().to_additive(series));
}

namespace {

// Shared by the transform and the moment extraction: moments for distinct
// k are independent, so the loop fans out across threads and is merged in
// index order.
std::vector<GradedPolynomial> boundary_moments(const TateModel& model,
                                               const LaurentSeries& series,
                                               int count)
{
    std::vector<GradedPolynomial> moments(
        static_cast<std::size_t>(count),
        GradedPolynomial::zero(model.ring(), 0));
    std::vector<std::exception_ptr> errors(static_cast<std::size_t>(count));
#pragma omp parallel for schedule(dynamic, 4)
    for (int k = 0; k < count; ++k) {
        try {
            moments[static_cast<std::size_t>(k)] =
                p_star_del(model, series.shifted(-k - 1));
        } catch (...) {
            errors[static_cast<std::size_t>(k)] = std::current_exception();
        }
    }
    for (const auto& e : errors) {
        if (e) {
            std::rethrow_exception(e);
        }
    }
    return moments;
}

int transform_order(const TateModel& model, const LaurentSeries& series)
{
    const int depth = std::max(0, -series.valuation());
    if (depth > model.order()) {
        throw table_error("class table exhausted: principal part of depth " +
                          std::to_string(depth) + " against a model of order " +
                          std::to_string(model.order()));
    }
    const int out_order = std::min(model.order() - depth, series.order());
    if (out_order < 0) {
        throw precision_error("input series too shallow for the transform");
    }
    return out_order;
}

} // namespace

MomentSequence moments_of(const TateModel& model, const LaurentSeries& series)
{
    require_model_axis(model, series);
    const int out_order = transform_order(model, series);
    return MomentSequence(model.ring(), series.degree(),
                          boundary_moments(model, series, out_order + 1));
}

PowerSeries boardman_transform(const TateModel& model, const LaurentSeries& series)
{
    require_model_axis(model, series);
    const int out_order = transform_order(model, series);
    const auto moments = boundary_moments(model, series, out_order + 1);

    std::map<int, GradedPolynomial> coeffs;
    for (int k = 0; k <= out_order; ++k) {
        if (!moments[static_cast<std::size_t>(k)].is_zero()) {
            coeffs.emplace(k, moments[static_cast<std::size_t>(k)]);
        }
    }
    const LaurentSeries moment_series(model.ring(), model.variable(),
                                      series.degree(), out_order, std::move(coeffs));
    return PowerSeries(ser_mul(model.pi_inverse(), moment_series));
}

PowerSeries reconstruct_from_moments(const TateModel& model,
                                     const MomentSequence& moments)
{
    require_compatible(model.ring(), moments.ring());
    const int out_order = std::min(model.order(), moments.count() - 1);
    if (out_order < 0) {
        throw precision_error("empty moment sequence");
    }
    std::map<int, GradedPolynomial> coeffs;
    for (int k = 0; k <= out_order; ++k) {
        const GradedPolynomial& m = moments.moments()[static_cast<std::size_t>(k)];
        if (!m.is_zero()) {
            coeffs.emplace(k, m);
        }
    }
    const LaurentSeries moment_series(model.ring(), model.variable(),
                                      moments.degree(), out_order, std::move(coeffs));
    return PowerSeries(ser_mul(model.pi_inverse(), moment_series));
}

HolomorphyVerdict is_holomorphic(const TateModel& model, const LaurentSeries& series)
{
    require_model_axis(model, series);
    HolomorphyVerdict verdict;
    verdict.holomorphic = series.is_zero() || series.valuation() >= 0;
    if (!verdict.holomorphic) {
        verdict.witness = series.valuation();
    }
    return verdict;
}

} // namespace tatecalc
