#ifndef TATECALC_IO_HPP
#define TATECALC_IO_HPP

#include <string>

#include <json.hpp>

#include "tatecalc/fgl.hpp"
#include "tatecalc/series.hpp"
#include "tatecalc/tate.hpp"

namespace tatecalc {

using json = nlohmann::json;

// Polynomial form: [{"coeff": "num/den" | "0" | "1", "monomial": {name: exp}}].
// The expected degree comes from the surrounding context (series exponent,
// moment index, class index); parsing validates against it.
json poly_to_json(const GradedPolynomial& poly);
GradedPolynomial poly_from_json(const json& j, const RingPtr& ring,
                                int expected_degree);

// Ring descriptor form: {"characteristic": 0|2, "generators": [{"name",
// "degree"}], "projective_classes": [polynomial per k]}.
json ring_to_json(const RingDescriptor& ring);
RingPtr ring_from_json(const json& j);

// A ring reference is either a preset name or an embedded descriptor.
// Preset names materialize with a class table covering 0..table_order.
RingPtr resolve_ring(const json& ring_field, int table_order);

// Series form: {"ring", "variable", "degree", "min_exponent", "order",
// "coefficients": [{"exponent", "poly"}]} with strictly increasing
// exponents; omitted exponents are zero.
json series_to_json(const LaurentSeries& s);
LaurentSeries series_from_json(const json& j, const RingPtr& context_ring);

// Moment form: {"ring", "degree", "moments": [polynomial per k]}.
json moments_to_json(const MomentSequence& m);
MomentSequence moments_from_json(const json& j, const RingPtr& context_ring);

// Two-variable series as nested series JSON: outer variable "y", each
// outer coefficient a series in "x".
json multiseries_to_json(const MultiSeries& f);

std::string poly_text(const GradedPolynomial& poly);
std::string series_text(const LaurentSeries& s);
std::string multiseries_text(const MultiSeries& f);

} // namespace tatecalc

#endif
