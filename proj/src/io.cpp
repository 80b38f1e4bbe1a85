#include "tatecalc/io.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <utility>
#include <vector>

namespace tatecalc {

namespace {

constexpr int sane_exponent_bound = 1 << 16;

const json& require_field(const json& j, const char* key)
{
    if (!j.is_object()) {
        throw schema_error("expected a JSON object");
    }
    auto it = j.find(key);
    if (it == j.end()) {
        throw schema_error(std::string("missing field '") + key + "'");
    }
    return *it;
}

int require_int(const json& j, const char* key)
{
    const json& v = require_field(j, key);
    if (!v.is_number_integer()) {
        throw schema_error(std::string("field '") + key + "' must be an integer");
    }
    const auto raw = v.get<long long>();
    if (raw < -sane_exponent_bound || raw > sane_exponent_bound) {
        throw schema_error(std::string("field '") + key + "' out of sane range");
    }
    return static_cast<int>(raw);
}

std::string require_string(const json& j, const char* key)
{
    const json& v = require_field(j, key);
    if (!v.is_string() || v.get<std::string>().empty()) {
        throw schema_error(std::string("field '") + key +
                           "' must be a nonempty string");
    }
    return v.get<std::string>();
}

Scalar scalar_from_string(const std::string& text, int characteristic)
{
    if (characteristic == 2) {
        if (text == "0") {
            return Scalar(Gf2(false));
        }
        if (text == "1") {
            return Scalar(Gf2(true));
        }
        throw schema_error("characteristic-2 coefficient must be \"0\" or \"1\"");
    }
    return Scalar(Rational::parse(text));
}

Monomial monomial_from_json(const json& j, const RingDescriptor& ring)
{
    if (!j.is_object()) {
        throw schema_error("monomial must be an object of {generator: exponent}");
    }
    Monomial m;
    for (auto it = j.begin(); it != j.end(); ++it) {
        const int index = ring.find_generator(it.key());
        if (index < 0) {
            throw schema_error("unknown generator '" + it.key() + "'");
        }
        if (!it.value().is_number_integer()) {
            throw schema_error("exponent of '" + it.key() + "' must be an integer");
        }
        const auto exp = it.value().get<long long>();
        if (exp <= 0 || exp > sane_exponent_bound) {
            throw schema_error("exponent of '" + it.key() +
                               "' must be a positive integer");
        }
        m = m.times(Monomial::generator(index, static_cast<int>(exp)));
    }
    return m;
}

} // namespace

json poly_to_json(const GradedPolynomial& poly)
{
    json terms = json::array();
    for (const auto& [m, c] : poly.terms()) {
        json mono = json::object();
        for (const auto& [index, exp] : m.factors()) {
            mono[poly.ring()->generator(index).name] = exp;
        }
        terms.push_back(json{{"coeff", c.to_string()}, {"monomial", std::move(mono)}});
    }
    return terms;
}

GradedPolynomial poly_from_json(const json& j, const RingPtr& ring,
                                int expected_degree)
{
    if (!j.is_array()) {
        throw schema_error("polynomial must be an array of terms");
    }
    std::map<Monomial, Scalar> terms;
    for (const json& term : j) {
        const std::string coeff = require_string(term, "coeff");
        Monomial m = monomial_from_json(require_field(term, "monomial"), *ring);
        Scalar s = scalar_from_string(coeff, ring->characteristic());
        if (s.is_zero()) {
            continue;
        }
        if (!terms.emplace(std::move(m), std::move(s)).second) {
            throw schema_error("duplicate monomial in polynomial");
        }
    }
    try {
        return GradedPolynomial::from_terms(ring, expected_degree, std::move(terms));
    } catch (const grading_error& e) {
        throw schema_error(std::string("inhomogeneous polynomial: ") + e.what());
    }
}

json ring_to_json(const RingDescriptor& ring)
{
    json generators = json::array();
    for (const auto& g : ring.generators()) {
        generators.push_back(json{{"name", g.name}, {"degree", g.degree}});
    }
    json classes = json::array();
    RingPtr self;
    for (int k = 0; k <= ring.max_class_index(); ++k) {
        json terms = json::array();
        for (const auto& [m, c] : ring.class_terms(k)) {
            json mono = json::object();
            for (const auto& [index, exp] : m.factors()) {
                mono[ring.generator(index).name] = exp;
            }
            terms.push_back(json{{"coeff", c.to_string()}, {"monomial", std::move(mono)}});
        }
        classes.push_back(std::move(terms));
    }
    return json{{"characteristic", ring.characteristic()},
                {"generators", std::move(generators)},
                {"projective_classes", std::move(classes)}};
}

RingPtr ring_from_json(const json& j)
{
    const json& char_field = require_field(j, "characteristic");
    if (!char_field.is_number_integer()) {
        throw schema_error("characteristic must be 0 or 2");
    }
    const int characteristic = char_field.get<int>();

    const json& gens = require_field(j, "generators");
    if (!gens.is_array()) {
        throw schema_error("generators must be an array");
    }
    std::vector<Generator> generators;
    for (const json& g : gens) {
        generators.push_back({require_string(g, "name"), require_int(g, "degree")});
    }

    // Classes reference the generators, so resolve names against a
    // generator-only shell first.
    const json& classes = require_field(j, "projective_classes");
    if (!classes.is_array()) {
        throw schema_error("projective_classes must be an array");
    }
    RingPtr shell = RingDescriptor::custom("custom", characteristic, generators,
                                           {{{Monomial::unit(), Scalar::one(characteristic)}}});
    std::vector<ClassTerms> class_terms;
    for (std::size_t k = 0; k < classes.size(); ++k) {
        const GradedPolynomial p =
            poly_from_json(classes[k], shell, static_cast<int>(k));
        class_terms.emplace_back(p.terms().begin(), p.terms().end());
    }
    try {
        return RingDescriptor::custom("custom", characteristic, std::move(generators),
                                      std::move(class_terms));
    } catch (const error& e) {
        throw schema_error(std::string("invalid ring descriptor: ") + e.what());
    }
}

RingPtr resolve_ring(const json& ring_field, int table_order)
{
    if (ring_field.is_string()) {
        const std::string name = ring_field.get<std::string>();
        if (name == "mu-rational") {
            return RingDescriptor::mu_rational(table_order);
        }
        if (name == "n-mod2") {
            return RingDescriptor::n_mod2(table_order);
        }
        throw schema_error("unknown ring preset '" + name + "'");
    }
    if (ring_field.is_object()) {
        return ring_from_json(ring_field);
    }
    throw schema_error("ring must be a preset name or a descriptor object");
}

json series_to_json(const LaurentSeries& s)
{
    json coefficients = json::array();
    for (const auto& [n, c] : s.support()) {
        coefficients.push_back(json{{"exponent", n}, {"poly", poly_to_json(c)}});
    }
    const int min_exponent = s.is_zero() ? std::min(0, s.order()) : s.valuation();
    return json{{"ring", s.ring()->is_preset() ? json(s.ring()->name())
                                               : ring_to_json(*s.ring())},
                {"variable", s.variable()},
                {"degree", s.degree()},
                {"min_exponent", min_exponent},
                {"order", s.order()},
                {"coefficients", std::move(coefficients)}};
}

namespace {

// The file may name a preset or embed a descriptor; either way it must be
// compatible with the caller's ring, and the richer table is used.
RingPtr reconcile_ring(const json& ring_field, const RingPtr& context_ring)
{
    if (ring_field.is_string()) {
        if (ring_field.get<std::string>() != context_ring->name()) {
            throw schema_error("input ring '" + ring_field.get<std::string>() +
                               "' does not match the ring in effect ('" +
                               context_ring->name() + "')");
        }
        return context_ring;
    }
    RingPtr parsed = resolve_ring(ring_field, 0);
    if (!ring_compatible(parsed, context_ring)) {
        throw schema_error("embedded ring descriptor is incompatible with the "
                           "ring in effect");
    }
    return richer_ring(parsed, context_ring);
}

} // namespace

LaurentSeries series_from_json(const json& j, const RingPtr& context_ring)
{
    const RingPtr ring = reconcile_ring(require_field(j, "ring"), context_ring);
    const std::string variable = require_string(j, "variable");
    const int degree = require_int(j, "degree");
    const int min_exponent = require_int(j, "min_exponent");
    const int order = require_int(j, "order");
    if (order < min_exponent - 1) {
        throw schema_error("order must be at least min_exponent - 1");
    }

    const json& coefficients = require_field(j, "coefficients");
    if (!coefficients.is_array()) {
        throw schema_error("coefficients must be an array");
    }
    std::map<int, GradedPolynomial> coeffs;
    int previous = std::numeric_limits<int>::min();
    for (const json& entry : coefficients) {
        const int exponent = require_int(entry, "exponent");
        if (exponent <= previous) {
            throw schema_error("coefficient exponents must be strictly increasing");
        }
        previous = exponent;
        if (exponent < min_exponent || exponent > order) {
            throw schema_error("coefficient exponent " + std::to_string(exponent) +
                               " outside [min_exponent, order]");
        }
        GradedPolynomial p =
            poly_from_json(require_field(entry, "poly"), ring, degree + exponent);
        if (!p.is_zero()) {
            coeffs.emplace(exponent, std::move(p));
        }
    }
    return LaurentSeries(ring, variable, degree, order, std::move(coeffs));
}

json moments_to_json(const MomentSequence& m)
{
    json moments = json::array();
    for (const auto& poly : m.moments()) {
        moments.push_back(poly_to_json(poly));
    }
    return json{{"ring", m.ring()->is_preset() ? json(m.ring()->name())
                                               : ring_to_json(*m.ring())},
                {"degree", m.degree()},
                {"moments", std::move(moments)}};
}

MomentSequence moments_from_json(const json& j, const RingPtr& context_ring)
{
    const RingPtr ring = reconcile_ring(require_field(j, "ring"), context_ring);
    const int degree = require_int(j, "degree");
    const json& moments = require_field(j, "moments");
    if (!moments.is_array()) {
        throw schema_error("moments must be an array of polynomials");
    }
    std::vector<GradedPolynomial> out;
    for (std::size_t k = 0; k < moments.size(); ++k) {
        out.push_back(
            poly_from_json(moments[k], ring, degree + static_cast<int>(k)));
    }
    return MomentSequence(ring, degree, std::move(out));
}

json multiseries_to_json(const MultiSeries& f)
{
    if (f.variables().size() != 2) {
        throw error("nested serialization is defined for two variables");
    }
    const json ring_field = f.ring()->is_preset() ? json(f.ring()->name())
                                                  : ring_to_json(*f.ring());
    // Group by the outer (y) exponent; each slice is a series in x.
    std::map<int, std::map<int, GradedPolynomial>> slices;
    for (const auto& [e, c] : f.support()) {
        slices[e[1]].emplace(e[0], c);
    }
    json outer_coeffs = json::array();
    for (auto& [b, slice] : slices) {
        json inner_coeffs = json::array();
        int min_exp = f.order();
        for (const auto& [a, c] : slice) {
            min_exp = std::min(min_exp, a);
            inner_coeffs.push_back(json{{"exponent", a}, {"poly", poly_to_json(c)}});
        }
        json inner{{"ring", ring_field},
                   {"variable", f.variables()[0]},
                   {"degree", f.degree() + b},
                   {"min_exponent", slice.empty() ? 0 : min_exp},
                   {"order", f.order() - b},
                   {"coefficients", std::move(inner_coeffs)}};
        outer_coeffs.push_back(json{{"exponent", b}, {"series", std::move(inner)}});
    }
    return json{{"ring", ring_field},
                {"variable", f.variables()[1]},
                {"degree", f.degree()},
                {"min_exponent", 0},
                {"order", f.order()},
                {"coefficients", std::move(outer_coeffs)}};
}

namespace {

std::string monomial_text(const Monomial& m, const RingDescriptor& ring)
{
    if (m.is_unit()) {
        return "1";
    }
    std::string out;
    for (const auto& [index, exp] : m.factors()) {
        if (!out.empty()) {
            out += "*";
        }
        out += ring.generator(index).name;
        if (exp != 1) {
            out += "^" + std::to_string(exp);
        }
    }
    return out;
}

// One polynomial term without any leading sign fold: "m1", "1/2*m1^2", "3".
std::string term_text(const Monomial& m, const Scalar& c, const RingDescriptor& ring)
{
    const std::string mono = monomial_text(m, ring);
    if (m.is_unit()) {
        return c.to_string();
    }
    if (c.is_one()) {
        return mono;
    }
    if (c.characteristic() == 0 && c.rational().is_minus_one()) {
        return "-" + mono;
    }
    return c.to_string() + "*" + mono;
}

// Append with a tight sign-folding join: "a+b", "a-b".
void join_tight(std::string& out, const std::string& term)
{
    if (out.empty()) {
        out = term;
    } else if (!term.empty() && term[0] == '-') {
        out += term;
    } else {
        out += "+" + term;
    }
}

// Append with a spaced sign-folding join: "a + b", "a - b".
void join_spaced(std::string& out, const std::string& term)
{
    if (out.empty()) {
        out = term;
    } else if (!term.empty() && term[0] == '-') {
        out += " - " + term.substr(1);
    } else {
        out += " + " + term;
    }
}

std::string variable_text(const std::string& var, int exponent)
{
    if (exponent == 0) {
        return "";
    }
    if (exponent == 1) {
        return var;
    }
    return var + "^" + std::to_string(exponent);
}

// Renders coeff * var^n with unit-coefficient and parenthesization rules
// shared by the univariate and multivariate printers.
std::string series_term_text(const GradedPolynomial& coeff,
                             const std::string& var_part)
{
    const auto& terms = coeff.terms();
    if (var_part.empty()) {
        if (terms.size() > 1) {
            return "(" + poly_text(coeff) + ")";
        }
        return poly_text(coeff);
    }
    if (terms.size() > 1) {
        return "(" + poly_text(coeff) + ")*" + var_part;
    }
    const auto& [m, c] = *terms.begin();
    if (m.is_unit()) {
        if (c.is_one()) {
            return var_part;
        }
        if (c.characteristic() == 0 && c.rational().is_minus_one()) {
            return "-" + var_part;
        }
        return c.to_string() + "*" + var_part;
    }
    return term_text(m, c, *coeff.ring()) + "*" + var_part;
}

} // namespace

std::string poly_text(const GradedPolynomial& poly)
{
    if (poly.is_zero()) {
        return "0";
    }
    std::string out;
    for (const auto& [m, c] : poly.terms()) {
        join_tight(out, term_text(m, c, *poly.ring()));
    }
    return out;
}

std::string series_text(const LaurentSeries& s)
{
    if (s.is_zero()) {
        return "0";
    }
    std::string out;
    for (const auto& [n, c] : s.support()) {
        join_spaced(out, series_term_text(c, variable_text(s.variable(), n)));
    }
    return out;
}

std::string multiseries_text(const MultiSeries& f)
{
    if (f.is_zero()) {
        return "0";
    }
    // Terms ordered by total degree, then by exponent vector so that x
    // precedes y within each total degree.
    std::vector<std::pair<std::vector<int>, const GradedPolynomial*>> terms;
    for (const auto& [e, c] : f.support()) {
        terms.emplace_back(e, &c);
    }
    std::sort(terms.begin(), terms.end(), [](const auto& a, const auto& b) {
        const int ta = std::accumulate(a.first.begin(), a.first.end(), 0);
        const int tb = std::accumulate(b.first.begin(), b.first.end(), 0);
        if (ta != tb) {
            return ta < tb;
        }
        return a.first > b.first;
    });
    std::string out;
    for (const auto& [e, c] : terms) {
        std::string var_part;
        for (std::size_t i = 0; i < e.size(); ++i) {
            if (e[i] == 0) {
                continue;
            }
            if (!var_part.empty()) {
                var_part += "*";
            }
            var_part += variable_text(f.variables()[i], e[i]);
        }
        join_spaced(out, series_term_text(*c, var_part));
    }
    return out;
}

} // namespace tatecalc
