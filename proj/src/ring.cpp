#include "tatecalc/ring.hpp"

#include <algorithm>
#include <set>

namespace tatecalc {

Monomial Monomial::generator(int index, int exponent)
{
    if (index < 0 || exponent <= 0) {
        throw error("monomial factor must have a valid generator and positive exponent");
    }
    Monomial m;
    m.factors_.emplace_back(index, exponent);
    return m;
}

Monomial Monomial::times(const Monomial& o) const
{
    Monomial out;
    out.factors_.reserve(factors_.size() + o.factors_.size());
    auto ia = factors_.begin();
    auto ib = o.factors_.begin();
    while (ia != factors_.end() || ib != o.factors_.end()) {
        if (ib == o.factors_.end() || (ia != factors_.end() && ia->first < ib->first)) {
            out.factors_.push_back(*ia++);
        } else if (ia == factors_.end() || ib->first < ia->first) {
            out.factors_.push_back(*ib++);
        } else {
            out.factors_.emplace_back(ia->first, ia->second + ib->second);
            ++ia;
            ++ib;
        }
    }
    return out;
}

int Monomial::degree(const RingDescriptor& ring) const
{
    int d = 0;
    for (const auto& [index, exponent] : factors_) {
        d += ring.generator(index).degree * exponent;
    }
    return d;
}

const Generator& RingDescriptor::generator(int index) const
{
    if (index < 0 || index >= generator_count()) {
        throw error("generator index out of range");
    }
    return generators_[static_cast<std::size_t>(index)];
}

int RingDescriptor::find_generator(const std::string& name) const
{
    for (int i = 0; i < generator_count(); ++i) {
        if (generators_[static_cast<std::size_t>(i)].name == name) {
            return i;
        }
    }
    return -1;
}

const ClassTerms& RingDescriptor::class_terms(int k) const
{
    if (k < 0 || k > max_class_index()) {
        throw table_error("projective class index " + std::to_string(k) +
                          " outside configured table (max " +
                          std::to_string(max_class_index()) + ")");
    }
    return classes_[static_cast<std::size_t>(k)];
}

namespace {

void validate_descriptor(const RingDescriptor& ring)
{
    if (ring.characteristic() != 0 && ring.characteristic() != 2) {
        throw schema_error("characteristic must be 0 or 2");
    }
    std::set<std::string> names;
    for (const auto& g : ring.generators()) {
        if (g.name.empty()) {
            throw schema_error("generator with empty name");
        }
        if (g.degree < 1) {
            throw schema_error("generator '" + g.name + "' must have degree >= 1");
        }
        if (!names.insert(g.name).second) {
            throw schema_error("duplicate generator name '" + g.name + "'");
        }
    }
    if (ring.max_class_index() < 0) {
        throw schema_error("projective-class table must contain p_0");
    }
    for (int k = 0; k <= ring.max_class_index(); ++k) {
        for (const auto& [mono, coeff] : ring.class_terms(k)) {
            if (coeff.characteristic() != ring.characteristic()) {
                throw schema_error("projective class in the wrong ground field");
            }
            if (coeff.is_zero()) {
                throw schema_error("projective class stores a zero term");
            }
            if (mono.degree(ring) != k) {
                throw schema_error("projective class p_" + std::to_string(k) +
                                   " is not homogeneous of degree " + std::to_string(k));
            }
        }
    }
    const ClassTerms& p0 = ring.class_terms(0);
    if (p0.size() != 1 || !p0.front().first.is_unit() || !p0.front().second.is_one()) {
        throw schema_error("p_0 must be the unit class");
    }
}

} // namespace

RingPtr RingDescriptor::mu_rational(int max_class_index)
{
    if (max_class_index < 0) {
        throw error("class table must cover index 0");
    }
    auto ring = std::shared_ptr<RingDescriptor>(new RingDescriptor());
    ring->name_ = "mu-rational";
    ring->characteristic_ = 0;
    for (int k = 1; k <= max_class_index; ++k) {
        ring->generators_.push_back({"m" + std::to_string(k), k});
    }
    ring->classes_.push_back({{Monomial::unit(), Scalar::one(0)}});
    for (int k = 1; k <= max_class_index; ++k) {
        ring->classes_.push_back({{Monomial::generator(k - 1), Scalar::one(0)}});
    }
    validate_descriptor(*ring);
    return ring;
}

RingPtr RingDescriptor::n_mod2(int max_class_index)
{
    if (max_class_index < 0) {
        throw error("class table must cover index 0");
    }
    auto ring = std::shared_ptr<RingDescriptor>(new RingDescriptor());
    ring->name_ = "n-mod2";
    ring->characteristic_ = 2;
    std::map<int, int> degree_to_index;
    for (int n = 2; n <= max_class_index; ++n) {
        // n = 2^s - 1 carries no polynomial generator
        if (((n + 1) & n) == 0) {
            continue;
        }
        degree_to_index[n] = static_cast<int>(ring->generators_.size());
        ring->generators_.push_back({"x" + std::to_string(n), n});
    }
    ring->classes_.push_back({{Monomial::unit(), Scalar::one(2)}});
    for (int k = 1; k <= max_class_index; ++k) {
        if (k % 2 != 0) {
            ring->classes_.push_back({}); // odd projective spaces bound
        } else {
            ring->classes_.push_back(
                {{Monomial::generator(degree_to_index.at(k)), Scalar::one(2)}});
        }
    }
    validate_descriptor(*ring);
    return ring;
}

RingPtr RingDescriptor::custom(std::string name, int characteristic,
                               std::vector<Generator> generators,
                               std::vector<ClassTerms> projective_classes)
{
    auto ring = std::shared_ptr<RingDescriptor>(new RingDescriptor());
    ring->name_ = name.empty() ? "custom" : std::move(name);
    ring->characteristic_ = characteristic;
    ring->generators_ = std::move(generators);
    ring->classes_ = std::move(projective_classes);
    validate_descriptor(*ring);
    return ring;
}

namespace {

bool class_tables_agree(const RingDescriptor& a, const RingDescriptor& b)
{
    const int common = std::min(a.max_class_index(), b.max_class_index());
    for (int k = 0; k <= common; ++k) {
        if (!(a.class_terms(k) == b.class_terms(k))) {
            return false;
        }
    }
    return true;
}

} // namespace

bool ring_compatible(const RingPtr& a, const RingPtr& b)
{
    if (a == b) {
        return true;
    }
    if (!a || !b) {
        return false;
    }
    if (a->name() != b->name() || a->characteristic() != b->characteristic()) {
        return false;
    }
    const auto& ga = a->generators();
    const auto& gb = b->generators();
    const std::size_t common = std::min(ga.size(), gb.size());
    if (!std::equal(ga.begin(), ga.begin() + static_cast<long>(common), gb.begin())) {
        return false;
    }
    return class_tables_agree(*a, *b);
}

RingPtr richer_ring(const RingPtr& a, const RingPtr& b)
{
    return b->max_class_index() > a->max_class_index() ? b : a;
}

void require_compatible(const RingPtr& a, const RingPtr& b)
{
    if (!ring_compatible(a, b)) {
        throw mismatch_error("operands belong to different coefficient rings");
    }
}

GradedPolynomial::GradedPolynomial(RingPtr ring, int degree)
    : ring_(std::move(ring)), degree_(degree)
{
    if (!ring_) {
        throw error("polynomial without a ring");
    }
}

GradedPolynomial GradedPolynomial::from_terms(RingPtr ring, int degree,
                                              std::map<Monomial, Scalar> terms)
{
    GradedPolynomial p(std::move(ring), degree);
    for (auto it = terms.begin(); it != terms.end();) {
        if (it->second.is_zero()) {
            it = terms.erase(it);
            continue;
        }
        if (it->second.characteristic() != p.ring_->characteristic()) {
            throw mismatch_error("coefficient in the wrong ground field");
        }
        if (it->first.degree(*p.ring_) != degree) {
            throw_grading("polynomial term of degree " +
                          std::to_string(it->first.degree(*p.ring_)) +
                          " in a polynomial declared of degree " + std::to_string(degree));
        }
        ++it;
    }
    p.terms_ = std::move(terms);
    return p;
}

GradedPolynomial GradedPolynomial::zero(RingPtr ring, int degree)
{
    return GradedPolynomial(std::move(ring), degree);
}

GradedPolynomial GradedPolynomial::one(RingPtr ring)
{
    if (!ring) {
        throw error("polynomial without a ring");
    }
    Scalar unit = Scalar::one(ring->characteristic());
    return constant(std::move(ring), std::move(unit));
}

GradedPolynomial GradedPolynomial::constant(RingPtr ring, Scalar value)
{
    std::map<Monomial, Scalar> terms;
    if (!value.is_zero()) {
        terms.emplace(Monomial::unit(), std::move(value));
    }
    return from_terms(std::move(ring), 0, std::move(terms));
}

GradedPolynomial GradedPolynomial::generator(RingPtr ring, int index)
{
    const int degree = ring->generator(index).degree;
    std::map<Monomial, Scalar> terms;
    terms.emplace(Monomial::generator(index), Scalar::one(ring->characteristic()));
    return from_terms(std::move(ring), degree, std::move(terms));
}

GradedPolynomial GradedPolynomial::monomial(RingPtr ring, Monomial m, Scalar coeff)
{
    const int degree = m.degree(*ring);
    std::map<Monomial, Scalar> terms;
    if (!coeff.is_zero()) {
        terms.emplace(std::move(m), std::move(coeff));
    }
    return from_terms(std::move(ring), degree, std::move(terms));
}

bool GradedPolynomial::is_one() const
{
    return terms_.size() == 1 && terms_.begin()->first.is_unit() &&
           terms_.begin()->second.is_one();
}

bool GradedPolynomial::is_unit_scalar() const
{
    return terms_.size() == 1 && terms_.begin()->first.is_unit() &&
           terms_.begin()->second.is_unit();
}

Scalar GradedPolynomial::unit_scalar() const
{
    if (!is_unit_scalar()) {
        throw error("leading coefficient is not a unit scalar");
    }
    return terms_.begin()->second;
}

GradedPolynomial GradedPolynomial::operator-() const
{
    std::map<Monomial, Scalar> terms;
    for (const auto& [m, c] : terms_) {
        terms.emplace(m, -c);
    }
    return from_terms(ring_, degree_, std::move(terms));
}

GradedPolynomial GradedPolynomial::scaled(const Scalar& s) const
{
    std::map<Monomial, Scalar> terms;
    if (!s.is_zero()) {
        for (const auto& [m, c] : terms_) {
            Scalar sc = c * s;
            if (!sc.is_zero()) {
                terms.emplace(m, std::move(sc));
            }
        }
    }
    return from_terms(ring_, degree_, std::move(terms));
}

GradedPolynomial GradedPolynomial::scaled_by_int(long n) const
{
    return scaled(Scalar::from_integer(n, ring_->characteristic()));
}

bool GradedPolynomial::operator==(const GradedPolynomial& o) const
{
    if (!ring_compatible(ring_, o.ring_)) {
        return false;
    }
    if (is_zero() && o.is_zero()) {
        return true;
    }
    return degree_ == o.degree_ && terms_ == o.terms_;
}

GradedPolynomial poly_add(const GradedPolynomial& a, const GradedPolynomial& b)
{
    require_compatible(a.ring(), b.ring());
    if (a.degree() != b.degree() && !a.is_zero() && !b.is_zero()) {
        throw mismatch_error("adding polynomials of degrees " +
                             std::to_string(a.degree()) + " and " +
                             std::to_string(b.degree()));
    }
    const int degree = a.is_zero() && !b.is_zero() ? b.degree() : a.degree();
    std::map<Monomial, Scalar> terms = a.terms();
    for (const auto& [m, c] : b.terms()) {
        auto it = terms.find(m);
        if (it == terms.end()) {
            terms.emplace(m, c);
        } else {
            it->second = it->second + c;
            if (it->second.is_zero()) {
                terms.erase(it);
            }
        }
    }
    return GradedPolynomial::from_terms(richer_ring(a.ring(), b.ring()), degree,
                                        std::move(terms));
}

GradedPolynomial poly_sub(const GradedPolynomial& a, const GradedPolynomial& b)
{
    return poly_add(a, -b);
}

GradedPolynomial poly_mul(const GradedPolynomial& a, const GradedPolynomial& b)
{
    require_compatible(a.ring(), b.ring());
    std::map<Monomial, Scalar> terms;
    for (const auto& [ma, ca] : a.terms()) {
        for (const auto& [mb, cb] : b.terms()) {
            Scalar prod = ca * cb;
            if (prod.is_zero()) {
                continue;
            }
            Monomial m = ma.times(mb);
            auto it = terms.find(m);
            if (it == terms.end()) {
                terms.emplace(std::move(m), std::move(prod));
            } else {
                it->second = it->second + prod;
                if (it->second.is_zero()) {
                    terms.erase(it);
                }
            }
        }
    }
    return GradedPolynomial::from_terms(richer_ring(a.ring(), b.ring()),
                                        a.degree() + b.degree(), std::move(terms));
}

GradedPolynomial designated_class(const RingPtr& ring, int k)
{
    const ClassTerms& raw = ring->class_terms(k);
    std::map<Monomial, Scalar> terms(raw.begin(), raw.end());
    return GradedPolynomial::from_terms(ring, k, std::move(terms));
}

} // namespace tatecalc
