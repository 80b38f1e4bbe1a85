#ifndef TATECALC_RING_HPP
#define TATECALC_RING_HPP

#include <map>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "tatecalc/scalar.hpp"

namespace tatecalc {

class RingDescriptor;
using RingPtr = std::shared_ptr<const RingDescriptor>;

/// Product of ring generators with positive exponents. Generators are
/// referenced by their index in the owning RingDescriptor; the factor list
/// is sorted by index and never stores a zero exponent. The empty product
/// is the unit monomial.
class Monomial {
public:
    Monomial() = default;

    static Monomial unit() { return Monomial(); }
    static Monomial generator(int index, int exponent = 1);

    // Exponentwise sum of the two factor lists.
    Monomial times(const Monomial& o) const;

    bool is_unit() const { return factors_.empty(); }
    const std::vector<std::pair<int, int>>& factors() const { return factors_; }

    int degree(const RingDescriptor& ring) const;

    bool operator==(const Monomial& o) const { return factors_ == o.factors_; }
    bool operator<(const Monomial& o) const { return factors_ < o.factors_; }

private:
    std::vector<std::pair<int, int>> factors_; // (generator index, exponent > 0)
};

struct Generator {
    std::string name;
    int degree = 0;

    bool operator==(const Generator& o) const
    {
        return name == o.name && degree == o.degree;
    }
};

/// One term of a designated projective class, stored as raw data so the
/// descriptor does not hold polynomials that point back at itself.
using ClassTerms = std::vector<std::pair<Monomial, Scalar>>;

/// Coefficient-ring preset: characteristic, graded generator table and the
/// designated projective-class sequence p_0, p_1, ... The table is finite;
/// indices past the end are a hard error, never a silent zero.
class RingDescriptor {
public:
    // Rationalized complex cobordism: Q[m_1, ..., m_K] with deg m_k = k and
    // p_k = m_k. The table covers indices 0..max_class_index.
    static RingPtr mu_rational(int max_class_index);

    // Unoriented cobordism mod 2: GF(2)[x_n : 2 <= n <= K, n != 2^s - 1]
    // with p_0 = 1, p_k = x_k for even k >= 2 and p_k = 0 for odd k.
    static RingPtr n_mod2(int max_class_index);

    static RingPtr custom(std::string name, int characteristic,
                          std::vector<Generator> generators,
                          std::vector<ClassTerms> projective_classes);

    const std::string& name() const { return name_; }
    int characteristic() const { return characteristic_; }

    int generator_count() const { return static_cast<int>(generators_.size()); }
    const Generator& generator(int index) const;
    const std::vector<Generator>& generators() const { return generators_; }
    // Index of the named generator, or -1.
    int find_generator(const std::string& name) const;

    int max_class_index() const { return static_cast<int>(classes_.size()) - 1; }
    const ClassTerms& class_terms(int k) const;

    bool is_preset() const { return name_ == "mu-rational" || name_ == "n-mod2"; }

private:
    RingDescriptor() = default;

    std::string name_;
    int characteristic_ = 0;
    std::vector<Generator> generators_;
    std::vector<ClassTerms> classes_;
};

// Two descriptors are compatible when one extends the other: same name and
// characteristic, generator and class tables agreeing on their common
// prefix. Elements of compatible rings may be combined; the richer
// descriptor wins.
bool ring_compatible(const RingPtr& a, const RingPtr& b);
RingPtr richer_ring(const RingPtr& a, const RingPtr& b);
void require_compatible(const RingPtr& a, const RingPtr& b);

/// Homogeneous element of the coefficient ring: a finite monomial-to-scalar
/// map in which every monomial has the declared degree. The zero polynomial
/// is valid at any declared degree.
class GradedPolynomial {
public:
    GradedPolynomial(RingPtr ring, int degree);

    // Validates homogeneity and scalar characteristic; drops zero scalars.
    static GradedPolynomial from_terms(RingPtr ring, int degree,
                                       std::map<Monomial, Scalar> terms);

    static GradedPolynomial zero(RingPtr ring, int degree);
    static GradedPolynomial one(RingPtr ring);
    static GradedPolynomial constant(RingPtr ring, Scalar value);
    static GradedPolynomial generator(RingPtr ring, int index);
    static GradedPolynomial monomial(RingPtr ring, Monomial m, Scalar coeff);

    const RingPtr& ring() const { return ring_; }
    int degree() const { return degree_; }
    const std::map<Monomial, Scalar>& terms() const { return terms_; }

    bool is_zero() const { return terms_.empty(); }
    // True when the polynomial is the scalar 1 (resp. -1 in characteristic 0).
    bool is_one() const;
    bool is_unit_scalar() const;
    Scalar unit_scalar() const;

    GradedPolynomial operator-() const;
    GradedPolynomial scaled(const Scalar& s) const;
    GradedPolynomial scaled_by_int(long n) const;

    // Equal ring (compatible), equal terms; zero compares equal to zero at
    // any declared degree.
    bool operator==(const GradedPolynomial& o) const;
    bool operator!=(const GradedPolynomial& o) const { return !(*this == o); }

private:
    RingPtr ring_;
    int degree_ = 0;
    std::map<Monomial, Scalar> terms_;
};

GradedPolynomial poly_add(const GradedPolynomial& a, const GradedPolynomial& b);
GradedPolynomial poly_sub(const GradedPolynomial& a, const GradedPolynomial& b);
GradedPolynomial poly_mul(const GradedPolynomial& a, const GradedPolynomial& b);

// The designated class p_k, materialized over the given ring.
GradedPolynomial designated_class(const RingPtr& ring, int k);

} // namespace tatecalc

#endif
