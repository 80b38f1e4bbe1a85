#ifndef TATECALC_SCALAR_HPP
#define TATECALC_SCALAR_HPP

#include <gmpxx.h>

#include <string>
#include <variant>

#include "tatecalc/errors.hpp"

namespace tatecalc {

/// Exact rational number, always in lowest terms with positive denominator.
class Rational {
public:
    Rational() : q_(0) {}
    explicit Rational(long n) : q_(n) {}
    Rational(long num, long den);

    // Parses "num", "num/den" or a leading-sign variant thereof.
    static Rational parse(const std::string& text);

    Rational operator+(const Rational& o) const { return Rational(q_ + o.q_); }
    Rational operator-(const Rational& o) const { return Rational(q_ - o.q_); }
    Rational operator*(const Rational& o) const { return Rational(q_ * o.q_); }
    Rational operator/(const Rational& o) const;
    Rational operator-() const { return Rational(-q_); }

    bool operator==(const Rational& o) const { return q_ == o.q_; }
    bool operator!=(const Rational& o) const { return q_ != o.q_; }

    bool is_zero() const { return sgn(q_) == 0; }
    bool is_one() const { return q_ == 1; }
    bool is_minus_one() const { return q_ == -1; }
    int sign() const { return sgn(q_); }

    std::string numerator_string() const { return q_.get_num().get_str(); }
    std::string denominator_string() const { return q_.get_den().get_str(); }

    // "num" when the denominator is 1, otherwise "num/den".
    std::string to_string() const;

private:
    explicit Rational(mpq_class q) : q_(std::move(q)) { q_.canonicalize(); }

    mpq_class q_;
};

/// Element of the field with two elements.
class Gf2 {
public:
    Gf2() : bit_(false) {}
    explicit Gf2(bool b) : bit_(b) {}

    Gf2 operator+(Gf2 o) const { return Gf2(bit_ != o.bit_); }
    Gf2 operator*(Gf2 o) const { return Gf2(bit_ && o.bit_); }
    Gf2 operator-() const { return *this; }
    bool operator==(Gf2 o) const { return bit_ == o.bit_; }

    bool is_zero() const { return !bit_; }
    bool is_one() const { return bit_; }

    std::string to_string() const { return bit_ ? "1" : "0"; }

private:
    bool bit_;
};

/// Ground-field element: a rational in characteristic 0, a bit in
/// characteristic 2. Mixed-characteristic arithmetic is a hard error.
class Scalar {
public:
    Scalar() : v_(Rational()) {}
    explicit Scalar(Rational q) : v_(std::move(q)) {}
    explicit Scalar(Gf2 b) : v_(b) {}

    static Scalar zero(int characteristic);
    static Scalar one(int characteristic);
    static Scalar from_integer(long n, int characteristic);

    int characteristic() const { return std::holds_alternative<Gf2>(v_) ? 2 : 0; }

    Scalar operator+(const Scalar& o) const;
    Scalar operator*(const Scalar& o) const;
    Scalar operator-() const;

    bool operator==(const Scalar& o) const;
    bool operator!=(const Scalar& o) const { return !(*this == o); }

    bool is_zero() const;
    bool is_one() const;
    // True for 1 and, in characteristic 0, for -1: the scalars accepted as
    // leading coefficients by series inversion and reversion.
    bool is_unit() const;

    const Rational& rational() const;
    Gf2 gf2() const;

    std::string to_string() const;

private:
    std::variant<Rational, Gf2> v_;
};

} // namespace tatecalc

#endif
