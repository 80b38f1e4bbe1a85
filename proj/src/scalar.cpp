#include "tatecalc/scalar.hpp"

#include <utility>

namespace tatecalc {

std::atomic<std::uint64_t>& grading_violations() noexcept
{
    static std::atomic<std::uint64_t> count{0};
    return count;
}

void throw_grading(const std::string& what)
{
    grading_violations().fetch_add(1, std::memory_order_relaxed);
    throw grading_error(what);
}

Rational::Rational(long num, long den) : q_(num, den)
{
    if (den == 0) {
        throw error("rational with zero denominator");
    }
    q_.canonicalize();
}

Rational Rational::parse(const std::string& text)
{
    if (text.empty()) {
        throw schema_error("empty rational literal");
    }
    for (std::size_t i = 0; i < text.size(); ++i) {
        const char c = text[i];
        const bool ok = (c >= '0' && c <= '9') || c == '/' || (c == '-' && i == 0);
        if (!ok) {
            throw schema_error("malformed rational literal '" + text + "'");
        }
    }
    const auto slash = text.find('/');
    if (slash == 0 || slash == text.size() - 1 ||
        (slash != std::string::npos && text.find('/', slash + 1) != std::string::npos)) {
        throw schema_error("malformed rational literal '" + text + "'");
    }
    mpq_class q;
    if (q.set_str(text, 10) != 0) {
        throw schema_error("malformed rational literal '" + text + "'");
    }
    if (sgn(q.get_den()) == 0) {
        throw schema_error("zero denominator in '" + text + "'");
    }
    q.canonicalize();
    return Rational(std::move(q));
}

Rational Rational::operator/(const Rational& o) const
{
    if (o.is_zero()) {
        throw error("rational division by zero");
    }
    return Rational(q_ / o.q_);
}

std::string Rational::to_string() const
{
    if (q_.get_den() == 1) {
        return q_.get_num().get_str();
    }
    return q_.get_num().get_str() + "/" + q_.get_den().get_str();
}

Scalar Scalar::zero(int characteristic)
{
    return characteristic == 2 ? Scalar(Gf2(false)) : Scalar(Rational());
}

Scalar Scalar::one(int characteristic)
{
    return characteristic == 2 ? Scalar(Gf2(true)) : Scalar(Rational(1));
}

Scalar Scalar::from_integer(long n, int characteristic)
{
    if (characteristic == 2) {
        return Scalar(Gf2((n % 2) != 0));
    }
    return Scalar(Rational(n));
}

namespace {

void require_same_field(const Scalar& a, const Scalar& b)
{
    if (a.characteristic() != b.characteristic()) {
        throw mismatch_error("scalar arithmetic across characteristics");
    }
}

} // namespace

Scalar Scalar::operator+(const Scalar& o) const
{
    require_same_field(*this, o);
    if (characteristic() == 2) {
        return Scalar(gf2() + o.gf2());
    }
    return Scalar(rational() + o.rational());
}

Scalar Scalar::operator*(const Scalar& o) const
{
    require_same_field(*this, o);
    if (characteristic() == 2) {
        return Scalar(gf2() * o.gf2());
    }
    return Scalar(rational() * o.rational());
}

Scalar Scalar::operator-() const
{
    if (characteristic() == 2) {
        return *this;
    }
    return Scalar(-rational());
}

bool Scalar::operator==(const Scalar& o) const
{
    if (characteristic() != o.characteristic()) {
        return false;
    }
    if (characteristic() == 2) {
        return gf2() == o.gf2();
    }
    return rational() == o.rational();
}

bool Scalar::is_zero() const
{
    return characteristic() == 2 ? gf2().is_zero() : rational().is_zero();
}

bool Scalar::is_one() const
{
    return characteristic() == 2 ? gf2().is_one() : rational().is_one();
}

bool Scalar::is_unit() const
{
    if (characteristic() == 2) {
        return gf2().is_one();
    }
    return rational().is_one() || rational().is_minus_one();
}

const Rational& Scalar::rational() const
{
    if (characteristic() != 0) {
        throw mismatch_error("rational value requested from a GF(2) scalar");
    }
    return std::get<Rational>(v_);
}

Gf2 Scalar::gf2() const
{
    if (characteristic() != 2) {
        throw mismatch_error("GF(2) value requested from a rational scalar");
    }
    return std::get<Gf2>(v_);
}

std::string Scalar::to_string() const
{
    return characteristic() == 2 ? gf2().to_string() : rational().to_string();
}

} // namespace tatecalc
