#include "iazf/rational.hpp"

#include <cstdio>
#include <ostream>

#include "iazf/core.hpp"

namespace iazf {

Rational::Rational(std::int64_t num, std::int64_t den) : Rational(BigInt(num), BigInt(den)) {}

Rational::Rational(const BigInt& num, const BigInt& den) {
    if (den == 0) throw DomainError("rational with zero denominator");
    // the backend wants a positive denominator
    value_ = den < 0 ? boost::multiprecision::cpp_rational(-num, -den) : boost::multiprecision::cpp_rational(num, den);
}

Rational& Rational::operator/=(const Rational& o) {
    if (o.is_zero()) throw DomainError("division by zero rational");
    value_ /= o.value_;
    return *this;
}

std::string Rational::to_string() const {
    if (denominator() == 1) return numerator().str();
    return to_fraction();
}

std::string Rational::to_fraction() const { return numerator().str() + "/" + denominator().str(); }

std::string Rational::to_decimal() const {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6g", to_double());
    return buf;
}

Rational Rational::parse(const std::string& text) {
    try {
        const auto slash = text.find('/');
        if (slash == std::string::npos) return Rational(BigInt(text), BigInt(1));
        return Rational(BigInt(text.substr(0, slash)), BigInt(text.substr(slash + 1)));
    } catch (const std::runtime_error&) {
        throw DomainError("cannot parse rational '" + text + "'");
    }
}

std::ostream& operator<<(std::ostream& os, const Rational& q) { return os << q.to_string(); }

}  // namespace iazf
