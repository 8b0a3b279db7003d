#include "cflab/rational.hpp"

#include <cmath>
#include <stdexcept>

namespace cflab {

void Rational::reduce() {
    if (den_.is_zero()) throw std::domain_error("Rational: zero denominator");
    if (den_.sign() < 0) {
        den_ = -den_;
        num_ = -num_;
    }
    if (num_.is_zero()) {
        den_ = BigInt{1};
        return;
    }
    BigInt g = BigInt::gcd(num_, den_);
    if (g != BigInt{1}) {
        num_ = num_ / g;
        den_ = den_ / g;
    }
}

Rational::Rational(BigInt n, BigInt d) : num_(std::move(n)), den_(std::move(d)) {
    reduce();
}

Rational Rational::dyadic(BigInt k, std::size_t bits) {
    Rational r;
    if (k.is_zero()) return r;
    std::size_t tz = std::min(k.count_trailing_zeros(), bits);
    r.num_ = k >> tz;
    r.den_ = BigInt::pow2(bits - tz);
    return r;
}

Rational Rational::from_coprime(BigInt n, BigInt d) {
    Rational r;
    r.num_ = std::move(n);
    r.den_ = std::move(d);
    if (r.den_.sign() <= 0) throw std::domain_error("Rational: denominator must be positive");
    if (r.num_.is_zero()) r.den_ = BigInt{1};
    return r;
}

Rational Rational::from_string(std::string_view s) {
    auto slash = s.find('/');
    if (slash == std::string_view::npos) {
        return Rational{BigInt::from_decimal(s), BigInt{1}};
    }
    return Rational{BigInt::from_decimal(s.substr(0, slash)),
                    BigInt::from_decimal(s.substr(slash + 1))};
}

bool Rational::in_unit_interval() const {
    return num_.sign() > 0 && num_ < den_;
}

Rational Rational::reciprocal() const {
    if (num_.is_zero()) throw std::domain_error("Rational: reciprocal of zero");
    Rational r;
    if (num_.sign() < 0) {
        r.num_ = -den_;
        r.den_ = -num_;
    } else {
        r.num_ = den_;
        r.den_ = num_;
    }
    return r;
}

std::string Rational::to_string() const {
    return num_.to_decimal() + "/" + den_.to_decimal();
}

double Rational::to_double() const {
    if (num_.is_zero()) return 0.0;
    auto fn = num_.frexp128(), fd = den_.frexp128();
    double m = (static_cast<double>(static_cast<std::uint64_t>(fn.mant >> 64)) * 0x1p64 +
                static_cast<double>(static_cast<std::uint64_t>(fn.mant))) /
               (static_cast<double>(static_cast<std::uint64_t>(fd.mant >> 64)) * 0x1p64 +
                static_cast<double>(static_cast<std::uint64_t>(fd.mant)));
    double r = std::ldexp(m, static_cast<int>(fn.exp - fd.exp));
    return num_.sign() < 0 ? -r : r;
}

Rational operator+(const Rational& a, const Rational& b) {
    return Rational{a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_};
}

Rational operator-(const Rational& a, const Rational& b) {
    return Rational{a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_};
}

Rational operator*(const Rational& a, const Rational& b) {
    return Rational{a.num_ * b.num_, a.den_ * b.den_};
}

Rational operator/(const Rational& a, const Rational& b) {
    if (b.num_.is_zero()) throw std::domain_error("Rational: division by zero");
    return Rational{a.num_ * b.den_, a.den_ * b.num_};
}

Rational Rational::operator-() const {
    Rational r = *this;
    r.num_ = -r.num_;
    return r;
}

int Rational::compare(const Rational& o) const {
    return (num_ * o.den_).compare(o.num_ * den_);
}

}  // namespace cflab
