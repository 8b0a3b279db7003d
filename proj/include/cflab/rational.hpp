#pragma once

#include <string>
#include <string_view>
#include <utility>

#include "cflab/bigint.hpp"

namespace cflab {

/// Exact rational number, always kept in lowest terms with a positive
/// denominator. Parses from and prints to the text form "p/q" in base 10.
class Rational {
  public:
    Rational() : num_(0), den_(1) {}
    Rational(BigInt n, BigInt d);  // reduces; throws std::domain_error if d == 0
    Rational(long long n) : num_(n), den_(1) {}

    // k / 2^bits, reduced by shifting out common powers of two.
    static Rational dyadic(BigInt k, std::size_t bits);
    // Constructs from an already-coprime pair (den > 0). No gcd is taken.
    static Rational from_coprime(BigInt n, BigInt d);
    static Rational from_string(std::string_view s);

    const BigInt& num() const { return num_; }
    const BigInt& den() const { return den_; }

    bool is_zero() const { return num_.is_zero(); }
    int sign() const { return num_.sign(); }
    bool in_unit_interval() const;  // 0 < x < 1

    Rational reciprocal() const;
    std::string to_string() const;
    double to_double() const;

    friend Rational operator+(const Rational& a, const Rational& b);
    friend Rational operator-(const Rational& a, const Rational& b);
    friend Rational operator*(const Rational& a, const Rational& b);
    friend Rational operator/(const Rational& a, const Rational& b);
    Rational operator-() const;

    int compare(const Rational& o) const;
    friend bool operator==(const Rational& a, const Rational& b) {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }
    friend bool operator!=(const Rational& a, const Rational& b) { return !(a == b); }
    friend bool operator<(const Rational& a, const Rational& b) { return a.compare(b) < 0; }
    friend bool operator<=(const Rational& a, const Rational& b) { return a.compare(b) <= 0; }
    friend bool operator>(const Rational& a, const Rational& b) { return a.compare(b) > 0; }
    friend bool operator>=(const Rational& a, const Rational& b) { return a.compare(b) >= 0; }

  private:
    BigInt num_, den_;
    void reduce();
};

}  // namespace cflab
