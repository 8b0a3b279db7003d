#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace cflab {

/// Arbitrary-precision signed integer with 64-bit limbs.
///
/// Sign-magnitude representation; limbs are little-endian with no leading
/// zero limbs (zero is the empty limb vector). Division truncates toward
/// zero, like the built-in integer types.
class BigInt {
  public:
    BigInt() = default;
    BigInt(long long v);
    BigInt(unsigned long long v);
    BigInt(int v) : BigInt(static_cast<long long>(v)) {}
    BigInt(unsigned v) : BigInt(static_cast<unsigned long long>(v)) {}
    BigInt(long v) : BigInt(static_cast<long long>(v)) {}
    BigInt(unsigned long v) : BigInt(static_cast<unsigned long long>(v)) {}

    static BigInt from_decimal(std::string_view s);
    static BigInt pow2(std::size_t k);
    static BigInt pow10(std::size_t k);
    static BigInt gcd(BigInt a, BigInt b);

    std::string to_decimal() const;

    bool is_zero() const { return limbs_.empty(); }
    int sign() const { return limbs_.empty() ? 0 : (neg_ ? -1 : 1); }
    BigInt abs() const;
    BigInt operator-() const;

    // Number of bits in the magnitude; 0 for zero.
    std::size_t bit_length() const;
    // Number of trailing zero bits; 0 for zero.
    std::size_t count_trailing_zeros() const;
    bool bit(std::size_t i) const;

    bool fits_u64() const { return !neg_ && limbs_.size() <= 1; }
    std::uint64_t to_u64() const;  // throws std::overflow_error if too wide
    double to_double() const;      // round-trip approximation, may overflow to inf

    // Top 128 bits of the magnitude and the exponent e such that the value
    // is mant * 2^e truncated (mant has its top bit set). Requires nonzero.
    struct Frexp {
        unsigned __int128 mant;
        long exp;
    };
    Frexp frexp128() const;

    int compare(const BigInt& o) const;  // -1, 0, +1

    BigInt& operator+=(const BigInt& o);
    BigInt& operator-=(const BigInt& o);
    BigInt& operator*=(const BigInt& o);
    BigInt& operator*=(std::uint64_t m);
    BigInt& operator<<=(std::size_t bits);
    BigInt& operator>>=(std::size_t bits);

    friend BigInt operator+(BigInt a, const BigInt& b) { return a += b; }
    friend BigInt operator-(BigInt a, const BigInt& b) { return a -= b; }
    friend BigInt operator*(const BigInt& a, const BigInt& b);
    friend BigInt operator*(BigInt a, std::uint64_t m) { return a *= m; }
    friend BigInt operator<<(BigInt a, std::size_t bits) { return a <<= bits; }
    friend BigInt operator>>(BigInt a, std::size_t bits) { return a >>= bits; }

    // q = trunc(a/b), r = a - q*b (sign of r follows a). Throws on b == 0.
    static void divmod(const BigInt& a, const BigInt& b, BigInt& q, BigInt& r);
    friend BigInt operator/(const BigInt& a, const BigInt& b);
    friend BigInt operator%(const BigInt& a, const BigInt& b);

    friend bool operator==(const BigInt& a, const BigInt& b) { return a.compare(b) == 0; }
    friend bool operator!=(const BigInt& a, const BigInt& b) { return a.compare(b) != 0; }
    friend bool operator<(const BigInt& a, const BigInt& b) { return a.compare(b) < 0; }
    friend bool operator<=(const BigInt& a, const BigInt& b) { return a.compare(b) <= 0; }
    friend bool operator>(const BigInt& a, const BigInt& b) { return a.compare(b) > 0; }
    friend bool operator>=(const BigInt& a, const BigInt& b) { return a.compare(b) >= 0; }

    const std::vector<std::uint64_t>& limbs() const { return limbs_; }

  private:
    bool neg_ = false;
    std::vector<std::uint64_t> limbs_;

    void trim();
    static int cmp_mag(const std::vector<std::uint64_t>& a, const std::vector<std::uint64_t>& b);
    static void add_mag(std::vector<std::uint64_t>& a, const std::vector<std::uint64_t>& b);
    static void sub_mag(std::vector<std::uint64_t>& a, const std::vector<std::uint64_t>& b);
    static void divmod_mag(const std::vector<std::uint64_t>& a, const std::vector<std::uint64_t>& b,
                           std::vector<std::uint64_t>& q, std::vector<std::uint64_t>& r);
};

}  // namespace cflab
