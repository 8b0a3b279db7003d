#include "cflab/bigint.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <stdexcept>

namespace cflab {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

void BigInt::trim() {
    while (!limbs_.empty() && limbs_.back() == 0) limbs_.pop_back();
    if (limbs_.empty()) neg_ = false;
}

BigInt::BigInt(long long v) {
    if (v == 0) return;
    neg_ = v < 0;
    // careful with LLONG_MIN
    u64 mag = neg_ ? (~static_cast<u64>(v) + 1) : static_cast<u64>(v);
    limbs_.push_back(mag);
}

BigInt::BigInt(unsigned long long v) {
    if (v != 0) limbs_.push_back(v);
}

BigInt BigInt::pow2(std::size_t k) {
    BigInt r;
    r.limbs_.assign(k / 64 + 1, 0);
    r.limbs_.back() = u64{1} << (k % 64);
    return r;
}

BigInt BigInt::pow10(std::size_t k) {
    BigInt r{1};
    // 10^19 is the largest power of ten in a u64
    while (k >= 19) {
        r *= 10000000000000000000ull;
        k -= 19;
    }
    u64 m = 1;
    while (k--) m *= 10;
    return r *= m;
}

BigInt BigInt::abs() const {
    BigInt r = *this;
    r.neg_ = false;
    return r;
}

BigInt BigInt::operator-() const {
    BigInt r = *this;
    if (!r.limbs_.empty()) r.neg_ = !r.neg_;
    return r;
}

std::size_t BigInt::bit_length() const {
    if (limbs_.empty()) return 0;
    return (limbs_.size() - 1) * 64 + std::bit_width(limbs_.back());
}

std::size_t BigInt::count_trailing_zeros() const {
    if (limbs_.empty()) return 0;
    std::size_t i = 0;
    while (limbs_[i] == 0) ++i;
    return i * 64 + std::countr_zero(limbs_[i]);
}

bool BigInt::bit(std::size_t i) const {
    std::size_t w = i / 64;
    if (w >= limbs_.size()) return false;
    return (limbs_[w] >> (i % 64)) & 1;
}

std::uint64_t BigInt::to_u64() const {
    if (neg_ || limbs_.size() > 1) throw std::overflow_error("BigInt::to_u64: out of range");
    return limbs_.empty() ? 0 : limbs_[0];
}

double BigInt::to_double() const {
    if (limbs_.empty()) return 0.0;
    Frexp f = frexp128();
    double m = static_cast<double>(static_cast<u64>(f.mant >> 64)) * 0x1p64 +
               static_cast<double>(static_cast<u64>(f.mant));
    double r = std::ldexp(m, static_cast<int>(f.exp));
    return neg_ ? -r : r;
}

BigInt::Frexp BigInt::frexp128() const {
    if (limbs_.empty()) throw std::domain_error("BigInt::frexp128: zero");
    std::size_t bl = bit_length();
    long e = static_cast<long>(bl) - 128;
    u128 m = 0;
    // gather the top 128 bits, padding with zeros if the value is short
    for (std::size_t taken = 0; taken < 2; ++taken) {
        m <<= 64;
        std::size_t idx = limbs_.size() - 1 - taken;
        if (taken < limbs_.size()) m |= limbs_[idx];
    }
    int top = static_cast<int>((bl - 1) % 64);  // bit index of msb within top limb
    int shift = 63 - top;
    if (limbs_.size() >= 3 && shift > 0) {
        m = (m << shift) | (limbs_[limbs_.size() - 3] >> (64 - shift));
    } else {
        m <<= shift;
    }
    return {m, e};
}

int BigInt::cmp_mag(const std::vector<u64>& a, const std::vector<u64>& b) {
    if (a.size() != b.size()) return a.size() < b.size() ? -1 : 1;
    for (std::size_t i = a.size(); i-- > 0;) {
        if (a[i] != b[i]) return a[i] < b[i] ? -1 : 1;
    }
    return 0;
}

int BigInt::compare(const BigInt& o) const {
    if (neg_ != o.neg_) return neg_ ? -1 : 1;
    int c = cmp_mag(limbs_, o.limbs_);
    return neg_ ? -c : c;
}

void BigInt::add_mag(std::vector<u64>& a, const std::vector<u64>& b) {
    if (a.size() < b.size()) a.resize(b.size(), 0);
    u64 carry = 0;
    std::size_t i = 0;
    for (; i < b.size(); ++i) {
        u128 s = static_cast<u128>(a[i]) + b[i] + carry;
        a[i] = static_cast<u64>(s);
        carry = static_cast<u64>(s >> 64);
    }
    for (; carry && i < a.size(); ++i) {
        u128 s = static_cast<u128>(a[i]) + carry;
        a[i] = static_cast<u64>(s);
        carry = static_cast<u64>(s >> 64);
    }
    if (carry) a.push_back(carry);
}

// requires |a| >= |b|
void BigInt::sub_mag(std::vector<u64>& a, const std::vector<u64>& b) {
    u64 borrow = 0;
    for (std::size_t i = 0; i < b.size() || borrow; ++i) {
        u64 sub = (i < b.size() ? b[i] : 0);
        u64 ai = a[i];
        u64 r = ai - sub - borrow;
        borrow = (ai < sub) || (ai == sub && borrow);
        a[i] = r;
    }
    while (!a.empty() && a.back() == 0) a.pop_back();
}

BigInt& BigInt::operator+=(const BigInt& o) {
    if (neg_ == o.neg_) {
        add_mag(limbs_, o.limbs_);
    } else if (cmp_mag(limbs_, o.limbs_) >= 0) {
        sub_mag(limbs_, o.limbs_);
    } else {
        std::vector<u64> tmp = o.limbs_;
        sub_mag(tmp, limbs_);
        limbs_ = std::move(tmp);
        neg_ = o.neg_;
    }
    trim();
    return *this;
}

BigInt& BigInt::operator-=(const BigInt& o) {
    if (neg_ != o.neg_) {
        add_mag(limbs_, o.limbs_);
    } else if (cmp_mag(limbs_, o.limbs_) >= 0) {
        sub_mag(limbs_, o.limbs_);
    } else {
        std::vector<u64> tmp = o.limbs_;
        sub_mag(tmp, limbs_);
        limbs_ = std::move(tmp);
        neg_ = !neg_;
    }
    trim();
    return *this;
}

BigInt operator*(const BigInt& a, const BigInt& b) {
    BigInt r;
    if (a.limbs_.empty() || b.limbs_.empty()) return r;
    r.limbs_.assign(a.limbs_.size() + b.limbs_.size(), 0);
    for (std::size_t i = 0; i < a.limbs_.size(); ++i) {
        u64 carry = 0;
        u64 ai = a.limbs_[i];
        if (ai == 0) continue;
        for (std::size_t j = 0; j < b.limbs_.size(); ++j) {
            u128 cur = static_cast<u128>(ai) * b.limbs_[j] + r.limbs_[i + j] + carry;
            r.limbs_[i + j] = static_cast<u64>(cur);
            carry = static_cast<u64>(cur >> 64);
        }
        std::size_t k = i + b.limbs_.size();
        while (carry) {
            u128 cur = static_cast<u128>(r.limbs_[k]) + carry;
            r.limbs_[k] = static_cast<u64>(cur);
            carry = static_cast<u64>(cur >> 64);
            ++k;
        }
    }
    r.neg_ = a.neg_ != b.neg_;
    r.trim();
    return r;
}

BigInt& BigInt::operator*=(const BigInt& o) {
    *this = *this * o;
    return *this;
}

BigInt& BigInt::operator*=(std::uint64_t m) {
    if (m == 0 || limbs_.empty()) {
        limbs_.clear();
        neg_ = false;
        return *this;
    }
    u64 carry = 0;
    for (auto& l : limbs_) {
        u128 cur = static_cast<u128>(l) * m + carry;
        l = static_cast<u64>(cur);
        carry = static_cast<u64>(cur >> 64);
    }
    if (carry) limbs_.push_back(carry);
    return *this;
}

BigInt& BigInt::operator<<=(std::size_t bits) {
    if (limbs_.empty() || bits == 0) return *this;
    std::size_t words = bits / 64, rem = bits % 64;
    std::size_t n = limbs_.size();
    limbs_.resize(n + words + (rem ? 1 : 0), 0);
    if (rem) {
        for (std::size_t i = n; i-- > 0;) {
            u64 hi = limbs_[i] >> (64 - rem);
            limbs_[i + words + 1] |= hi;
            limbs_[i + words] = limbs_[i] << rem;
        }
    } else {
        for (std::size_t i = n; i-- > 0;) limbs_[i + words] = limbs_[i];
    }
    for (std::size_t i = 0; i < words; ++i) limbs_[i] = 0;
    trim();
    return *this;
}

BigInt& BigInt::operator>>=(std::size_t bits) {
    std::size_t words = bits / 64, rem = bits % 64;
    if (words >= limbs_.size()) {
        limbs_.clear();
        neg_ = false;
        return *this;
    }
    if (words) limbs_.erase(limbs_.begin(), limbs_.begin() + static_cast<long>(words));
    if (rem) {
        for (std::size_t i = 0; i + 1 < limbs_.size(); ++i) {
            limbs_[i] = (limbs_[i] >> rem) | (limbs_[i + 1] << (64 - rem));
        }
        limbs_.back() >>= rem;
    }
    trim();
    return *this;
}

// Knuth algorithm D on normalized limbs; quotient may alias nothing.
void BigInt::divmod_mag(const std::vector<u64>& a, const std::vector<u64>& b,
                        std::vector<u64>& q, std::vector<u64>& r) {
    if (cmp_mag(a, b) < 0) {
        q.clear();
        r = a;
        return;
    }
    if (b.size() == 1) {
        u64 d = b[0];
        q.assign(a.size(), 0);
        u128 rem = 0;
        for (std::size_t i = a.size(); i-- > 0;) {
            u128 cur = (rem << 64) | a[i];
            q[i] = static_cast<u64>(cur / d);
            rem = cur % d;
        }
        while (!q.empty() && q.back() == 0) q.pop_back();
        r.clear();
        if (rem) r.push_back(static_cast<u64>(rem));
        return;
    }

    const int s = std::countl_zero(b.back());
    const std::size_t n = b.size(), m = a.size() - n;
    std::vector<u64> v(n), u(a.size() + 1, 0);
    for (std::size_t i = n; i-- > 0;) {
        v[i] = (b[i] << s) | (s && i ? (b[i - 1] >> (64 - s)) : 0);
    }
    for (std::size_t i = a.size(); i-- > 0;) {
        u[i] = (a[i] << s) | (s && i ? (a[i - 1] >> (64 - s)) : 0);
    }
    if (s) u[a.size()] = a.back() >> (64 - s);

    q.assign(m + 1, 0);
    const u64 vtop = v[n - 1], vsec = v[n - 2];
    for (std::size_t j = m + 1; j-- > 0;) {
        u128 num = (static_cast<u128>(u[j + n]) << 64) | u[j + n - 1];
        u128 qhat = num / vtop;
        u128 rhat = num % vtop;
        while (qhat > ~u64{0} ||
               qhat * vsec > ((rhat << 64) | u[j + n - 2])) {
            --qhat;
            rhat += vtop;
            if (rhat > ~u64{0}) break;
        }
        // multiply and subtract
        u128 borrow = 0, carry = 0;
        for (std::size_t i = 0; i < n; ++i) {
            u128 p = qhat * v[i] + carry;
            carry = p >> 64;
            u64 plo = static_cast<u64>(p);
            u64 ui = u[i + j];
            u64 res = ui - plo - static_cast<u64>(borrow);
            borrow = (ui < plo || (ui == plo && borrow)) ? 1 : 0;
            u[i + j] = res;
        }
        u64 utop = u[j + n];
        u64 ctop = static_cast<u64>(carry);
        u64 res = utop - ctop - static_cast<u64>(borrow);
        bool neg = utop < ctop || (utop == ctop && borrow);
        u[j + n] = res;
        q[j] = static_cast<u64>(qhat);
        if (neg) {  // qhat was one too large; add back
            --q[j];
            u128 c2 = 0;
            for (std::size_t i = 0; i < n; ++i) {
                u128 sum = static_cast<u128>(u[i + j]) + v[i] + c2;
                u[i + j] = static_cast<u64>(sum);
                c2 = sum >> 64;
            }
            u[j + n] += static_cast<u64>(c2);
        }
    }
    while (!q.empty() && q.back() == 0) q.pop_back();
    r.assign(u.begin(), u.begin() + static_cast<long>(n));
    if (s) {
        for (std::size_t i = 0; i + 1 < n; ++i) {
            r[i] = (r[i] >> s) | (r[i + 1] << (64 - s));
        }
        r[n - 1] >>= s;
    }
    while (!r.empty() && r.back() == 0) r.pop_back();
}

void BigInt::divmod(const BigInt& a, const BigInt& b, BigInt& q, BigInt& r) {
    if (b.limbs_.empty()) throw std::domain_error("BigInt: division by zero");
    std::vector<u64> qm, rm;
    divmod_mag(a.limbs_, b.limbs_, qm, rm);
    q.limbs_ = std::move(qm);
    r.limbs_ = std::move(rm);
    q.neg_ = !q.limbs_.empty() && (a.neg_ != b.neg_);
    r.neg_ = !r.limbs_.empty() && a.neg_;
}

BigInt operator/(const BigInt& a, const BigInt& b) {
    BigInt q, r;
    BigInt::divmod(a, b, q, r);
    return q;
}

BigInt operator%(const BigInt& a, const BigInt& b) {
    BigInt q, r;
    BigInt::divmod(a, b, q, r);
    return r;
}

BigInt BigInt::gcd(BigInt a, BigInt b) {
    a.neg_ = b.neg_ = false;
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    std::size_t az = a.count_trailing_zeros(), bz = b.count_trailing_zeros();
    std::size_t shift = std::min(az, bz);
    a >>= az;
    b >>= bz;
    while (true) {
        int c = cmp_mag(a.limbs_, b.limbs_);
        if (c == 0) break;
        if (c < 0) std::swap(a, b);
        sub_mag(a.limbs_, b.limbs_);
        a.trim();
        if (a.is_zero()) {
            a = std::move(b);
            break;
        }
        a >>= a.count_trailing_zeros();
    }
    return a <<= shift;
}

BigInt BigInt::from_decimal(std::string_view s) {
    bool neg = false;
    if (!s.empty() && (s[0] == '-' || s[0] == '+')) {
        neg = s[0] == '-';
        s.remove_prefix(1);
    }
    if (s.empty()) throw std::invalid_argument("BigInt: empty decimal string");
    BigInt r;
    std::size_t i = 0;
    while (i < s.size()) {
        std::size_t chunk = std::min<std::size_t>(19, s.size() - i);
        u64 v = 0, scale = 1;
        for (std::size_t j = 0; j < chunk; ++j) {
            char c = s[i + j];
            if (c < '0' || c > '9') throw std::invalid_argument("BigInt: bad decimal digit");
            v = v * 10 + static_cast<u64>(c - '0');
            scale *= 10;
        }
        r *= scale;
        r += BigInt{v};
        i += chunk;
    }
    if (neg && !r.is_zero()) r.neg_ = true;
    return r;
}

std::string BigInt::to_decimal() const {
    if (limbs_.empty()) return "0";
    std::vector<u64> mag = limbs_, q;
    std::string out;
    const u64 base = 10000000000000000000ull;  // 10^19
    std::vector<u64> divisor{base};
    while (!mag.empty()) {
        std::vector<u64> rem;
        divmod_mag(mag, divisor, q, rem);
        u64 chunk = rem.empty() ? 0 : rem[0];
        mag = q;
        char buf[20];
        for (int i = 0; i < 19; ++i) {
            buf[i] = static_cast<char>('0' + chunk % 10);
            chunk /= 10;
        }
        for (int i = 0; i < 19; ++i) out.push_back(buf[i]);
    }
    while (out.size() > 1 && out.back() == '0') out.pop_back();
    if (neg_) out.push_back('-');
    std::reverse(out.begin(), out.end());
    return out;
}

}  // namespace cflab
