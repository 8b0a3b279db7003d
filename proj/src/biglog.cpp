#include "cflab/biglog.hpp"

#include <cstdint>
#include <stdexcept>

namespace cflab {

namespace {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

// 192 fractional bits of ln 2, log10 2 and 1/ln 10, most significant word
// first. Values from a 80-digit decimal evaluation; the unit tests
// cross-check them against independent series computations.
constexpr u64 kLn2Words[3] = {0xb17217f7d1cf79abull, 0xc9e3b39803f2f6afull, 0x40f343267298b62eull};
constexpr u64 kLg2Words[3] = {0x4d104d427de7fbccull, 0x47c4acd605be48bcull, 0x13569862a1e8f9a5ull};
constexpr u64 kInvLn10Words[3] = {0x6f2dec549b9438caull, 0x9aadd557d699ee19ull,
                                  0x1f71a30122e4d101ull};

// 1/ln 10 with 126 fractional bits, for scaling the mantissa log.
constexpr u128 kInvLn10Q126 =
    (static_cast<u128>(kInvLn10Words[0]) << 62) | (kInvLn10Words[1] >> 2);

struct U256 {
    u128 lo = 0, hi = 0;
};

U256 mul_128(u128 a, u128 b) {
    u64 a0 = static_cast<u64>(a), a1 = static_cast<u64>(a >> 64);
    u64 b0 = static_cast<u64>(b), b1 = static_cast<u64>(b >> 64);
    u128 p00 = static_cast<u128>(a0) * b0;
    u128 p01 = static_cast<u128>(a0) * b1;
    u128 p10 = static_cast<u128>(a1) * b0;
    u128 p11 = static_cast<u128>(a1) * b1;
    u128 mid = p01 + p10;
    u128 carry = (mid < p01) ? (static_cast<u128>(1) << 64) : 0;
    U256 r;
    r.lo = p00 + (mid << 64);
    u128 carry2 = (r.lo < p00) ? 1 : 0;
    r.hi = p11 + (mid >> 64) + carry + carry2;
    return r;
}

// floor((hi:lo) / den); requires num.hi < den so the quotient fits 128 bits.
u128 div_256_128(U256 num, u128 den) {
    u128 q = 0, r = num.hi;
    for (int i = 127; i >= 0; --i) {
        unsigned carry = static_cast<unsigned>(r >> 127);
        r = (r << 1) | ((num.lo >> i) & 1);
        if (carry || r >= den) {
            r -= den;
            q |= static_cast<u128>(1) << i;
        }
    }
    return q;
}

// (a*b) >> 126 for Q126 fixed-point values
u128 mul_q126(u128 a, u128 b) {
    U256 p = mul_128(a, b);
    return (p.hi << 2) | (p.lo >> 126);
}

// ln(m)*2^126 for the mantissa m in [1,2) given as mant*2^-127 with the
// top bit of mant set. atanh series with z = (m-1)/(m+1), |z| < 1/3.
u128 ln_mantissa_q126(u128 mant) {
    constexpr u128 one127 = static_cast<u128>(1) << 127;
    u128 numer = mant - one127;  // (m-1) in Q127
    if (numer == 0) return 0;
    u128 den = (mant >> 1) + (static_cast<u128>(1) << 126);  // (m+1)/2 in Q126
    U256 n256;
    n256.hi = numer >> 3;
    n256.lo = numer << 125;
    u128 z = div_256_128(n256, den);  // (m-1)/(m+1) in Q126
    u128 z2 = mul_q126(z, z);
    u128 term = z, sum = z;
    for (u64 k = 3; k < 120; k += 2) {
        term = mul_q126(term, z2);
        u128 t = term / k;
        if (t == 0) break;
        sum += t;
    }
    return sum << 1;
}

// 192-bit pure fraction, least significant word first.
struct Frac192 {
    u64 w[3] = {0, 0, 0};

    // this += o, returns the integer carry
    u64 add(const Frac192& o) {
        u128 c = 0;
        for (int i = 0; i < 3; ++i) {
            u128 s = static_cast<u128>(w[i]) + o.w[i] + c;
            w[i] = static_cast<u64>(s);
            c = s >> 64;
        }
        return static_cast<u64>(c);
    }

    // this *= b, returns the integer part
    u64 mul_small(u64 b) {
        u128 c = 0;
        for (int i = 0; i < 3; ++i) {
            u128 p = static_cast<u128>(w[i]) * b + c;
            w[i] = static_cast<u64>(p);
            c = p >> 64;
        }
        return static_cast<u64>(c);
    }

    static Frac192 from_words_msf(const u64 (&msf)[3]) {
        Frac192 f;
        f.w[0] = msf[2];
        f.w[1] = msf[1];
        f.w[2] = msf[0];
        return f;
    }

    static Frac192 from_q126(u128 v) {
        // v*2^-126 as a 192-bit fraction (v < 2^126)
        Frac192 f;
        f.w[0] = static_cast<u64>(v << 66);
        f.w[1] = static_cast<u64>(v << 2);
        f.w[2] = static_cast<u64>(v >> 62);
        return f;
    }
};

struct LogParts {
    u64 ipart;
    Frac192 frac;
};

LogParts log_parts(const BigInt& n, LogBase base) {
    if (n.sign() <= 0) throw std::domain_error("log: argument must be >= 1");
    auto fx = n.frexp128();
    u64 b = static_cast<u64>(n.bit_length() - 1);
    u128 lnm = ln_mantissa_q126(fx.mant);
    LogParts out;
    if (base == LogBase::natural) {
        out.frac = Frac192::from_words_msf(kLn2Words);
        out.ipart = out.frac.mul_small(b);
        out.ipart += out.frac.add(Frac192::from_q126(lnm));
    } else {
        out.frac = Frac192::from_words_msf(kLg2Words);
        out.ipart = out.frac.mul_small(b);
        u128 lgm = mul_q126(lnm, kInvLn10Q126);
        out.ipart += out.frac.add(Frac192::from_q126(lgm));
    }
    return out;
}

DD frac_to_dd(const Frac192& f) {
    // peel each word into exactly representable 32-bit halves
    DD r{0.0, 0.0};
    for (int i = 2; i >= 0; --i) {
        double hi32 = static_cast<double>(f.w[i] >> 32);
        double lo32 = static_cast<double>(f.w[i] & 0xffffffffull);
        int e = -64 * (3 - i);
        r = dd_add(r, std::ldexp(hi32, e + 32));
        r = dd_add(r, std::ldexp(lo32, e));
    }
    return r;
}

// snap window: anything within 2^-92 of an integer is treated as exact
bool near_zero(const Frac192& f) { return f.w[2] == 0 && (f.w[1] >> 36) == 0; }
bool near_one(const Frac192& f) {
    return f.w[2] == ~u64{0} && (f.w[1] >> 36) == (~u64{0} >> 36);
}

}  // namespace

DD log_mod1(const BigInt& n, LogBase base) {
    LogParts lp = log_parts(n, base);
    if (near_zero(lp.frac) || near_one(lp.frac)) return DD{0.0, 0.0};
    return frac_to_dd(lp.frac);
}

DD log_full(const BigInt& n, LogBase base) {
    LogParts lp = log_parts(n, base);
    if (near_one(lp.frac)) return DD{static_cast<double>(lp.ipart + 1), 0.0};
    DD f = frac_to_dd(lp.frac);
    if (near_zero(lp.frac)) f = DD{0.0, 0.0};
    return dd_add(f, static_cast<double>(lp.ipart));
}

DD log_ratio(const BigInt& num, const BigInt& den, LogBase base) {
    return dd_sub(log_full(num, base), log_full(den, base));
}

DD log_rational(const Rational& x, LogBase base) {
    if (x.sign() <= 0) throw std::domain_error("log_rational: argument must be positive");
    return log_ratio(x.num(), x.den(), base);
}

DD ratio_dd(const BigInt& num, const BigInt& den) {
    if (num.sign() <= 0 || den.sign() <= 0) {
        if (num.is_zero()) return DD{0.0, 0.0};
        throw std::domain_error("ratio_dd: arguments must be positive");
    }
    auto fn = num.frexp128();
    auto fd = den.frexp128();
    auto to_dd = [](u128 m) {
        DD r{0.0, 0.0};
        for (int i = 3; i >= 0; --i) {
            double part = static_cast<double>(static_cast<u64>(m >> (32 * i)) & 0xffffffffull);
            r = dd_add(r, std::ldexp(part, 32 * i));
        }
        return r;
    };
    DD q = dd_div(to_dd(fn.mant), to_dd(fd.mant));
    return dd_ldexp(q, static_cast<int>(fn.exp - fd.exp));
}

}  // namespace cflab
