#include "cflab/sampling.hpp"

#include <algorithm>
#include <stdexcept>

namespace cflab {

namespace {

using u64 = std::uint64_t;

u64 mix64(u64 z) {
    z += 0x9e3779b97f4a7c15ull;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

// counter-based word stream keyed on (seed, index)
struct WordStream {
    u64 key;
    u64 ctr = 0;
    WordStream(u64 seed, u64 index) : key(mix64(mix64(seed) ^ index)) {}
    u64 next() { return mix64(key ^ 0x632be59bd9b4e019ull ^ ctr++); }
};

// uniform nonzero B-bit integer
BigInt draw_bits(WordStream& ws, int bits) {
    const int words = (bits + 63) / 64;
    const int top = bits % 64;
    while (true) {
        BigInt k;
        for (int i = 0; i < words; ++i) {
            k <<= 64;
            u64 w = ws.next();
            if (i == 0 && top) w &= (~u64{0}) >> (64 - top);
            k += BigInt{static_cast<unsigned long long>(w)};
        }
        if (!k.is_zero()) return k;
    }
}

}  // namespace

int SamplerConfig::bits_for_depth(int target_depth) const {
    if (bits > 0) return std::max(bits, 64);
    long long b = (7LL * target_depth + 1) / 2 + guard_bits;
    return static_cast<int>(std::max(b, 64LL));
}

int SamplerConfig::bits_in_effect() const { return bits_for_depth(depth); }

Rational sample_uniform(const SamplerConfig& cfg, std::uint64_t index) {
    const int B = cfg.bits_in_effect();
    WordStream ws{cfg.seed, index};
    return Rational::dyadic(draw_bits(ws, B), static_cast<std::size_t>(B));
}

Rational sample_gauss(const SamplerConfig& cfg, std::uint64_t index) {
    const int B = cfg.bits_in_effect();
    WordStream ws{cfg.seed, index};
    const BigInt two_b = BigInt::pow2(static_cast<std::size_t>(B));
    const BigInt two_2b = BigInt::pow2(static_cast<std::size_t>(2 * B));
    while (true) {
        BigInt u = draw_bits(ws, B);
        BigInt v = draw_bits(ws, B);
        // accept with probability 1/(1+u): v (2^B + u) < 2^{2B}, exactly
        if (v * (two_b + u) < two_2b) {
            return Rational::dyadic(std::move(u), static_cast<std::size_t>(B));
        }
    }
}

int digit_horizon(const CFExpansion& cf, int bits, int guard_bits) {
    const long limit = bits - guard_bits;
    if (limit < 1) return 0;
    for (int n = 1; n <= cf.valid_depth; ++n) {
        BigInt s = cf.qden(n) + cf.qden(n - 1);
        long bl = static_cast<long>(cf.qden(n).bit_length() + s.bit_length());
        bool ok;
        if (bl + 1 <= limit) {
            ok = true;  // 2qs < 2^{bl+1} <= 2^limit
        } else if (bl - 1 >= limit) {
            ok = false;  // 2qs >= 2^{bl-1} >= 2^limit
        } else {
            BigInt prod = (cf.qden(n) * s) << 1;
            ok = static_cast<long>(prod.bit_length()) <= limit;
        }
        if (!ok) return n - 1;  // 2 q_n s_n is increasing in n
    }
    return cf.valid_depth;
}

int digit_horizon(const CFExpansion& cf, const SamplerConfig& cfg) {
    return digit_horizon(cf, cfg.bits_in_effect(), cfg.guard_bits);
}

CFExpansion quadratic_digits(const QuadraticSource& src, int n) {
    if (src.period.empty()) throw std::domain_error("quadratic_digits: empty period");
    if (n < 1) throw std::domain_error("quadratic_digits: n must be >= 1");
    std::vector<BigInt> digits;
    digits.reserve(static_cast<std::size_t>(n));
    for (std::size_t i = 0; i < src.preperiod.size() && digits.size() < static_cast<std::size_t>(n);
         ++i) {
        digits.emplace_back(static_cast<unsigned long long>(src.preperiod[i]));
    }
    std::size_t j = 0;
    while (digits.size() < static_cast<std::size_t>(n)) {
        digits.emplace_back(static_cast<unsigned long long>(src.period[j]));
        j = (j + 1) % src.period.size();
    }
    return cf_from_digits(digits);
}

PreparedSample prepare_sample(const SamplerConfig& cfg, std::uint64_t index, Measure measure,
                              int need_depth, const CFOptions& opt) {
    SamplerConfig local = cfg;
    int B = cfg.bits_for_depth(need_depth);
    for (int attempt = 0; attempt < 2; ++attempt) {
        local.bits = B;
        PreparedSample out;
        out.x = (measure == Measure::uniform) ? sample_uniform(local, index)
                                              : sample_gauss(local, index);
        out.cf = cf_expand(out.x, need_depth, opt);
        out.horizon = digit_horizon(out.cf, B, cfg.guard_bits);
        out.bits_used = B;
        out.retried = attempt > 0;
        if (out.horizon >= need_depth) {
            out.cf.certified_depth = out.horizon;
            return out;
        }
        B += B / 2 + 64;
    }
    throw std::runtime_error("prepare_sample: digit horizon fell short twice");
}

}  // namespace cflab
