#pragma once

#include <cstdint>
#include <vector>

#include "cflab/contfrac.hpp"
#include "cflab/rational.hpp"

namespace cflab {

enum class Measure { uniform, gauss };

/// Controls the deterministic dyadic samplers. With bits == 0 the precision
/// is chosen automatically as ceil(3.5 * depth) + guard_bits, which leaves a
/// comfortable margin over the typical 3.42 bits consumed per digit.
struct SamplerConfig {
    std::uint64_t seed = 0;
    int depth = 1;
    int bits = 0;  // 0 = auto
    int guard_bits = 16;

    int bits_in_effect() const;
    int bits_for_depth(int target_depth) const;
};

/// k / 2^B with k uniform on {1, ..., 2^B - 1}, from a counter-based
/// generator keyed on (seed, index). Bitwise reproducible across runs and
/// platforms; sample(i) and sample(j) are independent streams.
Rational sample_uniform(const SamplerConfig& cfg, std::uint64_t index);

/// Rejection sampler for the invariant density 1/((1+x) log 2): proposes
/// uniform dyadics and accepts u with probability 1/(1+u), decided by an
/// exact integer comparison.
Rational sample_gauss(const SamplerConfig& cfg, std::uint64_t index);

/// Largest n with 2 q_n (q_n + q_{n-1}) < 2^{bits - guard}, capped at
/// valid_depth. Digits a_1..a_n of a precision-`bits` dyadic agree with the
/// digits of every real within 2^-bits of it, so experiments must not read
/// past this index.
int digit_horizon(const CFExpansion& cf, int bits, int guard_bits);
int digit_horizon(const CFExpansion& cf, const SamplerConfig& cfg);

/// Eventually periodic digit stream (quadratic irrational).
struct QuadraticSource {
    std::vector<std::uint64_t> preperiod;
    std::vector<std::uint64_t> period;  // nonempty, entries >= 1
};

/// First n digits of the stream with exact convergents; no horizon limit
/// applies since the digits are prescribed rather than inferred.
CFExpansion quadratic_digits(const QuadraticSource& src, int n);

/// A sample expanded to at least need_depth certified digits. If the first
/// draw falls short (horizon or early exhaustion), one retry is made at
/// ~1.5x the precision; a second shortfall raises std::runtime_error.
struct PreparedSample {
    Rational x;
    CFExpansion cf;
    int horizon = 0;
    int bits_used = 0;
    bool retried = false;
};

PreparedSample prepare_sample(const SamplerConfig& cfg, std::uint64_t index, Measure measure,
                              int need_depth, const CFOptions& opt = {});

}  // namespace cflab
