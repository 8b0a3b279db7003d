#pragma once

#include "cflab/bigint.hpp"
#include "cflab/dd.hpp"
#include "cflab/rational.hpp"

namespace cflab {

enum class LogBase { natural, decimal };

/// Fractional part of log_base(n) in [0, 1) for a positive big integer.
///
/// Decomposes n = 2^b * m with m in [1,2) read from the top 128 bits,
/// multiplies b into a 192-fractional-bit stored value of log_base(2), adds
/// an atanh-series evaluation of log(m) carried in 126-fractional-bit fixed
/// point, and reduces mod 1 last. Absolute error is below 2^-90 (results
/// within 2^-92 of an integer are snapped to 0, so exact powers of the base
/// come out as exactly 0). Throws std::domain_error if n < 1.
DD log_mod1(const BigInt& n, LogBase base);

/// log_base(n) for n >= 1, same internal path as log_mod1 without the
/// final reduction.
DD log_full(const BigInt& n, LogBase base);

/// log_base(num/den) for positive integers, as a difference of two
/// certified logs.
DD log_ratio(const BigInt& num, const BigInt& den, LogBase base);

/// log_base(x) for a positive rational. Throws std::domain_error if x <= 0.
DD log_rational(const Rational& x, LogBase base);

/// num/den as a double-double from the top 128 bits of each side; relative
/// error below 2^-100. Both must be positive.
DD ratio_dd(const BigInt& num, const BigInt& den);

// Limit constants of the ergodic averages, as double-double values.
inline constexpr DD kLn2{0x1.62e42fefa39efp-1, 0x1.abc9e3b39803fp-56};
inline constexpr DD kLn10{0x1.26bb1bbb55516p+1, -0x1.f48ad494ea3e9p-53};
// pi^2 / (12 ln 2): a.e. limit of (ln q_n)/n (Levy's constant)
inline constexpr DD kLevyConstant{0x1.2fc2fe43adce0p+0, -0x1.257209d92e050p-54};
// -1 - (ln 2)/2 + pi^2/(12 ln 2): a.e. Cesaro limit of the delta sequence
inline constexpr DD kDeltaMeanLimit{-0x1.47b06dc1d8ce1p-3, 0x1.28a5cd82f7d3fp-57};
// -1 - (ln 2)/2: a.e. Cesaro limit of ln theta_n
inline constexpr DD kLogThetaMeanLimit{-0x1.58b90bfbe8e7cp+0, 0x1.950d871319ff0p-55};

}  // namespace cflab
