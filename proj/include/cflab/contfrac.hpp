#pragma once

#include <cstdint>
#include <vector>

#include "cflab/bigint.hpp"
#include "cflab/rational.hpp"

namespace cflab {

/// Continued fraction expansion x = [a_1, a_2, ...] with exact convergents.
///
/// Convergents satisfy p_n = a_n p_{n-1} + p_{n-2} and q_n = a_n q_{n-1} +
/// q_{n-2} with p_0 = 0, q_0 = 1, p_{-1} = 1, q_{-1} = 0. For expansions of
/// an exact rational the Euclid remainder chain rem[] is kept as well, with
/// T^n x = rem[n+1] / rem[n] (T the Gauss map); expansions built from a
/// given digit stream have an empty chain.
///
/// All fields are fixed after construction; operations treat expansions as
/// read-only and may share them across threads.
struct CFExpansion {
    std::vector<BigInt> digits;  // a_1 .. a_{valid_depth}
    std::vector<BigInt> p;       // p[0..valid_depth], p[0] = 0
    std::vector<BigInt> q;       // q[0..valid_depth], q[0] = 1
    std::vector<BigInt> rem;     // Euclid chain v_0 .. v_{valid_depth+1}; may be empty
    int valid_depth = 0;
    // Largest index whose digits are certified for downstream consumers.
    // Equals valid_depth for exact inputs; the sampling layer lowers it to
    // the digit horizon for dyadic stand-ins of real numbers.
    int certified_depth = 0;
    bool exhausted = false;  // input was rational and fully expanded

    const BigInt& digit(int n) const;  // 1-based
    const BigInt& pnum(int n) const;   // n >= -1
    const BigInt& qden(int n) const;   // n >= -1
    bool has_remainders() const { return !rem.empty(); }
};

struct CFOptions {
    bool store_remainders = true;
    bool store_p = true;
};

/// Expands a rational in (0,1) by iterated Euclid steps, up to max_depth
/// digits. Throws std::domain_error if x is not in (0,1).
CFExpansion cf_expand(const Rational& x, int max_depth, const CFOptions& opt = {});

/// Expansion with a prescribed digit stream (all entries >= 1). No remainder
/// chain; certified_depth equals the digit count.
CFExpansion cf_from_digits(const std::vector<BigInt>& digits);

/// T^n x as an exact reduced rational, n in [0, valid_depth]. Requires the
/// remainder chain.
Rational remainder_exact(const Rational& x, const CFExpansion& cf, int n);

/// [a_n, ..., a_1] = 1/(a_n + 1/(... + 1/a_1)) as an exact rational; equals
/// q_{n-1}/q_n. Requires 1 <= n <= valid_depth.
Rational reversed_cf_value(const CFExpansion& cf, int n);

/// Checks the convergent recurrences and the determinant identity
/// p_n q_{n-1} - p_{n-1} q_n = (-1)^{n-1} at every index.
bool verify_identities(const CFExpansion& cf);

}  // namespace cflab
