#pragma once

#include <vector>

#include "cflab/biglog.hpp"
#include "cflab/contfrac.hpp"
#include "cflab/sampling.hpp"

namespace cflab {

enum class SeqKind {
    log_q,
    digit_sum,
    digit_log_prod,
    birkhoff_neg_log,
    delta,
    theta,
    t_ratio,
    h_k_sum,
    skew_orbit,
};

struct SequenceSpec {
    SeqKind kind = SeqKind::log_q;
    LogBase base = LogBase::natural;
    double rho = 0.0;  // log_q: v_n = log q_n + n rho
    int l = 0;         // birkhoff_neg_log: -S_n log(T^l x)
    int k = 1;         // h_k_sum
    double t0 = 0.0;   // skew_orbit fiber start
};

/// One generated real sequence v_1..v_N (1-based via at()). Values are kept
/// as double-doubles; reduction mod 1 happens in the stats layer.
struct RealSeq {
    std::vector<DD> values;
    SequenceSpec spec;
    double error_budget = 0.0;  // worst-case accumulated float error

    int size() const { return static_cast<int>(values.size()); }
    DD at(int n) const { return values[static_cast<std::size_t>(n - 1)]; }
};

// v_n = log_base(q_n) + n*rho
RealSeq gen_log_q(const CFExpansion& cf, LogBase base, double rho, int N);
// v_n = a_1 + ... + a_n (exact integer partial sums)
RealSeq gen_digit_sum(const CFExpansion& cf, int N);
// v_n = log(a_1) + ... + log(a_n)
RealSeq gen_digit_log_prod(const CFExpansion& cf, LogBase base, int N);
// v_n = -sum_{j=0}^{n-1} log(T^{l+j} x); needs the remainder chain
RealSeq gen_birkhoff_neg_log(const Rational& x, const CFExpansion& cf, int l, LogBase base, int N);
// v_n = -log(1 + T^n x * [a_n,...,a_1]) computed from the exact rational
RealSeq gen_delta(const Rational& x, const CFExpansion& cf, LogBase base, int N);
// v_n = theta_n = q_n |x q_n - p_n|, in (0,1)
RealSeq gen_theta(const Rational& x, const CFExpansion& cf, int N);
// v_n = log theta_n
RealSeq gen_log_theta(const Rational& x, const CFExpansion& cf, LogBase base, int N);
// v_n = t_n = T^n x * q_{n-1}/q_n, in (0,1)
RealSeq gen_t_ratio(const Rational& x, const CFExpansion& cf, int N);
// v_n = S_n h^{(k)}(x), h^{(k)} = h.T^k - delta_k + delta_k.T, h = -log,
// accumulated term by term
RealSeq gen_h_k_sum(const Rational& x, const CFExpansion& cf, int k, LogBase base, int N);
// same sequence by the telescoped closed form S_n(h.T^k) - delta_k + delta_k.T^n
RealSeq gen_h_k_sum_telescoped(const Rational& x, const CFExpansion& cf, int k, LogBase base,
                               int N);
// fiber orbit of the skew product: v_n = t0 + (inner sequence)_n
RealSeq skew_orbit(const Rational& x, const CFExpansion& cf, const SequenceSpec& inner, double t0,
                   int N);
// dispatcher on spec.kind (skew_orbit must go through skew_orbit())
RealSeq gen_sequence(const Rational& x, const CFExpansion& cf, const SequenceSpec& spec, int N);

// exact rationals behind theta and t, for identity checks
Rational theta_rational(const Rational& x, const CFExpansion& cf, int n);
Rational t_rational(const Rational& x, const CFExpansion& cf, int n);

/// delta_k evaluated at T^j x straight from the digit window
/// (a_{j+1},...,a_{j+k}), i.e. -log(1 + T^{j+k}x * [a_{j+k},...,a_{j+1}]).
/// O(k) small-integer work plus two certified logs; delta_window(cf, 0, k)
/// must agree with gen_delta at index k.
DD delta_window(const CFExpansion& cf, int j, int k, LogBase base);

/// delta_k(T^{n-k} x) for every k = 1..kmax at fixed n, sharing one backward
/// pass over the digits.
std::vector<DD> delta_window_scan(const CFExpansion& cf, int n, int kmax, LogBase base);

/// -log(1 - 2^{-k/2}): the uniform bound on |delta_k(T^{n-k}x) - delta_n(x)|.
double delta_window_bound(int k);

/// Growth data of log q_n for an eventually periodic digit stream:
/// log q_n = (n/l) alpha + c_{n mod l} + o(1), alpha the log of the dominant
/// eigenvalue of the period's digit-matrix product.
struct QuadraticParams {
    double alpha = 0.0;
    int length = 0;
    std::vector<double> c;  // indexed by n mod l
    double residual = 0.0;  // max change of c between the last two estimates
};

QuadraticParams quadratic_params(const QuadraticSource& src, int est_depth = 400);

}  // namespace cflab
