#include "cflab/sequences.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace cflab {

namespace {

void require_depth(const CFExpansion& cf, int need, const char* who) {
    if (need > cf.certified_depth) {
        throw std::out_of_range(std::string(who) + ": depth exceeds certified digits");
    }
}

void require_chain(const Rational& x, const CFExpansion& cf, const char* who) {
    if (!cf.has_remainders()) {
        throw std::domain_error(std::string(who) + ": expansion carries no remainder chain");
    }
    if (cf.rem[1] != x.num() || cf.rem[0] != x.den()) {
        throw std::invalid_argument(std::string(who) + ": expansion does not belong to x");
    }
}

const BigInt& rem_at(const CFExpansion& cf, int i) {
    return cf.rem[static_cast<std::size_t>(i)];
}

constexpr double kPerTerm = 0x1p-60;

}  // namespace

RealSeq gen_log_q(const CFExpansion& cf, LogBase base, double rho, int N) {
    require_depth(cf, N, "gen_log_q");
    RealSeq seq;
    seq.spec = {SeqKind::log_q, base, rho, 0, 1, 0.0};
    seq.values.reserve(static_cast<std::size_t>(N));
    for (int n = 1; n <= N; ++n) {
        DD v = log_full(cf.qden(n), base);
        if (rho != 0.0) v = dd_add(v, two_prod(static_cast<double>(n), rho));
        seq.values.push_back(v);
    }
    seq.error_budget = static_cast<double>(N) * kPerTerm;
    return seq;
}

RealSeq gen_digit_sum(const CFExpansion& cf, int N) {
    require_depth(cf, N, "gen_digit_sum");
    RealSeq seq;
    seq.spec.kind = SeqKind::digit_sum;
    seq.values.reserve(static_cast<std::size_t>(N));
    BigInt sum{0};
    for (int n = 1; n <= N; ++n) {
        sum += cf.digit(n);
        seq.values.push_back(ratio_dd(sum, BigInt{1}));
    }
    seq.error_budget = static_cast<double>(N) * kPerTerm;
    return seq;
}

RealSeq gen_digit_log_prod(const CFExpansion& cf, LogBase base, int N) {
    require_depth(cf, N, "gen_digit_log_prod");
    RealSeq seq;
    seq.spec = {SeqKind::digit_log_prod, base, 0.0, 0, 1, 0.0};
    seq.values.reserve(static_cast<std::size_t>(N));
    DD acc{0.0, 0.0};
    for (int n = 1; n <= N; ++n) {
        acc = dd_add(acc, log_full(cf.digit(n), base));
        seq.values.push_back(acc);
    }
    seq.error_budget = static_cast<double>(N) * kPerTerm;
    return seq;
}

RealSeq gen_birkhoff_neg_log(const Rational& x, const CFExpansion& cf, int l, LogBase base,
                             int N) {
    if (l < 0) throw std::domain_error("gen_birkhoff_neg_log: l must be >= 0");
    require_chain(x, cf, "gen_birkhoff_neg_log");
    require_depth(cf, N + l, "gen_birkhoff_neg_log");
    RealSeq seq;
    seq.spec = {SeqKind::birkhoff_neg_log, base, 0.0, l, 1, 0.0};
    seq.values.reserve(static_cast<std::size_t>(N));
    DD prev = log_full(rem_at(cf, l), base);
    DD acc{0.0, 0.0};
    for (int n = 1; n <= N; ++n) {
        DD cur = log_full(rem_at(cf, l + n), base);
        // log T^{l+n-1} x = log rem[l+n] - log rem[l+n-1]
        acc = dd_sub(acc, dd_sub(cur, prev));
        prev = cur;
        seq.values.push_back(acc);
    }
    seq.error_budget = static_cast<double>(N) * kPerTerm;
    return seq;
}

RealSeq gen_delta(const Rational& x, const CFExpansion& cf, LogBase base, int N) {
    require_chain(x, cf, "gen_delta");
    require_depth(cf, N, "gen_delta");
    RealSeq seq;
    seq.spec = {SeqKind::delta, base, 0.0, 0, 1, 0.0};
    seq.values.reserve(static_cast<std::size_t>(N));
    for (int n = 1; n <= N; ++n) {
        // 1 + T^n x [a_n,...,a_1] = (v_n q_n + v_{n+1} q_{n-1}) / (v_n q_n)
        BigInt den = rem_at(cf, n) * cf.qden(n);
        BigInt num = den + rem_at(cf, n + 1) * cf.qden(n - 1);
        seq.values.push_back(dd_sub(log_full(den, base), log_full(num, base)));
    }
    seq.error_budget = static_cast<double>(N) * kPerTerm;
    return seq;
}

RealSeq gen_theta(const Rational& x, const CFExpansion& cf, int N) {
    require_chain(x, cf, "gen_theta");
    require_depth(cf, N, "gen_theta");
    RealSeq seq;
    seq.spec.kind = SeqKind::theta;
    seq.values.reserve(static_cast<std::size_t>(N));
    for (int n = 1; n <= N; ++n) {
        // theta_n = q_n |x q_n - p_n| = q_n v_{n+1} / v_0
        DD v = dd_mul(ratio_dd(cf.qden(n), BigInt{1}), ratio_dd(rem_at(cf, n + 1), rem_at(cf, 0)));
        seq.values.push_back(v);
    }
    seq.error_budget = static_cast<double>(N) * kPerTerm;
    return seq;
}

RealSeq gen_log_theta(const Rational& x, const CFExpansion& cf, LogBase base, int N) {
    require_chain(x, cf, "gen_log_theta");
    require_depth(cf, N, "gen_log_theta");
    RealSeq seq;
    seq.spec = {SeqKind::theta, base, 0.0, 0, 1, 0.0};
    seq.values.reserve(static_cast<std::size_t>(N));
    DD lv0 = log_full(rem_at(cf, 0), base);
    for (int n = 1; n <= N; ++n) {
        if (rem_at(cf, n + 1).is_zero()) {
            throw std::domain_error("gen_log_theta: theta_n vanishes on an exhausted expansion");
        }
        DD v = dd_add(log_full(cf.qden(n), base), log_full(rem_at(cf, n + 1), base));
        seq.values.push_back(dd_sub(v, lv0));
    }
    seq.error_budget = static_cast<double>(N) * kPerTerm;
    return seq;
}

RealSeq gen_t_ratio(const Rational& x, const CFExpansion& cf, int N) {
    require_chain(x, cf, "gen_t_ratio");
    require_depth(cf, N, "gen_t_ratio");
    RealSeq seq;
    seq.spec.kind = SeqKind::t_ratio;
    seq.values.reserve(static_cast<std::size_t>(N));
    for (int n = 1; n <= N; ++n) {
        // t_n = (v_{n+1}/v_n) * (q_{n-1}/q_n)
        DD v = dd_mul(ratio_dd(rem_at(cf, n + 1), rem_at(cf, n)),
                      ratio_dd(cf.qden(n - 1), cf.qden(n)));
        seq.values.push_back(v);
    }
    seq.error_budget = static_cast<double>(N) * kPerTerm;
    return seq;
}

DD delta_window(const CFExpansion& cf, int j, int k, LogBase base) {
    if (k < 0) throw std::domain_error("delta_window: k must be >= 0");
    if (k == 0) return DD{0.0, 0.0};
    if (!cf.has_remainders()) throw std::domain_error("delta_window: no remainder chain");
    require_depth(cf, j + k, "delta_window");
    // reversed window [a_{j+k}, ..., a_{j+1}] as an exact convergent pair
    BigInt pk{0}, pk1{1}, qk{1}, qk1{0};
    for (int i = j + k; i >= j + 1; --i) {
        BigInt pn = cf.digit(i) * pk + pk1;
        BigInt qn = cf.digit(i) * qk + qk1;
        pk1 = std::move(pk);
        pk = std::move(pn);
        qk1 = std::move(qk);
        qk = std::move(qn);
    }
    BigInt den = rem_at(cf, j + k) * qk;
    BigInt num = den + rem_at(cf, j + k + 1) * pk;
    return dd_sub(log_full(den, base), log_full(num, base));
}

std::vector<DD> delta_window_scan(const CFExpansion& cf, int n, int kmax, LogBase base) {
    if (!cf.has_remainders()) throw std::domain_error("delta_window_scan: no remainder chain");
    require_depth(cf, n, "delta_window_scan");
    kmax = std::min(kmax, n);
    std::vector<DD> out;
    out.reserve(static_cast<std::size_t>(kmax));
    BigInt pk{0}, pk1{1}, qk{1}, qk1{0};
    const BigInt& vn = rem_at(cf, n);
    const BigInt& vtop = rem_at(cf, n + 1);
    for (int k = 1; k <= kmax; ++k) {
        const BigInt& d = cf.digit(n - k + 1);  // window digit entering at this k
        BigInt pn = d * pk + pk1;
        BigInt qn = d * qk + qk1;
        pk1 = std::move(pk);
        pk = std::move(pn);
        qk1 = std::move(qk);
        qk = std::move(qn);
        BigInt den = vn * qk;
        BigInt num = den + vtop * pk;
        out.push_back(dd_sub(log_full(den, base), log_full(num, base)));
    }
    return out;
}

double delta_window_bound(int k) {
    if (k < 1) throw std::domain_error("delta_window_bound: k must be >= 1");
    return -std::log1p(-std::exp2(-0.5 * k));
}

RealSeq gen_h_k_sum(const Rational& x, const CFExpansion& cf, int k, LogBase base, int N) {
    if (k < 0) throw std::domain_error("gen_h_k_sum: k must be >= 0");
    require_chain(x, cf, "gen_h_k_sum");
    require_depth(cf, N + k, "gen_h_k_sum");
    RealSeq seq;
    seq.spec = {SeqKind::h_k_sum, base, 0.0, 0, k, 0.0};
    seq.values.reserve(static_cast<std::size_t>(N));
    DD dw_prev = delta_window(cf, 0, k, base);
    DD lrem_prev = log_full(rem_at(cf, k), base);
    DD acc{0.0, 0.0};
    for (int j = 0; j < N; ++j) {
        DD lrem_cur = log_full(rem_at(cf, k + j + 1), base);
        DD dw_cur = delta_window(cf, j + 1, k, base);
        // h(T^{k+j}x) = log rem[k+j] - log rem[k+j+1]
        DD term = dd_sub(lrem_prev, lrem_cur);
        term = dd_sub(term, dw_prev);
        term = dd_add(term, dw_cur);
        acc = dd_add(acc, term);
        seq.values.push_back(acc);
        lrem_prev = lrem_cur;
        dw_prev = dw_cur;
    }
    seq.error_budget = static_cast<double>(N) * kPerTerm;
    return seq;
}

RealSeq gen_h_k_sum_telescoped(const Rational& x, const CFExpansion& cf, int k, LogBase base,
                               int N) {
    if (k < 0) throw std::domain_error("gen_h_k_sum_telescoped: k must be >= 0");
    require_chain(x, cf, "gen_h_k_sum_telescoped");
    require_depth(cf, N + k, "gen_h_k_sum_telescoped");
    RealSeq seq;
    seq.spec = {SeqKind::h_k_sum, base, 0.0, 0, k, 0.0};
    seq.values.reserve(static_cast<std::size_t>(N));
    DD lrem_k = log_full(rem_at(cf, k), base);
    DD dw0 = delta_window(cf, 0, k, base);
    for (int n = 1; n <= N; ++n) {
        // S_n(h o T^k) = log rem[k] - log rem[n+k]
        DD v = dd_sub(lrem_k, log_full(rem_at(cf, n + k), base));
        v = dd_sub(v, dw0);
        v = dd_add(v, delta_window(cf, n, k, base));
        seq.values.push_back(v);
    }
    seq.error_budget = static_cast<double>(N) * kPerTerm;
    return seq;
}

RealSeq skew_orbit(const Rational& x, const CFExpansion& cf, const SequenceSpec& inner, double t0,
                   int N) {
    if (inner.kind == SeqKind::skew_orbit) {
        throw std::invalid_argument("skew_orbit: inner spec cannot be another skew orbit");
    }
    RealSeq seq = gen_sequence(x, cf, inner, N);
    for (auto& v : seq.values) v = dd_add(v, t0);
    seq.spec.kind = SeqKind::skew_orbit;
    seq.spec.t0 = t0;
    return seq;
}

RealSeq gen_sequence(const Rational& x, const CFExpansion& cf, const SequenceSpec& spec, int N) {
    switch (spec.kind) {
        case SeqKind::log_q:
            return gen_log_q(cf, spec.base, spec.rho, N);
        case SeqKind::digit_sum:
            return gen_digit_sum(cf, N);
        case SeqKind::digit_log_prod:
            return gen_digit_log_prod(cf, spec.base, N);
        case SeqKind::birkhoff_neg_log:
            return gen_birkhoff_neg_log(x, cf, spec.l, spec.base, N);
        case SeqKind::delta:
            return gen_delta(x, cf, spec.base, N);
        case SeqKind::theta:
            return gen_theta(x, cf, N);
        case SeqKind::t_ratio:
            return gen_t_ratio(x, cf, N);
        case SeqKind::h_k_sum:
            return gen_h_k_sum(x, cf, spec.k, spec.base, N);
        case SeqKind::skew_orbit: {
            SequenceSpec inner{SeqKind::birkhoff_neg_log, spec.base, 0.0, spec.l, 1, 0.0};
            return skew_orbit(x, cf, inner, spec.t0, N);
        }
    }
    throw std::invalid_argument("gen_sequence: unknown kind");
}

Rational theta_rational(const Rational& x, const CFExpansion& cf, int n) {
    require_chain(x, cf, "theta_rational");
    require_depth(cf, n, "theta_rational");
    return Rational{cf.qden(n) * rem_at(cf, n + 1), rem_at(cf, 0)};
}

Rational t_rational(const Rational& x, const CFExpansion& cf, int n) {
    require_chain(x, cf, "t_rational");
    require_depth(cf, n, "t_rational");
    return Rational{rem_at(cf, n + 1) * cf.qden(n - 1), rem_at(cf, n) * cf.qden(n)};
}

QuadraticParams quadratic_params(const QuadraticSource& src, int est_depth) {
    if (src.period.empty()) throw std::domain_error("quadratic_params: empty period");
    const int l = static_cast<int>(src.period.size());
    // product over one period of [[a,1],[1,0]]
    BigInt m00{1}, m01{0}, m10{0}, m11{1};
    for (std::uint64_t a : src.period) {
        BigInt am{static_cast<unsigned long long>(a)};
        BigInt n00 = am * m00 + m10;
        BigInt n01 = am * m01 + m11;
        m10 = m00;
        m11 = m01;
        m00 = std::move(n00);
        m01 = std::move(n01);
    }
    // dominant eigenvalue (tr + sqrt(tr^2 - 4 det))/2, det = (-1)^l
    DD tr = ratio_dd(m00 + m11, BigInt{1});
    double det = (l % 2 == 0) ? 1.0 : -1.0;
    DD disc = dd_add(dd_mul(tr, tr), -4.0 * det);
    DD lambda = dd_ldexp(dd_add(tr, dd_sqrt(disc)), -1);
    DD alpha = dd_log(lambda);

    QuadraticParams out;
    out.alpha = alpha.value();
    out.length = l;
    out.c.assign(static_cast<std::size_t>(l), 0.0);

    int depth = std::max(est_depth, 4 * l + 40);
    CFExpansion cf = quadratic_digits(src, depth);
    auto c_at = [&](int n) {
        DD lq = log_full(cf.qden(n), LogBase::natural);
        DD drift = dd_div(dd_mul(alpha, static_cast<double>(n)), DD{static_cast<double>(l), 0.0});
        return dd_sub(lq, drift).value();
    };
    out.residual = 0.0;
    for (int j = 0; j < l; ++j) {
        // the two largest indices in the residue class of j
        int n1 = depth - (depth % l) + j;
        while (n1 > depth) n1 -= l;
        int n0 = n1 - l;
        double c1 = c_at(n1), c0 = c_at(n0);
        out.c[static_cast<std::size_t>(j)] = c1;
        out.residual = std::max(out.residual, std::fabs(c1 - c0));
    }
    return out;
}

}  // namespace cflab
