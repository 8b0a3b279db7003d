#include "cflab/contfrac.hpp"

#include <stdexcept>

namespace cflab {

namespace {
const BigInt kZero{0};
const BigInt kOne{1};
}  // namespace

const BigInt& CFExpansion::digit(int n) const {
    if (n < 1 || n > valid_depth) throw std::out_of_range("CFExpansion::digit");
    return digits[static_cast<std::size_t>(n - 1)];
}

const BigInt& CFExpansion::pnum(int n) const {
    if (n == -1) return kOne;
    if (n < -1 || n > valid_depth || p.empty()) throw std::out_of_range("CFExpansion::pnum");
    return p[static_cast<std::size_t>(n)];
}

const BigInt& CFExpansion::qden(int n) const {
    if (n == -1) return kZero;
    if (n < -1 || n > valid_depth) throw std::out_of_range("CFExpansion::qden");
    return q[static_cast<std::size_t>(n)];
}

CFExpansion cf_expand(const Rational& x, int max_depth, const CFOptions& opt) {
    if (!x.in_unit_interval()) throw std::domain_error("cf_expand: x must lie in (0,1)");
    if (max_depth < 1) throw std::domain_error("cf_expand: max_depth must be >= 1");

    CFExpansion cf;
    cf.digits.reserve(static_cast<std::size_t>(max_depth));
    cf.q.reserve(static_cast<std::size_t>(max_depth) + 1);
    cf.q.push_back(kOne);
    if (opt.store_p) {
        cf.p.reserve(static_cast<std::size_t>(max_depth) + 1);
        cf.p.push_back(kZero);
    }
    if (opt.store_remainders) {
        cf.rem.reserve(static_cast<std::size_t>(max_depth) + 2);
        cf.rem.push_back(x.den());
        cf.rem.push_back(x.num());
    }

    // Euclid chain: v_0 = den, v_1 = num, a_n = floor(v_{n-1}/v_n),
    // v_{n+1} = v_{n-1} mod v_n. T^n x = v_{n+1}/v_n.
    BigInt hi = x.den(), lo = x.num();
    while (cf.valid_depth < max_depth) {
        BigInt a, r;
        BigInt::divmod(hi, lo, a, r);
        int n = ++cf.valid_depth;
        // convergent recurrences
        const BigInt& q1 = cf.q[static_cast<std::size_t>(n - 1)];
        const BigInt& q2 = (n >= 2) ? cf.q[static_cast<std::size_t>(n - 2)] : kZero;
        cf.q.push_back(a * q1 + q2);
        if (opt.store_p) {
            const BigInt& p1 = cf.p[static_cast<std::size_t>(n - 1)];
            const BigInt& p2 = (n >= 2) ? cf.p[static_cast<std::size_t>(n - 2)] : kOne;
            cf.p.push_back(a * p1 + p2);
        }
        cf.digits.push_back(std::move(a));
        if (opt.store_remainders) cf.rem.push_back(r);
        if (r.is_zero()) {
            cf.exhausted = true;
            break;
        }
        hi = std::move(lo);
        lo = std::move(r);
    }
    cf.certified_depth = cf.valid_depth;
    return cf;
}

CFExpansion cf_from_digits(const std::vector<BigInt>& digits) {
    if (digits.empty()) throw std::domain_error("cf_from_digits: need at least one digit");
    CFExpansion cf;
    cf.digits = digits;
    cf.q.push_back(kOne);
    cf.p.push_back(kZero);
    for (std::size_t i = 0; i < digits.size(); ++i) {
        if (digits[i].sign() <= 0) throw std::domain_error("cf_from_digits: digits must be >= 1");
        int n = ++cf.valid_depth;
        const BigInt& q2 = (n >= 2) ? cf.q[static_cast<std::size_t>(n - 2)] : kZero;
        const BigInt& p2 = (n >= 2) ? cf.p[static_cast<std::size_t>(n - 2)] : kOne;
        cf.q.push_back(digits[i] * cf.q.back() + q2);
        cf.p.push_back(digits[i] * cf.p.back() + p2);
    }
    cf.certified_depth = cf.valid_depth;
    return cf;
}

Rational remainder_exact(const Rational& x, const CFExpansion& cf, int n) {
    if (n == 0) return x;
    if (n < 0 || n > cf.valid_depth) throw std::out_of_range("remainder_exact: n out of range");
    if (!cf.has_remainders()) {
        throw std::domain_error("remainder_exact: expansion carries no remainder chain");
    }
    // consecutive chain entries are coprime, so no reduction is needed
    return Rational::from_coprime(cf.rem[static_cast<std::size_t>(n + 1)],
                                  cf.rem[static_cast<std::size_t>(n)]);
}

Rational reversed_cf_value(const CFExpansion& cf, int n) {
    if (n < 1 || n > cf.valid_depth) throw std::out_of_range("reversed_cf_value: n out of range");
    // convergents of [a_n, a_{n-1}, ..., a_1]
    BigInt pk{0}, pk1{1};  // p~_0 = 0, p~_{-1} = 1
    BigInt qk{1}, qk1{0};  // q~_0 = 1, q~_{-1} = 0
    for (int i = n; i >= 1; --i) {
        const BigInt& d = cf.digit(i);
        BigInt pn = d * pk + pk1;
        BigInt qn = d * qk + qk1;
        pk1 = std::move(pk);
        pk = std::move(pn);
        qk1 = std::move(qk);
        qk = std::move(qn);
    }
    // determinant identity makes the pair coprime
    return Rational::from_coprime(std::move(pk), std::move(qk));
}

bool verify_identities(const CFExpansion& cf) {
    if (cf.valid_depth < 1 || cf.p.empty()) return false;
    BigInt det{1};  // (-1)^{n-1} for n = 1 is +1
    for (int n = 1; n <= cf.valid_depth; ++n) {
        const BigInt& a = cf.digit(n);
        if (a.sign() <= 0) return false;
        if (cf.qden(n) != a * cf.qden(n - 1) + cf.qden(n - 2)) return false;
        if (cf.pnum(n) != a * cf.pnum(n - 1) + cf.pnum(n - 2)) return false;
        if (cf.pnum(n) * cf.qden(n - 1) - cf.pnum(n - 1) * cf.qden(n) != det) return false;
        det = -det;
    }
    return true;
}

}  // namespace cflab
