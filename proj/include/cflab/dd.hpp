#pragma once

#include <cmath>

namespace cflab {

/// Unevaluated double-double value hi + lo with |lo| <= ulp(hi)/2.
///
/// Roughly 106 bits of precision; used wherever the 2^-60 absolute error
/// contract of the certified logarithms would not survive a plain double
/// (e.g. log q_n near 6000 has double ulp around 2^-40).
struct DD {
    double hi = 0.0;
    double lo = 0.0;

    double value() const { return hi + lo; }
};

inline DD quick_two_sum(double a, double b) {
    double s = a + b;
    return {s, b - (s - a)};
}

inline DD two_sum(double a, double b) {
    double s = a + b;
    double bb = s - a;
    return {s, (a - (s - bb)) + (b - bb)};
}

inline DD two_prod(double a, double b) {
    double p = a * b;
    return {p, std::fma(a, b, -p)};
}

inline DD dd_add(DD a, DD b) {
    DD s = two_sum(a.hi, b.hi);
    DD t = two_sum(a.lo, b.lo);
    s.lo += t.hi;
    s = quick_two_sum(s.hi, s.lo);
    s.lo += t.lo;
    return quick_two_sum(s.hi, s.lo);
}

inline DD dd_add(DD a, double b) {
    DD s = two_sum(a.hi, b);
    s.lo += a.lo;
    return quick_two_sum(s.hi, s.lo);
}

inline DD dd_neg(DD a) { return {-a.hi, -a.lo}; }
inline DD dd_sub(DD a, DD b) { return dd_add(a, dd_neg(b)); }

inline DD dd_mul(DD a, DD b) {
    DD p = two_prod(a.hi, b.hi);
    p.lo += a.hi * b.lo + a.lo * b.hi;
    return quick_two_sum(p.hi, p.lo);
}

inline DD dd_mul(DD a, double b) {
    DD p = two_prod(a.hi, b);
    p.lo += a.lo * b;
    return quick_two_sum(p.hi, p.lo);
}

inline DD dd_div(DD a, DD b) {
    double q1 = a.hi / b.hi;
    DD r = dd_sub(a, dd_mul(b, q1));
    double q2 = r.hi / b.hi;
    r = dd_sub(r, dd_mul(b, q2));
    double q3 = r.hi / b.hi;
    DD q = quick_two_sum(q1, q2);
    return dd_add(q, q3);
}

inline DD dd_ldexp(DD a, int e) { return {std::ldexp(a.hi, e), std::ldexp(a.lo, e)}; }

/// Fractional part as a plain double in [0, 1). Reduction error is at the
/// double rounding level, fine for every statistic downstream.
double frac01(DD a);

DD dd_sqrt(DD a);
DD dd_log(DD a);          // natural log, a > 0
DD dd_atan_recip(int n);  // atan(1/n) by Taylor series, n >= 2

}  // namespace cflab
