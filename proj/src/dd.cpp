#include "cflab/dd.hpp"

#include <stdexcept>

namespace cflab {

namespace {
constexpr DD kLn2Dd{0x1.62e42fefa39efp-1, 0x1.abc9e3b39803fp-56};
}

double frac01(DD a) {
    double f = a.hi - std::floor(a.hi) + a.lo;
    f -= std::floor(f);
    if (f >= 1.0 || f < 0.0) f = 0.0;  // rounding landed exactly on the seam
    return f;
}

DD dd_sqrt(DD a) {
    if (a.hi < 0.0) throw std::domain_error("dd_sqrt: negative");
    if (a.hi == 0.0) return {0.0, 0.0};
    double s = std::sqrt(a.hi);
    DD e = dd_sub(a, dd_mul(DD{s, 0.0}, DD{s, 0.0}));
    return dd_add(DD{s, 0.0}, e.hi / (2.0 * s));
}

DD dd_log(DD a) {
    if (a.hi <= 0.0) throw std::domain_error("dd_log: nonpositive");
    int e = 0;
    std::frexp(a.hi, &e);  // a.hi in [2^{e-1}, 2^e)
    DD m = dd_ldexp(a, -e + 1);  // m in [1, 2)
    if (m.hi > 1.4142135623730951) {
        m = dd_ldexp(m, -1);
        ++e;
    }
    int shift = e - 1;
    // atanh series: log m = 2 (z + z^3/3 + z^5/5 + ...), z = (m-1)/(m+1)
    DD z = dd_div(dd_add(m, -1.0), dd_add(m, 1.0));
    DD z2 = dd_mul(z, z);
    DD term = z, sum = z;
    for (int k = 3; k < 200; k += 2) {
        term = dd_mul(term, z2);
        DD t = dd_div(term, DD{static_cast<double>(k), 0.0});
        sum = dd_add(sum, t);
        if (std::fabs(t.hi) < 1e-35 * std::fabs(sum.hi)) break;
    }
    return dd_add(dd_ldexp(sum, 1), dd_mul(kLn2Dd, static_cast<double>(shift)));
}

DD dd_atan_recip(int n) {
    if (n < 2) throw std::domain_error("dd_atan_recip: n must be >= 2");
    DD x = dd_div(DD{1.0, 0.0}, DD{static_cast<double>(n), 0.0});
    DD x2 = dd_mul(x, x);
    DD term = x, sum = x;
    double sign = -1.0;
    for (int k = 3; k < 400; k += 2) {
        term = dd_mul(term, x2);
        DD t = dd_div(term, DD{static_cast<double>(k), 0.0});
        sum = dd_add(sum, dd_mul(t, sign));
        sign = -sign;
        if (std::fabs(t.hi) < 1e-36 * std::fabs(sum.hi)) break;
    }
    return sum;
}

}  // namespace cflab
