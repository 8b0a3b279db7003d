#include "cflab/biglog.hpp"

#include <cmath>
#include <stdexcept>

#include "doctest.h"
#include "test_rng.hpp"

using namespace cflab;

namespace {

// |a - ref| where ref is a plain double literal (so only ~1e-16 of the
// reference is meaningful).
double dd_err(DD a, double ref) { return std::fabs(dd_add(a, -ref).value()); }

// distance of a dd value from the nearest integer
double dist_mod1(DD d) {
    double best = std::fabs(d.value());
    for (double k : {-1.0, 1.0}) best = std::min(best, std::fabs(dd_add(d, k).value()));
    return best;
}

// independent reference: log via the double-double series path
DD ref_log(const BigInt& n, LogBase base) {
    DD v = ratio_dd(n, BigInt{1});
    DD l = dd_log(v);
    if (base == LogBase::decimal) l = dd_div(l, dd_log(DD{10.0, 0.0}));
    return l;
}

}  // namespace

TEST_CASE("log_mod1 basics") {
    // lg 10^6 = 6 exactly
    CHECK(log_mod1(BigInt::pow10(6), LogBase::decimal).value() == 0.0);
    // ln 2 against the 40-digit reference 0.6931471805599453094172321214581765680755
    DD l2 = log_mod1(BigInt{2}, LogBase::natural);
    CHECK(std::fabs(dd_sub(l2, kLn2).value()) < 0x1p-100);
    CHECK(dd_err(l2, 0.6931471805599453094) < 4e-16);
    // frac(lg F100), F100 = 354224848179261915075
    // 40-digit reference 0.5492790228298639745340783711177881956300
    DD f = log_mod1(BigInt::from_decimal("354224848179261915075"), LogBase::decimal);
    CHECK(dd_err(f, 0.5492790228298639745) < 4e-16);
    CHECK_THROWS_AS(log_mod1(BigInt{0}, LogBase::natural), std::domain_error);
    CHECK_THROWS_AS(log_mod1(BigInt{-3}, LogBase::natural), std::domain_error);
}

TEST_CASE("log_mod1 is exactly zero on powers of ten") {
    for (std::size_t k : {1u, 2u, 19u, 100u, 1000u, 10000u}) {
        CHECK(log_mod1(BigInt::pow10(k), LogBase::decimal).value() == 0.0);
    }
    CHECK(log_mod1(BigInt{1}, LogBase::natural).value() == 0.0);
    // powers of two in decimal: frac(k lg 2), nothing special
    DD v = log_mod1(BigInt::pow2(10), LogBase::decimal);
    CHECK(dd_err(v, 0.0102999566398119521) < 4e-16);  // frac(10 lg 2)
}

TEST_CASE("log_full values") {
    CHECK(log_full(BigInt{1}, LogBase::natural).value() == 0.0);
    CHECK(log_full(BigInt::pow10(20), LogBase::decimal).value() == 20.0);
    // lg 89 = 1.9493900066449127847235433697024411246651
    CHECK(dd_err(log_full(BigInt{89}, LogBase::decimal), 1.9493900066449127847) < 4e-16);
    // lg F100 = 20.549279022829863974534078371117788195630
    DD lf = log_full(BigInt::from_decimal("354224848179261915075"), LogBase::decimal);
    CHECK(dd_err(lf, 20.549279022829863975) < 4e-15);
    // ln 7 = 1.9459101490553133051053527434431797296370
    CHECK(dd_err(log_full(BigInt{7}, LogBase::natural), 1.9459101490553133051) < 4e-16);
}

TEST_CASE("fixed-point path agrees with the double-double series path") {
    TestRng rng{59};
    for (int i = 0; i < 100; ++i) {
        BigInt n = rng.next_bigint(1 + rng.next() % 8);
        if (n.is_zero()) n = BigInt{17};
        for (LogBase base : {LogBase::natural, LogBase::decimal}) {
            DD mine = log_full(n, base);
            DD ref = ref_log(n, base);
            CHECK(std::fabs(dd_sub(mine, ref).value()) < 1e-25 * (1.0 + std::fabs(ref.value())));
        }
    }
}

TEST_CASE("log_rational") {
    CHECK(log_rational(Rational::from_string("1/1"), LogBase::natural).value() == 0.0);
    DD h = log_rational(Rational::from_string("1/2"), LogBase::natural);
    CHECK(std::fabs(dd_add(h, kLn2).value()) < 0x1p-100);
    // ln(16/113) = -1.9547990964725593309132030077833153997273
    DD g = log_rational(Rational::from_string("16/113"), LogBase::natural);
    CHECK(dd_err(g, -1.9547990964725593309) < 4e-16);
    CHECK_THROWS_AS(log_rational(Rational{}, LogBase::natural), std::domain_error);
    CHECK_THROWS_AS(log_rational(Rational::from_string("-1/2"), LogBase::natural),
                    std::domain_error);
}

TEST_CASE("additivity of log_mod1 under products") {
    TestRng rng{47};
    for (int i = 0; i < 200; ++i) {
        BigInt a = rng.next_bigint(4);
        BigInt b = rng.next_bigint(4);
        if (a.is_zero() || b.is_zero()) continue;
        for (LogBase base : {LogBase::natural, LogBase::decimal}) {
            DD sum = dd_add(log_mod1(a, base), log_mod1(b, base));
            DD prod = log_mod1(a * b, base);
            CHECK(dist_mod1(dd_sub(sum, prod)) < 0x1p-59);
        }
    }
}

TEST_CASE("log_full consistency with plain double log at moderate sizes") {
    TestRng rng{53};
    for (int i = 0; i < 200; ++i) {
        std::uint64_t v = rng.next() >> (rng.next() % 32);
        if (v < 2) continue;
        DD l = log_full(BigInt{static_cast<unsigned long long>(v)}, LogBase::natural);
        CHECK(l.value() == doctest::Approx(std::log(static_cast<double>(v))).epsilon(1e-14));
    }
}

TEST_CASE("limit constants and their identity") {
    // 40-digit references:
    //   levy       1.1865691104156254528217229759472371205683
    //   delta mean -0.160004479864347201886893084781851163469
    //   log theta  -1.346573590279972654708616060729088284037
    CHECK(dd_err(kLevyConstant, 1.1865691104156254528) < 4e-16);
    CHECK(dd_err(kDeltaMeanLimit, -0.1600044798643472019) < 4e-16);
    CHECK(dd_err(kLogThetaMeanLimit, -1.3465735902799726547) < 4e-16);

    // delta limit == theta limit + levy, far below the 1e-15 requirement
    DD sum = dd_add(kLogThetaMeanLimit, kLevyConstant);
    CHECK(std::fabs(dd_sub(sum, kDeltaMeanLimit).value()) < 1e-28);

    // independent series evaluation: pi by Machin, ln 2 = 2 atanh(1/3)
    DD pi = dd_sub(dd_mul(dd_atan_recip(5), 16.0), dd_mul(dd_atan_recip(239), 4.0));
    DD ln2_indep{0.0, 0.0};
    {
        DD z = dd_div(DD{1.0, 0.0}, DD{3.0, 0.0});
        DD z2 = dd_mul(z, z);
        DD term = z, s = z;
        for (int k = 3; k < 90; k += 2) {
            term = dd_mul(term, z2);
            s = dd_add(s, dd_div(term, DD{static_cast<double>(k), 0.0}));
        }
        ln2_indep = dd_ldexp(s, 1);
    }
    CHECK(std::fabs(dd_sub(ln2_indep, kLn2).value()) < 1e-30);
    CHECK(std::fabs(dd_sub(dd_log(DD{10.0, 0.0}), kLn10).value()) < 1e-30);
    DD levy_indep = dd_div(dd_mul(pi, pi), dd_mul(ln2_indep, 12.0));
    CHECK(std::fabs(dd_sub(levy_indep, kLevyConstant).value()) < 1e-28);
    DD theta_indep = dd_sub(DD{-1.0, 0.0}, dd_ldexp(ln2_indep, -1));
    CHECK(std::fabs(dd_sub(theta_indep, kLogThetaMeanLimit).value()) < 1e-28);
    DD delta_indep = dd_add(theta_indep, levy_indep);
    CHECK(std::fabs(dd_sub(delta_indep, kDeltaMeanLimit).value()) < 1e-28);
}

TEST_CASE("ratio_dd") {
    DD r = ratio_dd(BigInt{1}, BigInt{3});
    CHECK(std::fabs(r.value() - 1.0 / 3.0) < 1e-25);
    DD s = ratio_dd(BigInt::pow2(9000) * 3, BigInt::pow2(9001));
    CHECK(std::fabs(s.value() - 1.5) < 1e-25);
    CHECK(ratio_dd(BigInt{0}, BigInt{5}).value() == 0.0);
    // agrees with exact rational conversion on random pairs
    TestRng rng{61};
    for (int i = 0; i < 100; ++i) {
        BigInt num = rng.next_bigint(3), den = rng.next_bigint(3);
        if (num.is_zero() || den.is_zero()) continue;
        double ref = Rational{num, den}.to_double();
        CHECK(ratio_dd(num, den).value() == doctest::Approx(ref).epsilon(1e-14));
    }
}
