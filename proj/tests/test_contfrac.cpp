#include "cflab/contfrac.hpp"

#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "test_rng.hpp"

using namespace cflab;

namespace {

// n Gauss-map steps done the slow way, with full rational arithmetic.
Rational gauss_step_direct(const Rational& x, int steps) {
    Rational y = x;
    for (int i = 0; i < steps; ++i) {
        Rational inv = y.reciprocal();
        BigInt a = inv.num() / inv.den();
        y = inv - Rational{a, BigInt{1}};
    }
    return y;
}

Rational random_unit_rational(TestRng& rng, std::size_t limbs) {
    BigInt den = rng.next_bigint(limbs);
    if (den.is_zero()) den = BigInt{3};
    BigInt num = rng.next_bigint(limbs) % den;
    if (num.is_zero()) num = BigInt{1};
    if (num == den) den += BigInt{1};
    return Rational{num, den};
}

}  // namespace

TEST_CASE("cf_expand on 16/113") {
    Rational x = Rational::from_string("16/113");
    CFExpansion cf = cf_expand(x, 10);
    REQUIRE(cf.valid_depth == 2);
    CHECK(cf.exhausted);
    CHECK(cf.digit(1) == BigInt{7});
    CHECK(cf.digit(2) == BigInt{16});
    CHECK(cf.pnum(1) == BigInt{1});
    CHECK(cf.qden(1) == BigInt{7});
    CHECK(cf.pnum(2) == BigInt{16});
    CHECK(cf.qden(2) == BigInt{113});
    // p2*q1 - p1*q2 = 16*7 - 1*113 = -1
    CHECK(cf.pnum(2) * cf.qden(1) - cf.pnum(1) * cf.qden(2) == BigInt{-1});
    CHECK(verify_identities(cf));
}

TEST_CASE("cf_expand on 1/2 takes a single euclid step") {
    CFExpansion cf = cf_expand(Rational::from_string("1/2"), 10);
    CHECK(cf.valid_depth == 1);
    CHECK(cf.exhausted);
    CHECK(cf.digit(1) == BigInt{2});
    CHECK(cf.pnum(1) == BigInt{1});
    CHECK(cf.qden(1) == BigInt{2});
    CHECK(verify_identities(cf));
}

TEST_CASE("cf_expand domain checks") {
    CHECK_THROWS_AS(cf_expand(Rational::from_string("5/3"), 4), std::domain_error);
    CHECK_THROWS_AS(cf_expand(Rational::from_string("-1/3"), 4), std::domain_error);
    CHECK_THROWS_AS(cf_expand(Rational{}, 4), std::domain_error);
    CHECK_THROWS_AS(cf_expand(Rational::from_string("1/3"), 0), std::domain_error);
}

TEST_CASE("golden digit stream gives fibonacci denominators") {
    std::vector<BigInt> ones(10, BigInt{1});
    CFExpansion cf = cf_from_digits(ones);
    std::vector<long long> fib{1, 2, 3, 5, 8, 13, 21, 34, 55, 89};
    for (int n = 1; n <= 10; ++n) {
        CHECK(cf.qden(n) == BigInt{fib[static_cast<std::size_t>(n - 1)]});
    }
    CHECK(!cf.has_remainders());
    CHECK(verify_identities(cf));
    CHECK_THROWS_AS(remainder_exact(Rational::from_string("1/2"), cf, 1), std::domain_error);
}

TEST_CASE("remainder_exact equals direct gauss iteration") {
    Rational x = Rational::from_string("16/113");
    CFExpansion cf = cf_expand(x, 10);
    CHECK(remainder_exact(x, cf, 0) == x);
    CHECK(remainder_exact(x, cf, 1) == Rational::from_string("1/16"));
    CHECK(remainder_exact(x, cf, 2).is_zero());
    CHECK_THROWS_AS(remainder_exact(x, cf, 3), std::out_of_range);

    TestRng rng{101};
    for (int i = 0; i < 20; ++i) {
        Rational y = random_unit_rational(rng, 2);
        CFExpansion e = cf_expand(y, 12);
        int n = std::min(e.valid_depth, 6);
        CHECK(remainder_exact(y, e, n) == gauss_step_direct(y, n));
    }
}

TEST_CASE("one extra euclid step on a remainder reproduces the next digit") {
    TestRng rng{103};
    for (int i = 0; i < 20; ++i) {
        Rational y = random_unit_rational(rng, 2);
        CFExpansion e = cf_expand(y, 12);
        for (int n = 0; n + 1 <= e.valid_depth; ++n) {
            Rational t = remainder_exact(y, e, n);
            if (t.is_zero()) break;
            Rational inv = t.reciprocal();
            CHECK(inv.num() / inv.den() == e.digit(n + 1));
        }
    }
}

TEST_CASE("reversed_cf_value equals q_{n-1}/q_n") {
    Rational x = Rational::from_string("16/113");
    CFExpansion cf = cf_expand(x, 10);
    CHECK(reversed_cf_value(cf, 2) == Rational::from_string("7/113"));
    CHECK(reversed_cf_value(cf, 1) == Rational::from_string("1/7"));
    CHECK_THROWS_AS(reversed_cf_value(cf, 0), std::out_of_range);
    CHECK_THROWS_AS(reversed_cf_value(cf, 3), std::out_of_range);

    std::vector<BigInt> ones(8, BigInt{1});
    CFExpansion g = cf_from_digits(ones);
    CHECK(reversed_cf_value(g, 5) == Rational::from_string("5/8"));

    TestRng rng{107};
    for (int i = 0; i < 15; ++i) {
        Rational y = random_unit_rational(rng, 2);
        CFExpansion e = cf_expand(y, 20);
        for (int n = 1; n <= e.valid_depth; ++n) {
            Rational rev = reversed_cf_value(e, n);
            CHECK(rev == Rational{e.qden(n - 1), e.qden(n)});
            // rev * q_n = q_{n-1} exactly
            CHECK(rev.num() * e.qden(n) == rev.den() * e.qden(n - 1));
        }
    }
}

TEST_CASE("verify_identities flags corruption") {
    CFExpansion cf = cf_expand(Rational::from_string("355/1130"), 30);
    REQUIRE(cf.valid_depth >= 4);
    CHECK(verify_identities(cf));
    CFExpansion bad = cf;
    bad.q[3] += BigInt{1};
    CHECK(!verify_identities(bad));
}

TEST_CASE("chain invariants on random rationals") {
    TestRng rng{109};
    for (int i = 0; i < 10; ++i) {
        Rational x = random_unit_rational(rng, 3);
        CFExpansion cf = cf_expand(x, 40);
        CHECK(verify_identities(cf));
        for (int n = 1; n <= cf.valid_depth; ++n) {
            // x = (p_{n-1} r_n + p_{n-2}) / (q_{n-1} r_n + q_{n-2}),
            // r_n = 1/T^{n-1}x, checked cross-multiplied in exact integers:
            // x * (q_{n-1} v_n + q_{n-2} v_{n-1}... ) -- use chain directly:
            Rational tn1 = remainder_exact(x, cf, n - 1);
            if (tn1.is_zero()) break;
            Rational rn = tn1.reciprocal();
            Rational recon = (Rational{cf.pnum(n - 1), BigInt{1}} * rn +
                              Rational{cf.pnum(n - 2), BigInt{1}}) /
                             (Rational{cf.qden(n - 1), BigInt{1}} * rn +
                              Rational{cf.qden(n - 2), BigInt{1}});
            CHECK(recon == x);
        }
        // q strictly increasing from n = 2 and q_n >= 2^{(n-1)/2}
        for (int n = 2; n <= cf.valid_depth; ++n) {
            CHECK(cf.qden(n) > cf.qden(n - 1));
        }
        for (int n = 1; n <= cf.valid_depth; ++n) {
            CHECK(cf.qden(n) * cf.qden(n) >= BigInt::pow2(static_cast<std::size_t>(n - 1)));
        }
    }
}

TEST_CASE("closed form for T^n x from convergents") {
    TestRng rng{113};
    for (int i = 0; i < 10; ++i) {
        Rational x = random_unit_rational(rng, 2);
        CFExpansion cf = cf_expand(x, 30);
        const BigInt& a = x.num();
        const BigInt& b = x.den();
        for (int n = 1; n <= cf.valid_depth; ++n) {
            // T^n x = (x q_n - p_n) / (p_{n-1} - x q_{n-1}) as integers:
            // num = a q_n - b p_n, den = b p_{n-1} - a q_{n-1}
            BigInt num = a * cf.qden(n) - b * cf.pnum(n);
            BigInt den = b * cf.pnum(n - 1) - a * cf.qden(n - 1);
            CHECK(cf.rem[static_cast<std::size_t>(n + 1)] * den ==
                  cf.rem[static_cast<std::size_t>(n)] * num);
        }
    }
}

TEST_CASE("expansion without optional storage") {
    CFOptions opt;
    opt.store_remainders = false;
    opt.store_p = false;
    Rational x = Rational::from_string("355/1130");
    CFExpansion cf = cf_expand(x, 30, opt);
    CFExpansion full = cf_expand(x, 30);
    CHECK(cf.valid_depth == full.valid_depth);
    CHECK(cf.q == full.q);
    CHECK(!cf.has_remainders());
    CHECK(cf.p.empty());
}
