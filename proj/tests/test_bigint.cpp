#include "cflab/bigint.hpp"

#include <cstdint>
#include <stdexcept>

#include "doctest.h"
#include "test_rng.hpp"

using cflab::BigInt;

TEST_CASE("small arithmetic matches built-in integers") {
    TestRng rng{7};
    for (int i = 0; i < 2000; ++i) {
        std::int64_t a = static_cast<std::int64_t>(rng.next()) >> (2 + rng.next() % 40);
        std::int64_t b = static_cast<std::int64_t>(rng.next()) >> (2 + rng.next() % 40);
        BigInt A{a}, B{b};
        CHECK((A + B).to_decimal() == std::to_string(a + b));
        CHECK((A - B).to_decimal() == std::to_string(a - b));
        __int128 prod = static_cast<__int128>(a) * b;
        CHECK((A * B) == BigInt::from_decimal((A * B).to_decimal()));
        // verify product against 128-bit arithmetic through string compare
        bool neg = prod < 0;
        unsigned __int128 up = neg ? -static_cast<unsigned __int128>(prod) : prod;
        std::string ps;
        if (up == 0) ps = "0";
        while (up) {
            ps.insert(ps.begin(), static_cast<char>('0' + static_cast<int>(up % 10)));
            up /= 10;
        }
        if (neg && ps != "0") ps.insert(ps.begin(), '-');
        CHECK((A * B).to_decimal() == ps);
        if (b != 0) {
            CHECK((A / B).to_decimal() == std::to_string(a / b));
            CHECK((A % B).to_decimal() == std::to_string(a % b));
        }
    }
}

TEST_CASE("decimal round trip") {
    TestRng rng{11};
    for (int i = 0; i < 200; ++i) {
        BigInt v = rng.next_bigint(1 + rng.next() % 40);
        if (rng.next() & 1) v = -v;
        CHECK(BigInt::from_decimal(v.to_decimal()) == v);
    }
    CHECK(BigInt::from_decimal("0").to_decimal() == "0");
    CHECK(BigInt::from_decimal("-0").to_decimal() == "0");
    CHECK(BigInt::from_decimal("00000123").to_decimal() == "123");
    CHECK_THROWS_AS(BigInt::from_decimal("12x3"), std::invalid_argument);
    CHECK_THROWS_AS(BigInt::from_decimal(""), std::invalid_argument);
}

TEST_CASE("divmod reconstruction property") {
    TestRng rng{13};
    for (int i = 0; i < 500; ++i) {
        BigInt a = rng.next_bigint(1 + rng.next() % 30);
        BigInt b = rng.next_bigint(1 + rng.next() % 15);
        if (b.is_zero()) b = BigInt{1};
        if (rng.next() & 1) a = -a;
        if (rng.next() & 1) b = -b;
        BigInt q, r;
        BigInt::divmod(a, b, q, r);
        CHECK(q * b + r == a);
        CHECK(r.abs() < b.abs());
        if (!r.is_zero()) CHECK(r.sign() == a.sign());
    }
    // adversarial patterns around the rare correction branch in long division
    for (int n = 2; n < 8; ++n) {
        BigInt a = BigInt::pow2(static_cast<std::size_t>(64 * n)) - BigInt{1};
        for (int m = 1; m < n; ++m) {
            BigInt b = BigInt::pow2(static_cast<std::size_t>(64 * m)) - BigInt{1};
            BigInt q, r;
            BigInt::divmod(a, b, q, r);
            CHECK(q * b + r == a);
            CHECK(r < b);
            BigInt b2 = BigInt::pow2(static_cast<std::size_t>(64 * m + 1)) + BigInt{1};
            BigInt::divmod(a, b2, q, r);
            CHECK(q * b2 + r == a);
            CHECK(r < b2);
        }
    }
    BigInt q, r;
    CHECK_THROWS_AS(BigInt::divmod(BigInt{1}, BigInt{0}, q, r), std::domain_error);
}

TEST_CASE("shifts and bit queries") {
    TestRng rng{17};
    for (int i = 0; i < 300; ++i) {
        BigInt v = rng.next_bigint(1 + rng.next() % 10);
        std::size_t s = rng.next() % 200;
        CHECK(((v << s) >> s) == v);
        CHECK((v << s) == v * BigInt::pow2(s));
        if (!v.is_zero()) {
            CHECK((v << s).bit_length() == v.bit_length() + s);
            CHECK((v << s).count_trailing_zeros() == v.count_trailing_zeros() + s);
        }
    }
    CHECK(BigInt::pow2(0) == BigInt{1});
    CHECK(BigInt::pow2(64) == BigInt::from_decimal("18446744073709551616"));
    CHECK(BigInt{0}.bit_length() == 0);
    CHECK(BigInt{1}.bit_length() == 1);
}

TEST_CASE("gcd agrees with euclid") {
    TestRng rng{19};
    for (int i = 0; i < 200; ++i) {
        BigInt a = rng.next_bigint(1 + rng.next() % 8);
        BigInt b = rng.next_bigint(1 + rng.next() % 8);
        BigInt g = BigInt::gcd(a, b);
        BigInt x = a.abs(), y = b.abs();
        while (!y.is_zero()) {
            BigInt t = x % y;
            x = y;
            y = t;
        }
        CHECK(g == x);
        if (!g.is_zero()) {
            CHECK((a % g).is_zero());
            CHECK((b % g).is_zero());
        }
    }
    CHECK(BigInt::gcd(BigInt{0}, BigInt{12}) == BigInt{12});
    CHECK(BigInt::gcd(BigInt{-8}, BigInt{12}) == BigInt{4});
}

TEST_CASE("pow10 and frexp128") {
    CHECK(BigInt::pow10(0) == BigInt{1});
    CHECK(BigInt::pow10(19) == BigInt::from_decimal("10000000000000000000"));
    CHECK(BigInt::pow10(40) == BigInt::from_decimal("1" + std::string(40, '0')));

    auto f = BigInt{1}.frexp128();
    CHECK(f.exp == -127);
    CHECK(static_cast<std::uint64_t>(f.mant >> 64) == 0x8000000000000000ull);

    // 2^200: mantissa is 2^127, exponent 73
    auto g = BigInt::pow2(200).frexp128();
    CHECK(g.exp == 73);
    CHECK(static_cast<std::uint64_t>(g.mant >> 64) == 0x8000000000000000ull);
    CHECK(static_cast<std::uint64_t>(g.mant) == 0);

    // value reconstruction for 128-bit-or-less numbers is exact
    TestRng rng{23};
    for (int i = 0; i < 100; ++i) {
        BigInt v = rng.next_bigint(2);
        if (v.is_zero()) continue;
        auto h = v.frexp128();
        BigInt m;
        m = BigInt{static_cast<unsigned long long>(h.mant >> 64)};
        m <<= 64;
        m += BigInt{static_cast<unsigned long long>(h.mant)};
        if (h.exp >= 0) {
            CHECK((m << static_cast<std::size_t>(h.exp)) == v);
        } else {
            CHECK((m >> static_cast<std::size_t>(-h.exp)) == v);
        }
    }
}

TEST_CASE("to_double") {
    CHECK(BigInt{12345}.to_double() == 12345.0);
    CHECK(BigInt{-7}.to_double() == -7.0);
    CHECK(BigInt{0}.to_double() == 0.0);
    double f100 = BigInt::from_decimal("354224848179261915075").to_double();
    CHECK(f100 == doctest::Approx(3.54224848179261915075e20).epsilon(1e-15));
}
