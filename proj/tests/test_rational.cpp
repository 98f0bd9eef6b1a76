#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "chsh_atlas/rational.hpp"
#include "chsh_atlas/rng.hpp"

using chsh::BigInt;
using chsh::Rational;

TEST_CASE("bigint decimal round trip") {
    CHECK(BigInt(0).to_decimal() == "0");
    CHECK(BigInt(-42).to_decimal() == "-42");
    CHECK(BigInt::from_decimal("123456789012345678901234567890").to_decimal() ==
          "123456789012345678901234567890");
    CHECK(BigInt::from_decimal("-999999999999999999").to_decimal() == "-999999999999999999");
}

TEST_CASE("bigint arithmetic against 64-bit oracle") {
    chsh::Prng rng(7);
    for (int trial = 0; trial < 2000; ++trial) {
        long long a = static_cast<long long>(rng.next_u64() % 2000001) - 1000000;
        long long b = static_cast<long long>(rng.next_u64() % 2000001) - 1000000;
        BigInt A(a), B(b);
        CHECK((A + B).to_decimal() == std::to_string(a + b));
        CHECK((A - B).to_decimal() == std::to_string(a - b));
        CHECK((A * B).to_decimal() == std::to_string(a * b));
        CHECK((A < B) == (a < b));
    }
}

TEST_CASE("bigint divmod") {
    chsh::Prng rng(11);
    for (int trial = 0; trial < 500; ++trial) {
        uint64_t a = rng.next_u64() >> (trial % 32);
        uint64_t b = (rng.next_u64() >> (trial % 40)) | 1u;
        BigInt A(static_cast<long long>(a >> 1)), B(static_cast<long long>(b >> 1));
        if (B.is_zero()) continue;
        BigInt q, r;
        BigInt::divmod(A, B, q, r);
        CHECK(q * B + r == A);
        CHECK(r < B);
    }
    // multi-limb case exercising the add-back path probabilistically
    BigInt big = BigInt::from_decimal("340282366920938463463374607431768211456");  // 2^128
    BigInt d = BigInt::from_decimal("18446744073709551617");                       // 2^64 + 1
    BigInt q, r;
    BigInt::divmod(big, d, q, r);
    CHECK(q * d + r == big);
}

TEST_CASE("bigint gcd") {
    CHECK(BigInt::gcd(BigInt(0), BigInt(-6)).to_decimal() == "6");
    CHECK(BigInt::gcd(BigInt(54), BigInt(24)).to_decimal() == "6");
    BigInt a = BigInt::from_decimal("123456789123456789") * BigInt(77);
    BigInt b = BigInt::from_decimal("123456789123456789") * BigInt(35);
    CHECK(BigInt::gcd(a, b).to_decimal() == (BigInt::from_decimal("123456789123456789") * BigInt(7)).to_decimal());
}

TEST_CASE("rational decimal parsing is exact") {
    CHECK(Rational::from_decimal("0.5").to_string() == "1/2");
    CHECK(Rational::from_decimal("-0.125").to_string() == "-1/8");
    CHECK(Rational::from_decimal("2.5e-3").to_string() == "1/400");
    CHECK(Rational::from_decimal("3").to_string() == "3");
    CHECK(Rational::from_decimal("0.40").to_string() == "2/5");
    CHECK(Rational::from_decimal("1e3").to_string() == "1000");
}

TEST_CASE("rational field ops") {
    Rational a = Rational::from_decimal("0.3");
    Rational b = Rational::from_decimal("0.7");
    CHECK((a + b).to_string() == "1");
    CHECK((a * b).to_string() == "21/100");
    CHECK((a - b).to_string() == "-2/5");
    CHECK((a / b).to_string() == "3/7");
    CHECK(a < b);
    CHECK((a + b).to_double() == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("rational from double at 16 significant digits") {
    Rational half = Rational::from_double(0.5);
    CHECK(half.to_string() == "1/2");
    double v = 0.1234567890123;
    CHECK(Rational::from_double(v).to_double() == doctest::Approx(v).epsilon(1e-14));
}
