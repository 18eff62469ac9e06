#include <random>

#include "linkform/arith.hpp"
#include "linkform/errors.hpp"
#include "oracle.hpp"
#include "test_util.hpp"

using namespace linkform;
using namespace linkform::arith;
using linkform::testing::draw;

TEST_CASE("ext_gcd canonical examples") {
    auto r = ext_gcd(25, -3);
    CHECK(r.g == 1);
    CHECK(r.u == 1);
    CHECK(r.v == 8);
    CHECK(25 * r.u + -3 * r.v == 1);

    r = ext_gcd(0, 5);
    CHECK((r.g == 5 && r.u == 0 && r.v == 1));

    r = ext_gcd(12, 8);
    CHECK((r.g == 4 && r.u == 1 && r.v == -1));

    r = ext_gcd(-7, 0);
    CHECK((r.g == 7 && r.u == -1 && r.v == 0));

    CHECK_THROWS_AS(ext_gcd(0, 0), std::invalid_argument);
}

TEST_CASE("ext_gcd is a minimal Bezout pair") {
    std::mt19937_64 rng(7);
    for (int i = 0; i < 20000; ++i) {
        const Int x = draw(rng, -100000, 100000);
        const Int y = draw(rng, -100000, 100000);
        if (x == 0 && y == 0) continue;
        const auto r = ext_gcd(x, y);
        REQUIRE(r.g == gcd(x, y));
        REQUIRE(r.u * x + r.v * y == r.g);
        if (y != 0) {
            const Int period = abs(y) / r.g;
            // u in (-period/2, period/2]
            REQUIRE(2 * r.u <= period);
            REQUIRE(2 * r.u > -period);
        }
    }
}

TEST_CASE("mod is canonical") {
    CHECK(mod(-7, 25) == 18);
    CHECK(mod(-7, -25) == 18);
    CHECK(mod(50, 25) == 0);
    CHECK_THROWS(mod(1, 0));
}

TEST_CASE("mulmod and powmod above 2^64") {
    const UInt m = (static_cast<UInt>(1) << 100) + 277;
    const UInt a = (static_cast<UInt>(1) << 99) + 12345;
    // (2^99 + c)^2 mod m computed by repeated addition of a small case split:
    // check (a * 2) mod m against addition.
    CHECK(mulmod(a, 2, m) == (a + a) % m);
    CHECK(powmod(2, 100, m) == m - 277);
    // Fermat for a known prime above 2^64: 2^89 - 1.
    const UInt mersenne = (static_cast<UInt>(1) << 89) - 1;
    CHECK(powmod(3, mersenne - 1, mersenne) == 1);
}

TEST_CASE("legendre examples") {
    CHECK(legendre(2, 5) == SymbolValue::minus_one);
    CHECK(legendre(-1, 13) == SymbolValue::plus_one);
    CHECK(legendre(0, 7) == SymbolValue::zero);
    CHECK_THROWS_AS(legendre(3, 9), std::invalid_argument);
    CHECK_THROWS_AS(legendre(3, 2), std::invalid_argument);
    CHECK_THROWS_AS(legendre(3, -7), std::invalid_argument);
}

TEST_CASE("jacobi examples") {
    CHECK(jacobi(2, 5) == SymbolValue::minus_one);
    CHECK(jacobi(1, 9) == SymbolValue::plus_one);
    CHECK(jacobi(8, 15) == SymbolValue::plus_one);
    CHECK(jacobi(5, 1) == SymbolValue::plus_one);
    CHECK(jacobi(3, 9) == SymbolValue::zero);
    CHECK_THROWS_AS(jacobi(3, 8), std::invalid_argument);
    CHECK_THROWS_AS(jacobi(3, -3), std::invalid_argument);
}

TEST_CASE("jacobi is the product of legendre over the factorization") {
    for (Int m = 1; m < 400; m += 2) {
        const auto f = factorize(m);
        for (Int x = -5; x < m + 5; ++x) {
            int expected = 1;
            for (const auto& pp : f.factors)
                for (int e = 0; e < pp.exponent; ++e) expected *= to_int(oracle::brute_legendre(x, pp.prime));
            REQUIRE(to_int(jacobi(x, m)) == expected);
        }
    }
}

TEST_CASE("first supplement and multiplicativity") {
    std::mt19937_64 rng(11);
    std::vector<Int> primes;
    for (Int p = 3; p < 1000; p += 2)
        if (is_prime(static_cast<UInt>(p))) primes.push_back(p);
    for (Int p : primes) CHECK(legendre(-1, p) == (p % 4 == 1 ? SymbolValue::plus_one : SymbolValue::minus_one));
    for (int i = 0; i < 1000; ++i) {
        const Int p = primes[static_cast<std::size_t>(draw(rng, 0, static_cast<std::int64_t>(primes.size()) - 1))];
        const Int x = draw(rng, -5000, 5000);
        const Int y = draw(rng, -5000, 5000);
        REQUIRE(to_int(legendre(x * y, p)) == to_int(legendre(x, p)) * to_int(legendre(y, p)));
    }
}

TEST_CASE("is_prime matches a sieve and handles large values") {
    std::vector<bool> composite(20000, false);
    for (std::size_t i = 2; i < composite.size(); ++i) {
        if (!composite[i])
            for (std::size_t j = i * i; j < composite.size(); j += i) composite[j] = true;
        REQUIRE(is_prime(i) == !composite[i]);
    }
    CHECK_FALSE(is_prime(0));
    CHECK_FALSE(is_prime(1));
    // Strong pseudoprime to bases 2..37 (Jaeschke): 3825123056546413051.
    CHECK_FALSE(is_prime(3825123056546413051ull));
    CHECK(is_prime((static_cast<UInt>(1) << 61) - 1));
    // Above the Miller-Rabin deterministic range: certified by Pocklington.
    CHECK(is_prime((static_cast<UInt>(1) << 89) - 1));
    CHECK(is_prime((static_cast<UInt>(1) << 107) - 1));
    CHECK_FALSE(is_prime((static_cast<UInt>(1) << 101) - 1));
}

TEST_CASE("factorize examples") {
    auto f = factorize(25);
    CHECK(f.sign == 1);
    REQUIRE(f.factors.size() == 1);
    CHECK(f.factors[0] == PrimePower{5, 2});

    f = factorize(1);
    CHECK(f.sign == 1);
    CHECK(f.factors.empty());

    f = factorize(-360);
    CHECK(f.sign == -1);
    CHECK(f.factors == std::vector<PrimePower>{{2, 3}, {3, 2}, {5, 1}});
    CHECK(f.product() == -360);

    CHECK_THROWS_AS(factorize(0), std::invalid_argument);
}

TEST_CASE("factorize splits products of large primes") {
    const Int p = 1000003, q = 998244353;
    const Int big = 4294967311;  // prime > 2^32
    auto f = factorize(p * q * big);
    CHECK(f.factors == std::vector<PrimePower>{{p, 1}, {q, 1}, {big, 1}});
    f = factorize(-(big * big));
    CHECK(f.factors == std::vector<PrimePower>{{big, 2}});
    CHECK(f.sign == -1);
    // 2^89 - 1 times a small cofactor.
    const Int m89 = (Int{1} << 89) - 1;
    f = factorize(m89 * 6);
    CHECK(f.factors == std::vector<PrimePower>{{2, 1}, {3, 1}, {m89, 1}});
}

TEST_CASE("factorize re-multiplies for random inputs") {
    std::mt19937_64 rng(3);
    for (int i = 0; i < 10000; ++i) {
        Int n = static_cast<Int>(rng() >> 4);
        if (i % 3 == 0) n = draw(rng, -1000000, 1000000);
        if (n == 0) continue;
        const auto f = factorize(n);
        REQUIRE(f.product() == n);
        for (std::size_t k = 1; k < f.factors.size(); ++k) REQUIRE(f.factors[k - 1].prime < f.factors[k].prime);
        for (const auto& pp : f.factors) REQUIRE(is_prime(static_cast<UInt>(pp.prime)));
    }
}

TEST_CASE("factorize respects the guard and budget") {
    FactorOptions tight;
    tight.magnitude_guard = 1000;
    CHECK_THROWS_AS(factorize(1000, tight), ResourceExceeded);
    CHECK_NOTHROW(factorize(999, tight));
    FactorOptions starved;
    starved.rho_budget = 1;
    CHECK_THROWS_AS(factorize(Int{1000003} * 1000033, starved), ResourceExceeded);
}

TEST_CASE("factorize is reproducible") {
    const Int n = Int{2147483647} * 4294967311 * 1000003;
    const auto a = factorize(n);
    const auto b = factorize(n);
    CHECK(a.factors == b.factors);
}

TEST_CASE("sqrt_mod_prime") {
    CHECK(sqrt_mod_prime(4, 5) == 2);
    CHECK(sqrt_mod_prime(10, 13) == 6);
    for (Int p : {Int{17}, Int{41}, Int{97}, Int{257}, Int{65537}, Int{1000000007}}) {
        for (Int x = 1; x < 60; ++x) {
            if (legendre(x, p) != SymbolValue::plus_one) continue;
            const Int r = sqrt_mod_prime(x, p);
            REQUIRE(mod(r * r, p) == mod(x, p));
            REQUIRE(2 * r <= p);
        }
    }
    CHECK_THROWS(sqrt_mod_prime(2, 5));
}

TEST_CASE("is_square_unit_mod examples") {
    for (Int n : {Int{2}, Int{5}, Int{-25}, Int{360}, Int{1}}) {
        const auto r = is_square_unit_mod(1, n);
        CHECK(r.is_square);
        CHECK(r.root == mod(1, n));
    }
    auto r = is_square_unit_mod(18, 25);
    CHECK_FALSE(r.is_square);
    REQUIRE(r.obstruction);
    CHECK(*r.obstruction == PrimePower{5, 2});

    r = is_square_unit_mod(24, 25);
    CHECK(r.is_square);
    CHECK(r.root == 7);

    CHECK_THROWS_AS(is_square_unit_mod(5, 25), std::invalid_argument);
    CHECK_THROWS_AS(is_square_unit_mod(3, 0), std::invalid_argument);
}

TEST_CASE("is_square_unit_mod 2-adic trichotomy") {
    CHECK(is_square_unit_mod(3, 2).is_square);
    CHECK(is_square_unit_mod(1, 4).is_square);
    CHECK_FALSE(is_square_unit_mod(3, 4).is_square);
    CHECK(is_square_unit_mod(17, 32).is_square);
    CHECK_FALSE(is_square_unit_mod(5, 32).is_square);
    CHECK(is_square_unit_mod(9, 1024).is_square);
    const auto r = is_square_unit_mod(41, Int{1} << 40);
    REQUIRE(r.is_square);
    CHECK(static_cast<Int>(mulmod(static_cast<UInt>(r.root), static_cast<UInt>(r.root), UInt{1} << 40)) == 41);
}

TEST_CASE("is_square_unit_mod agrees with exhaustive enumeration") {
    std::mt19937_64 rng(5);
    for (int i = 0; i < 100; ++i) {
        const Int n = draw(rng, 2, 5000) * (i % 2 == 0 ? 1 : -1);
        const Int m = abs(n);
        for (Int x = 1; x < m; ++x) {
            if (gcd(x, m) != 1) continue;
            const auto r = is_square_unit_mod(x, n);
            REQUIRE(r.is_square == oracle::brute_square_unit(x, n));
            if (r.is_square) {
                REQUIRE(mod(r.root * r.root - x, m) == 0);
            } else {
                REQUIRE(r.obstruction);
                const Int pe = r.obstruction->value();
                REQUIRE(m % pe == 0);
                REQUIRE_FALSE(oracle::brute_square_unit(x, pe));
            }
        }
    }
}

TEST_CASE("is_square_unit_mod witnesses on large moduli") {
    const Int p = 1000003, q = 998244353;
    const Int n = p * p * q * 8;
    std::mt19937_64 rng(9);
    int squares = 0;
    for (int i = 0; i < 200; ++i) {
        const Int l = draw(rng, 1, 1'000'000'000);
        if (gcd(l, n) != 1) continue;
        const Int x = static_cast<Int>(mulmod(static_cast<UInt>(l), static_cast<UInt>(l), static_cast<UInt>(n)));
        const auto r = is_square_unit_mod(x, n);
        REQUIRE(r.is_square);
        REQUIRE(static_cast<Int>(mulmod(static_cast<UInt>(r.root), static_cast<UInt>(r.root), static_cast<UInt>(n))) == x);
        ++squares;
    }
    CHECK(squares > 100);
}
