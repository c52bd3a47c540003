#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <map>
#include <random>

#include "lam/arith.hpp"

using namespace lam;

namespace {

uint64_t naive_mulmod(uint64_t a, uint64_t b, uint64_t m) {
    return static_cast<uint64_t>((static_cast<unsigned __int128>(a) * b) % m);
}

std::map<uint64_t, uint32_t> as_map(const arith::Factorization& f) {
    std::map<uint64_t, uint32_t> m;
    for (const auto& pp : f.factors)
        m[pp.prime] = pp.exponent;
    return m;
}

} // namespace

TEST_CASE("mulmod agrees with wide multiply") {
    std::mt19937_64 rng(7);
    for (int i = 0; i < 2000; ++i) {
        const uint64_t m = (rng() | 1) | (uint64_t{1} << 62);
        const uint64_t a = rng() % m, b = rng() % m;
        CHECK(arith::mulmod(a, b, m) == naive_mulmod(a, b, m));
    }
    CHECK(arith::mulmod(UINT64_MAX - 1, UINT64_MAX - 1, UINT64_MAX) == 1);
}

TEST_CASE("powmod basics") {
    CHECK(arith::powmod(2, 10, 1000000007ULL) == 1024);
    CHECK(arith::powmod(5, 0, 97) == 1);
    CHECK(arith::powmod(0, 5, 97) == 0);
    // Fermat
    const uint64_t p = 2305843009213693951ULL; // 2^61 - 1
    CHECK(arith::powmod(3, p - 1, p) == 1);
    CHECK(arith::powmod(1234567891011ULL, p - 1, p) == 1);
}

TEST_CASE("is_prime on known primes and composites") {
    const uint64_t primes[] = {2,  3,  5,  7,  97, 3691, 2147483647ULL,
                               2305843009213693951ULL, // 2^61 - 1
                               18446744073709551557ULL}; // largest 64-bit prime
    for (uint64_t p : primes)
        CHECK(arith::is_prime(p));

    const uint64_t composites[] = {0, 1, 4, 561, 2047, 25326001ULL, 3215031751ULL,
                                   3825123056546413051ULL, // strong pseudoprime to 2..23
                                   18446744073709551615ULL};
    for (uint64_t c : composites)
        CHECK_FALSE(arith::is_prime(c));

    // squares of primes near 2^32 stress the witness loop
    for (uint64_t p : {4294967291ULL, 4294967311ULL})
        CHECK_FALSE(arith::is_prime(p * p));
}

TEST_CASE("is_prime matches trial division on a range") {
    auto trial = [](uint64_t n) {
        if (n < 2) return false;
        for (uint64_t d = 2; d * d <= n; ++d)
            if (n % d == 0) return false;
        return true;
    };
    for (uint64_t n = 0; n <= 5000; ++n)
        CHECK(arith::is_prime(n) == trial(n));
}

TEST_CASE("factorize small and structured values") {
    CHECK(arith::factorize(1).factors.empty());
    {
        auto m = as_map(arith::factorize(2016)); // 2^5 * 3^2 * 7
        CHECK(m == std::map<uint64_t, uint32_t>{{2, 5}, {3, 2}, {7, 1}});
    }
    {
        auto m = as_map(arith::factorize(600851475143ULL));
        CHECK(m == std::map<uint64_t, uint32_t>{{71, 1}, {839, 1}, {1471, 1}, {6857, 1}});
    }
    {
        // (2^31 - 1)^2 forces the rho path
        auto m = as_map(arith::factorize(4611686014132420609ULL));
        CHECK(m == std::map<uint64_t, uint32_t>{{2147483647ULL, 2}});
    }
    {
        auto f = arith::factorize(2305843009213693951ULL);
        REQUIRE(f.factors.size() == 1);
        CHECK(f.factors[0].prime == 2305843009213693951ULL);
        CHECK(f.factors[0].exponent == 1);
    }
}

TEST_CASE("factorize output is sorted, exact, and recomposes") {
    std::mt19937_64 rng(42);
    for (int i = 0; i < 300; ++i) {
        const uint64_t n = (rng() % 1000000000000ULL) + 2;
        const auto f = arith::factorize(n);
        CHECK(f.value() == n);
        for (size_t j = 0; j + 1 < f.factors.size(); ++j)
            CHECK(f.factors[j].prime < f.factors[j + 1].prime);
        for (const auto& pp : f.factors) {
            CHECK(arith::is_prime(pp.prime));
            CHECK(pp.exponent >= 1);
            // exactness: pp.prime^exponent divides n, one more power does not
            uint64_t q = n;
            uint32_t e = 0;
            while (q % pp.prime == 0) {
                q /= pp.prime;
                ++e;
            }
            CHECK(e == pp.exponent);
        }
    }
}

TEST_CASE("checked_pow and lcm guard overflow") {
    CHECK(arith::checked_pow(3, 4) == 81);
    CHECK(arith::checked_pow(2, 63) == (uint64_t{1} << 63));
    CHECK_THROWS_AS((void)arith::checked_pow(2, 64), std::overflow_error);
    CHECK_THROWS_AS((void)arith::checked_pow(10, 20), std::overflow_error);

    CHECK(arith::lcm(4, 6) == 12);
    CHECK(arith::lcm(1, 7) == 7);
    const uint64_t big = uint64_t{1} << 40;
    CHECK_THROWS_AS((void)arith::lcm(big + 1, big - 1), std::overflow_error);
}

TEST_CASE("primes_upto") {
    const auto ps = arith::primes_upto(100);
    const std::vector<uint64_t> want = {2,  3,  5,  7,  11, 13, 17, 19, 23, 29, 31, 37, 41,
                                        43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89, 97};
    CHECK(ps == want);
    CHECK(arith::primes_upto(1).empty());
    CHECK(arith::primes_upto(2) == std::vector<uint64_t>{2});
}

TEST_CASE("SpfTable matches naive factoring") {
    arith::SpfTable t(10000);
    CHECK(t.limit() == 10000);
    for (uint64_t n = 2; n <= 10000; ++n) {
        uint64_t least = 0;
        for (uint64_t d = 2; d * d <= n; ++d)
            if (n % d == 0) {
                least = d;
                break;
            }
        if (least == 0) least = n;
        CHECK(t.spf(n) == least);
        CHECK(t.is_prime(n) == (least == n));
        CHECK(t.factorize(n) == arith::factorize(n));
    }
}

TEST_CASE("SpfTable refuses an impossible budget") {
    CHECK_THROWS_AS(arith::SpfTable(1u << 20, 1024), resource_error);
}

TEST_CASE("shared_spf is usable and consistent") {
    const auto& t = arith::shared_spf();
    CHECK(t.limit() >= 1u << 20);
    CHECK(t.spf(1048573) == 1048573); // prime
    CHECK(t.spf(1048575) == 3);       // 3 * 5^2 * 11 * 31 * 41
}
