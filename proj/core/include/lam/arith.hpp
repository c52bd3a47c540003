#pragma once

#include <cstdint>
#include <vector>

#include "lam/errors.hpp"

namespace lam::arith {

/// One prime-power factor p^e.
struct PrimePower {
    uint64_t prime;
    uint32_t exponent;

    friend bool operator==(const PrimePower&, const PrimePower&) = default;
};

/// Prime factorization of an integer, primes strictly ascending.
/// Empty for n = 1.
struct Factorization {
    std::vector<PrimePower> factors;

    /// Recompose the factored integer. Throws std::overflow_error if the
    /// product leaves the 64-bit range (cannot happen for factorizations
    /// produced by this module).
    uint64_t value() const;

    friend bool operator==(const Factorization&, const Factorization&) = default;
};

/// (a * b) mod m without overflow, for any 64-bit operands.
uint64_t mulmod(uint64_t a, uint64_t b, uint64_t m);

/// (base ^ exp) mod m.
uint64_t powmod(uint64_t base, uint64_t exp, uint64_t m);

/// Deterministic primality test, valid for the whole 64-bit range.
bool is_prime(uint64_t n);

/// Factor any n >= 1. Small inputs go through a shared SPF table, larger
/// ones through trial division and Pollard rho.
Factorization factorize(uint64_t n);

/// base^exp with overflow detection.
uint64_t checked_pow(uint64_t base, uint32_t exp);

/// Least common multiple with overflow detection. lcm(0, x) is rejected.
uint64_t lcm(uint64_t a, uint64_t b);

/// All primes <= limit, ascending.
std::vector<uint64_t> primes_upto(uint64_t limit);

/// Dense smallest-prime-factor table over [2, N].
class SpfTable {
public:
    /// Builds the table; throws lam::resource_error if 4*N bytes would
    /// exceed mem_budget.
    explicit SpfTable(uint64_t limit, uint64_t mem_budget = uint64_t{2} << 30);

    uint64_t limit() const { return limit_; }

    /// Smallest prime factor of n, 2 <= n <= limit.
    uint32_t spf(uint64_t n) const;

    bool is_prime(uint64_t n) const { return n >= 2 && spf(n) == n; }

    /// Factorization via repeated SPF division.
    Factorization factorize(uint64_t n) const;

private:
    uint64_t limit_;
    std::vector<uint32_t> spf_;
};

/// Shared process-wide SPF table (built lazily, thread-safe).
const SpfTable& shared_spf();

} // namespace lam::arith
