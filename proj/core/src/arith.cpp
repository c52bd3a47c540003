#include "lam/arith.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace lam::arith {

uint64_t mulmod(uint64_t a, uint64_t b, uint64_t m) {
    return static_cast<uint64_t>((static_cast<__uint128_t>(a) * b) % m);
}

uint64_t powmod(uint64_t base, uint64_t exp, uint64_t m) {
    if (m == 1) return 0;
    uint64_t result = 1;
    base %= m;
    while (exp > 0) {
        if (exp & 1) result = mulmod(result, base, m);
        base = mulmod(base, base, m);
        exp >>= 1;
    }
    return result;
}

namespace {

// Miller-Rabin witness round. n odd, n-1 = d * 2^r.
bool witness_composite(uint64_t n, uint64_t a, uint64_t d, int r) {
    uint64_t x = powmod(a, d, n);
    if (x == 1 || x == n - 1) return false;
    for (int i = 1; i < r; ++i) {
        x = mulmod(x, x, n);
        if (x == n - 1) return false;
    }
    return true;
}

} // namespace

bool is_prime(uint64_t n) {
    if (n < 2) return false;
    for (uint64_t p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        if (n % p == 0) return n == p;
    }
    if (n < 41 * 41) return true;
    uint64_t d = n - 1;
    int r = 0;
    while ((d & 1) == 0) { d >>= 1; ++r; }
    // Sinclair base set: deterministic for all n < 2^64.
    for (uint64_t a : {2ull, 325ull, 9375ull, 28178ull, 450775ull, 9780504ull, 1795265022ull}) {
        uint64_t b = a % n;
        if (b == 0) continue;
        if (witness_composite(n, b, d, r)) return false;
    }
    return true;
}

uint64_t Factorization::value() const {
    uint64_t v = 1;
    for (const auto& pp : factors) {
        for (uint32_t i = 0; i < pp.exponent; ++i) {
            if (__builtin_mul_overflow(v, pp.prime, &v))
                throw std::overflow_error("factorization value exceeds 64 bits");
        }
    }
    return v;
}

uint64_t checked_pow(uint64_t base, uint32_t exp) {
    uint64_t v = 1;
    for (uint32_t i = 0; i < exp; ++i) {
        if (__builtin_mul_overflow(v, base, &v))
            throw std::overflow_error("integer power exceeds 64 bits");
    }
    return v;
}

uint64_t lcm(uint64_t a, uint64_t b) {
    if (a == 0 || b == 0) throw std::invalid_argument("lcm requires positive operands");
    uint64_t g = std::gcd(a, b);
    uint64_t result;
    if (__builtin_mul_overflow(a / g, b, &result))
        throw std::overflow_error("lcm exceeds 64 bits");
    return result;
}

std::vector<uint64_t> primes_upto(uint64_t limit) {
    std::vector<uint64_t> primes;
    if (limit < 2) return primes;
    std::vector<bool> composite(limit + 1, false);
    for (uint64_t i = 2; i <= limit; ++i) {
        if (composite[i]) continue;
        primes.push_back(i);
        for (uint64_t j = i * i; j <= limit; j += i) composite[j] = true;
    }
    return primes;
}

SpfTable::SpfTable(uint64_t limit, uint64_t mem_budget) : limit_(limit) {
    if (limit < 2) throw std::invalid_argument("SpfTable limit must be >= 2");
    if (limit > UINT32_MAX) throw std::invalid_argument("SpfTable limit must fit in 32 bits");
    if ((limit + 1) * sizeof(uint32_t) > mem_budget)
        throw resource_error("SPF table would exceed memory budget");
    spf_.assign(limit + 1, 0);
    for (uint64_t i = 2; i <= limit; ++i) {
        if (spf_[i] != 0) continue;
        spf_[i] = static_cast<uint32_t>(i);
        for (uint64_t j = i * i; j <= limit; j += i) {
            if (spf_[j] == 0) spf_[j] = static_cast<uint32_t>(i);
        }
    }
}

uint32_t SpfTable::spf(uint64_t n) const {
    if (n < 2 || n > limit_) throw std::out_of_range("SpfTable query out of range");
    return spf_[n];
}

Factorization SpfTable::factorize(uint64_t n) const {
    Factorization f;
    while (n > 1) {
        uint32_t p = spf_[n];
        uint32_t e = 0;
        while (n % p == 0) { n /= p; ++e; }
        f.factors.push_back({p, e});
    }
    return f;
}

const SpfTable& shared_spf() {
    static const SpfTable table(1u << 20);
    return table;
}

namespace {

// Pollard rho with Brent cycle detection. n must be odd, composite, and
// free of factors below the trial-division cutoff.
uint64_t pollard_rho(uint64_t n) {
    if (n % 2 == 0) return 2;
    for (uint64_t c = 1;; ++c) {
        auto step = [&](uint64_t x) { return (mulmod(x, x, n) + c) % n; };
        uint64_t x = 2, y = 2, d = 1;
        uint64_t q = 1;
        int lam_len = 1, power = 1;
        while (d == 1) {
            if (lam_len == power) {
                x = y;
                power *= 2;
                lam_len = 0;
            }
            y = step(y);
            ++lam_len;
            uint64_t diff = x > y ? x - y : y - x;
            if (diff == 0) break;
            q = mulmod(q, diff, n);
            if (lam_len % 64 == 0) {
                d = std::gcd(q, n);
                if (d != 1) break;
            }
        }
        if (d == 1) d = std::gcd(q, n);
        if (d != 1 && d != n) return d;
        // cycle hit n or no factor found with this c; retry with next c
    }
}

void factor_recursive(uint64_t n, std::vector<uint64_t>& primes) {
    if (n == 1) return;
    if (is_prime(n)) {
        primes.push_back(n);
        return;
    }
    uint64_t d = pollard_rho(n);
    factor_recursive(d, primes);
    factor_recursive(n / d, primes);
}

} // namespace

Factorization factorize(uint64_t n) {
    if (n == 0) throw std::invalid_argument("factorize requires n >= 1");
    const SpfTable& spf = shared_spf();
    if (n <= spf.limit()) return spf.factorize(n);

    Factorization f;
    // strip small primes first
    for (uint64_t p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull}) {
        if (n % p == 0) {
            uint32_t e = 0;
            while (n % p == 0) { n /= p; ++e; }
            f.factors.push_back({p, e});
        }
    }
    for (uint64_t p = 17; p * p <= n && p < 100000; p += 2) {
        if (n % p == 0) {
            uint32_t e = 0;
            while (n % p == 0) { n /= p; ++e; }
            f.factors.push_back({p, e});
        }
    }
    if (n > 1) {
        std::vector<uint64_t> rest;
        factor_recursive(n, rest);
        std::sort(rest.begin(), rest.end());
        for (size_t i = 0; i < rest.size();) {
            size_t j = i;
            while (j < rest.size() && rest[j] == rest[i]) ++j;
            f.factors.push_back({rest[i], static_cast<uint32_t>(j - i)});
            i = j;
        }
    }
    std::sort(f.factors.begin(), f.factors.end(),
              [](const PrimePower& a, const PrimePower& b) { return a.prime < b.prime; });
    return f;
}

} // namespace lam::arith
