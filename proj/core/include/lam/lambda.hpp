#pragma once

#include <cstdint>
#include <vector>

#include "lam/arith.hpp"

namespace lam {

// Rule at 2-powers. standard: lambda(2)=1, lambda(4)=2, lambda(2^k)=2^(k-2)
// for k >= 3. two_adic: lambda'(2^a)=2^(a-1) for every a >= 1. The variants
// agree on odd prime powers and on 2 and 4.
enum class LambdaVariant : uint8_t { standard = 0, two_adic = 1 };

namespace lambda {

// lambda(p^k) for prime p. Throws std::overflow_error if p^k overflows.
uint64_t lambda_prime_power(uint64_t p, uint32_t k,
                            LambdaVariant v = LambdaVariant::standard);

// Exponent of the unit group mod n; lambda(1) = 1.
uint64_t carmichael_lambda(uint64_t n, LambdaVariant v = LambdaVariant::standard);
uint64_t carmichael_lambda(const arith::Factorization& f,
                           LambdaVariant v = LambdaVariant::standard);

// [n, lambda(n), lambda(lambda(n)), ..., 1]. Strictly decreasing after the
// first element for n >= 2; every element past index 0 is even or 1.
struct LambdaChain {
    std::vector<uint64_t> values;
    uint32_t length() const { return static_cast<uint32_t>(values.size()) - 1; }
};

LambdaChain lambda_chain(uint64_t n, LambdaVariant v = LambdaVariant::standard);

// L(n): least k with the k-th lambda iterate of n equal to 1. L(1) = 0.
uint32_t big_L(uint64_t n, LambdaVariant v = LambdaVariant::standard);

// floor(log2 n) + 1, exact via bit width. Upper bound for L(n). n >= 2.
uint32_t trivial_upper_bound(uint64_t n);

} // namespace lambda
} // namespace lam
