#include "lam/lambda.hpp"

#include <bit>
#include <stdexcept>

namespace lam::lambda {

uint64_t lambda_prime_power(uint64_t p, uint32_t k, LambdaVariant v) {
    if (k == 0) throw std::invalid_argument("lambda_prime_power requires k >= 1");
    if (p == 2) {
        if (v == LambdaVariant::two_adic) {
            if (k > 64) throw std::overflow_error("2^k exceeds 64 bits");
            return uint64_t{1} << (k - 1);
        }
        if (k == 1) return 1;
        if (k == 2) return 2;
        if (k > 64) throw std::overflow_error("2^k exceeds 64 bits");
        return uint64_t{1} << (k - 2);
    }
    // p^(k-1) * (p-1); equals phi(p^k)
    uint64_t pk1 = arith::checked_pow(p, k - 1);
    uint64_t result;
    if (__builtin_mul_overflow(pk1, p - 1, &result))
        throw std::overflow_error("lambda(p^k) exceeds 64 bits");
    return result;
}

uint64_t carmichael_lambda(const arith::Factorization& f, LambdaVariant v) {
    uint64_t result = 1;
    for (const auto& pp : f.factors)
        result = arith::lcm(result, lambda_prime_power(pp.prime, pp.exponent, v));
    return result;
}

uint64_t carmichael_lambda(uint64_t n, LambdaVariant v) {
    if (n == 0) throw std::invalid_argument("carmichael_lambda requires n >= 1");
    if (n == 1) return 1;
    return carmichael_lambda(arith::factorize(n), v);
}

LambdaChain lambda_chain(uint64_t n, LambdaVariant v) {
    if (n == 0) throw std::invalid_argument("lambda_chain requires n >= 1");
    LambdaChain chain;
    chain.values.push_back(n);
    while (chain.values.back() != 1)
        chain.values.push_back(carmichael_lambda(chain.values.back(), v));
    return chain;
}

uint32_t big_L(uint64_t n, LambdaVariant v) {
    if (n == 0) throw std::invalid_argument("big_L requires n >= 1");
    uint32_t k = 0;
    while (n != 1) {
        n = carmichael_lambda(n, v);
        ++k;
    }
    return k;
}

uint32_t trivial_upper_bound(uint64_t n) {
    if (n < 2) throw std::invalid_argument("trivial_upper_bound requires n >= 2");
    return static_cast<uint32_t>(std::bit_width(n));
}

} // namespace lam::lambda
