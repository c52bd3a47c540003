#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "lam/rangesieve.hpp"

namespace lam::model {

// c + c*ln(e/c)/D on the domain 0 < c <= e, D > 0. Natural logs.
double coefficient(double c, double D);

struct CoefficientMax {
    double c_star = 0.0;
    double f_star = 0.0;
    bool boundary = false; // supremum sits at c = e
};

// Maximizer of coefficient(., D) over (0, e]: interior critical point
// c* = exp(D) when exp(D) < e (then f* = exp(D)/D), else the boundary c = e
// with value e.
CoefficientMax coefficient_max(double D);

// (1 - 1/phi(r^a))^N for prime r; phi(r^a) = r^a - r^(a-1). N = 0 gives 1.
double prob_no_hit(uint64_t N, uint64_t r, uint32_t a);

// y^n / n!. Requires n <= 170 (factorial range of double); throws
// std::overflow_error if the result is not finite.
double expected_level_size(double y_val, uint32_t n);

struct ExcessParams {
    // Restrict the attributed branch excess to edges whose child prime is
    // >= y_cutoff; 0 means no restriction.
    uint64_t y_cutoff = 0;
};

struct ExcessBucket {
    uint64_t lo = 0, hi = 0;  // primes in [lo, hi)
    uint64_t count = 0;
    double mean_L_minus_H = 0.0;
    double mean_branch_excess = 0.0;
    double residual_mean = 0.0;  // mean of L - H - attributed excess
};

struct ExcessReport {
    uint64_t limit = 0;
    uint64_t y_cutoff = 0;
    std::vector<uint64_t> histogram;  // index d: primes with L(p)-H(p) = d
    std::vector<ExcessBucket> buckets; // dyadic: [2,4), [4,8), ...
    double mean_L_minus_H = 0.0;       // over all primes <= limit
    uint64_t prime_count = 0;

    // Header: p_bucket,mean_L_minus_H,mean_branch_excess,residual_mean,count.
    // p_bucket prints the bucket's lower bound.
    std::string to_csv() const;
};

// L_table must be L8, H_table H8, same limit.
ExcessReport excess_report(const rangesieve::RangeTable& L_table,
                           const rangesieve::RangeTable& H_table,
                           const ExcessParams& params = {});

// Convenience wrapper: sieves both tables for N, then reports.
ExcessReport excess_report(uint64_t N, LambdaVariant v = LambdaVariant::standard,
                           const ExcessParams& params = {});

} // namespace lam::model
