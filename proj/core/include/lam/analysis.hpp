#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "lam/rangesieve.hpp"

namespace lam::analysis {

// Tabulated Dickman rho with cubic Hermite interpolation between knots.
// rho = 1 on [0,1]; for u > 1 it solves u rho'(u) = -rho(u-1) by integrating
// rho(u) = rho(k) - int_k^u rho(t-1)/t dt per unit interval with fixed-step
// Simpson quadrature.
class RhoTable {
public:
    explicit RhoTable(double u_max = 20.0, double step = 1.0 / 1024.0);

    // Absolute error <= 1e-8 for u <= 10. Throws std::out_of_range outside
    // [0, u_max].
    double operator()(double u) const;

    double u_max() const { return u_max_; }
    double step() const { return h_; }

private:
    double value_at_knot(size_t i) const { return values_[i]; }
    double derivative_at_knot(size_t i) const;
    double interpolate(double u) const;

    double u_max_;
    double h_;
    std::vector<double> values_;
};

// Shared default table (u_max = 20).
double dickman_rho(double u);

// Number of n <= x with every prime factor <= z, counting n = 1.
uint64_t smooth_count(uint64_t x, uint64_t z);

struct BtSum {
    double sum = 0.0;     // sum of 1/p over primes p <= x, p = 1 (mod m)
    uint64_t count = 0;   // number of contributing primes
};

BtSum bt_recip_sum(uint64_t x, uint64_t m);

// Counts for chains q^alpha | q_{k-1}-1, q_{k-1} | q_{k-2}-1, ..., q_1 | p-1,
// p | n <= x. distinct_n counts qualifying n once regardless of how many
// chains witness it; tuples counts chains (q_{k-1},...,q_1,p); pair_count is
// the double-counting sum over (chain, n) pairs.
struct ChainCount {
    uint64_t distinct_n = 0;
    uint64_t tuples = 0;
    uint64_t pair_count = 0;
};

// Exhaustive search; throws resource_error for x > 10^7.
ChainCount chain_count(uint64_t x, uint64_t q, uint32_t alpha, uint32_t k);

// x * (c*y)^k / q^alpha with y = log log x. Requires x >= 3.
double chain_bound(double x, uint64_t q, uint32_t alpha, uint32_t k, double c);

// Number of n <= x having some prime p > Y with p^a exactly dividing n.
uint64_t power_exact_divisor_count(uint64_t x, uint64_t Y, uint32_t a);

// log of x*(c*y)^((log x)^gamma + 1) / 2^(b*(log x)^gamma*psi - 2), natural
// logs throughout, y = log log x. Requires x >= 3.
double prop_bound_log(double x, double gamma, double b, double psi_value, double c);
double prop_bound_eval(double x, double gamma, double b, double psi_value, double c);
// The display's ratio to x.
double prop_bound_ratio(double x, double gamma, double b, double psi_value, double c);

struct ReportParams {
    double c = 1.0;        // threshold multiplier for frac_below_c_y
    double gamma = 0.9503; // exponent for frac_above_logx_gamma
};

// One row per bucket (10^{k-1}, 10^k]; the first bucket is [1, 10^3].
struct DecadeRow {
    uint64_t x = 0;       // bucket top
    uint64_t count = 0;   // bucket size
    double mean_L = 0.0;
    double mean_L_over_y = 0.0;   // y = log log x at the bucket top
    uint32_t p50 = 0, p90 = 0, p99 = 0;
    uint32_t max_L = 0;
    uint64_t argmax = 0;          // smallest witness in the bucket
    double frac_below_c_y = 0.0;
    double frac_above_logx_gamma = 0.0;
    double mean_H_over_y = 0.0;   // over primes in the bucket
    double mean_L_minus_H = 0.0;  // over primes in the bucket
};

struct StatReport {
    uint64_t limit = 0;
    std::vector<DecadeRow> rows;
    std::vector<uint64_t> small_L_set;    // all n <= limit with L(n) <= 2
    uint32_t max_L = 0;                   // over [1, limit]
    uint64_t argmax = 0;
    std::vector<uint64_t> excess_hist;    // index d: primes with L(p)-H(p) = d

    // Header: x,count,mean_L,mean_L_over_y,p50,p90,p99,max_L,argmax,
    // frac_below_c_y,frac_above_logx_gamma,mean_H_over_y,mean_L_minus_H.
    // Floating fields with 6 significant digits.
    std::string to_csv() const;
};

// L_table must be L8, H_table H8, same limit. Throws std::invalid_argument on
// kind or limit mismatch.
StatReport distribution_report(const rangesieve::RangeTable& L_table,
                               const rangesieve::RangeTable& H_table,
                               const ReportParams& params = {});

} // namespace lam::analysis
