#include "lam/model.hpp"

#include <bit>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <stdexcept>

#include "lam/arith.hpp"
#include "lam/pratt.hpp"

namespace lam::model {

double coefficient(double c, double D) {
    if (!(c > 0.0) || c > std::numbers::e + 1e-12)
        throw std::invalid_argument("c must lie in (0, e]");
    if (!(D > 0.0)) throw std::invalid_argument("D must be positive");
    return c + c * std::log(std::numbers::e / c) / D;
}

CoefficientMax coefficient_max(double D) {
    if (!(D > 0.0)) throw std::invalid_argument("D must be positive");
    const double c_crit = std::exp(D);
    if (c_crit < std::numbers::e) return {c_crit, c_crit / D, false};
    return {std::numbers::e, std::numbers::e, true};
}

double prob_no_hit(uint64_t N, uint64_t r, uint32_t a) {
    if (!arith::is_prime(r)) throw std::invalid_argument("r must be prime");
    if (a == 0) throw std::invalid_argument("a must be >= 1");
    const uint64_t ra = arith::checked_pow(r, a);
    const uint64_t phi = ra - ra / r;
    if (N == 0) return 1.0;
    if (phi == 1) return 0.0;
    return std::pow(1.0 - 1.0 / static_cast<double>(phi), static_cast<double>(N));
}

double expected_level_size(double y_val, uint32_t n) {
    if (!(y_val > 0.0)) throw std::invalid_argument("y must be positive");
    if (n > 170) throw std::invalid_argument("n must be <= 170");
    const double r = std::pow(y_val, n) / std::tgamma(static_cast<double>(n) + 1.0);
    if (!std::isfinite(r)) throw std::overflow_error("level size overflows double");
    return r;
}

namespace {

void append_g6(std::string& out, double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.6g", v);
    out += buf;
}

} // namespace

ExcessReport excess_report(const rangesieve::RangeTable& L_table,
                           const rangesieve::RangeTable& H_table,
                           const ExcessParams& params) {
    using rangesieve::TableKind;
    if (L_table.kind != TableKind::L8 || H_table.kind != TableKind::H8)
        throw std::invalid_argument("excess_report needs an L8 and an H8 table");
    if (L_table.limit != H_table.limit)
        throw std::invalid_argument("table limits differ");

    const uint64_t N = L_table.limit;
    const uint8_t* L = L_table.payload8.data();
    const uint8_t* H = H_table.payload8.data();

    ExcessReport rep;
    rep.limit = N;
    rep.y_cutoff = params.y_cutoff;

    // dyadic buckets [2^k, 2^(k+1)); k = bit_width(p) - 1
    const unsigned top_bit = std::bit_width(N);
    std::vector<uint64_t> b_count(top_bit + 1, 0);
    std::vector<uint64_t> b_diff(top_bit + 1, 0), b_excess(top_bit + 1, 0);
    uint64_t total_diff = 0;

    for (uint64_t p = 2; p <= N; ++p) {
        if (H[p] == rangesieve::kH8Sentinel) continue;
        const int diff = static_cast<int>(L[p]) - static_cast<int>(H[p]);
        if (diff < 0) throw std::invalid_argument("inconsistent tables: L < H");
        const auto d = static_cast<uint32_t>(diff);
        if (rep.histogram.size() <= d) rep.histogram.resize(d + 1, 0);
        rep.histogram[d] += 1;
        total_diff += d;
        rep.prime_count += 1;

        const unsigned k = std::bit_width(p) - 1;
        b_count[k] += 1;
        b_diff[k] += d;
        b_excess[k] += pratt::branch_excess_above(p, params.y_cutoff);
    }

    for (unsigned k = 0; k <= top_bit; ++k) {
        if (b_count[k] == 0) continue;
        ExcessBucket b;
        b.lo = uint64_t{1} << k;
        b.hi = uint64_t{1} << (k + 1);
        b.count = b_count[k];
        const auto cnt = static_cast<double>(b_count[k]);
        b.mean_L_minus_H = static_cast<double>(b_diff[k]) / cnt;
        b.mean_branch_excess = static_cast<double>(b_excess[k]) / cnt;
        b.residual_mean = b.mean_L_minus_H - b.mean_branch_excess;
        rep.buckets.push_back(b);
    }
    if (rep.prime_count > 0)
        rep.mean_L_minus_H =
            static_cast<double>(total_diff) / static_cast<double>(rep.prime_count);
    return rep;
}

ExcessReport excess_report(uint64_t N, LambdaVariant v, const ExcessParams& params) {
    const auto L = rangesieve::sieve_L(N, v);
    const auto H = rangesieve::sieve_heights(N);
    return excess_report(L, H, params);
}

std::string ExcessReport::to_csv() const {
    std::string out = "p_bucket,mean_L_minus_H,mean_branch_excess,residual_mean,count\n";
    for (const auto& b : buckets) {
        out += std::to_string(b.lo) + ',';
        append_g6(out, b.mean_L_minus_H);
        out += ',';
        append_g6(out, b.mean_branch_excess);
        out += ',';
        append_g6(out, b.residual_mean);
        out += ',' + std::to_string(b.count) + '\n';
    }
    return out;
}

} // namespace lam::model
