#include "lam/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <stdexcept>

#include "lam/arith.hpp"
#include "lam/errors.hpp"

namespace lam::analysis {

namespace {

// knots per unit interval; the step must divide 1 exactly so that u-1 lands
// on a knot
size_t knots_per_unit(double h) {
    auto per = static_cast<size_t>(std::llround(1.0 / h));
    if (per < 2 || std::abs(per * h - 1.0) > 1e-12)
        throw std::invalid_argument("rho step must divide 1 exactly");
    return per;
}

} // namespace

RhoTable::RhoTable(double u_max, double step) : u_max_(u_max), h_(step) {
    if (u_max < 1.0) throw std::invalid_argument("rho u_max must be >= 1");
    const size_t per = knots_per_unit(step);
    const auto n_knots = static_cast<size_t>(std::ceil(u_max / step)) + 1;
    values_.assign(n_knots, 1.0);

    // Hermite midpoint of [u_j, u_j + h] using the delay identity for the
    // endpoint derivatives; valid once u_j >= 1.
    auto midpoint = [&](size_t j) {
        if (j + 1 <= per) return 1.0;
        const double u0 = static_cast<double>(j) * h_;
        const double d0 = -values_[j - per] / u0;
        const double d1 = -values_[j + 1 - per] / (u0 + h_);
        return 0.5 * (values_[j] + values_[j + 1]) + h_ * (d0 - d1) / 8.0;
    };

    for (size_t i = per + 1; i < n_knots; ++i) {
        const double u0 = static_cast<double>(i - 1) * h_;
        const double u1 = static_cast<double>(i) * h_;
        const double f0 = values_[i - 1 - per] / u0;
        // rho(u1 - 1) is the value being solved for at i - per <= i - 1: fine
        const double f1 = values_[i - per] / u1;
        const double fm = midpoint(i - 1 - per) / (u0 + h_ / 2.0);
        values_[i] = values_[i - 1] - h_ / 6.0 * (f0 + 4.0 * fm + f1);
    }
}

double RhoTable::derivative_at_knot(size_t i) const {
    const size_t per = knots_per_unit(h_);
    if (i <= per) return i == per ? -1.0 : 0.0; // right derivative at u = 1
    return -values_[i - per] / (static_cast<double>(i) * h_);
}

double RhoTable::interpolate(double u) const {
    const size_t last = values_.size() - 1;
    auto j = static_cast<size_t>(u / h_);
    if (j >= last) j = last - 1;
    const double theta = u / h_ - static_cast<double>(j);
    const double y0 = values_[j], y1 = values_[j + 1];
    const double d0 = derivative_at_knot(j) * h_;
    const double d1 = derivative_at_knot(j + 1) * h_;
    const double t2 = theta * theta, t3 = t2 * theta;
    return y0 * (2 * t3 - 3 * t2 + 1) + d0 * (t3 - 2 * t2 + theta) +
           y1 * (-2 * t3 + 3 * t2) + d1 * (t3 - t2);
}

double RhoTable::operator()(double u) const {
    if (u < 0.0 || u > u_max_ + 1e-12)
        throw std::out_of_range("dickman rho argument outside [0, u_max]");
    if (u <= 1.0) return 1.0;
    return interpolate(std::min(u, u_max_));
}

double dickman_rho(double u) {
    static const RhoTable table;
    return table(u);
}

namespace {

uint64_t smooth_rec(const std::vector<uint64_t>& primes, size_t idx, uint64_t limit) {
    uint64_t count = 1;
    for (size_t j = idx; j < primes.size() && primes[j] <= limit; ++j)
        count += smooth_rec(primes, j, limit / primes[j]);
    return count;
}

} // namespace

uint64_t smooth_count(uint64_t x, uint64_t z) {
    if (x == 0 || z == 0) throw std::invalid_argument("smooth_count requires x, z >= 1");
    if (z >= x) return x;
    if (z < 2) return 1;
    const auto primes = arith::primes_upto(z);
    return smooth_rec(primes, 0, x);
}

BtSum bt_recip_sum(uint64_t x, uint64_t m) {
    if (x < 2) throw std::invalid_argument("bt_recip_sum requires x >= 2");
    if (m < 2) throw std::invalid_argument("bt_recip_sum requires m >= 2");
    BtSum result;
    for (uint64_t p : arith::primes_upto(x)) {
        if (p % m == 1) {
            result.sum += 1.0 / static_cast<double>(p);
            result.count += 1;
        }
    }
    return result;
}

ChainCount chain_count(uint64_t x, uint64_t q, uint32_t alpha, uint32_t k) {
    if (alpha == 0 || k == 0) throw std::invalid_argument("alpha and k must be >= 1");
    if (!arith::is_prime(q)) throw std::invalid_argument("q must be prime");
    if (x > 10'000'000) throw resource_error("chain_count search limited to x <= 1e7");
    ChainCount result;
    if (x < 2) return result;

    const uint64_t qa = arith::checked_pow(q, alpha);
    const arith::SpfTable spf(x);

    // ways[p]: number of chains of the current length ending at prime p
    std::vector<uint64_t> ways(x + 1, 0);
    for (uint64_t p = 2; p <= x; ++p)
        if (spf.is_prime(p) && (p - 1) % qa == 0) ways[p] = 1;

    std::vector<uint64_t> next;
    for (uint32_t level = 2; level <= k; ++level) {
        next.assign(x + 1, 0);
        for (uint64_t p = 3; p <= x; ++p) {
            if (!spf.is_prime(p)) continue;
            uint64_t m = p - 1;
            while (m > 1) {
                const uint64_t s = spf.spf(m);
                next[p] += ways[s];
                while (m % s == 0) m /= s;
            }
        }
        ways.swap(next);
    }

    std::vector<uint8_t> hit(x + 1, 0);
    for (uint64_t p = 2; p <= x; ++p) {
        if (ways[p] == 0) continue;
        result.tuples += ways[p];
        result.pair_count += ways[p] * (x / p);
        for (uint64_t n = p; n <= x; n += p) hit[n] = 1;
    }
    for (uint64_t n = 2; n <= x; ++n) result.distinct_n += hit[n];
    return result;
}

double chain_bound(double x, uint64_t q, uint32_t alpha, uint32_t k, double c) {
    if (x < 3.0) throw std::invalid_argument("chain_bound requires x >= 3");
    if (c <= 0.0) throw std::invalid_argument("c must be positive");
    const double y = std::log(std::log(x));
    return x * std::pow(c * y, k) / std::pow(static_cast<double>(q), alpha);
}

uint64_t power_exact_divisor_count(uint64_t x, uint64_t Y, uint32_t a) {
    if (a < 2) throw std::invalid_argument("exact-power count requires a >= 2");
    if (x == 0) throw std::invalid_argument("x must be >= 1");
    if (x > 100'000'000) throw resource_error("power count limited to x <= 1e8");
    std::vector<uint8_t> hit(x + 1, 0);
    // a >= 2, so qualifying primes are at most sqrt(x)
    auto root = static_cast<uint64_t>(std::sqrt(static_cast<double>(x))) + 2;
    for (uint64_t p : arith::primes_upto(root)) {
        if (p <= Y) continue;
        __uint128_t pa_wide = 1;
        for (uint32_t i = 0; i < a; ++i) pa_wide *= p;
        if (pa_wide > x) break;
        const auto pa = static_cast<uint64_t>(pa_wide);
        for (uint64_t n = pa; n <= x; n += pa)
            if ((n / pa) % p != 0) hit[n] = 1;
    }
    uint64_t count = 0;
    for (uint64_t n = 2; n <= x; ++n) count += hit[n];
    return count;
}

double prop_bound_log(double x, double gamma, double b, double psi_value, double c) {
    if (x < 3.0) throw std::invalid_argument("prop bound requires x >= 3");
    if (c <= 0.0) throw std::invalid_argument("c must be positive");
    const double lx = std::log(x);
    const double y = std::log(lx);
    const double lg = std::pow(lx, gamma);
    return lx + (lg + 1.0) * std::log(c * y) -
           (b * lg * psi_value - 2.0) * std::numbers::ln2;
}

double prop_bound_eval(double x, double gamma, double b, double psi_value, double c) {
    return std::exp(prop_bound_log(x, gamma, b, psi_value, c));
}

double prop_bound_ratio(double x, double gamma, double b, double psi_value, double c) {
    return std::exp(prop_bound_log(x, gamma, b, psi_value, c) - std::log(x));
}

namespace {

std::vector<uint64_t> bucket_tops(uint64_t N) {
    std::vector<uint64_t> tops;
    for (uint64_t t = 1000; t <= N; t *= 10) {
        tops.push_back(t);
        if (t > N / 10) break;
    }
    if (tops.empty() || tops.back() != N) tops.push_back(N);
    return tops;
}

uint32_t quantile_from_hist(const std::vector<uint64_t>& hist, uint64_t count, double q) {
    const auto rank = static_cast<uint64_t>(std::ceil(q * static_cast<double>(count)));
    uint64_t cum = 0;
    for (size_t v = 0; v < hist.size(); ++v) {
        cum += hist[v];
        if (cum >= rank) return static_cast<uint32_t>(v);
    }
    return hist.empty() ? 0 : static_cast<uint32_t>(hist.size() - 1);
}

void append_g6(std::string& out, double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.6g", v);
    out += buf;
}

} // namespace

StatReport distribution_report(const rangesieve::RangeTable& L_table,
                               const rangesieve::RangeTable& H_table,
                               const ReportParams& params) {
    using rangesieve::TableKind;
    if (L_table.kind != TableKind::L8 || H_table.kind != TableKind::H8)
        throw std::invalid_argument("distribution_report needs an L8 and an H8 table");
    if (L_table.limit != H_table.limit)
        throw std::invalid_argument("table limits differ");

    const uint64_t N = L_table.limit;
    const uint8_t* L = L_table.payload8.data();
    const uint8_t* H = H_table.payload8.data();

    StatReport rep;
    rep.limit = N;
    rep.max_L = 0;
    rep.argmax = 1;

    uint64_t prev = 0; // bucket is (prev, top]
    for (uint64_t top : bucket_tops(N)) {
        DecadeRow row;
        row.x = top;
        row.count = top - prev;

        std::vector<uint64_t> hist(256, 0);
        uint64_t sum_L = 0;
        const double y = std::log(std::log(static_cast<double>(top)));
        const double below_thresh = params.c * y;
        const double above_thresh = std::pow(std::log(static_cast<double>(top)), params.gamma);
        uint64_t below = 0, above = 0;
        uint64_t prime_count = 0, sum_H = 0, sum_diff = 0;

        for (uint64_t n = prev + 1; n <= top; ++n) {
            const uint32_t l = L[n];
            hist[l] += 1;
            sum_L += l;
            if (static_cast<double>(l) < below_thresh) ++below;
            if (static_cast<double>(l) > above_thresh) ++above;
            if (l > row.max_L) {
                row.max_L = l;
                row.argmax = n;
            }
            if (H[n] != rangesieve::kH8Sentinel) {
                ++prime_count;
                sum_H += H[n];
                const int diff = static_cast<int>(l) - static_cast<int>(H[n]);
                if (diff < 0) throw std::invalid_argument("inconsistent tables: L < H");
                const auto d = static_cast<uint32_t>(diff);
                sum_diff += d;
                if (rep.excess_hist.size() <= d) rep.excess_hist.resize(d + 1, 0);
                rep.excess_hist[d] += 1;
            }
            if (l <= 2) rep.small_L_set.push_back(n);
            if (l > rep.max_L) {
                rep.max_L = l;
                rep.argmax = n;
            }
        }

        const auto cnt = static_cast<double>(row.count);
        row.mean_L = static_cast<double>(sum_L) / cnt;
        row.mean_L_over_y = y > 0 ? row.mean_L / y : 0.0;
        row.p50 = quantile_from_hist(hist, row.count, 0.50);
        row.p90 = quantile_from_hist(hist, row.count, 0.90);
        row.p99 = quantile_from_hist(hist, row.count, 0.99);
        row.frac_below_c_y = static_cast<double>(below) / cnt;
        row.frac_above_logx_gamma = static_cast<double>(above) / cnt;
        if (prime_count > 0) {
            const auto pc = static_cast<double>(prime_count);
            row.mean_H_over_y = y > 0 ? static_cast<double>(sum_H) / pc / y : 0.0;
            row.mean_L_minus_H = static_cast<double>(sum_diff) / pc;
        }
        rep.rows.push_back(row);
        prev = top;
    }
    return rep;
}

std::string StatReport::to_csv() const {
    std::string out =
        "x,count,mean_L,mean_L_over_y,p50,p90,p99,max_L,argmax,"
        "frac_below_c_y,frac_above_logx_gamma,mean_H_over_y,mean_L_minus_H\n";
    for (const auto& r : rows) {
        out += std::to_string(r.x) + ',' + std::to_string(r.count) + ',';
        append_g6(out, r.mean_L);
        out += ',';
        append_g6(out, r.mean_L_over_y);
        out += ',' + std::to_string(r.p50) + ',' + std::to_string(r.p90) + ',' +
               std::to_string(r.p99) + ',' + std::to_string(r.max_L) + ',' +
               std::to_string(r.argmax) + ',';
        append_g6(out, r.frac_below_c_y);
        out += ',';
        append_g6(out, r.frac_above_logx_gamma);
        out += ',';
        append_g6(out, r.mean_H_over_y);
        out += ',';
        append_g6(out, r.mean_L_minus_H);
        out += '\n';
    }
    return out;
}

} // namespace lam::analysis
