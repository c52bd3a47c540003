#include "lam/verify.hpp"

#include <algorithm>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <numbers>
#include <numeric>
#include <stdexcept>

#include "lam/analysis.hpp"
#include "lam/arith.hpp"
#include "lam/lambda.hpp"
#include "lam/model.hpp"
#include "lam/pratt.hpp"
#include "lam/rangesieve.hpp"

namespace lam::verify {

bool SuiteResult::all_pass() const {
    return std::all_of(checks.begin(), checks.end(),
                       [](const CheckResult& c) { return c.pass; });
}

namespace {

std::string fmt(const char* format, ...) {
    char buf[256];
    va_list args;
    va_start(args, format);
    std::vsnprintf(buf, sizeof(buf), format, args);
    va_end(args);
    return buf;
}

void add(SuiteResult& s, const std::string& name, bool pass, std::string detail) {
    s.checks.push_back({name, pass, std::move(detail)});
}

// True iff target is the exact group exponent mod n: a^target = 1 for every
// unit a (universality) and the lcm of the unit orders reaches target
// (minimality). Orders are found by stripping primes from target, which is
// valid once universality holds for that a.
bool exponent_matches(uint64_t n, uint64_t target) {
    if (n <= 2) return target == 1;
    const auto target_factors = arith::factorize(target).factors;
    uint64_t m = 1;
    for (uint64_t a = 2; a < n; ++a) {
        if (std::gcd(a, n) != 1) continue;
        if (arith::powmod(a, target, n) != 1) return false;
        if (m == target) continue;
        uint64_t ord = target;
        for (const auto& pp : target_factors) {
            for (uint32_t e = 0; e < pp.exponent; ++e) {
                if (arith::powmod(a, ord / pp.prime, n) == 1) ord /= pp.prime;
                else break;
            }
        }
        m = std::lcm(m, ord);
    }
    return m == target;
}

SuiteResult suite_lambda() {
    SuiteResult s{"lambda", {}};

    {
        uint64_t bad = 0;
        for (uint64_t n = 1; n <= 3000; ++n)
            if (!exponent_matches(n, lambda::carmichael_lambda(n))) { bad = n; break; }
        add(s, "group_exponent_match_upto_3000", bad == 0,
            bad ? fmt("mismatch at n=%llu", (unsigned long long)bad) : "exact");
    }
    {
        const auto t = rangesieve::sieve_L(1'000'000);
        uint64_t bad = 0;
        for (uint64_t n = 2; n <= t.limit; ++n)
            if (t.payload8[n] > lambda::trivial_upper_bound(n)) { bad = n; break; }
        add(s, "trivial_bound_upto_1e6", bad == 0,
            bad ? fmt("violated at n=%llu", (unsigned long long)bad) : "holds");

        std::vector<uint64_t> small;
        for (uint64_t n = 1; n <= t.limit; ++n)
            if (t.payload8[n] <= 2) small.push_back(n);
        const std::vector<uint64_t> expected{1, 2, 3, 4, 6, 8, 12, 24};
        add(s, "L_le_2_set_at_1e6", small == expected,
            fmt("%zu members", small.size()));
    }
    {
        bool ok = true;
        std::string detail = "holds";
        for (auto v : {LambdaVariant::standard, LambdaVariant::two_adic}) {
            for (uint64_t n = 2; n <= 20'000 && ok; ++n) {
                uint32_t best = 0;
                for (const auto& pp : arith::factorize(n).factors)
                    best = std::max(best,
                                    lambda::big_L(arith::checked_pow(pp.prime, pp.exponent), v));
                if (best != lambda::big_L(n, v)) {
                    ok = false;
                    detail = fmt("breaks at n=%llu variant=%d", (unsigned long long)n, (int)v);
                }
            }
        }
        add(s, "prime_breakdown_upto_2e4_both_variants", ok, detail);
    }
    {
        bool ok = true;
        std::string detail = "holds";
        for (uint64_t p = 3; p <= 199 && ok; p += 2) {
            if (!arith::is_prime(p)) continue;
            const uint32_t Lp = lambda::big_L(p);
            for (uint32_t a = 1;; ++a) {
                __uint128_t wide = 1;
                for (uint32_t i = 0; i < a; ++i) wide *= p;
                if (wide > 1'000'000'000) break;
                const auto pa = static_cast<uint64_t>(wide);
                if (lambda::big_L(pa) != a - 1 + Lp) {
                    ok = false;
                    detail = fmt("breaks at p=%llu a=%u", (unsigned long long)p, a);
                    break;
                }
            }
        }
        add(s, "powers_identity_odd_p_le_200", ok, detail);

        bool two_exc = lambda::big_L(8) == 2 && lambda::big_L(8) != 3;
        add(s, "p2_exception_L8_is_2", two_exc, "L(8)=2 under the standard rule");

        bool closed = true;
        for (uint32_t a = 1; a <= 63 && closed; ++a)
            closed = lambda::big_L(uint64_t{1} << a) == a / 2 + 1;
        add(s, "two_power_closed_form", closed, "L(2^a)=floor(a/2)+1 for a<=63");
    }
    {
        // lambda(lcm(a,b)) = lcm(lambda(a), lambda(b))
        bool ok = true;
        std::string detail = "holds";
        for (uint64_t a = 1; a <= 1000 && ok; ++a) {
            for (uint64_t b = a; b <= 1000; ++b) {
                const uint64_t l = arith::lcm(a, b);
                if (lambda::carmichael_lambda(l) !=
                    arith::lcm(lambda::carmichael_lambda(a), lambda::carmichael_lambda(b))) {
                    ok = false;
                    detail = fmt("breaks at a=%llu b=%llu", (unsigned long long)a,
                                 (unsigned long long)b);
                    break;
                }
            }
        }
        add(s, "lambda_lcm_identity_upto_1000", ok, detail);
    }
    return s;
}

SuiteResult suite_pratt() {
    SuiteResult s{"pratt", {}};
    const auto primes = arith::primes_upto(20'000);

    {
        bool ok = true;
        std::string detail = "H(p) <= L(p) and L(p) > H(p)";
        for (uint64_t p : primes) {
            const uint32_t h = pratt::height(p);
            const uint32_t l = lambda::big_L(p);
            if (!(h <= l && l > h)) {
                ok = false;
                detail = fmt("breaks at p=%llu", (unsigned long long)p);
                break;
            }
        }
        add(s, "height_vs_L_upto_2e4", ok, detail);
    }
    {
        pratt::TreeMemo memo;
        bool bound_ok = true, prod_ok = true;
        std::string bd = "holds", pd = "holds";
        for (uint64_t p : primes) {
            const auto tree = pratt::build_tree(p, &memo);
            uint32_t best = 0;
            for (const auto& br : pratt::enumerate_branches(tree)) {
                best = std::max(best, br.depth + br.excess);
                if (p > 2 && !br.product_overflow && br.depth > 0) {
                    // 2^(prod alpha) < p, overflow-capped
                    if (br.alpha_product >= 63 ||
                        (uint64_t{1} << br.alpha_product) >= p) {
                        prod_ok = false;
                        pd = fmt("breaks at p=%llu", (unsigned long long)p);
                    }
                }
            }
            if (lambda::big_L(p) > best + 1) {
                bound_ok = false;
                bd = fmt("breaks at p=%llu", (unsigned long long)p);
            }
        }
        add(s, "branch_bound_upto_2e4", bound_ok, bd);
        add(s, "branch_product_bound_upto_2e4", prod_ok, pd);
    }
    {
        // under the two-adic rule the branch bound is exact
        bool ok = true;
        std::string detail = "L'(p) = max(depth+excess)+1";
        pratt::TreeMemo memo;
        for (uint64_t p : primes) {
            if (p > 10'000) break;
            uint32_t best = 0;
            for (const auto& br : pratt::enumerate_branches(pratt::build_tree(p, &memo)))
                best = std::max(best, br.depth + br.excess);
            if (lambda::big_L(p, LambdaVariant::two_adic) != best + 1) {
                ok = false;
                detail = fmt("breaks at p=%llu", (unsigned long long)p);
                break;
            }
        }
        add(s, "two_adic_branch_identity_upto_1e4", ok, detail);
    }
    {
        const auto levels = pratt::level_counts(3691);
        const bool ok = levels == std::vector<uint64_t>{1, 4, 4, 1} &&
                        pratt::height(uint64_t{3691}) == 3 &&
                        pratt::branch_excess(3691) == 2;
        add(s, "tree_3691_shape", ok, "levels 1,4,4,1; H=3; excess=2");
    }
    return s;
}

SuiteResult suite_sieve() {
    SuiteResult s{"sieve", {}};
    for (auto v : {LambdaVariant::standard, LambdaVariant::two_adic}) {
        const auto lt = rangesieve::sieve_lambda(20'000, v);
        const auto Lt = rangesieve::sieve_L(20'000, v);
        uint64_t bad = 0;
        for (uint64_t n = 1; n <= 20'000; ++n) {
            if (lt.payload64[n] != lambda::carmichael_lambda(n, v) ||
                Lt.payload8[n] != lambda::big_L(n, v)) {
                bad = n;
                break;
            }
        }
        add(s, v == LambdaVariant::standard ? "pointwise_standard_upto_2e4"
                                            : "pointwise_two_adic_upto_2e4",
            bad == 0, bad ? fmt("mismatch at n=%llu", (unsigned long long)bad) : "exact");
    }
    {
        const auto Ht = rangesieve::sieve_heights(20'000);
        uint64_t bad = 0;
        for (uint64_t n = 2; n <= 20'000; ++n) {
            const bool prime = arith::is_prime(n);
            if (prime != (Ht.payload8[n] != rangesieve::kH8Sentinel)) { bad = n; break; }
            if (prime && Ht.payload8[n] != pratt::height(n)) { bad = n; break; }
        }
        add(s, "heights_pointwise_upto_2e4", bad == 0,
            bad ? fmt("mismatch at n=%llu", (unsigned long long)bad) : "exact");
    }
    {
        rangesieve::SieveOptions one, four;
        one.workers = 1;
        four.workers = 4;
        four.segment_size = uint64_t{1} << 16;
        const auto a = rangesieve::sieve_L(1'000'000, LambdaVariant::standard, one);
        const auto b = rangesieve::sieve_L(1'000'000, LambdaVariant::standard, four);
        add(s, "deterministic_payload_1_vs_4_workers", a.payload8 == b.payload8,
            fmt("crc=%08x", rangesieve::payload_crc(a)));
    }
    return s;
}

SuiteResult suite_analysis() {
    SuiteResult s{"analysis", {}};
    {
        const double r2 = analysis::dickman_rho(2.0);
        const double err = std::fabs(r2 - (1.0 - std::log(2.0)));
        add(s, "rho_2_matches_1_minus_ln2", err <= 1e-8, fmt("err=%.3g", err));
    }
    {
        // delay identity at inter-knot midpoints via central differences
        double worst = 0.0;
        const double d = 1e-5;
        for (double u = 1.5; u <= 10.0; u += 0.25) {
            const double drho =
                (analysis::dickman_rho(u + d) - analysis::dickman_rho(u - d)) / (2 * d);
            worst = std::max(worst, std::fabs(u * drho + analysis::dickman_rho(u - 1.0)));
        }
        add(s, "rho_delay_identity", worst <= 1e-6, fmt("max residual=%.3g", worst));
    }
    {
        const uint64_t x = 1'000'000;
        const double r2 = static_cast<double>(analysis::smooth_count(x, 1000)) /
                          (static_cast<double>(x) * analysis::dickman_rho(2.0));
        const double r3 = static_cast<double>(analysis::smooth_count(x, 100)) /
                          (static_cast<double>(x) * analysis::dickman_rho(3.0));
        add(s, "smooth_ratio_u2", r2 >= 0.7 && r2 <= 1.5, fmt("ratio=%.4f", r2));
        add(s, "smooth_ratio_u3", r3 >= 0.7 && r3 <= 1.5, fmt("ratio=%.4f", r3));
    }
    {
        double worst_c = 0.0;
        bool ok = true;
        for (uint64_t x : {uint64_t{10'000}, uint64_t{100'000}}) {
            const double y = std::log(std::log(static_cast<double>(x)));
            for (uint64_t q : {2, 3, 5}) {
                for (uint32_t alpha = 1; alpha <= 5; ++alpha) {
                    for (uint32_t k = 1; k <= 3; ++k) {
                        const auto cc = analysis::chain_count(x, q, alpha, k);
                        if (cc.distinct_n == 0) continue;
                        const double qa = std::pow(static_cast<double>(q), alpha);
                        const double c =
                            std::pow(static_cast<double>(cc.distinct_n) * qa /
                                         static_cast<double>(x),
                                     1.0 / k) /
                            y;
                        worst_c = std::max(worst_c, c);
                    }
                }
            }
        }
        ok = worst_c <= 10.0;
        add(s, "chain_grid_constant", ok, fmt("smallest working c=%.4f", worst_c));
    }
    {
        double worst_C = 0.0;
        for (uint64_t Y : {5, 10, 100}) {
            for (uint32_t a = 2; a <= 4; ++a) {
                const auto cnt = analysis::power_exact_divisor_count(1'000'000, Y, a);
                const double C = static_cast<double>(cnt) *
                                 std::pow(static_cast<double>(Y), a - 1) / 1e6;
                worst_C = std::max(worst_C, C);
            }
        }
        add(s, "power_grid_constant", worst_C <= 4.0, fmt("C=%.5f", worst_C));
    }
    {
        bool monotone = true;
        double prev = 1e300, last = 0.0;
        for (double x = 1e3; x <= 1e12 * 1.5; x *= 10) {
            const double psi = 3.0 * std::log(std::log(std::log(x)));
            last = analysis::prop_bound_ratio(x, 0.95, 1.0, psi, 2.0);
            if (last >= prev) monotone = false;
            prev = last;
        }
        add(s, "prop_bound_sweep", monotone && last < 1e-3,
            fmt("ratio at 1e12 = %.3g", last));
    }
    return s;
}

SuiteResult suite_model() {
    SuiteResult s{"model", {}};
    {
        const auto m2 = model::coefficient_max(std::log(2.0));
        const bool ok2 = std::fabs(m2.c_star - 2.0) <= 1e-6 &&
                         std::fabs(m2.f_star - 2.0 / std::log(2.0)) <= 1e-6 &&
                         !m2.boundary;
        add(s, "coeffmax_ln2", ok2, fmt("c*=%.8f f*=%.8f", m2.c_star, m2.f_star));

        const auto m3 = model::coefficient_max(std::log(3.0));
        const bool ok3 = m3.boundary && std::fabs(m3.f_star - std::numbers::e) <= 1e-12;
        add(s, "coeffmax_ln3_boundary", ok3, fmt("f*=%.12f", m3.f_star));
    }
    {
        bool ok = true;
        for (double c = 0.1; c < std::numbers::e; c += 0.05)
            if (!(model::coefficient(c, std::log(3.0)) < std::numbers::e)) ok = false;
        add(s, "coefficient_below_e_for_ln3", ok, "grid over (0, e)");
    }
    {
        const double p = model::prob_no_hit(6, 3, 2);
        const double expect = std::pow(5.0 / 6.0, 6);
        add(s, "prob_no_hit_6_3_2", std::fabs(p - expect) <= 1e-15, fmt("p=%.6f", p));

        bool sched = true;
        for (uint32_t k = 4; k <= 7; ++k) {
            uint64_t N = 1;
            for (uint32_t i = 0; i < k; ++i) N *= 10;
            uint64_t r = N * k + 1;
            while (!arith::is_prime(r)) ++r;
            if (model::prob_no_hit(N, r, 1) < 0.5) sched = false;
        }
        add(s, "prob_no_hit_schedule", sched, "value >= 0.5 for k in 4..7");
    }
    {
        const auto rep = model::excess_report(100'000);
        bool ok = rep.histogram.size() > 1 && rep.histogram[0] == 0;
        add(s, "excess_nonnegative_at_1e5", ok,
            fmt("mean L-H = %.6f over %llu primes", rep.mean_L_minus_H,
                (unsigned long long)rep.prime_count));
    }
    return s;
}

} // namespace

std::vector<std::string> suite_names() {
    return {"lambda", "pratt", "sieve", "analysis", "model", "all"};
}

SuiteResult run_suite(const std::string& name) {
    if (name == "lambda") return suite_lambda();
    if (name == "pratt") return suite_pratt();
    if (name == "sieve") return suite_sieve();
    if (name == "analysis") return suite_analysis();
    if (name == "model") return suite_model();
    if (name == "all") {
        SuiteResult all{"all", {}};
        for (const auto& n : {"lambda", "pratt", "sieve", "analysis", "model"}) {
            auto sub = run_suite(n);
            for (auto& c : sub.checks) {
                c.name = sub.suite + "." + c.name;
                all.checks.push_back(std::move(c));
            }
        }
        return all;
    }
    throw std::invalid_argument("unknown suite: " + name);
}

} // namespace lam::verify
