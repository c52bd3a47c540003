// lam: command line frontend for the iterated-lambda toolkit.
//
// One verb per object: scalar queries (lambda, chain, L, pratt, height,
// levels, excess), batch sieves and reports (sieve, stats, excess --limit),
// analytic helpers (dickman, smooth, btsum, chains, powers, propbound,
// model ...) and the property suites (verify).
//
// Exit codes: 0 success, 1 domain error (bad value, failed suite, resource
// guard), 2 usage error. Machine output goes to stdout, diagnostics to
// stderr.

#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <set>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "lam/analysis.hpp"
#include "lam/errors.hpp"
#include "lam/lambda.hpp"
#include "lam/model.hpp"
#include "lam/pratt.hpp"
#include "lam/rangesieve.hpp"
#include "lam/verify.hpp"

namespace {

using nlohmann::json;

struct usage_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct GlobalOpts {
    std::string variant_name = "standard";
    uint32_t workers = 0; // 0: pick at runtime
    uint64_t mem_budget = uint64_t{2} << 30;
    std::string format = "text";

    lam::LambdaVariant variant() const {
        return variant_name == "two-adic" ? lam::LambdaVariant::two_adic
                                          : lam::LambdaVariant::standard;
    }
    lam::rangesieve::SieveOptions sieve_opts() const {
        lam::rangesieve::SieveOptions o;
        o.workers = workers;
        o.mem_budget = mem_budget;
        return o;
    }
};

std::string g12(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

void require_format(const GlobalOpts& g, std::initializer_list<const char*> allowed) {
    for (const char* a : allowed)
        if (g.format == a) return;
    std::string msg = "--format " + g.format + " is not supported here (use";
    for (const char* a : allowed)
        msg += std::string(" ") + a;
    throw usage_error(msg + ")");
}

void emit(const std::string& s) {
    std::fwrite(s.data(), 1, s.size(), stdout);
}

void emit_line(const std::string& s) { emit(s + "\n"); }

void emit_json(const json& j) { emit_line(j.dump()); }

void write_text_file(const std::string& path, const std::string& body) {
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw std::runtime_error("cannot open " + path + " for writing");
    out << body;
    out.flush();
    if (!out)
        throw std::runtime_error("write failed: " + path);
}

uint32_t workers_from_env() {
    const char* env = std::getenv("LAM_WORKERS");
    if (env == nullptr || *env == '\0')
        return 0;
    char* end = nullptr;
    unsigned long v = std::strtoul(env, &end, 10);
    if (*end != '\0' || v == 0 || v > 4096) {
        std::fprintf(stderr, "warning: ignoring LAM_WORKERS=%s\n", env);
        return 0;
    }
    return static_cast<uint32_t>(v);
}

void tree_text(std::string& out, const lam::pratt::TreeNode& node, int depth) {
    out.append(static_cast<size_t>(depth) * 2, ' ');
    out += std::to_string(node.p);
    if (node.alpha > 1) {
        out += '^';
        out += std::to_string(node.alpha);
    }
    out += '\n';
    for (const auto& ch : node.children)
        tree_text(out, *ch, depth + 1);
}

const char* kind_name(lam::rangesieve::TableKind k) {
    switch (k) {
        case lam::rangesieve::TableKind::lambda64: return "lambda";
        case lam::rangesieve::TableKind::L8: return "L";
        case lam::rangesieve::TableKind::H8: return "H";
    }
    return "?";
}

const char* variant_name_of(lam::LambdaVariant v) {
    return v == lam::LambdaVariant::two_adic ? "two-adic" : "standard";
}

std::string crc_hex(uint32_t crc) {
    char buf[16];
    std::snprintf(buf, sizeof(buf), "0x%08X", crc);
    return buf;
}

// ---- scalar subcommands ----

void cmd_lambda(const GlobalOpts& g, uint64_t n) {
    require_format(g, {"text", "json"});
    const uint64_t v = lam::lambda::carmichael_lambda(n, g.variant());
    if (g.format == "json")
        emit_json({{"n", n}, {"variant", g.variant_name}, {"lambda", v}});
    else
        emit_line(std::to_string(v));
}

void cmd_chain(const GlobalOpts& g, uint64_t n) {
    require_format(g, {"text", "json", "csv"});
    const auto chain = lam::lambda::lambda_chain(n, g.variant());
    if (g.format == "json") {
        emit_json({{"n", n},
                   {"variant", g.variant_name},
                   {"length", chain.length()},
                   {"chain", chain.values}});
    } else if (g.format == "csv") {
        std::string out = "k,value\n";
        for (size_t k = 0; k < chain.values.size(); ++k)
            out += std::to_string(k) + "," + std::to_string(chain.values[k]) + "\n";
        emit(out);
    } else {
        std::string out;
        for (size_t k = 0; k < chain.values.size(); ++k) {
            if (k) out += ' ';
            out += std::to_string(chain.values[k]);
        }
        emit_line(out);
    }
}

void cmd_big_l(const GlobalOpts& g, uint64_t n) {
    require_format(g, {"text", "json"});
    const uint32_t v = lam::lambda::big_L(n, g.variant());
    if (g.format == "json")
        emit_json({{"n", n}, {"variant", g.variant_name}, {"L", v}});
    else
        emit_line(std::to_string(v));
}

void cmd_pratt(const GlobalOpts& g, uint64_t p) {
    require_format(g, {"text", "json", "dot"});
    const auto tree = lam::pratt::build_tree(p);
    if (g.format == "json") {
        emit_line(lam::pratt::render_tree(tree, lam::pratt::TreeFormat::json));
    } else if (g.format == "dot") {
        emit(lam::pratt::render_tree(tree, lam::pratt::TreeFormat::dot));
    } else {
        std::string out;
        tree_text(out, *tree.root, 0);
        emit(out);
    }
}

void cmd_height(const GlobalOpts& g, uint64_t p) {
    require_format(g, {"text", "json"});
    const uint32_t h = lam::pratt::height(p);
    if (g.format == "json")
        emit_json({{"p", p}, {"H", h}});
    else
        emit_line(std::to_string(h));
}

void cmd_levels(const GlobalOpts& g, uint64_t p, bool distinct) {
    require_format(g, {"text", "json", "csv"});
    const auto counts = lam::pratt::level_counts(p, distinct);
    if (g.format == "json") {
        emit_json({{"p", p}, {"distinct", distinct}, {"levels", counts}});
    } else if (g.format == "csv") {
        std::string out = "depth,count\n";
        for (size_t d = 0; d < counts.size(); ++d)
            out += std::to_string(d) + "," + std::to_string(counts[d]) + "\n";
        emit(out);
    } else {
        std::string out;
        for (size_t d = 0; d < counts.size(); ++d) {
            if (d) out += ' ';
            out += std::to_string(counts[d]);
        }
        emit_line(out);
    }
}

// ---- batch subcommands ----

void cmd_excess_scalar(const GlobalOpts& g, uint64_t p, uint64_t y_cutoff) {
    require_format(g, {"text", "json"});
    const uint32_t e = lam::pratt::branch_excess_above(p, y_cutoff);
    if (g.format == "json")
        emit_json({{"p", p}, {"y_cutoff", y_cutoff}, {"branch_excess", e}});
    else
        emit_line(std::to_string(e));
}

void cmd_excess_batch(const GlobalOpts& g, uint64_t limit, uint64_t y_cutoff,
                      const std::string& csv_path) {
    require_format(g, {"text", "json", "csv"});
    lam::model::ExcessParams params;
    params.y_cutoff = y_cutoff;
    const auto report = lam::model::excess_report(limit, g.variant(), params);
    if (!csv_path.empty())
        write_text_file(csv_path, report.to_csv());
    if (g.format == "csv") {
        emit(report.to_csv());
    } else if (g.format == "json") {
        json buckets = json::array();
        for (const auto& b : report.buckets)
            buckets.push_back({{"lo", b.lo},
                               {"hi", b.hi},
                               {"count", b.count},
                               {"mean_L_minus_H", b.mean_L_minus_H},
                               {"mean_branch_excess", b.mean_branch_excess},
                               {"residual_mean", b.residual_mean}});
        emit_json({{"limit", report.limit},
                   {"y_cutoff", report.y_cutoff},
                   {"prime_count", report.prime_count},
                   {"mean_L_minus_H", report.mean_L_minus_H},
                   {"histogram", report.histogram},
                   {"buckets", buckets}});
    } else {
        std::string out;
        out += "limit " + std::to_string(report.limit) + "\n";
        out += "primes " + std::to_string(report.prime_count) + "\n";
        out += "mean_L_minus_H " + g12(report.mean_L_minus_H) + "\n";
        out += "excess_hist";
        for (size_t d = 0; d < report.histogram.size(); ++d)
            if (report.histogram[d])
                out += " " + std::to_string(d) + ":" + std::to_string(report.histogram[d]);
        out += "\n";
        emit(out);
    }
}

void cmd_sieve(const GlobalOpts& g, const std::string& kind, uint64_t limit,
               const std::string& out_path) {
    require_format(g, {"text", "json"});
    lam::rangesieve::RangeTable table;
    if (kind == "lambda")
        table = lam::rangesieve::sieve_lambda(limit, g.variant(), g.sieve_opts());
    else if (kind == "L")
        table = lam::rangesieve::sieve_L(limit, g.variant(), g.sieve_opts());
    else
        table = lam::rangesieve::sieve_heights(limit, g.sieve_opts());
    lam::rangesieve::write_table(table, out_path);
    const uint32_t crc = lam::rangesieve::payload_crc(table);
    if (g.format == "json") {
        emit_json({{"kind", kind_name(table.kind)},
                   {"variant", variant_name_of(table.variant)},
                   {"limit", table.limit},
                   {"crc32", crc_hex(crc)},
                   {"file", out_path}});
    } else {
        emit_line("kind=" + std::string(kind_name(table.kind)) +
                  " variant=" + variant_name_of(table.variant) +
                  " limit=" + std::to_string(table.limit) +
                  " crc32=" + crc_hex(crc) + " file=" + out_path);
    }
}

json row_json(const lam::analysis::DecadeRow& r) {
    return {{"x", r.x},
            {"count", r.count},
            {"mean_L", r.mean_L},
            {"mean_L_over_y", r.mean_L_over_y},
            {"p50", r.p50},
            {"p90", r.p90},
            {"p99", r.p99},
            {"max_L", r.max_L},
            {"argmax", r.argmax},
            {"frac_below_c_y", r.frac_below_c_y},
            {"frac_above_logx_gamma", r.frac_above_logx_gamma},
            {"mean_H_over_y", r.mean_H_over_y},
            {"mean_L_minus_H", r.mean_L_minus_H}};
}

void cmd_stats(const GlobalOpts& g, uint64_t limit, const std::string& l_path,
               const std::string& h_path, const std::string& csv_path,
               double c, double gamma) {
    require_format(g, {"text", "json", "csv"});
    using lam::rangesieve::RangeTable;
    using lam::rangesieve::TableKind;

    RangeTable l_table;
    if (!l_path.empty()) {
        l_table = lam::rangesieve::read_table(l_path);
        if (l_table.kind != TableKind::L8)
            throw std::invalid_argument("stats: " + l_path + " is not an L table");
        if (l_table.limit != limit)
            throw usage_error("stats: --limit disagrees with table limit " +
                              std::to_string(l_table.limit));
    } else {
        l_table = lam::rangesieve::sieve_L(limit, g.variant(), g.sieve_opts());
    }

    RangeTable h_table;
    if (!h_path.empty()) {
        h_table = lam::rangesieve::read_table(h_path);
        if (h_table.kind != TableKind::H8)
            throw std::invalid_argument("stats: " + h_path + " is not an H table");
        if (h_table.limit != limit)
            throw usage_error("stats: --limit disagrees with table limit " +
                              std::to_string(h_table.limit));
    } else {
        h_table = lam::rangesieve::sieve_heights(limit, g.sieve_opts());
    }

    lam::analysis::ReportParams params;
    params.c = c;
    params.gamma = gamma;
    const auto report = lam::analysis::distribution_report(l_table, h_table, params);
    if (!csv_path.empty())
        write_text_file(csv_path, report.to_csv());

    if (g.format == "csv") {
        emit(report.to_csv());
    } else if (g.format == "json") {
        json rows = json::array();
        for (const auto& r : report.rows)
            rows.push_back(row_json(r));
        emit_json({{"limit", report.limit},
                   {"variant", variant_name_of(l_table.variant)},
                   {"max_L", report.max_L},
                   {"argmax", report.argmax},
                   {"small_L_set", report.small_L_set},
                   {"excess_hist", report.excess_hist},
                   {"rows", rows}});
    } else {
        std::string out;
        out += "limit " + std::to_string(report.limit) + "\n";
        out += "variant " + std::string(variant_name_of(l_table.variant)) + "\n";
        out += "max_L " + std::to_string(report.max_L) + " argmax " +
               std::to_string(report.argmax) + "\n";
        out += "L_le_2";
        for (uint64_t n : report.small_L_set)
            out += " " + std::to_string(n);
        out += "\n";
        out += "rows " + std::to_string(report.rows.size()) + "\n";
        emit(out);
    }
}

// ---- analytic subcommands ----

void cmd_dickman(const GlobalOpts& g, double u) {
    require_format(g, {"text", "json"});
    const double v = lam::analysis::dickman_rho(u);
    if (g.format == "json")
        emit_json({{"u", u}, {"rho", v}});
    else
        emit_line(g12(v));
}

void cmd_smooth(const GlobalOpts& g, uint64_t x, uint64_t z) {
    require_format(g, {"text", "json"});
    const uint64_t v = lam::analysis::smooth_count(x, z);
    if (g.format == "json")
        emit_json({{"x", x}, {"z", z}, {"count", v}});
    else
        emit_line(std::to_string(v));
}

void cmd_btsum(const GlobalOpts& g, uint64_t x, uint64_t m) {
    require_format(g, {"text", "json"});
    const auto r = lam::analysis::bt_recip_sum(x, m);
    if (g.format == "json")
        emit_json({{"x", x}, {"m", m}, {"sum", r.sum}, {"count", r.count}});
    else
        emit_line(g12(r.sum) + " " + std::to_string(r.count));
}

void cmd_chains(const GlobalOpts& g, uint64_t x, uint64_t q, uint32_t alpha,
                uint32_t k) {
    require_format(g, {"text", "json"});
    const auto r = lam::analysis::chain_count(x, q, alpha, k);
    if (g.format == "json")
        emit_json({{"x", x},
                   {"q", q},
                   {"alpha", alpha},
                   {"k", k},
                   {"distinct_n", r.distinct_n},
                   {"tuples", r.tuples},
                   {"pair_count", r.pair_count}});
    else
        emit_line(std::to_string(r.distinct_n));
}

void cmd_powers(const GlobalOpts& g, uint64_t x, uint64_t y, uint32_t a) {
    require_format(g, {"text", "json"});
    const uint64_t v = lam::analysis::power_exact_divisor_count(x, y, a);
    if (g.format == "json")
        emit_json({{"x", x}, {"Y", y}, {"a", a}, {"count", v}});
    else
        emit_line(std::to_string(v));
}

void cmd_propbound(const GlobalOpts& g, double x, double gamma, double b,
                   double c, double psi, bool psi_given) {
    require_format(g, {"text", "json"});
    if (!psi_given) {
        if (x < 16.0)
            throw usage_error("propbound: default psi = 3*log(log(log x)) needs "
                              "x >= 16; pass --psi");
        psi = 3.0 * std::log(std::log(std::log(x)));
    }
    const double lg = lam::analysis::prop_bound_log(x, gamma, b, psi, c);
    const double ratio = lam::analysis::prop_bound_ratio(x, gamma, b, psi, c);
    if (g.format == "json")
        emit_json({{"x", x},
                   {"gamma", gamma},
                   {"b", b},
                   {"c", c},
                   {"psi", psi},
                   {"log_value", lg},
                   {"ratio", ratio}});
    else
        emit_line(g12(ratio));
}

// ---- model subcommands ----

void cmd_model_coeff(const GlobalOpts& g, double c, double d) {
    require_format(g, {"text", "json"});
    const double v = lam::model::coefficient(c, d);
    if (g.format == "json")
        emit_json({{"c", c}, {"D", d}, {"value", v}});
    else
        emit_line(g12(v));
}

void cmd_model_coeffmax(const GlobalOpts& g, double d) {
    require_format(g, {"text", "json"});
    const auto m = lam::model::coefficient_max(d);
    if (g.format == "json")
        emit_json({{"D", d},
                   {"c_star", m.c_star},
                   {"f_star", m.f_star},
                   {"boundary", m.boundary}});
    else
        emit_line(g12(m.c_star) + " " + g12(m.f_star) + " " +
                  (m.boundary ? "true" : "false"));
}

void cmd_model_prob(const GlobalOpts& g, uint64_t n, uint64_t r, uint32_t a) {
    require_format(g, {"text", "json"});
    const double v = lam::model::prob_no_hit(n, r, a);
    if (g.format == "json")
        emit_json({{"N", n}, {"r", r}, {"a", a}, {"value", v}});
    else
        emit_line(g12(v));
}

void cmd_model_levelsize(const GlobalOpts& g, double y, uint32_t n) {
    require_format(g, {"text", "json"});
    const double v = lam::model::expected_level_size(y, n);
    if (g.format == "json")
        emit_json({{"y", y}, {"n", n}, {"value", v}});
    else
        emit_line(g12(v));
}

// ---- verify ----

int cmd_verify(const GlobalOpts& g, const std::string& suite) {
    require_format(g, {"text", "json"});
    const auto result = lam::verify::run_suite(suite);
    size_t passed = 0;
    for (const auto& c : result.checks)
        passed += c.pass ? 1 : 0;
    if (g.format == "json") {
        json checks = json::array();
        for (const auto& c : result.checks)
            checks.push_back({{"name", c.name}, {"pass", c.pass}, {"detail", c.detail}});
        emit_json({{"suite", result.suite},
                   {"pass", result.all_pass()},
                   {"checks", checks}});
    } else {
        std::string out;
        for (const auto& c : result.checks) {
            out += c.pass ? "PASS " : "FAIL ";
            out += c.name;
            if (!c.detail.empty())
                out += "  (" + c.detail + ")";
            out += '\n';
        }
        out += "suite " + result.suite + ": " + std::to_string(passed) + "/" +
               std::to_string(result.checks.size()) + " passed\n";
        emit(out);
    }
    return result.all_pass() ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"iterated Carmichael lambda toolkit"};
    app.fallthrough();
    app.require_subcommand(1);

    GlobalOpts gopt;
    gopt.workers = workers_from_env();

    app.add_option("--variant", gopt.variant_name,
                   "lambda rule at powers of two (standard|two-adic)")
        ->check(CLI::IsMember({"standard", "two-adic"}))
        ->capture_default_str();
    app.add_option("--workers", gopt.workers,
                   "worker threads (default: LAM_WORKERS, else hardware)")
        ->check(CLI::Range(uint32_t{1}, uint32_t{4096}));
    app.add_option("--mem-budget", gopt.mem_budget,
                   "memory budget in bytes, at least 64 MiB")
        ->check(CLI::Range(uint64_t{64} << 20, UINT64_MAX))
        ->capture_default_str();
    app.add_option("--format", gopt.format, "output format (text|json|csv|dot)")
        ->check(CLI::IsMember({"text", "json", "csv", "dot"}))
        ->capture_default_str();

    int exit_code = 0;

    // scalar verbs
    static uint64_t arg_n = 0;
    auto* c_lambda = app.add_subcommand("lambda", "Carmichael lambda of n");
    c_lambda->add_option("n", arg_n, "argument")->required()->check(CLI::PositiveNumber);
    c_lambda->callback([&] { cmd_lambda(gopt, arg_n); });

    static uint64_t arg_chain_n = 0;
    auto* c_chain = app.add_subcommand("chain", "iterated lambda chain of n down to 1");
    c_chain->add_option("n", arg_chain_n, "argument")->required()->check(CLI::PositiveNumber);
    c_chain->callback([&] { cmd_chain(gopt, arg_chain_n); });

    static uint64_t arg_l_n = 0;
    auto* c_l = app.add_subcommand("L", "iteration count L(n): steps of lambda to reach 1");
    c_l->add_option("n", arg_l_n, "argument")->required()->check(CLI::PositiveNumber);
    c_l->callback([&] { cmd_big_l(gopt, arg_l_n); });

    static uint64_t arg_pratt_p = 0;
    auto* c_pratt = app.add_subcommand("pratt", "Pratt tree of a prime");
    c_pratt->add_option("p", arg_pratt_p, "prime")->required()->check(CLI::PositiveNumber);
    c_pratt->callback([&] { cmd_pratt(gopt, arg_pratt_p); });

    static uint64_t arg_height_p = 0;
    auto* c_height = app.add_subcommand("height", "Pratt tree height H(p)");
    c_height->add_option("p", arg_height_p, "prime")->required()->check(CLI::PositiveNumber);
    c_height->callback([&] { cmd_height(gopt, arg_height_p); });

    static uint64_t arg_levels_p = 0;
    static bool arg_levels_distinct = false;
    auto* c_levels = app.add_subcommand("levels", "node counts per Pratt tree level");
    c_levels->add_option("p", arg_levels_p, "prime")->required()->check(CLI::PositiveNumber);
    c_levels->add_flag("--distinct", arg_levels_distinct, "count distinct primes per level");
    c_levels->callback([&] { cmd_levels(gopt, arg_levels_p, arg_levels_distinct); });

    static uint64_t arg_excess_p = 0;
    static uint64_t arg_excess_limit = 0;
    static uint64_t arg_excess_cutoff = 0;
    static std::string arg_excess_csv;
    auto* c_excess = app.add_subcommand(
        "excess", "branch excess of one prime, or the L-H report over primes <= limit");
    auto* excess_p_opt =
        c_excess->add_option("p", arg_excess_p, "prime")->check(CLI::PositiveNumber);
    auto* excess_limit_opt = c_excess->add_option("--limit", arg_excess_limit,
                                                  "report over all primes <= limit")
                                 ->check(CLI::Range(uint64_t{2}, UINT64_MAX));
    c_excess->add_option("--y-cutoff", arg_excess_cutoff,
                         "attribute only edges with child prime >= this");
    c_excess->add_option("--csv", arg_excess_csv, "also write the CSV report here");
    excess_p_opt->excludes(excess_limit_opt);
    c_excess->callback([&] {
        if (excess_limit_opt->count() > 0)
            cmd_excess_batch(gopt, arg_excess_limit, arg_excess_cutoff, arg_excess_csv);
        else if (excess_p_opt->count() > 0)
            cmd_excess_scalar(gopt, arg_excess_p, arg_excess_cutoff);
        else
            throw usage_error("excess: give a prime or --limit N");
    });

    static std::string arg_sieve_kind;
    static uint64_t arg_sieve_limit = 0;
    static std::string arg_sieve_out;
    auto* c_sieve = app.add_subcommand("sieve", "compute a dense table and write it to disk");
    c_sieve->add_option("--kind", arg_sieve_kind, "table kind (lambda|L|H)")
        ->required()
        ->check(CLI::IsMember({"lambda", "L", "H"}));
    c_sieve->add_option("--limit", arg_sieve_limit, "table covers 1..limit")
        ->required()
        ->check(CLI::Range(uint64_t{2}, UINT64_MAX));
    c_sieve->add_option("--out", arg_sieve_out, "output path")->required();
    c_sieve->callback([&] { cmd_sieve(gopt, arg_sieve_kind, arg_sieve_limit, arg_sieve_out); });

    static uint64_t arg_stats_limit = 0;
    static std::string arg_stats_table, arg_stats_htable, arg_stats_csv;
    static double arg_stats_c = 1.0, arg_stats_gamma = 0.9503;
    auto* c_stats = app.add_subcommand("stats", "per-decade distribution report for L and H");
    c_stats->add_option("--limit", arg_stats_limit, "report covers 1..limit")
        ->required()
        ->check(CLI::Range(uint64_t{2}, UINT64_MAX));
    c_stats->add_option("--table", arg_stats_table, "precomputed L table (else sieve now)");
    c_stats->add_option("--h-table", arg_stats_htable, "precomputed H table (else sieve now)");
    c_stats->add_option("--csv", arg_stats_csv, "also write the CSV report here");
    c_stats->add_option("--c", arg_stats_c, "threshold multiplier for the L < c*y fraction")
        ->capture_default_str();
    c_stats->add_option("--gamma", arg_stats_gamma,
                        "exponent for the L > (log n)^gamma fraction")
        ->capture_default_str();
    c_stats->callback([&] {
        cmd_stats(gopt, arg_stats_limit, arg_stats_table, arg_stats_htable, arg_stats_csv,
                  arg_stats_c, arg_stats_gamma);
    });

    static double arg_dickman_u = 0.0;
    auto* c_dickman = app.add_subcommand("dickman", "Dickman rho at u");
    c_dickman->add_option("u", arg_dickman_u, "argument, 0 <= u <= 20")->required();
    c_dickman->callback([&] { cmd_dickman(gopt, arg_dickman_u); });

    static uint64_t arg_smooth_x = 0, arg_smooth_z = 0;
    auto* c_smooth = app.add_subcommand("smooth", "count n <= x with all prime factors <= z");
    c_smooth->add_option("x", arg_smooth_x, "range end")->required()->check(CLI::PositiveNumber);
    c_smooth->add_option("z", arg_smooth_z, "smoothness bound")->required()->check(CLI::PositiveNumber);
    c_smooth->callback([&] { cmd_smooth(gopt, arg_smooth_x, arg_smooth_z); });

    static uint64_t arg_bt_x = 0, arg_bt_m = 0;
    auto* c_btsum = app.add_subcommand("btsum", "sum of 1/p over primes p <= x, p = 1 (mod m)");
    c_btsum->add_option("x", arg_bt_x, "range end")->required()->check(CLI::Range(uint64_t{2}, UINT64_MAX));
    c_btsum->add_option("m", arg_bt_m, "modulus, at least 2")->required()->check(CLI::Range(uint64_t{2}, UINT64_MAX));
    c_btsum->callback([&] { cmd_btsum(gopt, arg_bt_x, arg_bt_m); });

    static uint64_t arg_chains_x = 0, arg_chains_q = 0;
    static uint32_t arg_chains_alpha = 0, arg_chains_k = 0;
    auto* c_chains = app.add_subcommand(
        "chains", "count n <= x reached by a divisor chain from q^alpha in k steps");
    c_chains->add_option("x", arg_chains_x, "range end")->required()->check(CLI::PositiveNumber);
    c_chains->add_option("q", arg_chains_q, "chain base prime")->required()->check(CLI::PositiveNumber);
    c_chains->add_option("alpha", arg_chains_alpha, "power of q")->required()->check(CLI::PositiveNumber);
    c_chains->add_option("k", arg_chains_k, "chain length")->required()->check(CLI::PositiveNumber);
    c_chains->callback([&] { cmd_chains(gopt, arg_chains_x, arg_chains_q, arg_chains_alpha, arg_chains_k); });

    static uint64_t arg_powers_x = 0, arg_powers_y = 0;
    static uint32_t arg_powers_a = 0;
    auto* c_powers = app.add_subcommand(
        "powers", "count n <= x divisible exactly by p^a for some prime p > Y");
    c_powers->add_option("x", arg_powers_x, "range end")->required()->check(CLI::PositiveNumber);
    c_powers->add_option("Y", arg_powers_y, "prime threshold")->required();
    c_powers->add_option("a", arg_powers_a, "exact exponent, at least 2")
        ->required()
        ->check(CLI::Range(uint32_t{2}, uint32_t{64}));
    c_powers->callback([&] { cmd_powers(gopt, arg_powers_x, arg_powers_y, arg_powers_a); });

    static double arg_prop_x = 0.0, arg_prop_gamma = 0.95, arg_prop_b = 1.0;
    static double arg_prop_c = 2.0, arg_prop_psi = 0.0;
    auto* c_prop = app.add_subcommand(
        "propbound", "ratio to x of x*(c*y)^((log x)^gamma+1) / 2^(b*(log x)^gamma*psi-2)");
    c_prop->add_option("x", arg_prop_x, "evaluation point, x >= 3")->required();
    c_prop->add_option("--gamma", arg_prop_gamma, "exponent gamma")->capture_default_str();
    c_prop->add_option("--b", arg_prop_b, "constant b")->capture_default_str();
    c_prop->add_option("--c", arg_prop_c, "constant c")->capture_default_str();
    auto* prop_psi_opt =
        c_prop->add_option("--psi", arg_prop_psi, "psi value (default 3*log(log(log x)))");
    c_prop->callback([&] {
        cmd_propbound(gopt, arg_prop_x, arg_prop_gamma, arg_prop_b, arg_prop_c, arg_prop_psi,
                      prop_psi_opt->count() > 0);
    });

    auto* c_model = app.add_subcommand("model", "branching heuristic formulas");
    c_model->require_subcommand(1);

    static double arg_coeff_c = 0.0, arg_coeff_d = 0.0;
    auto* c_coeff = c_model->add_subcommand("coeff", "c + c*log(e/c)/D");
    c_coeff->add_option("c", arg_coeff_c, "0 < c <= e")->required();
    c_coeff->add_option("D", arg_coeff_d, "denominator, log of the next branch prime")->required();
    c_coeff->callback([&] { cmd_model_coeff(gopt, arg_coeff_c, arg_coeff_d); });

    static double arg_coeffmax_d = 0.0;
    auto* c_coeffmax = c_model->add_subcommand("coeffmax", "maximizer of coeff over (0, e]");
    c_coeffmax->add_option("D", arg_coeffmax_d, "denominator")->required();
    c_coeffmax->callback([&] { cmd_model_coeffmax(gopt, arg_coeffmax_d); });

    static uint64_t arg_prob_n = 0, arg_prob_r = 0;
    static uint32_t arg_prob_a = 0;
    auto* c_prob = c_model->add_subcommand(
        "prob", "(1 - 1/phi(r^a))^N, chance that N draws all miss 1 mod r^a");
    c_prob->add_option("N", arg_prob_n, "number of draws")->required();
    c_prob->add_option("r", arg_prob_r, "prime r")->required()->check(CLI::PositiveNumber);
    c_prob->add_option("a", arg_prob_a, "exponent")->required()->check(CLI::PositiveNumber);
    c_prob->callback([&] { cmd_model_prob(gopt, arg_prob_n, arg_prob_r, arg_prob_a); });

    static double arg_level_y = 0.0;
    static uint32_t arg_level_n = 0;
    auto* c_levelsize = c_model->add_subcommand("levelsize", "expected level size y^n / n!");
    c_levelsize->add_option("y", arg_level_y, "y = log log p")->required();
    c_levelsize->add_option("n", arg_level_n, "level")->required();
    c_levelsize->callback([&] { cmd_model_levelsize(gopt, arg_level_y, arg_level_n); });

    static std::string arg_verify_suite;
    auto* c_verify = app.add_subcommand("verify", "run a property suite");
    c_verify->add_option("--suite", arg_verify_suite, "lambda|pratt|sieve|analysis|model|all")
        ->required()
        ->check(CLI::IsMember(lam::verify::suite_names()));
    c_verify->callback([&] { exit_code = cmd_verify(gopt, arg_verify_suite); });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0)
            return app.exit(e); // --help and friends
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    } catch (const usage_error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    return exit_code;
}
