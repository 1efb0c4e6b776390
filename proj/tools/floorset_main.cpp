// floorset: floor-function set computations at the command line.
//
//   enumerate     distinct quotients floor(x/n), ascending
//   count         progression count S(x; q, a) with main term and errors
//   scan          error scan over an x-grid and admissible (q, a) pairs
//   decompose     sqrt-split of a progression count with truncated tail sums
//   vaaler-check  sawtooth approximation error against the Fejer budget
//   expsum-check  dyadic psi-sum blocks against exponent-pair bounds
//   primes        prime counts within S(x) and the li-type analogue
//   bench         wall-clock timings of the core kernels
//
// Exit codes: 0 success, 1 internal error, 2 usage error, 3 bound violation.

#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "floorset/core.hpp"
#include "floorset/expsum.hpp"
#include "floorset/primes.hpp"
#include "floorset/progression.hpp"
#include "floorset/vaaler.hpp"

namespace {

using floorset::u64;
using nlohmann::json;

constexpr double kSlackGuard = 9.094947017729282e-13;   // 2^-40

// Shortest representation that round-trips; keeps CSV diffs byte-stable.
std::string fmt(double v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

u64 parse_u64(const std::string& token) {
    if (token.find_first_of("eE.") != std::string::npos) {
        std::size_t used = 0;
        const long double v = std::stold(token, &used);
        if (used != token.size() || v < 0.0L || v > 9.2e18L ||
            std::floor(v) != v)
            throw std::invalid_argument("not a valid integer: " + token);
        return static_cast<u64>(v);
    }
    std::size_t used = 0;
    const unsigned long long v = std::stoull(token, &used);
    if (used != token.size())
        throw std::invalid_argument("not a valid integer: " + token);
    return v;
}

std::vector<u64> parse_u64_list(const std::string& csv) {
    std::vector<u64> out;
    std::stringstream ss(csv);
    std::string token;
    while (std::getline(ss, token, ','))
        if (!token.empty()) out.push_back(parse_u64(token));
    return out;
}

// Every command writes its table to --output when given, stdout otherwise.
class Sink {
  public:
    explicit Sink(const std::string& path) {
        if (!path.empty()) {
            file_.open(path);
            if (!file_) throw std::invalid_argument("cannot open output file: " + path);
        }
    }
    std::ostream& out() { return file_.is_open() ? file_ : std::cout; }

  private:
    std::ofstream file_;
};

struct CommonOpts {
    std::string format = "csv";
    std::string output;
};

void add_common(CLI::App* cmd, CommonOpts& opts) {
    cmd->add_option("--format", opts.format, "Output format")
        ->check(CLI::IsMember({"csv", "json"}));
    cmd->add_option("--output", opts.output, "Write the table to this file");
}

void emit(const CommonOpts& opts, const std::vector<std::string>& columns,
          const std::vector<std::vector<std::string>>& rows, Sink& sink) {
    std::ostream& os = sink.out();
    if (opts.format == "json") {
        json arr = json::array();
        for (const auto& row : rows) {
            json obj = json::object();
            for (std::size_t i = 0; i < columns.size(); ++i) {
                const std::string& cell = row[i];
                // Integer-looking cells stay integers in JSON.
                if (cell.find_first_not_of("-0123456789") == std::string::npos)
                    obj[columns[i]] = std::stoll(cell);
                else
                    obj[columns[i]] = std::stod(cell);
            }
            arr.push_back(obj);
        }
        os << arr.dump(2) << "\n";
        return;
    }
    for (std::size_t i = 0; i < columns.size(); ++i)
        os << columns[i] << (i + 1 < columns.size() ? "," : "\n");
    for (const auto& row : rows) {
        for (std::size_t i = 0; i < row.size(); ++i)
            os << row[i] << (i + 1 < row.size() ? "," : "\n");
    }
}

int cmd_enumerate(u64 x, const CommonOpts& opts) {
    const floorset::FloorSet fs = floorset::enumerate_floor_set(x);
    Sink sink(opts.output);
    if (opts.format == "json") {
        sink.out() << json(fs.values).dump() << "\n";
    } else {
        for (u64 v : fs.values) sink.out() << v << "\n";
    }
    std::cerr << "count=" << fs.values.size()
              << " formula=" << floorset::cardinality_exact(x) << "\n";
    return 0;
}

std::vector<std::string> report_row(const floorset::ProgressionReport& rep,
                                    bool with_query) {
    std::vector<std::string> row;
    if (with_query) {
        row.push_back(std::to_string(rep.query.x));
        row.push_back(std::to_string(rep.query.q));
        row.push_back(std::to_string(rep.query.a));
    }
    row.push_back(std::to_string(rep.count));
    row.push_back(fmt(rep.main_term));
    row.push_back(fmt(rep.raw_error));
    row.push_back(fmt(rep.normalized_error));
    return row;
}

int cmd_count(u64 x, u64 q, u64 a, const CommonOpts& opts) {
    if (a == 0) a = q;   // residue class 0 is labeled q
    const auto rep = floorset::count_progression({x, q, a});
    Sink sink(opts.output);
    emit(opts, {"count", "main_term", "raw_error", "normalized_error"},
         {report_row(rep, false)}, sink);
    return 0;
}

int cmd_scan(const std::vector<u64>& x_grid, const std::string& q_policy,
             const std::vector<u64>& q_values, const std::vector<u64>& a_values,
             double constant_c, unsigned threads, const CommonOpts& opts) {
    if (x_grid.empty()) throw std::invalid_argument("scan: --x-grid is required");
    if (!(constant_c > 0.0)) throw std::invalid_argument("scan: --constant-C must be > 0");

    floorset::QPolicy qp;
    if (q_policy == "paper_range") {
        qp.kind = floorset::QPolicy::Kind::Range;
        if (!q_values.empty())
            throw std::invalid_argument("scan: --q conflicts with paper_range policy");
    } else if (q_policy == "explicit") {
        qp.kind = floorset::QPolicy::Kind::Explicit;
        qp.values = q_values;
    } else {   // single
        if (q_values.size() != 1)
            throw std::invalid_argument("scan: single policy takes exactly one --q");
        qp.kind = floorset::QPolicy::Kind::Explicit;
        qp.values = q_values;
    }
    floorset::APolicy ap;
    ap.values = a_values;

    const auto rows = floorset::scan_errors(x_grid, qp, ap, threads);
    std::vector<std::vector<std::string>> table;
    table.reserve(rows.size());
    double worst = 0.0;
    for (const auto& rep : rows) {
        worst = std::max(worst, std::fabs(rep.normalized_error));
        table.push_back(report_row(rep, true));
    }
    Sink sink(opts.output);
    emit(opts,
         {"x", "q", "a", "count", "main_term", "raw_error", "normalized_error"},
         table, sink);
    std::cerr << "rows=" << rows.size() << " max|normalized_error|=" << fmt(worst)
              << " constant_C=" << fmt(constant_c) << "\n";
    return worst <= constant_c ? 0 : 3;
}

int cmd_decompose(u64 x, u64 q, u64 a, const CommonOpts& opts) {
    if (a == 0) a = q;
    const auto rep = floorset::decompose({x, q, a});
    Sink sink(opts.output);
    emit(opts,
         {"x", "q", "a", "s1", "s2", "s21", "s22_0", "s22_1",
          "boundary_correction"},
         {{std::to_string(x), std::to_string(q), std::to_string(a),
           std::to_string(rep.s1), std::to_string(rep.s2), fmt(rep.s21),
           fmt(rep.s22_0), fmt(rep.s22_1),
           std::to_string(rep.boundary_correction)}},
         sink);
    return 0;
}

int cmd_vaaler_check(const std::vector<u64>& h_list, u64 samples,
                     const CommonOpts& opts) {
    if (h_list.empty()) throw std::invalid_argument("vaaler-check: --H is required");
    if (samples == 0) throw std::invalid_argument("vaaler-check: --samples must be >= 1");
    std::vector<std::vector<std::string>> table;
    u64 violations = 0;
    double min_slack = 0.5;
    for (u64 H : h_list) {
        const auto poly = floorset::make_vaaler_polynomial(H);
        std::mt19937_64 rng(0x76616c65u ^ H);   // fixed seed per H: reruns diff clean
        std::uniform_real_distribution<double> td(0.0, 1.0);
        for (u64 i = 0; i < samples; ++i) {
            const double t = td(rng);
            const double exact = floorset::psi(t);
            const double approx = floorset::vaaler_approx(poly, t);
            const double err = std::fabs(exact - approx);
            const double bound = floorset::remainder_bound(poly, t);
            const double slack = bound + kSlackGuard - err;
            if (slack < 0.0) ++violations;
            min_slack = std::min(min_slack, slack);
            table.push_back({std::to_string(H), fmt(t), fmt(exact), fmt(approx),
                             fmt(err), fmt(bound), fmt(slack)});
        }
    }
    Sink sink(opts.output);
    emit(opts, {"H", "t", "psi", "approx", "abs_err", "bound", "slack"}, table,
         sink);
    std::cerr << "rows=" << table.size() << " min_slack=" << fmt(min_slack)
              << " violations=" << violations << "\n";
    return violations == 0 ? 0 : 3;
}

int cmd_expsum_check(std::vector<u64> x_grid, std::vector<u64> q_values,
                     double constant_c, const CommonOpts& opts) {
    if (!(constant_c > 0.0))
        throw std::invalid_argument("expsum-check: --constant-C must be > 0");
    if (x_grid.empty()) x_grid = {10000, 100000, 1000000, 10000000};
    if (q_values.empty()) q_values = {1, 2, 3, 5};
    const floorset::ExponentPair pair{0.5, 0.5};

    std::vector<std::vector<std::string>> table;
    double worst_cbrt = 0.0, worst_pair = 0.0;
    for (u64 x : x_grid) {
        for (u64 q : q_values) {
            std::vector<u64> residues{1};
            if (q > 1) residues.push_back(q);
            for (u64 a : residues) {
                for (unsigned delta : {0u, 1u}) {
                    for (const auto& [D, Dp] : floorset::dyadic_windows(x, q, a)) {
                        floorset::ExpSumQuery query;
                        query.x = x;
                        query.q = q;
                        query.a = a;
                        query.delta = delta;
                        query.D = D;
                        query.D_prime = Dp;
                        const double value = floorset::frak_s(query);
                        const double cbrt_bound =
                            std::cbrt(static_cast<double>(x) / static_cast<double>(q));
                        // Sub-unit windows (q near sqrt(x)) anchor at D = 1;
                        // the bound only grows with D, so it stays valid.
                        const double Da = std::max(D, 1.0);
                        const auto bound = floorset::exponent_pair_bound(
                            static_cast<double>(x), static_cast<double>(q), Da, pair);
                        const auto opt = floorset::optimize_H(
                            static_cast<double>(x), static_cast<double>(q), Da, pair);
                        const double ratio_cbrt =
                            std::fabs(value) / (constant_c * cbrt_bound);
                        const double ratio_pair =
                            std::fabs(value) / (constant_c * bound.total);
                        worst_cbrt = std::max(worst_cbrt, ratio_cbrt);
                        worst_pair = std::max(worst_pair, ratio_pair);
                        table.push_back({std::to_string(x), std::to_string(q),
                                         std::to_string(a), std::to_string(delta),
                                         fmt(D), fmt(Dp), fmt(value),
                                         fmt(cbrt_bound), fmt(bound.total),
                                         std::to_string(opt.H), fmt(ratio_cbrt),
                                         fmt(ratio_pair)});
                    }
                }
            }
        }
    }
    Sink sink(opts.output);
    emit(opts,
         {"x", "q", "a", "delta", "D", "D_prime", "value", "cbrt_bound",
          "pair_total", "optimal_H", "ratio_cbrt", "ratio_pair"},
         table, sink);
    std::cerr << "rows=" << table.size() << " max_ratio_cbrt=" << fmt(worst_cbrt)
              << " max_ratio_pair=" << fmt(worst_pair) << "\n";
    return (worst_cbrt <= 1.0 && worst_pair <= 1.0) ? 0 : 3;
}

int cmd_primes(const std::vector<u64>& x_list, double tol, const CommonOpts& opts) {
    if (x_list.empty()) throw std::invalid_argument("primes: --x is required");
    std::vector<std::vector<std::string>> table;
    for (u64 x : x_list) {
        const auto rep = floorset::prime_count_report(x, tol);
        table.push_back({std::to_string(rep.x), std::to_string(rep.pi_s),
                         fmt(rep.li_s), fmt(rep.main_term), fmt(rep.ratio)});
    }
    Sink sink(opts.output);
    emit(opts, {"x", "pi_s", "li_s", "main_term", "ratio"}, table, sink);
    return 0;
}

int cmd_bench(const std::vector<u64>& x_list, const CommonOpts& opts) {
    std::vector<std::vector<std::string>> table;
    for (u64 x : x_list) {
        const auto t0 = std::chrono::steady_clock::now();
        u64 n = 0;
        floorset::for_each_floor_value(x, [&](u64) { ++n; });
        const auto t1 = std::chrono::steady_clock::now();
        const u64 c = floorset::count_progression({x, 3, 1}).count;
        const auto t2 = std::chrono::steady_clock::now();
        const auto ms = [](auto a, auto b) {
            return std::chrono::duration<double, std::milli>(b - a).count();
        };
        table.push_back({"enumerate", std::to_string(x), std::to_string(n),
                         fmt(ms(t0, t1))});
        table.push_back({"count", std::to_string(x), std::to_string(c),
                         fmt(ms(t1, t2))});
    }
    Sink sink(opts.output);
    emit(opts, {"op", "x", "result", "millis"}, table, sink);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"floor-function set toolkit"};
    app.require_subcommand(1);

    std::string x_str, x_grid_str = "", q_str, a_str = "", h_str = "10,100";
    u64 q = 1, a = 0;
    u64 samples = 1000;
    double constant_c = 10.0;
    double tol = 1e-9;
    unsigned threads = std::max(1u, std::thread::hardware_concurrency());
    std::string q_policy = "paper_range";
    CommonOpts enum_opts, count_opts, scan_opts, dec_opts, va_opts, ex_opts,
        pr_opts, be_opts;

    CLI::App* c_enum = app.add_subcommand("enumerate", "List the distinct quotients of x");
    c_enum->add_option("--x", x_str, "Height x")->required();
    add_common(c_enum, enum_opts);

    CLI::App* c_count = app.add_subcommand("count", "Count S(x; q, a)");
    c_count->add_option("--x", x_str, "Height x")->required();
    c_count->add_option("--q", q, "Modulus")->required();
    c_count->add_option("--a", a, "Residue, 0 stands for the class q");
    add_common(c_count, count_opts);

    CLI::App* c_scan = app.add_subcommand("scan", "Scan normalized errors over a grid");
    c_scan->add_option("--x-grid", x_grid_str, "Comma-separated heights")->required();
    c_scan->add_option("--q-policy", q_policy, "paper_range | explicit | single")
        ->check(CLI::IsMember({"paper_range", "explicit", "single"}));
    c_scan->add_option("--q", q_str, "Comma-separated moduli for explicit/single");
    c_scan->add_option("--a", a_str, "Comma-separated residues (default: all)");
    c_scan->add_option("--constant-C", constant_c, "Acceptance multiplier");
    c_scan->add_option("--threads", threads, "Worker threads");
    add_common(c_scan, scan_opts);

    CLI::App* c_dec = app.add_subcommand("decompose", "Split S(x; q, a) at sqrt(x)");
    c_dec->add_option("--x", x_str, "Height x")->required();
    c_dec->add_option("--q", q, "Modulus")->required();
    c_dec->add_option("--a", a, "Residue, 0 stands for the class q");
    add_common(c_dec, dec_opts);

    CLI::App* c_va = app.add_subcommand("vaaler-check", "Fejer-budget slack per sample");
    c_va->add_option("--H", h_str, "Comma-separated degrees");
    c_va->add_option("--samples", samples, "Samples per degree");
    add_common(c_va, va_opts);

    CLI::App* c_ex = app.add_subcommand("expsum-check", "Dyadic psi-sum blocks vs bounds");
    c_ex->add_option("--x-grid", x_grid_str, "Comma-separated heights");
    c_ex->add_option("--q", q_str, "Comma-separated moduli");
    c_ex->add_option("--constant-C", constant_c, "Acceptance multiplier");
    add_common(c_ex, ex_opts);

    CLI::App* c_pr = app.add_subcommand("primes", "Prime counts within S(x)");
    c_pr->add_option("--x", x_grid_str, "Comma-separated heights")->required();
    c_pr->add_option("--tol", tol, "Quadrature tolerance");
    add_common(c_pr, pr_opts);

    CLI::App* c_be = app.add_subcommand("bench", "Time the core kernels");
    c_be->add_option("--x", x_grid_str, "Comma-separated heights");
    add_common(c_be, be_opts);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    try {
        if (c_enum->parsed()) return cmd_enumerate(parse_u64(x_str), enum_opts);
        if (c_count->parsed()) return cmd_count(parse_u64(x_str), q, a, count_opts);
        if (c_scan->parsed())
            return cmd_scan(parse_u64_list(x_grid_str), q_policy,
                            parse_u64_list(q_str), parse_u64_list(a_str),
                            constant_c, threads, scan_opts);
        if (c_dec->parsed()) return cmd_decompose(parse_u64(x_str), q, a, dec_opts);
        if (c_va->parsed())
            return cmd_vaaler_check(parse_u64_list(h_str), samples, va_opts);
        if (c_ex->parsed())
            return cmd_expsum_check(parse_u64_list(x_grid_str),
                                    parse_u64_list(q_str), constant_c, ex_opts);
        if (c_pr->parsed())
            return cmd_primes(parse_u64_list(x_grid_str), tol, pr_opts);
        if (c_be->parsed()) {
            auto xs = parse_u64_list(x_grid_str);
            if (xs.empty()) xs = {1000000, 100000000};
            return cmd_bench(xs, be_opts);
        }
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 1;
    }
}
