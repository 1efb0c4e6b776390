#include "floorset/progression.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <stdexcept>
#include <thread>

#include "floorset/kahan.hpp"
#include "floorset/vaaler.hpp"

namespace floorset {

namespace {

void validate_query(const ProgressionQuery& query) {
    if (query.x < 3) throw std::invalid_argument("progression: x must be >= 3");
    if (query.x > kMaxX) throw std::invalid_argument("progression: x exceeds 2^62");
    if (query.q < 1) throw std::invalid_argument("progression: q must be >= 1");
    if (query.a < 1 || query.a > query.q)
        throw std::invalid_argument("progression: a must satisfy 1 <= a <= q");
    // q > x merely leaves a as the only candidate member; a > x leaves none
    // and is the one degenerate shape rejected.
    if (query.a > query.x) throw std::invalid_argument("progression: a exceeds x");
}

// Exact count in O(sqrt(x)).  Members m <= isqrt(x) are tested directly with
// the membership criterion m in S(x) <=> floor(x/m) > floor(x/(m+1)); members
// m > isqrt(x) are exactly the quotients floor(x/n) for n <= x/(isqrt(x)+1),
// each distinct, so those are bucketed by residue instead.
u64 count_progression_raw(u64 x, u64 q, u64 a) {
    const u64 root = isqrt(x);
    u64 count = 0;
    for (u64 m = a; m <= root; m += q)
        if (x / m > x / (m + 1)) ++count;
    const u64 target = a % q;
    const u64 n_top = x / (root + 1);
    for (u64 n = 1; n <= n_top; ++n)
        if ((x / n) % q == target) ++count;
    return count;
}

ProgressionReport make_report(u64 x, u64 q, u64 a, u64 count) {
    ProgressionReport rep;
    rep.query = {x, q, a};
    rep.count = count;
    rep.main_term = 2.0 * std::sqrt(static_cast<double>(x)) / static_cast<double>(q);
    rep.raw_error = static_cast<double>(count) - rep.main_term;
    rep.normalized_error =
        rep.raw_error / (std::cbrt(static_cast<double>(x) / static_cast<double>(q)) *
                         std::log(static_cast<double>(x)));
    return rep;
}

}  // namespace

ProgressionReport count_progression(const ProgressionQuery& query) {
    validate_query(query);
    return make_report(query.x, query.q, query.a,
                       count_progression_raw(query.x, query.q, query.a));
}

u64 count_progression_via_set(const FloorSet& fs, u64 q, u64 a) {
    if (q < 1) throw std::invalid_argument("progression: q must be >= 1");
    if (a < 1 || a > q)
        throw std::invalid_argument("progression: a must satisfy 1 <= a <= q");
    const u64 target = a % q;
    u64 count = 0;
    for (u64 v : fs.values)
        if (v % q == target) ++count;
    return count;
}

namespace {

// Largest d with d^3 q^2 <= x^2, i.e. floor((x/q)^(2/3)) of the real quotient.
bool cube_within(u64 d, u64 x, u64 q) {
    u128 d3;
    if (__builtin_mul_overflow(u128(d) * d, u128(d), &d3)) return false;
    u128 lhs;
    if (__builtin_mul_overflow(d3, u128(q) * q, &lhs)) return false;
    return lhs <= u128(x) * x;
}

u64 floor_pow_two_thirds(u64 x, u64 q) {
    u64 d = static_cast<u64>(
        std::pow(static_cast<double>(x) / static_cast<double>(q), 2.0 / 3.0));
    while (d > 0 && !cube_within(d, x, q)) --d;
    while (cube_within(d + 1, x, q)) ++d;
    return d;
}

}  // namespace

DecompositionReport decompose(const ProgressionQuery& query) {
    validate_query(query);
    const u64 x = query.x, q = query.q, a = query.a;
    const u64 root = isqrt(x);

    DecompositionReport rep;
    rep.query = query;

    for (u64 m = a; m <= root; m += q)
        if (x / m > x / (m + 1)) ++rep.s1;

    // d-range with root < dq+a <= x, walked literally: this half stays an
    // independent route against count_progression's quotient bucketing.
    const u64 d_lo = root < a ? 0 : (root - a) / q + 1;
    const u64 d_hi = (x - a) / q;
    for (u64 d = d_lo; d <= d_hi; ++d) {
        const u64 m = d * q + a;
        if (x / m > x / (m + 1)) ++rep.s2;
    }

    // Tail sums over the truncated range d <= (x/q)^(2/3).  The count
    // indicator there unfolds as x/m - x/(m+1) = x/(m(m+1)) + psi(x/(m+1))
    // - psi(x/m), whence the three accumulators.
    const u64 d_cap = floor_pow_two_thirds(x, q);
    KahanSum s21, s22_0, s22_1;
    for (u64 d = d_lo; d <= d_cap; ++d) {
        const u64 m = d * q + a;
        s21.add(static_cast<double>(x) /
                (static_cast<double>(m) * (static_cast<double>(m) + 1.0)));
        s22_0.add(psi_of_quotient(x, m));
        s22_1.add(psi_of_quotient(x, m + 1));
    }
    rep.s21 = s21.value();
    rep.s22_0 = s22_0.value();
    rep.s22_1 = s22_1.value();

    const u64 exact = count_progression_raw(x, q, a);
    rep.boundary_correction =
        static_cast<i64>(exact) - static_cast<i64>(rep.s1 + rep.s2);
    return rep;
}

u64 admissible_q_max(u64 x) {
    if (x < 3) throw std::invalid_argument("admissible_q_max: x must be >= 3");
    if (x > kMaxX) throw std::invalid_argument("admissible_q_max: x exceeds 2^62");
    const double xd = static_cast<double>(x);
    const double bound = std::pow(xd, 0.25) / std::pow(std::log(xd), 1.5);
    if (bound < 1.0) return 1;
    return static_cast<u64>(std::floor(bound));
}

namespace {

struct ScanTask {
    u64 x = 0;
    u64 q = 0;
    std::vector<u64> residues;     // sorted, 1..q labels
    std::size_t out_offset = 0;
};

void run_scan_task(const ScanTask& task, std::vector<ProgressionReport>& out) {
    const u64 q = task.q;
    std::vector<u64> counts(task.residues.size(), 0);
    if (q <= 4096) {
        std::vector<u64> buckets(q, 0);
        for_each_floor_value(task.x, [&](u64 v) { ++buckets[v % q]; });
        for (std::size_t i = 0; i < task.residues.size(); ++i)
            counts[i] = buckets[task.residues[i] % q];
    } else {
        std::vector<u64> keys(task.residues.size());
        for (std::size_t i = 0; i < keys.size(); ++i)
            keys[i] = task.residues[i] % q;
        for_each_floor_value(task.x, [&](u64 v) {
            const auto it = std::lower_bound(keys.begin(), keys.end(), v % q);
            if (it != keys.end() && *it == v % q) ++counts[it - keys.begin()];
        });
    }
    for (std::size_t i = 0; i < task.residues.size(); ++i)
        out[task.out_offset + i] =
            make_report(task.x, q, task.residues[i], counts[i]);
}

}  // namespace

std::vector<ProgressionReport> scan_errors(const std::vector<u64>& x_grid,
                                           const QPolicy& q_policy,
                                           const APolicy& a_policy,
                                           unsigned threads) {
    std::vector<u64> xs(x_grid);
    std::sort(xs.begin(), xs.end());
    xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
    for (u64 x : xs) {
        if (x < 3) throw std::invalid_argument("scan_errors: x must be >= 3");
        if (x > kMaxX) throw std::invalid_argument("scan_errors: x exceeds 2^62");
    }

    std::vector<u64> explicit_qs(q_policy.values);
    if (q_policy.kind == QPolicy::Kind::Explicit) {
        if (explicit_qs.empty())
            throw std::invalid_argument("scan_errors: explicit q list is empty");
        for (u64 q : explicit_qs)
            if (q < 1) throw std::invalid_argument("scan_errors: q must be >= 1");
        std::sort(explicit_qs.begin(), explicit_qs.end());
        explicit_qs.erase(std::unique(explicit_qs.begin(), explicit_qs.end()),
                          explicit_qs.end());
    }

    std::vector<ScanTask> tasks;
    std::size_t total_rows = 0;
    for (u64 x : xs) {
        std::vector<u64> qs;
        if (q_policy.kind == QPolicy::Kind::Range) {
            for (u64 q = 1; q <= admissible_q_max(x); ++q) qs.push_back(q);
        } else {
            qs = explicit_qs;
        }
        for (u64 q : qs) {
            ScanTask task;
            task.x = x;
            task.q = q;
            if (a_policy.values.empty()) {
                const u64 top = std::min(q, a_policy.cap);
                for (u64 a = 1; a <= top; ++a) task.residues.push_back(a);
            } else {
                for (u64 a : a_policy.values) {
                    const u64 label = (a == 0) ? q : a;
                    if (label >= 1 && label <= q) task.residues.push_back(label);
                }
                std::sort(task.residues.begin(), task.residues.end());
                task.residues.erase(
                    std::unique(task.residues.begin(), task.residues.end()),
                    task.residues.end());
            }
            if (task.residues.empty()) continue;
            task.out_offset = total_rows;
            total_rows += task.residues.size();
            tasks.push_back(std::move(task));
        }
    }

    std::vector<ProgressionReport> out(total_rows);
    const std::size_t n_threads =
        std::max<std::size_t>(1, std::min<std::size_t>(threads, tasks.size()));
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= tasks.size()) break;
            run_scan_task(tasks[i], out);
        }
    };
    if (n_threads == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(n_threads);
        for (std::size_t i = 0; i < n_threads; ++i) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
    }
    return out;
}

}  // namespace floorset
