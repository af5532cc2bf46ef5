#include "roaring/bench.hpp"

#include <chrono>
#include <cmath>
#include <sstream>

#include "json.hpp"

namespace roaring {

const char* to_string(PairOp op) {
    switch (op) {
        case PairOp::And: return "and";
        case PairOp::Or: return "or";
        case PairOp::Xor: return "xor";
        case PairOp::AndNot: return "andnot";
    }
    return "?";
}

double BenchReport::mean_ms() const {
    if (times_ms.empty()) return 0.0;
    double sum = 0;
    for (double t : times_ms) sum += t;
    return sum / static_cast<double>(times_ms.size());
}

double BenchReport::cov() const {
    const double mean = mean_ms();
    if (times_ms.empty() || mean == 0.0) return 0.0;
    double var = 0;
    for (double t : times_ms) var += (t - mean) * (t - mean);
    return std::sqrt(var / static_cast<double>(times_ms.size())) / mean;
}

std::string BenchReport::to_json() const {
    nlohmann::json j{{"suite", suite},
                     {"dataset", dataset},
                     {"warmup", warmup},
                     {"repetitions", repetitions},
                     {"times_ms", times_ms},
                     {"mean_ms", mean_ms()},
                     {"cov", cov()},
                     {"checksum", checksum},
                     {"stable", stable}};
    return j.dump(2);
}

std::string BenchReport::to_csv() const {
    std::ostringstream out;
    out << "suite,dataset,warmup,repetitions,mean_ms,cov,checksum,stable,times_ms\n";
    out << suite << ',' << dataset << ',' << warmup << ',' << repetitions << ',' << mean_ms()
        << ',' << cov() << ',' << checksum << ',' << (stable ? 1 : 0) << ',';
    for (size_t i = 0; i < times_ms.size(); ++i) out << (i ? ";" : "") << times_ms[i];
    out << '\n';
    return out.str();
}

std::string BenchReport::to_text() const {
    std::ostringstream out;
    out << suite << " on " << dataset << ": mean " << mean_ms() << " ms over " << repetitions
        << " reps (warmup " << warmup << "), cov " << cov() << ", checksum " << checksum
        << (stable ? "" : " UNSTABLE") << '\n';
    return out.str();
}

namespace {

inline uint64_t fold(uint64_t cs, uint64_t item) { return cs * 1099511628211ull + item; }

template <class Rep>
BenchReport run_suite(std::string suite, const BenchConfig& cfg, Rep&& rep) {
    BenchReport report;
    report.suite = std::move(suite);
    report.dataset = cfg.dataset;
    report.warmup = cfg.warmup;
    report.repetitions = cfg.repetitions;
    for (uint32_t i = 0; i < cfg.warmup; ++i) (void)rep();
    for (uint32_t i = 0; i < cfg.repetitions; ++i) {
        const auto t0 = std::chrono::steady_clock::now();
        const uint64_t cs = rep();
        const auto t1 = std::chrono::steady_clock::now();
        report.times_ms.push_back(std::chrono::duration<double, std::milli>(t1 - t0).count());
        if (i == 0)
            report.checksum = cs;
        else if (cs != report.checksum)
            report.stable = false;
    }
    return report;
}

}  // namespace

BenchReport bench_random_access(std::span<const BitmapView> bitmaps, const BenchConfig& cfg) {
    uint64_t universe = 0;
    for (const auto& v : bitmaps)
        if (const auto mx = v.max_value())
            universe = std::max<uint64_t>(universe, uint64_t{*mx} + 1);
    const uint32_t q1 = static_cast<uint32_t>(universe / 4);
    const uint32_t q2 = static_cast<uint32_t>(universe / 2);
    const uint32_t q3 = static_cast<uint32_t>(3 * universe / 4);
    return run_suite("access", cfg, [&] {
        uint64_t cs = 0;
        for (const auto& v : bitmaps) {
            cs = fold(cs, v.contains(q1));
            cs = fold(cs, v.contains(q2));
            cs = fold(cs, v.contains(q3));
        }
        return cs;
    });
}

BenchReport bench_pairwise(PairOp op, std::span<const BitmapView> bitmaps,
                           const BenchConfig& cfg) {
    auto apply = [op](const BitmapView& a, const BitmapView& b) {
        switch (op) {
            case PairOp::And: return view_and(a, b);
            case PairOp::Or: return view_or(a, b);
            case PairOp::Xor: return view_xor(a, b);
            case PairOp::AndNot: return view_andnot(a, b);
        }
        return RoaringBitmap();
    };
    return run_suite(std::string("pairwise-") + to_string(op), cfg, [&] {
        uint64_t cs = 0;
        for (size_t i = 0; i + 1 < bitmaps.size(); ++i)
            cs = fold(cs, apply(bitmaps[i], bitmaps[i + 1]).cardinality());
        return cs;
    });
}

BenchReport bench_wide_union(AggregationStrategy strategy, std::span<const BitmapView> bitmaps,
                             const BenchConfig& cfg) {
    return run_suite(std::string("wide-union-") + to_string(strategy), cfg,
                     [&] { return fold(0, union_all(bitmaps, strategy).cardinality()); });
}

}  // namespace roaring
