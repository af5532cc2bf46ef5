#pragma once

#include <span>
#include <string>
#include <vector>

#include "roaring/aggregate.hpp"

namespace roaring {

enum class PairOp : uint8_t { And, Or, Xor, AndNot };

const char* to_string(PairOp op);

struct BenchConfig {
    uint32_t warmup = 3;
    uint32_t repetitions = 5;
    std::string dataset = "synthetic";
};

struct BenchReport {
    std::string suite;
    std::string dataset;
    uint32_t warmup = 0;
    uint32_t repetitions = 0;
    std::vector<double> times_ms;  // one entry per measured repetition
    uint64_t checksum = 0;
    bool stable = true;  // checksum identical across every repetition

    double mean_ms() const;
    double cov() const;  // coefficient of variation: stddev / mean

    std::string to_json() const;
    std::string to_csv() const;  // header line + one data row
    std::string to_text() const;
};

// Membership probes at the first, second, and third quartile of the universe
// (three per bitmap). The checksum folds every probe result.
BenchReport bench_random_access(std::span<const BitmapView> bitmaps, const BenchConfig& cfg = {});

// op(B[i], B[i+1]) for each successive pair; the checksum folds the result
// cardinalities.
BenchReport bench_pairwise(PairOp op, std::span<const BitmapView> bitmaps,
                           const BenchConfig& cfg = {});

// One multi-way union of the whole collection per repetition; the checksum
// folds the result cardinality.
BenchReport bench_wide_union(AggregationStrategy strategy, std::span<const BitmapView> bitmaps,
                             const BenchConfig& cfg = {});

}  // namespace roaring
