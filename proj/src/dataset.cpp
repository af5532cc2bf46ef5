#include "roaring/dataset.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <random>
#include <sstream>

namespace roaring {

const char* to_string(DatasetError e) {
    switch (e) {
        case DatasetError::Parse: return "Parse";
        case DatasetError::NonMonotone: return "NonMonotone";
        case DatasetError::ValueOutOfRange: return "ValueOutOfRange";
    }
    return "?";
}

namespace {

std::string_view trimmed(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r'))
        s.remove_suffix(1);
    return s;
}

RoaringBitmap parse_line(std::string_view line, size_t lineno) {
    std::vector<uint32_t> values;
    int64_t prev = -1;
    size_t start = 0;
    while (start <= line.size()) {
        const size_t comma = std::min(line.find(',', start), line.size());
        const std::string_view field = trimmed(line.substr(start, comma - start));
        start = comma + 1;
        if (field.empty()) {
            if (values.empty() && start > line.size()) break;  // blank line: empty set
            throw DatasetException(DatasetError::Parse, lineno, "empty field");
        }
        uint64_t v = 0;
        const auto [end, ec] = std::from_chars(field.data(), field.data() + field.size(), v);
        if (ec == std::errc::result_out_of_range)
            throw DatasetException(DatasetError::ValueOutOfRange, lineno,
                                   "value does not fit in 32 bits: " + std::string(field));
        if (ec != std::errc() || end != field.data() + field.size())
            throw DatasetException(DatasetError::Parse, lineno,
                                   "not a decimal value: " + std::string(field));
        if (v > 0xFFFFFFFFull)
            throw DatasetException(DatasetError::ValueOutOfRange, lineno,
                                   "value does not fit in 32 bits: " + std::string(field));
        if (static_cast<int64_t>(v) <= prev)
            throw DatasetException(DatasetError::NonMonotone, lineno,
                                   "values not strictly increasing at " + std::string(field));
        prev = static_cast<int64_t>(v);
        values.push_back(static_cast<uint32_t>(v));
    }
    return RoaringBitmap::from_sorted(values);
}

}  // namespace

std::vector<RoaringBitmap> load_dataset(std::istream& in) {
    std::vector<RoaringBitmap> out;
    std::string line;
    for (size_t lineno = 1; std::getline(in, line); ++lineno)
        out.push_back(parse_line(line, lineno));
    return out;
}

std::vector<RoaringBitmap> load_dataset(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::ios_base::failure("cannot open dataset file: " + path);
    return load_dataset(in);
}

void write_dataset(std::ostream& out, const std::vector<RoaringBitmap>& bitmaps) {
    for (const auto& bm : bitmaps) {
        bool first = true;
        for (auto it = bm.begin(); it != bm.end(); ++it) {
            if (!first) out << ',';
            out << *it;
            first = false;
        }
        out << '\n';
    }
}

// --- synthetic corpora ------------------------------------------------------

namespace {

RoaringBitmap from_unsorted(std::vector<uint32_t> values) {
    std::sort(values.begin(), values.end());
    values.erase(std::unique(values.begin(), values.end()), values.end());
    return RoaringBitmap::from_sorted(values);
}

RoaringBitmap one_sparse(std::mt19937_64& rng, uint32_t universe, uint32_t count) {
    std::vector<uint32_t> values;
    values.reserve(count);
    for (uint32_t k = 0; k < count; ++k)
        values.push_back(static_cast<uint32_t>(rng() % universe));
    return from_unsorted(std::move(values));
}

RoaringBitmap one_dense(std::mt19937_64& rng, uint32_t universe, double density) {
    // Geometric gap sampling keeps this linear in the output, not the universe.
    std::geometric_distribution<uint64_t> gap(density);
    std::vector<uint32_t> values;
    uint64_t v = gap(rng);
    while (v < universe) {
        values.push_back(static_cast<uint32_t>(v));
        v += 1 + gap(rng);
    }
    return RoaringBitmap::from_sorted(values);
}

RoaringBitmap one_clustered(std::mt19937_64& rng, uint32_t universe, uint32_t clusters,
                            uint32_t mean_run_length) {
    std::geometric_distribution<uint32_t> extra(1.0 / mean_run_length);
    RoaringBitmap bm;
    for (uint32_t k = 0; k < clusters; ++k) {
        const uint64_t start = rng() % universe;
        const uint64_t len = 1 + extra(rng);
        bm.add_range(start, std::min<uint64_t>(start + len, universe));
    }
    // Rebuild from plain values: corpora arrive as sorted integers, so the
    // ingested form uses array/bitmap containers until run_optimize is asked
    // for. Interval construction above is only a convenient way to sample.
    return RoaringBitmap::from_sorted(bm.to_vector());
}

}  // namespace

std::vector<RoaringBitmap> gen_uniform_sparse(uint64_t seed, size_t count, uint32_t universe,
                                              uint32_t values_per_bitmap) {
    std::mt19937_64 rng(seed);
    std::vector<RoaringBitmap> out;
    out.reserve(count);
    for (size_t k = 0; k < count; ++k) out.push_back(one_sparse(rng, universe, values_per_bitmap));
    return out;
}

std::vector<RoaringBitmap> gen_dense(uint64_t seed, size_t count, uint32_t universe,
                                     double density) {
    std::mt19937_64 rng(seed);
    std::vector<RoaringBitmap> out;
    out.reserve(count);
    for (size_t k = 0; k < count; ++k) out.push_back(one_dense(rng, universe, density));
    return out;
}

std::vector<RoaringBitmap> gen_clustered_runs(uint64_t seed, size_t count, uint32_t universe,
                                              uint32_t clusters, uint32_t mean_run_length) {
    std::mt19937_64 rng(seed);
    std::vector<RoaringBitmap> out;
    out.reserve(count);
    for (size_t k = 0; k < count; ++k)
        out.push_back(one_clustered(rng, universe, clusters, mean_run_length));
    return out;
}

std::vector<RoaringBitmap> gen_quartile_mix(uint64_t seed, size_t count, uint32_t universe) {
    std::mt19937_64 rng(seed);
    std::vector<RoaringBitmap> out;
    out.reserve(count);
    for (size_t k = 0; k < count; ++k) {
        switch (k % 4) {
            case 0: out.push_back(one_sparse(rng, universe, universe / 1000 + 16)); break;
            case 1: out.push_back(one_dense(rng, universe, 0.3)); break;
            case 2: out.push_back(one_clustered(rng, universe, 24, 600)); break;
            default: {
                auto bm = one_sparse(rng, universe, universe / 4000 + 8);
                bm.or_inplace(one_clustered(rng, universe, 6, 900));
                out.push_back(std::move(bm));
            }
        }
    }
    return out;
}

}  // namespace roaring
