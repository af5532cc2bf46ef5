#pragma once

#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "roaring/roaring.hpp"

namespace roaring {

enum class DatasetError : uint8_t {
    Parse,            // field is not a plain decimal integer
    NonMonotone,      // values on a line not strictly increasing
    ValueOutOfRange,  // value does not fit in 32 bits
};

const char* to_string(DatasetError e);

class DatasetException : public std::runtime_error {
public:
    DatasetException(DatasetError e, size_t line, const std::string& detail)
        : std::runtime_error("line " + std::to_string(line) + ": " + detail), error_(e), line_(line) {}
    DatasetError error() const { return error_; }
    size_t line() const { return line_; }  // 1-based

private:
    DatasetError error_;
    size_t line_;
};

// Text corpus format: one set per line, comma-separated decimal values,
// strictly increasing within the line. A blank line is an empty set.
// Carriage returns and spaces around values are tolerated.
std::vector<RoaringBitmap> load_dataset(std::istream& in);
std::vector<RoaringBitmap> load_dataset(const std::string& path);  // I/O error -> std::ios_base::failure

void write_dataset(std::ostream& out, const std::vector<RoaringBitmap>& bitmaps);

// Synthetic corpora, deterministic per seed; universe is an exclusive upper
// bound on the values. Stand-ins for real bitmap-index columns.
std::vector<RoaringBitmap> gen_uniform_sparse(uint64_t seed, size_t count, uint32_t universe,
                                              uint32_t values_per_bitmap);
std::vector<RoaringBitmap> gen_dense(uint64_t seed, size_t count, uint32_t universe,
                                     double density);
std::vector<RoaringBitmap> gen_clustered_runs(uint64_t seed, size_t count, uint32_t universe,
                                              uint32_t clusters, uint32_t mean_run_length);
std::vector<RoaringBitmap> gen_quartile_mix(uint64_t seed, size_t count, uint32_t universe);

}  // namespace roaring
