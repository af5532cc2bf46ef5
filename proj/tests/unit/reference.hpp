#pragma once

// Independent reference model for container-level behavior. Everything here
// is written as obviously-correct per-bit / per-value loops so it can serve
// as an oracle for the optimized implementations. No code is shared with the
// library beyond the public constants.

#include <algorithm>
#include <bitset>
#include <cstdint>
#include <random>
#include <vector>

#include "roaring/container.hpp"

namespace refmodel {

// Per-bit model of one 2^16 universe chunk.
class RefBits {
public:
    RefBits() = default;

    explicit RefBits(const std::vector<uint16_t>& values) {
        for (uint16_t v : values) bits_.set(v);
    }

    bool test(uint32_t i) const { return bits_.test(i); }
    void set(uint32_t i) { bits_.set(i); }
    void reset(uint32_t i) { bits_.reset(i); }

    uint32_t cardinality() const { return static_cast<uint32_t>(bits_.count()); }

    // Number of maximal runs of consecutive set bits: count 0->1 transitions.
    uint32_t run_count() const {
        uint32_t runs = 0;
        bool prev = false;
        for (uint32_t i = 0; i < 65536; ++i) {
            bool cur = bits_.test(i);
            if (cur && !prev) ++runs;
            prev = cur;
        }
        return runs;
    }

    // Per-bit range ops over [i, j).
    void set_range(uint32_t i, uint32_t j) {
        for (uint32_t k = i; k < j; ++k) bits_.set(k);
    }
    void clear_range(uint32_t i, uint32_t j) {
        for (uint32_t k = i; k < j; ++k) bits_.reset(k);
    }
    void flip_range(uint32_t i, uint32_t j) {
        for (uint32_t k = i; k < j; ++k) bits_.flip(k);
    }

    uint32_t count_range(uint32_t i, uint32_t j) const {
        uint32_t c = 0;
        for (uint32_t k = i; k < j; ++k) c += bits_.test(k);
        return c;
    }

    // Number of set bits <= v.
    uint32_t rank(uint16_t v) const {
        uint32_t c = 0;
        for (uint32_t k = 0; k <= v; ++k) c += bits_.test(k);
        return c;
    }

    // 0-based index; caller guarantees n < cardinality().
    uint16_t select(uint32_t n) const {
        for (uint32_t k = 0; k < 65536; ++k) {
            if (bits_.test(k)) {
                if (n == 0) return static_cast<uint16_t>(k);
                --n;
            }
        }
        return 0;  // unreachable for valid n
    }

    std::vector<uint16_t> to_values() const {
        std::vector<uint16_t> out;
        for (uint32_t k = 0; k < 65536; ++k)
            if (bits_.test(k)) out.push_back(static_cast<uint16_t>(k));
        return out;
    }

    // The 1024-word little-endian image of the bit set, built bit by bit.
    std::vector<uint64_t> to_words() const {
        std::vector<uint64_t> w(1024, 0);
        for (uint32_t k = 0; k < 65536; ++k)
            if (bits_.test(k)) w[k >> 6] |= uint64_t{1} << (k & 63);
        return w;
    }

    RefBits operator&(const RefBits& o) const { return RefBits(bits_ & o.bits_); }
    RefBits operator|(const RefBits& o) const { return RefBits(bits_ | o.bits_); }
    RefBits operator^(const RefBits& o) const { return RefBits(bits_ ^ o.bits_); }
    RefBits andnot(const RefBits& o) const { return RefBits(bits_ & ~o.bits_); }

    bool intersects(const RefBits& o) const { return (bits_ & o.bits_).any(); }

    bool operator==(const RefBits& o) const { return bits_ == o.bits_; }

private:
    explicit RefBits(const std::bitset<65536>& b) : bits_(b) {}
    std::bitset<65536> bits_;
};

// Brute-force container type choice: enumerate the legal encodings with the
// byte-size model (array 2c+2, bitmap 8192, run 2+4r) and take the smallest,
// with the run encoding losing every tie.
inline roaring::ContainerType ref_best_type(uint32_t cardinality, uint32_t run_count) {
    using roaring::ContainerType;
    uint64_t best_size = UINT64_MAX;
    ContainerType best = ContainerType::Bitmap;
    auto consider = [&](ContainerType t, uint64_t size, bool wins_ties) {
        if (size < best_size || (size == best_size && wins_ties)) {
            best_size = size;
            best = t;
        }
    };
    if (cardinality <= roaring::kMaxArrayCardinality)
        consider(ContainerType::Array, 2ull * cardinality + 2, true);
    else
        consider(ContainerType::Bitmap, roaring::kBitmapBytes, true);
    if (run_count <= roaring::kMaxRunCount)
        consider(ContainerType::Run, 2ull + 4ull * run_count, false);
    return best;
}

// --- value-set generators -----------------------------------------------

// Sorted unique values, uniformly spread: array-regime sets.
inline std::vector<uint16_t> gen_sparse(std::mt19937_64& rng, uint32_t count) {
    std::vector<uint16_t> v;
    std::uniform_int_distribution<uint32_t> d(0, 65535);
    while (v.size() < count) v.push_back(static_cast<uint16_t>(d(rng)));
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
    return v;
}

// Dense uniform sets: bitmap regime (expected card = 65536 * p).
inline std::vector<uint16_t> gen_dense(std::mt19937_64& rng, double p) {
    std::vector<uint16_t> v;
    std::bernoulli_distribution d(p);
    for (uint32_t k = 0; k < 65536; ++k)
        if (d(rng)) v.push_back(static_cast<uint16_t>(k));
    return v;
}

// Clustered runs: few long intervals, run regime.
inline std::vector<uint16_t> gen_runs(std::mt19937_64& rng, uint32_t target_runs,
                                      uint32_t mean_len) {
    std::bitset<65536> bits;
    std::uniform_int_distribution<uint32_t> start_d(0, 65535);
    std::uniform_int_distribution<uint32_t> len_d(1, std::max(2u * mean_len, 2u));
    for (uint32_t r = 0; r < target_runs; ++r) {
        uint32_t s = start_d(rng);
        uint32_t e = std::min<uint32_t>(65536, s + len_d(rng));
        for (uint32_t k = s; k < e; ++k) bits.set(k);
    }
    std::vector<uint16_t> v;
    for (uint32_t k = 0; k < 65536; ++k)
        if (bits.test(k)) v.push_back(static_cast<uint16_t>(k));
    return v;
}

// Mixed-regime generator: picks one regime per call.
inline std::vector<uint16_t> gen_any(std::mt19937_64& rng) {
    switch (rng() % 6) {
        case 0: return gen_sparse(rng, static_cast<uint32_t>(rng() % 64));
        case 1: return gen_sparse(rng, 1000 + static_cast<uint32_t>(rng() % 3096));
        case 2: return gen_dense(rng, 0.08);
        case 3: return gen_dense(rng, 0.5);
        case 4: return gen_runs(rng, 1 + static_cast<uint32_t>(rng() % 30), 900);
        default: return gen_runs(rng, 1 + static_cast<uint32_t>(rng() % 500), 40);
    }
}

// Build a library container of a forced type from values (or best fit if
// `forced` is nullopt), via the public conversion API.
inline roaring::Container make_container(const std::vector<uint16_t>& values,
                                         std::optional<roaring::ContainerType> forced = {}) {
    using namespace roaring;
    RefBits ref(values);
    ArrayContainer arr;
    BitmapContainer bmp;
    for (uint16_t v : values) bmp.set(v);
    if (values.size() <= kMaxArrayCardinality) arr = ArrayContainer(values);
    ContainerType want = forced ? *forced
                                : choose_best_type(static_cast<uint32_t>(values.size()),
                                                   ref.run_count());
    switch (want) {
        case ContainerType::Array: return arr;
        case ContainerType::Bitmap: return bmp;
        case ContainerType::Run: return bitmap_to_runs(bmp);
    }
    return arr;  // unreachable
}

}  // namespace refmodel
