#pragma once

#include <cassert>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

namespace roaring {

inline constexpr uint32_t kChunkSize = 1u << 16;  // values per container
inline constexpr uint32_t kMaxArrayCardinality = 4096;
inline constexpr uint32_t kBitmapWords = kChunkSize / 64;
inline constexpr uint32_t kBitmapBytes = kBitmapWords * 8;
// A run container stays smaller than a bitmap only while 2 + 4r < 8192.
inline constexpr uint32_t kMaxRunCount = 2047;

enum class ContainerType : uint8_t { Array, Bitmap, Run };

const char* to_string(ContainerType t);

// Next capacity for a growing value array: double under 64 slots, then x1.5
// until 1067, then x1.25, snapping straight to 4096 once past 3840.
uint32_t grow_capacity(uint32_t current, uint32_t needed);

// Smallest representation among the ones allowed to hold (cardinality,
// run_count). Run never wins a tie, and the 8192-byte array-vs-bitmap tie at
// cardinality 4095 goes to Array.
ContainerType choose_best_type(uint32_t cardinality, uint32_t run_count);

// Serialized size per the container cost model: 2c+2 / 8192 / 2+4r bytes.
uint64_t type_size_in_bytes(ContainerType t, uint32_t cardinality, uint32_t run_count);

class ArrayContainer {
public:
    ArrayContainer() = default;
    explicit ArrayContainer(std::vector<uint16_t> sorted_values) : values_(std::move(sorted_values)) {
        assert(sorted_unique());
    }

    bool contains(uint16_t v) const;
    bool add(uint16_t v);     // caller must keep cardinality <= 4096
    bool remove(uint16_t v);
    void append(uint16_t v) {  // build in ascending order
        assert(values_.empty() || values_.back() < v);
        values_.push_back(v);
    }

    uint32_t cardinality() const { return static_cast<uint32_t>(values_.size()); }
    uint32_t run_count() const;
    uint32_t rank(uint16_t v) const;  // members <= v
    uint16_t select(uint32_t i) const;

    std::span<const uint16_t> values() const { return values_; }
    uint32_t capacity() const { return static_cast<uint32_t>(values_.capacity()); }
    void reserve_exact(uint32_t n) { values_.reserve(n); }
    void trim() { values_.shrink_to_fit(); }
    bool sorted_unique() const;

    bool operator==(const ArrayContainer&) const = default;

private:
    std::vector<uint16_t> values_;
};

class BitmapContainer {
public:
    static constexpr int32_t kUnknownCardinality = -1;

    BitmapContainer() : words_(kBitmapWords, 0), cardinality_(0) {}

    bool contains(uint16_t v) const { return (words_[v >> 6] >> (v & 63)) & 1u; }
    bool set(uint16_t v);
    bool clear(uint16_t v);
    bool toggle(uint16_t v);  // returns true when the bit is now set

    uint64_t word(uint32_t i) const { return words_[i]; }
    std::span<const uint64_t> words() const { return words_; }
    std::span<uint64_t> mutable_words() { return words_; }

    bool cardinality_known() const { return cardinality_ >= 0; }
    uint32_t cardinality() const {
        assert(cardinality_known());
        return static_cast<uint32_t>(cardinality_);
    }
    int32_t raw_cardinality() const { return cardinality_; }
    void set_cardinality(uint32_t c) { cardinality_ = static_cast<int32_t>(c); }
    void mark_cardinality_unknown() { cardinality_ = kUnknownCardinality; }
    uint32_t recompute_cardinality();  // full popcount sweep (instrumented)
    uint32_t ensure_cardinality() {
        return cardinality_known() ? static_cast<uint32_t>(cardinality_) : recompute_cardinality();
    }

    // Ranged updates over [i, j), 0 <= i < j <= 65536. A degenerate i == j is
    // rejected so caller bugs surface instead of silently doing nothing.
    // All three leave the cardinality counter unknown; callers that know the
    // new count set it back explicitly.
    void set_range(uint32_t i, uint32_t j);
    void clear_range(uint32_t i, uint32_t j);
    void flip_range(uint32_t i, uint32_t j);
    uint32_t count_range(uint32_t i, uint32_t j) const;  // ones in [i, j)
    bool any_in_range(uint32_t i, uint32_t j) const;

    uint32_t run_count() const;
    // Exact count, or nullopt as soon as a 128-word block pushes it past the
    // threshold (used by run_optimize with threshold 2047).
    std::optional<uint32_t> run_count_bounded(uint32_t threshold) const;
    // Drops the cross-word term: never exceeds the exact count and undercounts
    // by at most 1023.
    uint32_t run_count_lower_bound() const;

    uint32_t rank(uint16_t v) const;
    uint16_t select(uint32_t i) const;

    bool operator==(const BitmapContainer& o) const { return words_ == o.words_; }

private:
    std::vector<uint64_t> words_;
    int32_t cardinality_;
};

struct Run {
    uint16_t start;
    uint16_t length_minus_one;  // run covers [start, start + length_minus_one]

    uint32_t last() const { return static_cast<uint32_t>(start) + length_minus_one; }
    uint32_t length() const { return static_cast<uint32_t>(length_minus_one) + 1; }
    bool operator==(const Run&) const = default;
};

class RunContainer {
public:
    RunContainer() = default;
    explicit RunContainer(std::vector<Run> runs) : runs_(std::move(runs)) { assert(canonical()); }

    bool contains(uint16_t v) const;
    void add(uint16_t v);
    bool remove(uint16_t v);

    uint32_t run_count() const { return static_cast<uint32_t>(runs_.size()); }
    uint32_t cardinality() const;  // sum of run lengths, O(r)
    bool full() const {
        return runs_.size() == 1 && runs_[0].start == 0 && runs_[0].length_minus_one == 0xFFFF;
    }

    uint32_t rank(uint16_t v) const;
    uint16_t select(uint32_t i) const;

    std::span<const Run> runs() const { return runs_; }
    std::vector<Run>& mutable_runs() { return runs_; }

    void append(uint32_t start, uint32_t last) {
        assert(start <= last && last < kChunkSize);
        assert(runs_.empty() || runs_.back().last() + 1 < start);
        runs_.push_back(Run{static_cast<uint16_t>(start), static_cast<uint16_t>(last - start)});
    }
    // Coalesces with the tail run when the new one overlaps or touches it.
    void append_or_extend(uint32_t start, uint32_t last);

    void reserve(uint32_t r) { runs_.reserve(r); }
    uint32_t capacity() const { return static_cast<uint32_t>(runs_.capacity()); }
    void trim() { runs_.shrink_to_fit(); }
    bool canonical() const;  // sorted, non-overlapping, non-adjacent

    bool operator==(const RunContainer&) const = default;

private:
    std::vector<Run> runs_;
};

using Container = std::variant<ArrayContainer, BitmapContainer, RunContainer>;

static_assert(std::is_same_v<std::variant_alternative_t<0, Container>, ArrayContainer>);
static_assert(std::is_same_v<std::variant_alternative_t<1, Container>, BitmapContainer>);
static_assert(std::is_same_v<std::variant_alternative_t<2, Container>, RunContainer>);

inline ContainerType type_of(const Container& c) {
    return static_cast<ContainerType>(c.index());
}

bool container_contains(const Container& c, uint16_t v);
void container_add(Container& c, uint16_t v);     // promotes a full array to a bitmap
bool container_remove(Container& c, uint16_t v);  // true when the container became empty
uint32_t container_cardinality(const Container& c);
bool container_empty(const Container& c);
uint32_t container_run_count(const Container& c);
uint64_t container_size_in_bytes(const Container& c);
uint32_t container_rank(const Container& c, uint16_t v);
uint16_t container_select(const Container& c, uint32_t i);
void container_trim(Container& c);

BitmapContainer array_to_bitmap(const ArrayContainer& a);
ArrayContainer bitmap_to_array(const BitmapContainer& b);
RunContainer array_to_runs(const ArrayContainer& a);
ArrayContainer runs_to_array(const RunContainer& r);
BitmapContainer runs_to_bitmap(const RunContainer& r);
// Run extraction by bit smearing: find the lowest set bit, fill the run with
// OR(t, t-1), then strip it with AND(t, t+1); all-ones words are skipped.
RunContainer bitmap_to_runs(const BitmapContainer& b);

// Throws std::invalid_argument when the target type cannot hold the content
// (array targets are limited to 4096 values).
Container convert(const Container& c, ContainerType target);

// Final form for a freshly built run set: best of run/array/bitmap.
Container normalize_run(RunContainer&& rc);

// Membership complement over [lo, hi); may change type per the conversion
// rules and may come back empty.
Container container_flip_range(Container&& c, uint32_t lo, uint32_t hi);

// Structural invariants only (sorted arrays, canonical runs, consistent
// cardinality); minimality of run containers is checked where the conversion
// rules demand it, not here.
bool container_structurally_valid(const Container& c, std::string* why = nullptr);

}  // namespace roaring
