#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "roaring/container.hpp"

namespace roaring {

// Compressed set of 32-bit values: sorted 16-bit chunk keys with one
// container per non-empty chunk. Mutations keep containers in their
// rule-driven representation; run_optimize() re-evaluates run encodings.
class RoaringBitmap {
public:
    RoaringBitmap() = default;

    // Bulk-builds from strictly increasing values (asserted in debug builds);
    // chunks over 4096 values land in bitmaps, smaller ones in arrays.
    static RoaringBitmap from_sorted(std::span<const uint32_t> sorted_values);

    // Adopts prebuilt containers; keys must be strictly increasing and each
    // container non-empty (asserted in debug builds).
    static RoaringBitmap from_parts(std::vector<uint16_t> keys, std::vector<Container> containers);

    bool contains(uint32_t v) const;
    bool add(uint32_t v);     // true when v was new
    bool remove(uint32_t v);  // true when v was present

    // Interval edits over [lo, hi); lo >= hi is a no-op. hi is 64-bit so the
    // full universe [0, 2^32) is expressible.
    void add_range(uint64_t lo, uint64_t hi);
    void remove_range(uint64_t lo, uint64_t hi);
    void flip_range(uint64_t lo, uint64_t hi);
    RoaringBitmap flipped(uint64_t lo, uint64_t hi) const;

    uint64_t cardinality() const;
    bool empty() const { return keys_.empty(); }
    std::optional<uint32_t> min_value() const;
    std::optional<uint32_t> max_value() const;

    uint64_t rank(uint32_t v) const;   // values <= v
    uint32_t select(uint64_t n) const;  // n-th smallest, 0-based; throws std::out_of_range

    bool intersects(const RoaringBitmap& other) const;

    // Re-evaluates each container's encoding (arrays and bitmaps to runs
    // where the size model favors them, runs back out where it does not).
    // Returns true when any container changed. Idempotent.
    bool run_optimize();
    void trim();  // drop slack capacity everywhere

    // Eager in-place union. The lazy form skips cardinality bookkeeping and
    // run re-normalization; finish with repair() before reading counts,
    // serializing, or comparing.
    void or_inplace(const RoaringBitmap& other);
    void lazy_or_inplace(const RoaringBitmap& other);
    void repair();
    bool lazy() const { return lazy_; }

    bool operator==(const RoaringBitmap& other) const;  // set equality

    std::vector<uint32_t> to_vector() const;

    // Container-level view for serialization, statistics and aggregation.
    size_t container_count() const { return keys_.size(); }
    uint16_t key_at(size_t i) const { return keys_[i]; }
    const Container& container_at(size_t i) const { return containers_[i]; }

    // Value iteration in increasing order.
    class Cursor {
    public:
        Cursor() = default;
        bool done() const { return bm_ == nullptr; }
        uint32_t value() const { return cur_; }
        void advance();

    private:
        friend class RoaringBitmap;
        explicit Cursor(const RoaringBitmap* bm);
        void enter_container();

        const RoaringBitmap* bm_ = nullptr;
        size_t ci_ = 0;      // container index
        uint32_t idx_ = 0;   // array value index / run index
        uint32_t off_ = 0;   // offset within the current run
        uint32_t wi_ = 0;    // bitmap word index
        uint64_t bits_ = 0;  // unconsumed bits of the current bitmap word
        uint32_t cur_ = 0;
    };
    Cursor cursor() const { return Cursor(empty() ? nullptr : this); }

    class const_iterator {
    public:
        using value_type = uint32_t;
        using difference_type = ptrdiff_t;
        using iterator_category = std::forward_iterator_tag;
        using pointer = const uint32_t*;
        using reference = uint32_t;

        const_iterator() = default;
        explicit const_iterator(Cursor c) : c_(c) {}
        uint32_t operator*() const { return c_.value(); }
        const_iterator& operator++() {
            c_.advance();
            return *this;
        }
        const_iterator operator++(int) {
            const_iterator tmp = *this;
            c_.advance();
            return tmp;
        }
        bool operator==(const const_iterator& o) const {
            if (c_.done() || o.c_.done()) return c_.done() == o.c_.done();
            return c_.value() == o.c_.value();
        }

    private:
        Cursor c_;
    };
    const_iterator begin() const { return const_iterator(cursor()); }
    const_iterator end() const { return const_iterator(); }

private:
    friend RoaringBitmap bitmap_binary_op(const RoaringBitmap&, const RoaringBitmap&, int);

    size_t key_index(uint16_t key) const;  // lower_bound position in keys_
    void insert_at(size_t pos, uint16_t key, Container&& c);
    void erase_at(size_t pos);
    // Applies an interval edit chunk by chunk; op sees (container index or
    // npos, key, local [i, j)).
    template <class ChunkFn>
    void for_chunks(uint64_t lo, uint64_t hi, ChunkFn&& fn);

    std::vector<uint16_t> keys_;
    std::vector<Container> containers_;
    bool lazy_ = false;
};

RoaringBitmap operator&(const RoaringBitmap& a, const RoaringBitmap& b);
RoaringBitmap operator|(const RoaringBitmap& a, const RoaringBitmap& b);
RoaringBitmap operator^(const RoaringBitmap& a, const RoaringBitmap& b);
RoaringBitmap operator-(const RoaringBitmap& a, const RoaringBitmap& b);

// Structural invariants: strictly increasing keys, no empty containers,
// per-container validity, and (unless the set is in lazy state) known bitmap
// cardinalities. Reports the first violation through `why` when given.
bool validate_structure(const RoaringBitmap& bm, std::string* why = nullptr);

}  // namespace roaring
