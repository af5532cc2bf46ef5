#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include "roaring/roaring.hpp"

namespace roaring {

// Portable image layout (all integers little-endian):
//   "ROAR" | u32 version=1 | u32 n
//   ceil(n/8) run-flag bytes, bit i (LSB-first) set when container i is a run
//   n descriptors: u16 key, u16 cardinality-1
//   n u32 absolute payload offsets, contiguous in container order
//   payloads: array 2c bytes of u16 values; bitmap 8192 bytes of u64 words;
//             run u16 count then (u16 start, u16 length-1) pairs
// Array and bitmap payloads are told apart by cardinality: > 4096 is always
// a bitmap, anything else an array. An empty set is the 12-byte header.
inline constexpr uint32_t kFormatVersion = 1;
inline constexpr size_t kHeaderBytes = 12;

enum class FormatError : uint8_t {
    BadMagic,
    BadVersion,
    TruncatedInput,
    OffsetOutOfBounds,
    UnsortedKeys,
    CardinalityMismatch,
    IllegalRunOrder,
};

const char* to_string(FormatError e);

class FormatException : public std::runtime_error {
public:
    explicit FormatException(FormatError e)
        : std::runtime_error(std::string("invalid bitmap image: ") + to_string(e)), error_(e) {}
    FormatError error() const { return error_; }

private:
    FormatError error_;
};

uint64_t serialized_size(const RoaringBitmap& bm);

// Writes the image. Throws std::logic_error when the set is in lazy state:
// repair() first.
std::vector<uint8_t> serialize(const RoaringBitmap& bm);

// Full structural validation of an untrusted image. Never throws; returns
// the first problem found, or nullopt for a well-formed image.
std::optional<FormatError> validate(std::span<const uint8_t> image);

// validate() + parse. Throws FormatException on a bad image.
RoaringBitmap deserialize(std::span<const uint8_t> image);

// Read-only view over a serialized image: queries run straight off the bytes
// with no parsing or copying. The caller keeps the bytes alive and unchanged
// for the lifetime of the view.
class FrozenBitmap {
public:
    FrozenBitmap() = default;

    // Validates, then attaches. Throws FormatException on a bad image.
    static FrozenBitmap attach(std::span<const uint8_t> image);
    // Attaches without validation; only for images this process just built
    // or already validated.
    static FrozenBitmap attach_unchecked(std::span<const uint8_t> image);

    std::span<const uint8_t> image() const { return image_; }

    size_t container_count() const { return n_; }
    uint16_t key_at(size_t i) const;
    ContainerType type_at(size_t i) const;
    uint32_t cardinality_at(size_t i) const;  // 1..65536
    std::span<const uint8_t> payload_at(size_t i) const;

    uint64_t cardinality() const;
    bool empty() const { return n_ == 0; }
    bool contains(uint32_t v) const;
    uint64_t rank(uint32_t v) const;    // values <= v
    uint32_t select(uint64_t n) const;  // 0-based; throws std::out_of_range

    // Heap copies: one container, or the whole set.
    Container materialize_at(size_t i) const;
    RoaringBitmap to_bitmap() const;

    class Cursor {
    public:
        Cursor() = default;
        bool done() const { return fz_ == nullptr; }
        uint32_t value() const { return cur_; }
        void advance();

    private:
        friend class FrozenBitmap;
        explicit Cursor(const FrozenBitmap* fz);
        void enter_container();

        const FrozenBitmap* fz_ = nullptr;
        std::span<const uint8_t> payload_;
        ContainerType type_ = ContainerType::Array;
        size_t ci_ = 0;
        uint32_t idx_ = 0;   // array value index / run index
        uint32_t off_ = 0;   // offset within the current run
        uint32_t wi_ = 0;    // bitmap word index
        uint64_t bits_ = 0;  // unconsumed bits of the current bitmap word
        uint32_t cur_ = 0;
    };
    Cursor cursor() const { return Cursor(empty() ? nullptr : this); }

private:
    size_t key_index(uint16_t key) const;

    std::span<const uint8_t> image_;
    size_t n_ = 0;
    const uint8_t* flags_ = nullptr;
    const uint8_t* descriptors_ = nullptr;
    const uint8_t* offsets_ = nullptr;
};

// Uniform handle over a heap bitmap or a frozen image, so aggregation and
// benchmarks take either. Borrows both; no ownership.
class BitmapView {
public:
    BitmapView(const RoaringBitmap& bm) : heap_(&bm) {}
    BitmapView(const FrozenBitmap& fz) : frozen_(&fz) {}

    bool frozen() const { return frozen_ != nullptr; }
    // The underlying heap bitmap, or nullptr for a frozen view.
    const RoaringBitmap* heap() const { return heap_; }
    size_t container_count() const;
    uint16_t key_at(size_t i) const;
    uint64_t cardinality() const;
    uint64_t size_bytes() const;  // serialized size either way
    bool contains(uint32_t v) const;
    std::optional<uint32_t> max_value() const;

    // Container access for merge walks: heap views hand out the stored
    // container, frozen views materialize into `scratch`.
    const Container& container_at(size_t i, Container& scratch) const;

    RoaringBitmap to_bitmap() const;  // heap copy

private:
    const RoaringBitmap* heap_ = nullptr;
    const FrozenBitmap* frozen_ = nullptr;
};

RoaringBitmap view_and(const BitmapView& a, const BitmapView& b);
RoaringBitmap view_or(const BitmapView& a, const BitmapView& b);
RoaringBitmap view_xor(const BitmapView& a, const BitmapView& b);
RoaringBitmap view_andnot(const BitmapView& a, const BitmapView& b);

}  // namespace roaring
