#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <cstring>
#include <span>

namespace roaring {

// The on-disk format is little-endian regardless of host; these helpers keep
// every byte access alignment-safe (payload offsets are frequently odd).
inline uint16_t load_u16le(const uint8_t* p) {
    uint16_t v;
    std::memcpy(&v, p, sizeof v);
    if constexpr (std::endian::native == std::endian::big) v = __builtin_bswap16(v);
    return v;
}

inline uint32_t load_u32le(const uint8_t* p) {
    uint32_t v;
    std::memcpy(&v, p, sizeof v);
    if constexpr (std::endian::native == std::endian::big) v = __builtin_bswap32(v);
    return v;
}

inline uint64_t load_u64le(const uint8_t* p) {
    uint64_t v;
    std::memcpy(&v, p, sizeof v);
    if constexpr (std::endian::native == std::endian::big) v = __builtin_bswap64(v);
    return v;
}

inline void store_u16le(uint8_t* p, uint16_t v) {
    if constexpr (std::endian::native == std::endian::big) v = __builtin_bswap16(v);
    std::memcpy(p, &v, sizeof v);
}

inline void store_u32le(uint8_t* p, uint32_t v) {
    if constexpr (std::endian::native == std::endian::big) v = __builtin_bswap32(v);
    std::memcpy(p, &v, sizeof v);
}

inline void store_u64le(uint8_t* p, uint64_t v) {
    if constexpr (std::endian::native == std::endian::big) v = __builtin_bswap64(v);
    std::memcpy(p, &v, sizeof v);
}

// First index >= from whose element is >= target in a sorted span.
// Exponential probing followed by a binary search over the bracket keeps
// skewed intersections cheap (the "galloping" walk).
template <class T>
size_t gallop_lower_bound(std::span<const T> a, size_t from, T target) {
    const size_t n = a.size();
    if (from >= n || a[from] >= target) return from;
    size_t lo = from;  // a[lo] < target from here on
    size_t step = 1;
    while (from + step < n && a[from + step] < target) {
        lo = from + step;
        step <<= 1;
    }
    const size_t hi = std::min(n, from + step + 1);
    return static_cast<size_t>(
        std::lower_bound(a.data() + lo, a.data() + hi, target) - a.data());
}

}  // namespace roaring
