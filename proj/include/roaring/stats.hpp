#pragma once

#include <span>

#include "roaring/serialize.hpp"

namespace roaring {

struct TypeStats {
    uint64_t containers = 0;
    uint64_t cardinality = 0;
    uint64_t payload_bytes = 0;
};

// Per-type census over a collection of bitmaps: how many containers of each
// kind, how many values they hold, and what their payloads cost on disk.
struct ContainerStats {
    TypeStats array;
    TypeStats bitmap;
    TypeStats run;

    const TypeStats& of(ContainerType t) const;
    TypeStats total() const;

    // Percentage shares (0..100); zero totals give zero shares.
    double container_share(ContainerType t) const;
    double cardinality_share(ContainerType t) const;
    double bytes_share(ContainerType t) const;
};

ContainerStats container_stats(std::span<const BitmapView> bitmaps);

// The compression metric: 8 x total serialized bytes / total cardinality.
// Throws std::domain_error when the collection holds no values.
double bits_per_int(std::span<const BitmapView> bitmaps);

}  // namespace roaring
