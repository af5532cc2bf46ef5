#pragma once

#include <span>
#include <vector>

#include "roaring/serialize.hpp"

namespace roaring {

enum class AggregationStrategy : uint8_t { Naive, Heap, LazyNaive };

const char* to_string(AggregationStrategy s);

// Left fold with eager unions: every step settles cardinalities right away.
RoaringBitmap union_naive(std::span<const BitmapView> inputs);

// Repeatedly unions the two smallest operands (by serialized size, ties by
// arrival order), so small inputs coalesce before touching the big ones.
RoaringBitmap union_heap(std::span<const BitmapView> inputs);

// Left fold with lazy unions and one final repair: bitmap cardinalities are
// recomputed at most once per container of the result, not once per step.
RoaringBitmap union_lazy(std::span<const BitmapView> inputs);

RoaringBitmap union_all(std::span<const BitmapView> inputs, AggregationStrategy strategy);

// Convenience adapters: views borrow, so the originals must outlive them.
std::vector<BitmapView> views_of(std::span<const RoaringBitmap> bitmaps);
std::vector<BitmapView> views_of(std::span<const FrozenBitmap> frozen);

}  // namespace roaring
