#pragma once

#include "roaring/container.hpp"

namespace roaring {

// Binary set operations over containers of one chunk. Results follow the
// per-pair conversion rules: intersections that fit 4096 values come back as
// arrays, unions of runs stay runs until they would outgrow a bitmap, and so
// on. Empty results are representable (empty array) and dropped by callers.
Container container_and(const Container& a, const Container& b);
Container container_or(const Container& a, const Container& b);
Container container_xor(const Container& a, const Container& b);
Container container_andnot(const Container& a, const Container& b);

// Union that skips every cardinality computation: bitmap results carry an
// unknown counter, and run+array unions keep the run shape instead of
// checking whether an array would be smaller. Repair settles both debts.
Container container_lazy_or(const Container& a, const Container& b);

// Recomputes unknown bitmap cardinalities, then applies the conversion rules
// the lazy path deferred (bitmap -> array when small, run -> best type).
Container container_repair(Container&& c);

// In-place union into a bitmap target. Eager mode maintains the cardinality;
// lazy mode leaves it unknown.
void bitmap_or_inplace(BitmapContainer& target, const Container& b, bool lazy = false);

// In-place union into a run target (b must be a run or array container): the
// existing runs are relocated to the tail of the capacity region and the
// merged sequence is written from the head. May hand back a different type
// per the union conversion rules.
Container run_or_inplace(RunContainer&& target, const Container& b, bool lazy = false);

// Dispatches to the in-place forms where the target representation supports
// them and falls back to the plain union otherwise.
Container container_or_inplace(Container&& target, const Container& b, bool lazy = false);

bool container_intersects(const Container& a, const Container& b);

}  // namespace roaring
