#pragma once

#include <cstdint>

namespace roaring::instrument {

// Number of full-container popcount sweeps (1024 words at once). Lazy unions
// are expected to pay at most one per final bitmap container; the eager path
// pays one per bitmap-producing operation. Tests reset and read this.
extern thread_local uint64_t popcount_passes;

inline void reset() { popcount_passes = 0; }

}  // namespace roaring::instrument
