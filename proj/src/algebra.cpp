#include "roaring/algebra.hpp"

#include <algorithm>
#include <bit>

#include "roaring/instrument.hpp"
#include "roaring/util.hpp"

namespace roaring {

namespace {

inline Container shrink_if_small(BitmapContainer&& b) {
    if (b.ensure_cardinality() <= kMaxArrayCardinality) return bitmap_to_array(b);
    return std::move(b);
}

// --- intersection -----------------------------------------------------------

Container intersect(const ArrayContainer& a, const ArrayContainer& b) {
    const uint64_t c1 = a.cardinality(), c2 = b.cardinality();
    ArrayContainer out;
    out.reserve_exact(static_cast<uint32_t>(std::min(c1, c2)));
    // within a factor of 64 the linear merge wins; beyond it, gallop
    if (c1 < 64 * c2 && c2 < 64 * c1) {
        const auto va = a.values(), vb = b.values();
        size_t i = 0, j = 0;
        while (i < va.size() && j < vb.size()) {
            if (va[i] < vb[j]) ++i;
            else if (vb[j] < va[i]) ++j;
            else {
                out.append(va[i]);
                ++i;
                ++j;
            }
        }
    } else {
        const auto sv = (c1 <= c2 ? a : b).values();
        const auto lv = (c1 <= c2 ? b : a).values();
        size_t pos = 0;
        for (uint16_t v : sv) {
            pos = gallop_lower_bound(lv, pos, v);
            if (pos == lv.size()) break;
            if (lv[pos] == v) {
                out.append(v);
                ++pos;
            }
        }
    }
    return out;
}

Container intersect(const ArrayContainer& a, const BitmapContainer& b) {
    ArrayContainer out;
    out.reserve_exact(a.cardinality());
    for (uint16_t v : a.values())
        if (b.contains(v)) out.append(v);
    return out;
}

Container intersect(const BitmapContainer& a, const ArrayContainer& b) { return intersect(b, a); }

Container intersect(const BitmapContainer& a, const BitmapContainer& b) {
    ++instrument::popcount_passes;
    uint32_t card = 0;
    for (uint32_t i = 0; i < kBitmapWords; ++i)
        card += static_cast<uint32_t>(std::popcount(a.word(i) & b.word(i)));
    if (card > kMaxArrayCardinality) {  // second pass materializes the words
        BitmapContainer out;
        auto w = out.mutable_words();
        for (uint32_t i = 0; i < kBitmapWords; ++i) w[i] = a.word(i) & b.word(i);
        out.set_cardinality(card);
        return out;
    }
    ArrayContainer out;
    out.reserve_exact(card);
    for (uint32_t i = 0; i < kBitmapWords; ++i) {
        uint64_t w = a.word(i) & b.word(i);
        while (w) {
            out.append(static_cast<uint16_t>(i * 64 + static_cast<uint32_t>(std::countr_zero(w))));
            w &= w - 1;
        }
    }
    return out;
}

Container intersect(const RunContainer& a, const ArrayContainer& b) {
    ArrayContainer out;
    out.reserve_exact(b.cardinality());
    const auto runs = a.runs();
    size_t ri = 0;
    for (uint16_t v : b.values()) {
        while (ri < runs.size() && runs[ri].last() < v) ++ri;
        if (ri == runs.size()) break;
        if (v >= runs[ri].start) out.append(v);
    }
    return out;
}

Container intersect(const ArrayContainer& a, const RunContainer& b) { return intersect(b, a); }

Container intersect(const RunContainer& a, const BitmapContainer& b) {
    const uint32_t rcard = a.cardinality();
    if (rcard <= kMaxArrayCardinality) {  // probe the few run members directly
        ArrayContainer out;
        out.reserve_exact(rcard);
        for (const Run& r : a.runs())
            for (uint32_t v = r.start; v <= r.last(); ++v)
                if (b.contains(static_cast<uint16_t>(v))) out.append(static_cast<uint16_t>(v));
        return out;
    }
    BitmapContainer out = b;  // clone, then zero everything the runs miss
    uint32_t next = 0;
    for (const Run& r : a.runs()) {
        if (next < r.start) out.clear_range(next, r.start);
        next = r.last() + 1;
    }
    if (next < kChunkSize) out.clear_range(next, kChunkSize);
    out.recompute_cardinality();
    return shrink_if_small(std::move(out));
}

Container intersect(const BitmapContainer& a, const RunContainer& b) { return intersect(b, a); }

Container intersect(const RunContainer& a, const RunContainer& b) {
    RunContainer out;
    out.reserve(a.run_count() + b.run_count());
    const auto ra = a.runs(), rb = b.runs();
    size_t i = 0, j = 0;
    while (i < ra.size() && j < rb.size()) {
        const uint32_t s1 = ra[i].start, e1 = ra[i].last();
        const uint32_t s2 = rb[j].start, e2 = rb[j].last();
        if (e1 < s2) ++i;
        else if (e2 < s1) ++j;
        else {
            out.append(std::max(s1, s2), std::min(e1, e2));
            if (e1 <= e2) ++i;
            if (e2 <= e1) ++j;
        }
    }
    return normalize_run(std::move(out));
}

// --- union ------------------------------------------------------------------

ArrayContainer array_merge_union(const ArrayContainer& a, const ArrayContainer& b) {
    ArrayContainer out;
    out.reserve_exact(a.cardinality() + b.cardinality());
    const auto va = a.values(), vb = b.values();
    size_t i = 0, j = 0;
    while (i < va.size() && j < vb.size()) {
        if (va[i] < vb[j]) out.append(va[i++]);
        else if (vb[j] < va[i]) out.append(vb[j++]);
        else {
            out.append(va[i]);
            ++i;
            ++j;
        }
    }
    while (i < va.size()) out.append(va[i++]);
    while (j < vb.size()) out.append(vb[j++]);
    return out;
}

Container unite(const ArrayContainer& a, const ArrayContainer& b, bool lazy) {
    if (a.cardinality() + b.cardinality() <= kMaxArrayCardinality)
        return array_merge_union(a, b);
    // predicted too big for an array: go through a bitmap. The count stays
    // deferred while merging; eager mode settles it with one counted sweep.
    BitmapContainer out = array_to_bitmap(a);
    out.mark_cardinality_unknown();
    for (uint16_t v : b.values()) out.set(v);
    if (lazy) return out;
    return shrink_if_small(std::move(out));  // prediction may overshoot
}

Container unite(const ArrayContainer& a, const BitmapContainer& b, bool lazy) {
    BitmapContainer out = b;
    out.mark_cardinality_unknown();
    for (uint16_t v : a.values()) out.set(v);
    if (!lazy) out.ensure_cardinality();  // one counted sweep per eager union
    return out;  // cardinality >= bitmap input: stays a bitmap
}

Container unite(const BitmapContainer& a, const ArrayContainer& b, bool lazy) { return unite(b, a, lazy); }

Container unite(const BitmapContainer& a, const BitmapContainer& b, bool lazy) {
    BitmapContainer out;
    auto w = out.mutable_words();
    if (lazy) {
        for (uint32_t i = 0; i < kBitmapWords; ++i) w[i] = a.word(i) | b.word(i);
        out.mark_cardinality_unknown();
        return out;
    }
    ++instrument::popcount_passes;
    uint32_t card = 0;
    for (uint32_t i = 0; i < kBitmapWords; ++i) {
        w[i] = a.word(i) | b.word(i);
        card += static_cast<uint32_t>(std::popcount(w[i]));
    }
    out.set_cardinality(card);
    return out;
}

RunContainer run_merge_union(const RunContainer& a, const RunContainer& b) {
    RunContainer out;
    out.reserve(a.run_count() + b.run_count());
    const auto ra = a.runs(), rb = b.runs();
    size_t i = 0, j = 0;
    while (i < ra.size() && j < rb.size()) {
        const Run r = ra[i].start <= rb[j].start ? ra[i++] : rb[j++];
        out.append_or_extend(r.start, r.last());
    }
    while (i < ra.size()) {
        out.append_or_extend(ra[i].start, ra[i].last());
        ++i;
    }
    while (j < rb.size()) {
        out.append_or_extend(rb[j].start, rb[j].last());
        ++j;
    }
    return out;
}

Container unite(const RunContainer& a, const RunContainer& b, bool lazy) {
    if (a.full()) return a;  // union with the whole chunk is the whole chunk
    if (b.full()) return b;
    RunContainer merged = run_merge_union(a, b);
    if (merged.run_count() > kMaxRunCount) {  // too many runs: bitmap, never array
        BitmapContainer out = runs_to_bitmap(merged);
        if (lazy) out.mark_cardinality_unknown();
        else out.recompute_cardinality();  // eager settles with one counted sweep
        return out;
    }
    return merged;
}

Container unite(const RunContainer& a, const ArrayContainer& b, bool lazy) {
    if (a.full()) return a;
    RunContainer merged;
    merged.reserve(a.run_count() + b.cardinality());
    const auto runs = a.runs();
    const auto vals = b.values();
    size_t i = 0, j = 0;
    while (i < runs.size() && j < vals.size()) {
        if (runs[i].start <= vals[j]) {
            merged.append_or_extend(runs[i].start, runs[i].last());
            ++i;
        } else {
            merged.append_or_extend(vals[j], vals[j]);  // array value = unit run
            ++j;
        }
    }
    while (i < runs.size()) {
        merged.append_or_extend(runs[i].start, runs[i].last());
        ++i;
    }
    while (j < vals.size()) {
        merged.append_or_extend(vals[j], vals[j]);
        ++j;
    }
    if (merged.run_count() > kMaxRunCount) {  // too many runs: bitmap, never array
        BitmapContainer out = runs_to_bitmap(merged);
        if (lazy) out.mark_cardinality_unknown();
        else out.recompute_cardinality();  // eager settles with one counted sweep
        return out;
    }
    if (lazy) return merged;  // keep the run shape; never pay for a cardinality here
    return normalize_run(std::move(merged));  // needs the cardinality
}

Container unite(const ArrayContainer& a, const RunContainer& b, bool lazy) { return unite(b, a, lazy); }

Container unite(const RunContainer& a, const BitmapContainer& b, bool lazy) {
    if (a.full()) return a;
    BitmapContainer out = b;
    for (const Run& r : a.runs()) out.set_range(r.start, r.last() + 1);
    if (!lazy) out.recompute_cardinality();  // superset of b: stays a bitmap
    return out;
}

Container unite(const BitmapContainer& a, const RunContainer& b, bool lazy) { return unite(b, a, lazy); }

// --- boundary-event walk over two run sets ----------------------------------

// Sweeps the toggle points of both run sets and keeps the stretches where
// keep(in_a, in_b) holds. Exact for any pointwise boolean combination.
template <class Keep>
RunContainer run_boolean_walk(std::span<const Run> ra, std::span<const Run> rb, Keep keep) {
    RunContainer out;
    size_t i = 0, j = 0;
    bool ina = false, inb = false, state = false;
    uint32_t state_start = 0;
    constexpr uint32_t kDone = UINT32_MAX;
    auto next_a = [&] { return i < ra.size() ? (ina ? ra[i].last() + 1 : ra[i].start) : kDone; };
    auto next_b = [&] { return j < rb.size() ? (inb ? rb[j].last() + 1 : rb[j].start) : kDone; };
    while (true) {
        const uint32_t e = std::min(next_a(), next_b());
        if (e == kDone) break;
        if (next_a() == e) {
            if (ina) ++i;
            ina = !ina;
        }
        if (next_b() == e) {
            if (inb) ++j;
            inb = !inb;
        }
        const bool ns = keep(ina, inb);
        if (ns != state) {
            if (state) out.append(state_start, e - 1);
            else state_start = e;
            state = ns;
        }
    }
    assert(!state);
    return out;
}

// --- symmetric difference ----------------------------------------------------

Container exclusive(const ArrayContainer& a, const ArrayContainer& b) {
    if (a.cardinality() + b.cardinality() <= kMaxArrayCardinality) {
        ArrayContainer out;
        out.reserve_exact(a.cardinality() + b.cardinality());
        const auto va = a.values(), vb = b.values();
        size_t i = 0, j = 0;
        while (i < va.size() && j < vb.size()) {
            if (va[i] < vb[j]) out.append(va[i++]);
            else if (vb[j] < va[i]) out.append(vb[j++]);
            else {
                ++i;
                ++j;
            }
        }
        while (i < va.size()) out.append(va[i++]);
        while (j < vb.size()) out.append(vb[j++]);
        return out;
    }
    BitmapContainer out = array_to_bitmap(a);
    for (uint16_t v : b.values()) out.toggle(v);
    return shrink_if_small(std::move(out));
}

Container exclusive(const ArrayContainer& a, const BitmapContainer& b) {
    BitmapContainer out = b;
    for (uint16_t v : a.values()) out.toggle(v);
    return shrink_if_small(std::move(out));
}

Container exclusive(const BitmapContainer& a, const ArrayContainer& b) { return exclusive(b, a); }

Container exclusive(const BitmapContainer& a, const BitmapContainer& b) {
    BitmapContainer out;
    auto w = out.mutable_words();
    ++instrument::popcount_passes;
    uint32_t card = 0;
    for (uint32_t i = 0; i < kBitmapWords; ++i) {
        w[i] = a.word(i) ^ b.word(i);
        card += static_cast<uint32_t>(std::popcount(w[i]));
    }
    out.set_cardinality(card);
    return shrink_if_small(std::move(out));
}

Container exclusive(const RunContainer& a, const RunContainer& b) {
    return normalize_run(run_boolean_walk(a.runs(), b.runs(), [](bool x, bool y) { return x != y; }));
}

Container exclusive(const RunContainer& a, const ArrayContainer& b) {
    const RunContainer brs = array_to_runs(b);
    return normalize_run(run_boolean_walk(a.runs(), brs.runs(), [](bool x, bool y) { return x != y; }));
}

Container exclusive(const ArrayContainer& a, const RunContainer& b) { return exclusive(b, a); }

Container exclusive(const RunContainer& a, const BitmapContainer& b) {
    BitmapContainer out = b;
    for (const Run& r : a.runs()) out.flip_range(r.start, r.last() + 1);
    out.recompute_cardinality();
    return shrink_if_small(std::move(out));
}

Container exclusive(const BitmapContainer& a, const RunContainer& b) { return exclusive(b, a); }

// --- difference (a minus b) ---------------------------------------------------

Container subtract(const ArrayContainer& a, const ArrayContainer& b) {
    ArrayContainer out;
    out.reserve_exact(a.cardinality());
    const auto va = a.values(), vb = b.values();
    size_t i = 0, j = 0;
    while (i < va.size() && j < vb.size()) {
        if (va[i] < vb[j]) out.append(va[i++]);
        else if (vb[j] < va[i]) ++j;
        else {
            ++i;
            ++j;
        }
    }
    while (i < va.size()) out.append(va[i++]);
    return out;
}

Container subtract(const ArrayContainer& a, const BitmapContainer& b) {
    ArrayContainer out;
    out.reserve_exact(a.cardinality());
    for (uint16_t v : a.values())
        if (!b.contains(v)) out.append(v);
    return out;
}

Container subtract(const ArrayContainer& a, const RunContainer& b) {
    ArrayContainer out;
    out.reserve_exact(a.cardinality());
    const auto runs = b.runs();
    size_t ri = 0;
    for (uint16_t v : a.values()) {
        while (ri < runs.size() && runs[ri].last() < v) ++ri;
        if (ri == runs.size() || v < runs[ri].start) out.append(v);
    }
    return out;
}

Container subtract(const BitmapContainer& a, const ArrayContainer& b) {
    BitmapContainer out = a;
    for (uint16_t v : b.values()) out.clear(v);
    return shrink_if_small(std::move(out));
}

Container subtract(const BitmapContainer& a, const BitmapContainer& b) {
    ++instrument::popcount_passes;
    uint32_t card = 0;
    for (uint32_t i = 0; i < kBitmapWords; ++i)
        card += static_cast<uint32_t>(std::popcount(a.word(i) & ~b.word(i)));
    if (card > kMaxArrayCardinality) {
        BitmapContainer out;
        auto w = out.mutable_words();
        for (uint32_t i = 0; i < kBitmapWords; ++i) w[i] = a.word(i) & ~b.word(i);
        out.set_cardinality(card);
        return out;
    }
    ArrayContainer out;
    out.reserve_exact(card);
    for (uint32_t i = 0; i < kBitmapWords; ++i) {
        uint64_t w = a.word(i) & ~b.word(i);
        while (w) {
            out.append(static_cast<uint16_t>(i * 64 + static_cast<uint32_t>(std::countr_zero(w))));
            w &= w - 1;
        }
    }
    return out;
}

Container subtract(const BitmapContainer& a, const RunContainer& b) {
    BitmapContainer out = a;
    for (const Run& r : b.runs()) out.clear_range(r.start, r.last() + 1);
    out.recompute_cardinality();
    return shrink_if_small(std::move(out));
}

Container subtract(const RunContainer& a, const ArrayContainer& b) {
    return normalize_run(run_boolean_walk(a.runs(), array_to_runs(b).runs(),
                                          [](bool x, bool y) { return x && !y; }));
}

Container subtract(const RunContainer& a, const BitmapContainer& b) {
    const uint32_t rcard = a.cardinality();
    if (rcard <= kMaxArrayCardinality) {
        ArrayContainer out;
        out.reserve_exact(rcard);
        for (const Run& r : a.runs())
            for (uint32_t v = r.start; v <= r.last(); ++v)
                if (!b.contains(static_cast<uint16_t>(v))) out.append(static_cast<uint16_t>(v));
        return out;
    }
    BitmapContainer out = runs_to_bitmap(a);
    auto w = out.mutable_words();
    ++instrument::popcount_passes;
    uint32_t card = 0;
    for (uint32_t i = 0; i < kBitmapWords; ++i) {
        w[i] &= ~b.word(i);
        card += static_cast<uint32_t>(std::popcount(w[i]));
    }
    out.set_cardinality(card);
    return shrink_if_small(std::move(out));
}

Container subtract(const RunContainer& a, const RunContainer& b) {
    return normalize_run(run_boolean_walk(a.runs(), b.runs(), [](bool x, bool y) { return x && !y; }));
}

}  // namespace

Container container_and(const Container& a, const Container& b) {
    return std::visit([](const auto& x, const auto& y) { return intersect(x, y); }, a, b);
}

Container container_or(const Container& a, const Container& b) {
    return std::visit([](const auto& x, const auto& y) { return unite(x, y, false); }, a, b);
}

Container container_lazy_or(const Container& a, const Container& b) {
    return std::visit([](const auto& x, const auto& y) { return unite(x, y, true); }, a, b);
}

Container container_xor(const Container& a, const Container& b) {
    return std::visit([](const auto& x, const auto& y) { return exclusive(x, y); }, a, b);
}

Container container_andnot(const Container& a, const Container& b) {
    return std::visit([](const auto& x, const auto& y) { return subtract(x, y); }, a, b);
}

Container container_repair(Container&& c) {
    if (auto* b = std::get_if<BitmapContainer>(&c)) {
        const uint32_t card = b->ensure_cardinality();
        if (card <= kMaxArrayCardinality) return bitmap_to_array(*b);
        return std::move(c);
    }
    if (auto* r = std::get_if<RunContainer>(&c)) return normalize_run(std::move(*r));
    return std::move(c);  // arrays are always settled
}

void bitmap_or_inplace(BitmapContainer& target, const Container& b, bool lazy) {
    if (const auto* a = std::get_if<ArrayContainer>(&b)) {
        target.mark_cardinality_unknown();
        for (uint16_t v : a->values()) target.set(v);
        if (!lazy) target.ensure_cardinality();  // one counted sweep per eager union
        return;
    }
    if (const auto* bb = std::get_if<BitmapContainer>(&b)) {
        auto w = target.mutable_words();
        if (lazy) {
            for (uint32_t i = 0; i < kBitmapWords; ++i) w[i] |= bb->word(i);
            target.mark_cardinality_unknown();
            return;
        }
        ++instrument::popcount_passes;
        uint32_t card = 0;
        for (uint32_t i = 0; i < kBitmapWords; ++i) {
            w[i] |= bb->word(i);
            card += static_cast<uint32_t>(std::popcount(w[i]));
        }
        target.set_cardinality(card);
        return;
    }
    const auto& r = std::get<RunContainer>(b);
    for (const Run& run : r.runs()) target.set_range(run.start, run.last() + 1);
    if (!lazy) target.recompute_cardinality();
}

Container run_or_inplace(RunContainer&& target, const Container& b, bool lazy) {
    assert(std::holds_alternative<RunContainer>(b) || std::holds_alternative<ArrayContainer>(b));
    if (target.full()) return std::move(target);
    const auto* brun = std::get_if<RunContainer>(&b);
    if (brun && brun->full()) return *brun;

    // Relocate the target's runs to the tail of its capacity region, then
    // write the merged sequence from the head. With capacity >= r1 + r2 the
    // write cursor can never overtake the read cursor.
    auto& vec = target.mutable_runs();
    const size_t r1 = vec.size();
    const size_t extra = brun ? brun->run_count() : std::get<ArrayContainer>(b).cardinality();
    if (vec.capacity() < r1 + extra) vec.reserve(r1 + extra);
    const size_t cap = vec.capacity();
    vec.resize(cap);
    std::copy_backward(vec.begin(), vec.begin() + static_cast<ptrdiff_t>(r1), vec.end());

    size_t read = cap - r1, write = 0;
    auto emit = [&](uint32_t s, uint32_t last) {
        if (write > 0 && s <= vec[write - 1].last() + 1) {
            if (last > vec[write - 1].last())
                vec[write - 1].length_minus_one = static_cast<uint16_t>(last - vec[write - 1].start);
            return;
        }
        vec[write++] = Run{static_cast<uint16_t>(s), static_cast<uint16_t>(last - s)};
    };
    if (brun) {
        const auto rb = brun->runs();
        size_t j = 0;
        while (read < cap && j < rb.size()) {
            if (vec[read].start <= rb[j].start) {
                const Run r = vec[read++];
                emit(r.start, r.last());
            } else {
                emit(rb[j].start, rb[j].last());
                ++j;
            }
        }
        while (read < cap) {
            const Run r = vec[read++];
            emit(r.start, r.last());
        }
        for (; j < rb.size(); ++j) emit(rb[j].start, rb[j].last());
    } else {
        const auto vals = std::get<ArrayContainer>(b).values();
        size_t j = 0;
        while (read < cap && j < vals.size()) {
            if (vec[read].start <= vals[j]) {
                const Run r = vec[read++];
                emit(r.start, r.last());
            } else {
                emit(vals[j], vals[j]);
                ++j;
            }
        }
        while (read < cap) {
            const Run r = vec[read++];
            emit(r.start, r.last());
        }
        for (; j < vals.size(); ++j) emit(vals[j], vals[j]);
    }
    vec.resize(write);

    if (target.run_count() > kMaxRunCount) {  // too many runs: bitmap, never array
        BitmapContainer out = runs_to_bitmap(target);
        if (lazy) out.mark_cardinality_unknown();
        else out.recompute_cardinality();  // eager settles with one counted sweep
        return out;
    }
    if (lazy || brun) return std::move(target);  // run|run keeps the run shape
    return normalize_run(std::move(target));
}

Container container_or_inplace(Container&& target, const Container& b, bool lazy) {
    if (auto* bm = std::get_if<BitmapContainer>(&target)) {
        bitmap_or_inplace(*bm, b, lazy);
        return std::move(target);
    }
    if (std::holds_alternative<RunContainer>(target) &&
        !std::holds_alternative<BitmapContainer>(b)) {
        return run_or_inplace(std::move(std::get<RunContainer>(target)), b, lazy);
    }
    return lazy ? container_lazy_or(target, b) : container_or(target, b);
}

namespace {

bool meets(const ArrayContainer& a, const ArrayContainer& b) {
    const uint64_t c1 = a.cardinality(), c2 = b.cardinality();
    if (c1 == 0 || c2 == 0) return false;
    if (c1 < 64 * c2 && c2 < 64 * c1) {
        const auto va = a.values(), vb = b.values();
        size_t i = 0, j = 0;
        while (i < va.size() && j < vb.size()) {
            if (va[i] < vb[j]) ++i;
            else if (vb[j] < va[i]) ++j;
            else return true;
        }
        return false;
    }
    const auto sv = (c1 <= c2 ? a : b).values();
    const auto lv = (c1 <= c2 ? b : a).values();
    size_t pos = 0;
    for (uint16_t v : sv) {
        pos = gallop_lower_bound(lv, pos, v);
        if (pos == lv.size()) return false;
        if (lv[pos] == v) return true;
    }
    return false;
}

bool meets(const ArrayContainer& a, const BitmapContainer& b) {
    for (uint16_t v : a.values())
        if (b.contains(v)) return true;
    return false;
}

bool meets(const BitmapContainer& a, const ArrayContainer& b) { return meets(b, a); }

bool meets(const BitmapContainer& a, const BitmapContainer& b) {
    for (uint32_t i = 0; i < kBitmapWords; ++i)
        if (a.word(i) & b.word(i)) return true;
    return false;
}

bool meets(const RunContainer& a, const ArrayContainer& b) {
    const auto runs = a.runs();
    size_t ri = 0;
    for (uint16_t v : b.values()) {
        while (ri < runs.size() && runs[ri].last() < v) ++ri;
        if (ri == runs.size()) return false;
        if (v >= runs[ri].start) return true;
    }
    return false;
}

bool meets(const ArrayContainer& a, const RunContainer& b) { return meets(b, a); }

bool meets(const RunContainer& a, const BitmapContainer& b) {
    for (const Run& r : a.runs())
        if (b.any_in_range(r.start, r.last() + 1)) return true;
    return false;
}

bool meets(const BitmapContainer& a, const RunContainer& b) { return meets(b, a); }

bool meets(const RunContainer& a, const RunContainer& b) {
    const auto ra = a.runs(), rb = b.runs();
    size_t i = 0, j = 0;
    while (i < ra.size() && j < rb.size()) {
        if (ra[i].last() < rb[j].start) ++i;
        else if (rb[j].last() < ra[i].start) ++j;
        else return true;
    }
    return false;
}

}  // namespace

bool container_intersects(const Container& a, const Container& b) {
    return std::visit([](const auto& x, const auto& y) { return meets(x, y); }, a, b);
}

}  // namespace roaring
