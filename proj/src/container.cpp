#include "roaring/container.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>

#include "roaring/instrument.hpp"
#include "roaring/util.hpp"

namespace roaring {

namespace instrument {
thread_local uint64_t popcount_passes = 0;
}

const char* to_string(ContainerType t) {
    switch (t) {
        case ContainerType::Array: return "array";
        case ContainerType::Bitmap: return "bitmap";
        case ContainerType::Run: return "run";
    }
    return "?";
}

uint32_t grow_capacity(uint32_t current, uint32_t needed) {
    assert(needed <= kMaxArrayCardinality);
    uint32_t cap = current == 0 ? 4 : current;
    while (cap < needed) {
        if (cap < 64) cap *= 2;
        else if (cap < 1067) cap = cap * 3 / 2;
        else cap = cap * 5 / 4;
    }
    // within a sixteenth of the ceiling: take the ceiling right away
    if (cap > 3840) cap = kMaxArrayCardinality;
    return cap;
}

ContainerType choose_best_type(uint32_t cardinality, uint32_t run_count) {
    const uint64_t run_bytes = type_size_in_bytes(ContainerType::Run, cardinality, run_count);
    if (cardinality > kMaxArrayCardinality)
        return run_bytes < kBitmapBytes ? ContainerType::Run : ContainerType::Bitmap;
    const uint64_t array_bytes = type_size_in_bytes(ContainerType::Array, cardinality, run_count);
    return run_bytes < array_bytes ? ContainerType::Run : ContainerType::Array;
}

uint64_t type_size_in_bytes(ContainerType t, uint32_t cardinality, uint32_t run_count) {
    switch (t) {
        case ContainerType::Array: return 2ull * cardinality + 2;
        case ContainerType::Bitmap: return kBitmapBytes;
        case ContainerType::Run: return 2ull + 4ull * run_count;
    }
    return 0;
}

// --- ArrayContainer ---------------------------------------------------------

bool ArrayContainer::contains(uint16_t v) const {
    return std::binary_search(values_.begin(), values_.end(), v);
}

bool ArrayContainer::add(uint16_t v) {
    auto it = std::lower_bound(values_.begin(), values_.end(), v);
    if (it != values_.end() && *it == v) return false;
    assert(values_.size() < kMaxArrayCardinality);
    const size_t idx = static_cast<size_t>(it - values_.begin());
    if (values_.size() == values_.capacity())
        values_.reserve(grow_capacity(capacity(), cardinality() + 1));
    values_.insert(values_.begin() + static_cast<ptrdiff_t>(idx), v);
    return true;
}

bool ArrayContainer::remove(uint16_t v) {
    auto it = std::lower_bound(values_.begin(), values_.end(), v);
    if (it == values_.end() || *it != v) return false;
    values_.erase(it);
    return true;
}

uint32_t ArrayContainer::run_count() const {
    if (values_.empty()) return 0;
    uint32_t r = 1;
    for (size_t i = 1; i < values_.size(); ++i)
        r += values_[i] != static_cast<uint16_t>(values_[i - 1] + 1);
    return r;
}

uint32_t ArrayContainer::rank(uint16_t v) const {
    return static_cast<uint32_t>(
        std::upper_bound(values_.begin(), values_.end(), v) - values_.begin());
}

uint16_t ArrayContainer::select(uint32_t i) const {
    if (i >= values_.size()) throw std::out_of_range("array select index past cardinality");
    return values_[i];
}

bool ArrayContainer::sorted_unique() const {
    for (size_t i = 1; i < values_.size(); ++i)
        if (values_[i] <= values_[i - 1]) return false;
    return true;
}

// --- BitmapContainer --------------------------------------------------------

bool BitmapContainer::set(uint16_t v) {
    uint64_t& w = words_[v >> 6];
    const uint64_t bit = 1ull << (v & 63);
    if (w & bit) return false;
    w |= bit;
    if (cardinality_ >= 0) ++cardinality_;
    return true;
}

bool BitmapContainer::clear(uint16_t v) {
    uint64_t& w = words_[v >> 6];
    const uint64_t bit = 1ull << (v & 63);
    if (!(w & bit)) return false;
    w &= ~bit;
    if (cardinality_ >= 0) --cardinality_;
    return true;
}

bool BitmapContainer::toggle(uint16_t v) {
    uint64_t& w = words_[v >> 6];
    const uint64_t bit = 1ull << (v & 63);
    w ^= bit;
    const bool now_set = (w & bit) != 0;
    if (cardinality_ >= 0) cardinality_ += now_set ? 1 : -1;
    return now_set;
}

uint32_t BitmapContainer::recompute_cardinality() {
    ++instrument::popcount_passes;
    uint32_t c = 0;
    for (uint64_t w : words_) c += static_cast<uint32_t>(std::popcount(w));
    cardinality_ = static_cast<int32_t>(c);
    return c;
}

namespace {

struct RangeMasks {
    uint32_t x, y;    // first and last word index
    uint64_t lo, hi;  // masks for the boundary words
};

inline RangeMasks range_masks(uint32_t i, uint32_t j) {
    if (i >= j || j > kChunkSize)
        throw std::invalid_argument("bitmap range must satisfy i < j <= 65536");
    RangeMasks m;
    m.x = i / 64;
    m.y = (j - 1) / 64;
    m.lo = ~0ull << (i % 64);
    m.hi = ~0ull >> ((64 - (j % 64)) % 64);
    return m;
}

template <class F>
inline void for_range_words(std::span<uint64_t> words, uint32_t i, uint32_t j, F&& apply) {
    const RangeMasks m = range_masks(i, j);
    if (m.x == m.y) {
        apply(words[m.x], m.lo & m.hi);
        return;
    }
    apply(words[m.x], m.lo);
    for (uint32_t k = m.x + 1; k < m.y; ++k) apply(words[k], ~0ull);
    apply(words[m.y], m.hi);
}

}  // namespace

void BitmapContainer::set_range(uint32_t i, uint32_t j) {
    for_range_words(words_, i, j, [](uint64_t& w, uint64_t mask) { w |= mask; });
    cardinality_ = kUnknownCardinality;
}

void BitmapContainer::clear_range(uint32_t i, uint32_t j) {
    for_range_words(words_, i, j, [](uint64_t& w, uint64_t mask) { w &= ~mask; });
    cardinality_ = kUnknownCardinality;
}

void BitmapContainer::flip_range(uint32_t i, uint32_t j) {
    for_range_words(words_, i, j, [](uint64_t& w, uint64_t mask) { w ^= mask; });
    cardinality_ = kUnknownCardinality;
}

uint32_t BitmapContainer::count_range(uint32_t i, uint32_t j) const {
    const RangeMasks m = range_masks(i, j);
    if (m.x == m.y) return static_cast<uint32_t>(std::popcount(words_[m.x] & m.lo & m.hi));
    uint32_t c = static_cast<uint32_t>(std::popcount(words_[m.x] & m.lo));
    for (uint32_t k = m.x + 1; k < m.y; ++k) c += static_cast<uint32_t>(std::popcount(words_[k]));
    return c + static_cast<uint32_t>(std::popcount(words_[m.y] & m.hi));
}

bool BitmapContainer::any_in_range(uint32_t i, uint32_t j) const {
    const RangeMasks m = range_masks(i, j);
    if (m.x == m.y) return (words_[m.x] & m.lo & m.hi) != 0;
    if (words_[m.x] & m.lo) return true;
    for (uint32_t k = m.x + 1; k < m.y; ++k)
        if (words_[k]) return true;
    return (words_[m.y] & m.hi) != 0;
}

uint32_t BitmapContainer::run_count() const {
    uint32_t r = 0;
    for (uint32_t i = 0; i + 1 < kBitmapWords; ++i) {
        const uint64_t w = words_[i];
        r += static_cast<uint32_t>(std::popcount((w << 1) & ~w));
        r += static_cast<uint32_t>((w >> 63) & ~words_[i + 1] & 1u);
    }
    const uint64_t last = words_[kBitmapWords - 1];
    r += static_cast<uint32_t>(std::popcount((last << 1) & ~last));
    r += static_cast<uint32_t>(last >> 63);
    return r;
}

std::optional<uint32_t> BitmapContainer::run_count_bounded(uint32_t threshold) const {
    uint32_t r = 0;
    for (uint32_t block = 0; block < kBitmapWords; block += 128) {
        for (uint32_t i = block; i < block + 128; ++i) {
            const uint64_t w = words_[i];
            r += static_cast<uint32_t>(std::popcount((w << 1) & ~w));
            if (i + 1 < kBitmapWords) r += static_cast<uint32_t>((w >> 63) & ~words_[i + 1] & 1u);
            else r += static_cast<uint32_t>(w >> 63);
        }
        if (r > threshold) return std::nullopt;
    }
    return r;
}

uint32_t BitmapContainer::run_count_lower_bound() const {
    uint32_t r = 0;
    for (uint64_t w : words_) r += static_cast<uint32_t>(std::popcount((w << 1) & ~w));
    r += static_cast<uint32_t>(words_[kBitmapWords - 1] >> 63);
    return r;
}

uint32_t BitmapContainer::rank(uint16_t v) const {
    const uint32_t w = v >> 6;
    uint32_t c = 0;
    for (uint32_t i = 0; i < w; ++i) c += static_cast<uint32_t>(std::popcount(words_[i]));
    const uint64_t mask = ~0ull >> (63 - (v & 63));
    return c + static_cast<uint32_t>(std::popcount(words_[w] & mask));
}

uint16_t BitmapContainer::select(uint32_t i) const {
    for (uint32_t w = 0; w < kBitmapWords; ++w) {
        const uint32_t pc = static_cast<uint32_t>(std::popcount(words_[w]));
        if (i < pc) {
            uint64_t word = words_[w];
            for (uint32_t k = 0; k < i; ++k) word &= word - 1;
            return static_cast<uint16_t>(w * 64 + static_cast<uint32_t>(std::countr_zero(word)));
        }
        i -= pc;
    }
    throw std::out_of_range("bitmap select index past cardinality");
}

// --- RunContainer -----------------------------------------------------------

namespace {

// Index of the last run with start <= v, or -1.
inline ptrdiff_t run_index_for(std::span<const Run> runs, uint16_t v) {
    ptrdiff_t lo = 0, hi = static_cast<ptrdiff_t>(runs.size()) - 1, ans = -1;
    while (lo <= hi) {
        const ptrdiff_t mid = (lo + hi) / 2;
        if (runs[static_cast<size_t>(mid)].start <= v) {
            ans = mid;
            lo = mid + 1;
        } else {
            hi = mid - 1;
        }
    }
    return ans;
}

}  // namespace

bool RunContainer::contains(uint16_t v) const {
    const ptrdiff_t i = run_index_for(runs_, v);
    return i >= 0 && v <= runs_[static_cast<size_t>(i)].last();
}

void RunContainer::add(uint16_t v) {
    const ptrdiff_t pi = run_index_for(runs_, v);
    if (pi >= 0 && v <= runs_[static_cast<size_t>(pi)].last()) return;  // already present
    const size_t next = static_cast<size_t>(pi + 1);  // first run with start > v
    const bool extends_prev = pi >= 0 && runs_[static_cast<size_t>(pi)].last() + 1 == v;
    const bool extends_next = next < runs_.size() && runs_[next].start == v + 1;
    if (extends_prev && extends_next) {  // bridge two runs
        Run& prev = runs_[static_cast<size_t>(pi)];
        prev.length_minus_one = static_cast<uint16_t>(runs_[next].last() - prev.start);
        runs_.erase(runs_.begin() + static_cast<ptrdiff_t>(next));
    } else if (extends_prev) {
        ++runs_[static_cast<size_t>(pi)].length_minus_one;
    } else if (extends_next) {
        Run& n = runs_[next];
        n.length_minus_one = static_cast<uint16_t>(n.last() - v);
        n.start = v;
    } else {
        runs_.insert(runs_.begin() + static_cast<ptrdiff_t>(next), Run{v, 0});
    }
}

bool RunContainer::remove(uint16_t v) {
    const ptrdiff_t pi = run_index_for(runs_, v);
    if (pi < 0) return false;
    Run& r = runs_[static_cast<size_t>(pi)];
    if (v > r.last()) return false;
    if (r.length_minus_one == 0) {
        runs_.erase(runs_.begin() + pi);
    } else if (v == r.start) {
        ++r.start;
        --r.length_minus_one;
    } else if (v == r.last()) {
        --r.length_minus_one;
    } else {  // split
        const Run tail{static_cast<uint16_t>(v + 1), static_cast<uint16_t>(r.last() - v - 1)};
        r.length_minus_one = static_cast<uint16_t>(v - 1 - r.start);
        runs_.insert(runs_.begin() + pi + 1, tail);
    }
    return true;
}

uint32_t RunContainer::cardinality() const {
    uint32_t c = 0;
    for (const Run& r : runs_) c += r.length();
    return c;
}

uint32_t RunContainer::rank(uint16_t v) const {
    uint32_t c = 0;
    for (const Run& r : runs_) {
        if (r.start > v) break;
        c += static_cast<uint32_t>(std::min<uint32_t>(r.last(), v) - r.start) + 1;
    }
    return c;
}

uint16_t RunContainer::select(uint32_t i) const {
    for (const Run& r : runs_) {
        if (i < r.length()) return static_cast<uint16_t>(r.start + i);
        i -= r.length();
    }
    throw std::out_of_range("run select index past cardinality");
}

void RunContainer::append_or_extend(uint32_t start, uint32_t last) {
    assert(start <= last && last < kChunkSize);
    if (!runs_.empty() && start <= runs_.back().last() + 1) {
        Run& tail = runs_.back();
        assert(start >= tail.start);
        if (last > tail.last())
            tail.length_minus_one = static_cast<uint16_t>(last - tail.start);
        return;
    }
    runs_.push_back(Run{static_cast<uint16_t>(start), static_cast<uint16_t>(last - start)});
}

bool RunContainer::canonical() const {
    for (size_t i = 0; i < runs_.size(); ++i) {
        if (runs_[i].last() >= kChunkSize) return false;
        if (i > 0 && runs_[i].start <= runs_[i - 1].last() + 1) return false;
    }
    return true;
}

// --- variant dispatch -------------------------------------------------------

bool container_contains(const Container& c, uint16_t v) {
    return std::visit([v](const auto& x) { return x.contains(v); }, c);
}

void container_add(Container& c, uint16_t v) {
    if (auto* a = std::get_if<ArrayContainer>(&c)) {
        if (a->cardinality() == kMaxArrayCardinality && !a->contains(v)) {
            BitmapContainer b = array_to_bitmap(*a);
            b.set(v);
            c = std::move(b);
        } else {
            a->add(v);
        }
    } else if (auto* b = std::get_if<BitmapContainer>(&c)) {
        b->set(v);
    } else {
        std::get<RunContainer>(c).add(v);
    }
}

bool container_remove(Container& c, uint16_t v) {
    if (auto* a = std::get_if<ArrayContainer>(&c)) {
        a->remove(v);
        return a->cardinality() == 0;
    }
    if (auto* b = std::get_if<BitmapContainer>(&c)) {
        if (b->clear(v) && b->ensure_cardinality() == kMaxArrayCardinality)
            c = bitmap_to_array(*b);  // bitmap no longer pays off
        return false;                 // cardinality still >= 4096
    }
    auto& r = std::get<RunContainer>(c);
    r.remove(v);
    return r.run_count() == 0;
}

uint32_t container_cardinality(const Container& c) {
    if (auto* a = std::get_if<ArrayContainer>(&c)) return a->cardinality();
    if (auto* b = std::get_if<BitmapContainer>(&c)) return b->cardinality();
    return std::get<RunContainer>(c).cardinality();
}

bool container_empty(const Container& c) {
    if (auto* a = std::get_if<ArrayContainer>(&c)) return a->cardinality() == 0;
    if (auto* b = std::get_if<BitmapContainer>(&c)) {
        // Works in lazy state too: don't touch the cardinality counter.
        if (b->cardinality_known()) return b->cardinality() == 0;
        for (uint64_t w : b->words())
            if (w != 0) return false;
        return true;
    }
    return std::get<RunContainer>(c).run_count() == 0;
}

uint32_t container_run_count(const Container& c) {
    if (auto* a = std::get_if<ArrayContainer>(&c)) return a->run_count();
    if (auto* b = std::get_if<BitmapContainer>(&c)) return b->run_count();
    return std::get<RunContainer>(c).run_count();
}

uint64_t container_size_in_bytes(const Container& c) {
    const ContainerType t = type_of(c);
    return type_size_in_bytes(t, t == ContainerType::Run ? 0 : container_cardinality(c),
                              t == ContainerType::Run ? container_run_count(c) : 0);
}

uint32_t container_rank(const Container& c, uint16_t v) {
    return std::visit([v](const auto& x) { return x.rank(v); }, c);
}

uint16_t container_select(const Container& c, uint32_t i) {
    return std::visit([i](const auto& x) { return x.select(i); }, c);
}

void container_trim(Container& c) {
    if (auto* a = std::get_if<ArrayContainer>(&c)) a->trim();
    else if (auto* r = std::get_if<RunContainer>(&c)) r->trim();
    // bitmap words are a fixed 1024-word block
}

// --- conversions ------------------------------------------------------------

BitmapContainer array_to_bitmap(const ArrayContainer& a) {
    BitmapContainer b;
    for (uint16_t v : a.values()) b.set(v);
    return b;
}

ArrayContainer bitmap_to_array(const BitmapContainer& b) {
    const uint32_t card = b.cardinality_known()
                              ? b.cardinality()
                              : [&] {
                                    uint32_t c = 0;
                                    for (uint64_t w : b.words()) c += static_cast<uint32_t>(std::popcount(w));
                                    return c;
                                }();
    if (card > kMaxArrayCardinality)
        throw std::invalid_argument("array container cannot hold more than 4096 values");
    ArrayContainer out;
    out.reserve_exact(card);
    for (uint32_t i = 0; i < kBitmapWords; ++i) {
        uint64_t w = b.word(i);
        while (w) {
            out.append(static_cast<uint16_t>(i * 64 + static_cast<uint32_t>(std::countr_zero(w))));
            w &= w - 1;
        }
    }
    return out;
}

RunContainer array_to_runs(const ArrayContainer& a) {
    RunContainer out;
    out.reserve(a.run_count());
    const auto vals = a.values();
    size_t i = 0;
    while (i < vals.size()) {
        const uint32_t start = vals[i];
        uint32_t last = start;
        while (i + 1 < vals.size() && vals[i + 1] == last + 1) {
            ++last;
            ++i;
        }
        out.append(start, last);
        ++i;
    }
    return out;
}

ArrayContainer runs_to_array(const RunContainer& r) {
    const uint32_t card = r.cardinality();
    if (card > kMaxArrayCardinality)
        throw std::invalid_argument("array container cannot hold more than 4096 values");
    ArrayContainer out;
    out.reserve_exact(card);
    for (const Run& run : r.runs())
        for (uint32_t v = run.start; v <= run.last(); ++v)
            out.append(static_cast<uint16_t>(v));
    return out;
}

BitmapContainer runs_to_bitmap(const RunContainer& r) {
    BitmapContainer out;
    uint32_t card = 0;
    for (const Run& run : r.runs()) {
        out.set_range(run.start, run.last() + 1);
        card += run.length();
    }
    out.set_cardinality(card);
    return out;
}

RunContainer bitmap_to_runs(const BitmapContainer& b) {
    RunContainer out;
    uint32_t i = 0;
    uint64_t t = b.word(0);
    while (true) {
        while (t == 0) {
            if (++i == kBitmapWords) return out;
            t = b.word(i);
        }
        const uint32_t x = i * 64 + static_cast<uint32_t>(std::countr_zero(t));
        t |= t - 1;  // smear: fill the run's low zeroes with ones
        while (t == ~0ull && i + 1 < kBitmapWords) t = b.word(++i);
        if (t == ~0ull) {  // run reaches the end of the chunk
            out.append(x, kChunkSize - 1);
            return out;
        }
        const uint32_t y = i * 64 + static_cast<uint32_t>(std::countr_zero(~t));
        out.append(x, y - 1);
        t &= t + 1;  // strip the run just emitted
    }
}

Container convert(const Container& c, ContainerType target) {
    if (type_of(c) == target) return c;
    switch (type_of(c)) {
        case ContainerType::Array: {
            const auto& a = std::get<ArrayContainer>(c);
            return target == ContainerType::Bitmap ? Container(array_to_bitmap(a))
                                                   : Container(array_to_runs(a));
        }
        case ContainerType::Bitmap: {
            const auto& b = std::get<BitmapContainer>(c);
            return target == ContainerType::Array ? Container(bitmap_to_array(b))
                                                  : Container(bitmap_to_runs(b));
        }
        case ContainerType::Run: {
            const auto& r = std::get<RunContainer>(c);
            return target == ContainerType::Array ? Container(runs_to_array(r))
                                                  : Container(runs_to_bitmap(r));
        }
    }
    throw std::logic_error("unreachable");
}

Container normalize_run(RunContainer&& rc) {
    if (rc.run_count() == 0) return ArrayContainer{};
    const uint32_t card = rc.cardinality();
    switch (choose_best_type(card, rc.run_count())) {
        case ContainerType::Run: return std::move(rc);
        case ContainerType::Array: return runs_to_array(rc);
        case ContainerType::Bitmap: return runs_to_bitmap(rc);
    }
    throw std::logic_error("unreachable");
}

namespace {

// Complement of rc over [lo, hi); parts outside the window survive untouched.
RunContainer flip_runs_range(const RunContainer& rc, uint32_t lo, uint32_t hi) {
    RunContainer out;
    out.reserve(rc.run_count() + 2);
    uint32_t cursor = lo;  // next position of [lo, hi) not yet resolved
    for (const Run& r : rc.runs()) {
        const uint32_t s = r.start, e = r.last();
        if (s < lo) out.append_or_extend(s, std::min(e, lo - 1));
        const uint32_t cs = std::max(s, lo);
        const uint32_t ce = std::min<uint32_t>(e, hi - 1);
        if (cs <= ce) {  // covered part flips to a gap
            if (cursor < cs) out.append_or_extend(cursor, cs - 1);
            cursor = ce + 1;
        }
        if (e >= hi) {
            if (cursor < hi) {
                out.append_or_extend(cursor, hi - 1);
                cursor = hi;
            }
            out.append_or_extend(std::max(s, hi), e);
        }
    }
    if (cursor < hi) out.append_or_extend(cursor, hi - 1);
    return out;
}

}  // namespace

Container container_flip_range(Container&& c, uint32_t lo, uint32_t hi) {
    if (lo >= hi || hi > kChunkSize)
        throw std::invalid_argument("flip range must satisfy lo < hi <= 65536");
    switch (type_of(c)) {
        case ContainerType::Array: {
            auto& a = std::get<ArrayContainer>(c);
            const uint32_t in_range = a.rank(static_cast<uint16_t>(hi - 1)) -
                                      (lo ? a.rank(static_cast<uint16_t>(lo - 1)) : 0);
            const uint32_t new_card = a.cardinality() - in_range + (hi - lo) - in_range;
            if (new_card > kMaxArrayCardinality) {
                BitmapContainer b = array_to_bitmap(a);
                b.flip_range(lo, hi);
                b.set_cardinality(new_card);
                return b;
            }
            ArrayContainer out;
            out.reserve_exact(new_card);
            const auto vals = a.values();
            size_t i = 0;
            while (i < vals.size() && vals[i] < lo) out.append(vals[i++]);
            uint32_t next = lo;
            while (i < vals.size() && vals[i] < hi) {
                while (next < vals[i]) out.append(static_cast<uint16_t>(next++));
                next = vals[i++] + 1;
            }
            while (next < hi) out.append(static_cast<uint16_t>(next++));
            while (i < vals.size()) out.append(vals[i++]);
            return out;
        }
        case ContainerType::Bitmap: {
            auto& b = std::get<BitmapContainer>(c);
            const uint32_t in_range = b.count_range(lo, hi);
            const uint32_t new_card = b.cardinality() - in_range + (hi - lo) - in_range;
            b.flip_range(lo, hi);
            b.set_cardinality(new_card);
            if (new_card <= kMaxArrayCardinality) return bitmap_to_array(b);
            return std::move(c);
        }
        case ContainerType::Run: {
            auto& r = std::get<RunContainer>(c);
            return normalize_run(flip_runs_range(r, lo, hi));
        }
    }
    throw std::logic_error("unreachable");
}

bool container_structurally_valid(const Container& c, std::string* why) {
    auto fail = [&](const char* msg) {
        if (why) *why = msg;
        return false;
    };
    if (auto* a = std::get_if<ArrayContainer>(&c)) {
        if (!a->sorted_unique()) return fail("array values not strictly increasing");
        if (a->cardinality() > kMaxArrayCardinality) return fail("array cardinality above 4096");
        return true;
    }
    if (auto* b = std::get_if<BitmapContainer>(&c)) {
        if (b->cardinality_known()) {
            uint32_t c2 = 0;
            for (uint64_t w : b->words()) c2 += static_cast<uint32_t>(std::popcount(w));
            if (c2 != b->cardinality()) return fail("bitmap cardinality counter wrong");
        }
        return true;
    }
    const auto& r = std::get<RunContainer>(c);
    if (!r.canonical()) return fail("runs not sorted/coalesced");
    return true;
}

}  // namespace roaring
