#include "roaring/roaring.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>

#include "roaring/algebra.hpp"

namespace roaring {

namespace {

constexpr size_t kNoKey = static_cast<size_t>(-1);

std::vector<uint16_t> container_values(const Container& c) {
    std::vector<uint16_t> out;
    if (const auto* a = std::get_if<ArrayContainer>(&c)) {
        out.assign(a->values().begin(), a->values().end());
    } else if (const auto* b = std::get_if<BitmapContainer>(&c)) {
        for (uint32_t w = 0; w < kBitmapWords; ++w) {
            uint64_t bits = b->word(w);
            while (bits) {
                out.push_back(static_cast<uint16_t>(w * 64 + std::countr_zero(bits)));
                bits &= bits - 1;
            }
        }
    } else {
        for (const Run& r : std::get<RunContainer>(c).runs())
            for (uint32_t v = r.start; v <= r.last(); ++v)
                out.push_back(static_cast<uint16_t>(v));
    }
    return out;
}

bool containers_hold_same_set(const Container& a, const Container& b) {
    if (a.index() == b.index()) return a == b;
    return container_values(a) == container_values(b);
}

}  // namespace

size_t RoaringBitmap::key_index(uint16_t key) const {
    return static_cast<size_t>(std::lower_bound(keys_.begin(), keys_.end(), key) - keys_.begin());
}

void RoaringBitmap::insert_at(size_t pos, uint16_t key, Container&& c) {
    keys_.insert(keys_.begin() + static_cast<ptrdiff_t>(pos), key);
    containers_.insert(containers_.begin() + static_cast<ptrdiff_t>(pos), std::move(c));
}

void RoaringBitmap::erase_at(size_t pos) {
    keys_.erase(keys_.begin() + static_cast<ptrdiff_t>(pos));
    containers_.erase(containers_.begin() + static_cast<ptrdiff_t>(pos));
}

RoaringBitmap RoaringBitmap::from_sorted(std::span<const uint32_t> sorted_values) {
    RoaringBitmap bm;
    size_t i = 0;
    const size_t n = sorted_values.size();
    while (i < n) {
        const uint16_t key = static_cast<uint16_t>(sorted_values[i] >> 16);
        size_t j = i;
        while (j < n && (sorted_values[j] >> 16) == key) {
            assert(j == i || sorted_values[j - 1] < sorted_values[j]);
            ++j;
        }
        const size_t count = j - i;
        if (count > kMaxArrayCardinality) {
            BitmapContainer b;
            for (size_t k = i; k < j; ++k) b.set(static_cast<uint16_t>(sorted_values[k]));
            bm.keys_.push_back(key);
            bm.containers_.emplace_back(std::move(b));
        } else {
            std::vector<uint16_t> vals;
            vals.reserve(count);
            for (size_t k = i; k < j; ++k) vals.push_back(static_cast<uint16_t>(sorted_values[k]));
            bm.keys_.push_back(key);
            bm.containers_.emplace_back(ArrayContainer(std::move(vals)));
        }
        i = j;
    }
    return bm;
}

RoaringBitmap RoaringBitmap::from_parts(std::vector<uint16_t> keys,
                                        std::vector<Container> containers) {
    assert(keys.size() == containers.size());
    RoaringBitmap bm;
    bm.keys_ = std::move(keys);
    bm.containers_ = std::move(containers);
#ifndef NDEBUG
    assert(validate_structure(bm));
#endif
    return bm;
}

bool RoaringBitmap::contains(uint32_t v) const {
    const size_t pos = key_index(static_cast<uint16_t>(v >> 16));
    if (pos == keys_.size() || keys_[pos] != static_cast<uint16_t>(v >> 16)) return false;
    return container_contains(containers_[pos], static_cast<uint16_t>(v));
}

bool RoaringBitmap::add(uint32_t v) {
    const uint16_t key = static_cast<uint16_t>(v >> 16);
    const uint16_t low = static_cast<uint16_t>(v);
    const size_t pos = key_index(key);
    if (pos == keys_.size() || keys_[pos] != key) {
        insert_at(pos, key, ArrayContainer(std::vector<uint16_t>{low}));
        return true;
    }
    if (container_contains(containers_[pos], low)) return false;
    container_add(containers_[pos], low);
    return true;
}

bool RoaringBitmap::remove(uint32_t v) {
    const uint16_t key = static_cast<uint16_t>(v >> 16);
    const uint16_t low = static_cast<uint16_t>(v);
    const size_t pos = key_index(key);
    if (pos == keys_.size() || keys_[pos] != key) return false;
    if (!container_contains(containers_[pos], low)) return false;
    if (container_remove(containers_[pos], low)) erase_at(pos);
    return true;
}

template <class ChunkFn>
void RoaringBitmap::for_chunks(uint64_t lo, uint64_t hi, ChunkFn&& fn) {
    if (lo >= hi) return;
    hi = std::min<uint64_t>(hi, uint64_t{1} << 32);
    const uint32_t first_key = static_cast<uint32_t>(lo >> 16);
    const uint32_t last_key = static_cast<uint32_t>((hi - 1) >> 16);
    for (uint32_t k = first_key; k <= last_key; ++k) {
        const uint32_t i = k == first_key ? static_cast<uint32_t>(lo & 0xFFFF) : 0;
        const uint32_t j =
            k == last_key ? static_cast<uint32_t>(((hi - 1) & 0xFFFF) + 1) : kChunkSize;
        const size_t pos = key_index(static_cast<uint16_t>(k));
        const bool present = pos < keys_.size() && keys_[pos] == static_cast<uint16_t>(k);
        fn(present ? pos : kNoKey, static_cast<uint16_t>(k), i, j, pos);
    }
}

void RoaringBitmap::add_range(uint64_t lo, uint64_t hi) {
    for_chunks(lo, hi, [&](size_t at, uint16_t key, uint32_t i, uint32_t j, size_t pos) {
        if (i == 0 && j == kChunkSize) {
            RunContainer full;
            full.append(0, kChunkSize - 1);
            if (at != kNoKey)
                containers_[at] = std::move(full);
            else
                insert_at(pos, key, std::move(full));
            return;
        }
        RunContainer span;
        span.append(i, j - 1);
        if (at != kNoKey)
            containers_[at] = container_or(containers_[at], Container(std::move(span)));
        else
            insert_at(pos, key, normalize_run(std::move(span)));
    });
}

void RoaringBitmap::remove_range(uint64_t lo, uint64_t hi) {
    std::vector<size_t> doomed;
    for_chunks(lo, hi, [&](size_t at, uint16_t, uint32_t i, uint32_t j, size_t) {
        if (at == kNoKey) return;
        if (i == 0 && j == kChunkSize) {
            doomed.push_back(at);
            return;
        }
        RunContainer span;
        span.append(i, j - 1);
        Container res = container_andnot(containers_[at], Container(std::move(span)));
        if (container_empty(res))
            doomed.push_back(at);
        else
            containers_[at] = std::move(res);
    });
    for (auto it = doomed.rbegin(); it != doomed.rend(); ++it) erase_at(*it);
}

void RoaringBitmap::flip_range(uint64_t lo, uint64_t hi) {
    std::vector<size_t> doomed;
    for_chunks(lo, hi, [&](size_t at, uint16_t key, uint32_t i, uint32_t j, size_t pos) {
        if (at == kNoKey) {
            RunContainer span;
            span.append(i, j - 1);
            insert_at(pos, key, normalize_run(std::move(span)));
            return;
        }
        Container res = container_flip_range(std::move(containers_[at]), i, j);
        if (container_empty(res))
            doomed.push_back(at);
        else
            containers_[at] = std::move(res);
    });
    for (auto it = doomed.rbegin(); it != doomed.rend(); ++it) erase_at(*it);
}

RoaringBitmap RoaringBitmap::flipped(uint64_t lo, uint64_t hi) const {
    RoaringBitmap out = *this;
    out.flip_range(lo, hi);
    return out;
}

uint64_t RoaringBitmap::cardinality() const {
    uint64_t total = 0;
    for (const Container& c : containers_) total += container_cardinality(c);
    return total;
}

std::optional<uint32_t> RoaringBitmap::min_value() const {
    if (empty()) return std::nullopt;
    return (static_cast<uint32_t>(keys_.front()) << 16) | container_select(containers_.front(), 0);
}

std::optional<uint32_t> RoaringBitmap::max_value() const {
    if (empty()) return std::nullopt;
    const Container& c = containers_.back();
    const uint32_t last = container_cardinality(c) - 1;
    return (static_cast<uint32_t>(keys_.back()) << 16) | container_select(c, last);
}

uint64_t RoaringBitmap::rank(uint32_t v) const {
    const uint16_t key = static_cast<uint16_t>(v >> 16);
    uint64_t total = 0;
    for (size_t i = 0; i < keys_.size() && keys_[i] <= key; ++i) {
        if (keys_[i] < key)
            total += container_cardinality(containers_[i]);
        else
            total += container_rank(containers_[i], static_cast<uint16_t>(v));
    }
    return total;
}

uint32_t RoaringBitmap::select(uint64_t n) const {
    for (size_t i = 0; i < keys_.size(); ++i) {
        const uint64_t card = container_cardinality(containers_[i]);
        if (n < card)
            return (static_cast<uint32_t>(keys_[i]) << 16) |
                   container_select(containers_[i], static_cast<uint32_t>(n));
        n -= card;
    }
    throw std::out_of_range("select index beyond set cardinality");
}

bool RoaringBitmap::intersects(const RoaringBitmap& other) const {
    size_t i = 0, j = 0;
    while (i < keys_.size() && j < other.keys_.size()) {
        if (keys_[i] == other.keys_[j]) {
            if (container_intersects(containers_[i], other.containers_[j])) return true;
            ++i;
            ++j;
        } else if (keys_[i] < other.keys_[j]) {
            i = static_cast<size_t>(
                std::lower_bound(keys_.begin() + static_cast<ptrdiff_t>(i), keys_.end(),
                                 other.keys_[j]) -
                keys_.begin());
        } else {
            j = static_cast<size_t>(std::lower_bound(other.keys_.begin() + static_cast<ptrdiff_t>(j),
                                                     other.keys_.end(), keys_[i]) -
                                    other.keys_.begin());
        }
    }
    return false;
}

bool RoaringBitmap::run_optimize() {
    bool changed = false;
    for (Container& c : containers_) {
        if (auto* a = std::get_if<ArrayContainer>(&c)) {
            const uint32_t runs = a->run_count();
            if (choose_best_type(a->cardinality(), runs) == ContainerType::Run) {
                c = array_to_runs(*a);
                changed = true;
            }
        } else if (auto* b = std::get_if<BitmapContainer>(&c)) {
            if (b->run_count_lower_bound() > kMaxRunCount) continue;  // cheap reject
            const auto runs = b->run_count_bounded(kMaxRunCount);
            if (!runs) continue;
            if (choose_best_type(b->ensure_cardinality(), *runs) == ContainerType::Run) {
                c = bitmap_to_runs(*b);
                changed = true;
            }
        } else {
            auto& r = std::get<RunContainer>(c);
            Container best = normalize_run(RunContainer(r));
            if (type_of(best) != ContainerType::Run) {
                c = std::move(best);
                changed = true;
            }
        }
    }
    return changed;
}

void RoaringBitmap::trim() {
    for (Container& c : containers_) container_trim(c);
    keys_.shrink_to_fit();
    containers_.shrink_to_fit();
}

void RoaringBitmap::or_inplace(const RoaringBitmap& other) {
    size_t i = 0, j = 0;
    while (j < other.keys_.size()) {
        if (i == keys_.size() || keys_[i] > other.keys_[j]) {
            insert_at(i, other.keys_[j], Container(other.containers_[j]));
            ++i;
            ++j;
        } else if (keys_[i] < other.keys_[j]) {
            ++i;
        } else {
            containers_[i] = container_or_inplace(std::move(containers_[i]), other.containers_[j]);
            ++i;
            ++j;
        }
    }
}

void RoaringBitmap::lazy_or_inplace(const RoaringBitmap& other) {
    size_t i = 0, j = 0;
    while (j < other.keys_.size()) {
        if (i == keys_.size() || keys_[i] > other.keys_[j]) {
            insert_at(i, other.keys_[j], Container(other.containers_[j]));
            ++i;
            ++j;
        } else if (keys_[i] < other.keys_[j]) {
            ++i;
        } else {
            containers_[i] =
                container_or_inplace(std::move(containers_[i]), other.containers_[j], true);
            ++i;
            ++j;
        }
    }
    lazy_ = true;
}

void RoaringBitmap::repair() {
    for (Container& c : containers_) c = container_repair(std::move(c));
    lazy_ = false;
}

bool RoaringBitmap::operator==(const RoaringBitmap& other) const {
    if (keys_ != other.keys_) return false;
    for (size_t i = 0; i < containers_.size(); ++i)
        if (!containers_hold_same_set(containers_[i], other.containers_[i])) return false;
    return true;
}

std::vector<uint32_t> RoaringBitmap::to_vector() const {
    std::vector<uint32_t> out;
    out.reserve(cardinality());
    for (Cursor c = cursor(); !c.done(); c.advance()) out.push_back(c.value());
    return out;
}

// --- cursor -----------------------------------------------------------------

RoaringBitmap::Cursor::Cursor(const RoaringBitmap* bm) : bm_(bm) {
    if (bm_) enter_container();
}

void RoaringBitmap::Cursor::enter_container() {
    const Container& c = bm_->containers_[ci_];
    const uint32_t base = static_cast<uint32_t>(bm_->keys_[ci_]) << 16;
    if (const auto* a = std::get_if<ArrayContainer>(&c)) {
        idx_ = 0;
        cur_ = base | a->values()[0];
    } else if (const auto* b = std::get_if<BitmapContainer>(&c)) {
        wi_ = 0;
        while (b->word(wi_) == 0) ++wi_;  // containers are never empty
        bits_ = b->word(wi_);
        cur_ = base | (wi_ * 64 + static_cast<uint32_t>(std::countr_zero(bits_)));
    } else {
        idx_ = 0;
        off_ = 0;
        cur_ = base | std::get<RunContainer>(c).runs()[0].start;
    }
}

void RoaringBitmap::Cursor::advance() {
    const Container& c = bm_->containers_[ci_];
    const uint32_t base = static_cast<uint32_t>(bm_->keys_[ci_]) << 16;
    if (const auto* a = std::get_if<ArrayContainer>(&c)) {
        if (++idx_ < a->cardinality()) {
            cur_ = base | a->values()[idx_];
            return;
        }
    } else if (const auto* b = std::get_if<BitmapContainer>(&c)) {
        bits_ &= bits_ - 1;
        while (bits_ == 0 && ++wi_ < kBitmapWords) bits_ = b->word(wi_);
        if (bits_) {
            cur_ = base | (wi_ * 64 + static_cast<uint32_t>(std::countr_zero(bits_)));
            return;
        }
    } else {
        const auto& runs = std::get<RunContainer>(c).runs();
        if (++off_ < runs[idx_].length()) {
            cur_ = base | (runs[idx_].start + off_);
            return;
        }
        if (++idx_ < runs.size()) {
            off_ = 0;
            cur_ = base | runs[idx_].start;
            return;
        }
    }
    if (++ci_ < bm_->containers_.size())
        enter_container();
    else
        bm_ = nullptr;
}

// --- binary operators ---------------------------------------------------

namespace {
enum class SetOp { And, Or, Xor, AndNot };
}

RoaringBitmap bitmap_binary_op(const RoaringBitmap& a, const RoaringBitmap& b, int op_tag) {
    const SetOp op = static_cast<SetOp>(op_tag);
    const bool keep_left = op != SetOp::And;
    const bool keep_right = op == SetOp::Or || op == SetOp::Xor;
    RoaringBitmap out;
    size_t i = 0, j = 0;
    const size_t na = a.keys_.size(), nb = b.keys_.size();
    while (i < na || j < nb) {
        const bool left_first = j == nb || (i < na && a.keys_[i] < b.keys_[j]);
        const bool right_first = i == na || (j < nb && b.keys_[j] < a.keys_[i]);
        if (left_first) {
            if (keep_left) {
                out.keys_.push_back(a.keys_[i]);
                out.containers_.push_back(a.containers_[i]);
            }
            ++i;
        } else if (right_first) {
            if (keep_right) {
                out.keys_.push_back(b.keys_[j]);
                out.containers_.push_back(b.containers_[j]);
            }
            ++j;
        } else {
            Container c;
            switch (op) {
                case SetOp::And: c = container_and(a.containers_[i], b.containers_[j]); break;
                case SetOp::Or: c = container_or(a.containers_[i], b.containers_[j]); break;
                case SetOp::Xor: c = container_xor(a.containers_[i], b.containers_[j]); break;
                case SetOp::AndNot:
                    c = container_andnot(a.containers_[i], b.containers_[j]);
                    break;
            }
            if (!container_empty(c)) {
                out.keys_.push_back(a.keys_[i]);
                out.containers_.push_back(std::move(c));
            }
            ++i;
            ++j;
        }
    }
    return out;
}

RoaringBitmap operator&(const RoaringBitmap& a, const RoaringBitmap& b) {
    return bitmap_binary_op(a, b, static_cast<int>(SetOp::And));
}
RoaringBitmap operator|(const RoaringBitmap& a, const RoaringBitmap& b) {
    return bitmap_binary_op(a, b, static_cast<int>(SetOp::Or));
}
RoaringBitmap operator^(const RoaringBitmap& a, const RoaringBitmap& b) {
    return bitmap_binary_op(a, b, static_cast<int>(SetOp::Xor));
}
RoaringBitmap operator-(const RoaringBitmap& a, const RoaringBitmap& b) {
    return bitmap_binary_op(a, b, static_cast<int>(SetOp::AndNot));
}

bool validate_structure(const RoaringBitmap& bm, std::string* why) {
    auto fail = [&](const std::string& msg) {
        if (why) *why = msg;
        return false;
    };
    for (size_t i = 0; i < bm.container_count(); ++i) {
        if (i > 0 && bm.key_at(i - 1) >= bm.key_at(i))
            return fail("chunk keys not strictly increasing");
        const Container& c = bm.container_at(i);
        if (container_empty(c)) return fail("empty container stored");
        std::string inner;
        if (!container_structurally_valid(c, &inner))
            return fail("container " + std::to_string(i) + ": " + inner);
        if (!bm.lazy()) {
            if (const auto* b = std::get_if<BitmapContainer>(&c); b && !b->cardinality_known())
                return fail("bitmap cardinality unknown outside lazy state");
        }
    }
    return true;
}

}  // namespace roaring
