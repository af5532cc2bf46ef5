#include "roaring/serialize.hpp"

#include <algorithm>
#include <bit>
#include <cstring>

#include "roaring/algebra.hpp"
#include "roaring/util.hpp"

namespace roaring {

namespace {

constexpr uint8_t kMagic[4] = {'R', 'O', 'A', 'R'};

uint64_t payload_bytes(const Container& c) {
    switch (type_of(c)) {
        case ContainerType::Array: return 2ull * container_cardinality(c);
        case ContainerType::Bitmap: return kBitmapBytes;
        case ContainerType::Run: return 2ull + 4ull * container_run_count(c);
    }
    return 0;
}

}  // namespace

const char* to_string(FormatError e) {
    switch (e) {
        case FormatError::BadMagic: return "BadMagic";
        case FormatError::BadVersion: return "BadVersion";
        case FormatError::TruncatedInput: return "TruncatedInput";
        case FormatError::OffsetOutOfBounds: return "OffsetOutOfBounds";
        case FormatError::UnsortedKeys: return "UnsortedKeys";
        case FormatError::CardinalityMismatch: return "CardinalityMismatch";
        case FormatError::IllegalRunOrder: return "IllegalRunOrder";
    }
    return "?";
}

uint64_t serialized_size(const RoaringBitmap& bm) {
    const size_t n = bm.container_count();
    uint64_t total = kHeaderBytes + (n + 7) / 8 + 8ull * n;
    for (size_t i = 0; i < n; ++i) total += payload_bytes(bm.container_at(i));
    return total;
}

std::vector<uint8_t> serialize(const RoaringBitmap& bm) {
    if (bm.lazy()) throw std::logic_error("cannot serialize a lazy set: repair() first");
    const size_t n = bm.container_count();
    for (size_t i = 0; i < n; ++i)
        if (const auto* b = std::get_if<BitmapContainer>(&bm.container_at(i));
            b && !b->cardinality_known())
            throw std::logic_error("cannot serialize with unknown cardinalities: repair() first");

    std::vector<uint8_t> out(serialized_size(bm));
    uint8_t* p = out.data();
    std::memcpy(p, kMagic, 4);
    store_u32le(p + 4, kFormatVersion);
    store_u32le(p + 8, static_cast<uint32_t>(n));
    uint8_t* flags = p + kHeaderBytes;
    uint8_t* desc = flags + (n + 7) / 8;
    uint8_t* offs = desc + 4 * n;
    uint64_t pos = static_cast<uint64_t>(offs - p) + 4 * n;
    for (size_t i = 0; i < n; ++i) {
        const Container& c = bm.container_at(i);
        const uint32_t card = container_cardinality(c);
        store_u16le(desc + 4 * i, bm.key_at(i));
        store_u16le(desc + 4 * i + 2, static_cast<uint16_t>(card - 1));
        store_u32le(offs + 4 * i, static_cast<uint32_t>(pos));
        uint8_t* pay = p + pos;
        if (const auto* a = std::get_if<ArrayContainer>(&c)) {
            for (size_t k = 0; k < a->values().size(); ++k)
                store_u16le(pay + 2 * k, a->values()[k]);
        } else if (const auto* b = std::get_if<BitmapContainer>(&c)) {
            for (uint32_t w = 0; w < kBitmapWords; ++w) store_u64le(pay + 8 * w, b->word(w));
        } else {
            const auto& runs = std::get<RunContainer>(c).runs();
            flags[i >> 3] |= static_cast<uint8_t>(1u << (i & 7));
            store_u16le(pay, static_cast<uint16_t>(runs.size()));
            for (size_t k = 0; k < runs.size(); ++k) {
                store_u16le(pay + 2 + 4 * k, runs[k].start);
                store_u16le(pay + 2 + 4 * k + 2, runs[k].length_minus_one);
            }
        }
        pos += payload_bytes(c);
    }
    assert(pos == out.size());
    return out;
}

std::optional<FormatError> validate(std::span<const uint8_t> image) {
    const uint8_t* p = image.data();
    if (image.size() < kHeaderBytes) return FormatError::TruncatedInput;
    if (std::memcmp(p, kMagic, 4) != 0) return FormatError::BadMagic;
    if (load_u32le(p + 4) != kFormatVersion) return FormatError::BadVersion;
    const uint64_t n = load_u32le(p + 8);
    if (n > 65536) return FormatError::UnsortedKeys;  // u16 keys cannot stay increasing
    const uint64_t flag_bytes = (n + 7) / 8;
    const uint64_t table_end = kHeaderBytes + flag_bytes + 8 * n;
    if (image.size() < table_end) return FormatError::TruncatedInput;
    const uint8_t* flags = p + kHeaderBytes;
    const uint8_t* desc = flags + flag_bytes;
    const uint8_t* offs = desc + 4 * n;

    uint64_t pos = table_end;
    int64_t prev_key = -1;
    for (uint64_t i = 0; i < n; ++i) {
        const uint32_t key = load_u16le(desc + 4 * i);
        if (static_cast<int64_t>(key) <= prev_key) return FormatError::UnsortedKeys;
        prev_key = key;
        const uint32_t card = load_u16le(desc + 4 * i + 2) + 1u;
        const bool is_run = (flags[i >> 3] >> (i & 7)) & 1u;
        if (load_u32le(offs + 4 * i) != pos) return FormatError::OffsetOutOfBounds;
        if (is_run) {
            if (pos + 2 > image.size()) return FormatError::TruncatedInput;
            const uint32_t r = load_u16le(p + pos);
            const uint64_t psize = 2 + 4ull * r;
            if (pos + psize > image.size()) return FormatError::TruncatedInput;
            uint64_t sum = 0;
            int64_t prev_last = -2;  // so a run starting at 0 passes the gap check
            for (uint32_t k = 0; k < r; ++k) {
                const uint32_t s = load_u16le(p + pos + 2 + 4 * k);
                const uint32_t lm1 = load_u16le(p + pos + 2 + 4 * k + 2);
                if (s + lm1 > 65535) return FormatError::IllegalRunOrder;
                if (static_cast<int64_t>(s) <= prev_last + 1) return FormatError::IllegalRunOrder;
                prev_last = s + lm1;
                sum += lm1 + 1;
            }
            if (sum != card) return FormatError::CardinalityMismatch;
            pos += psize;
        } else if (card > kMaxArrayCardinality) {
            if (pos + kBitmapBytes > image.size()) return FormatError::TruncatedInput;
            uint64_t ones = 0;
            for (uint32_t w = 0; w < kBitmapWords; ++w)
                ones += static_cast<uint64_t>(std::popcount(load_u64le(p + pos + 8 * w)));
            if (ones != card) return FormatError::CardinalityMismatch;
            pos += kBitmapBytes;
        } else {
            const uint64_t psize = 2ull * card;
            if (pos + psize > image.size()) return FormatError::TruncatedInput;
            int64_t prev = -1;
            for (uint32_t k = 0; k < card; ++k) {
                const uint32_t v = load_u16le(p + pos + 2 * k);
                if (static_cast<int64_t>(v) <= prev) return FormatError::UnsortedKeys;
                prev = v;
            }
            pos += psize;
        }
    }
    if (pos != image.size()) return FormatError::TruncatedInput;  // trailing bytes
    return std::nullopt;
}

namespace {

Container parse_container(const uint8_t* pay, uint32_t card, bool is_run) {
    if (is_run) {
        const uint32_t r = load_u16le(pay);
        std::vector<Run> runs;
        runs.reserve(r);
        for (uint32_t k = 0; k < r; ++k)
            runs.push_back(Run{load_u16le(pay + 2 + 4 * k), load_u16le(pay + 2 + 4 * k + 2)});
        return RunContainer(std::move(runs));
    }
    if (card > kMaxArrayCardinality) {
        BitmapContainer b;
        auto words = b.mutable_words();
        for (uint32_t w = 0; w < kBitmapWords; ++w) words[w] = load_u64le(pay + 8 * w);
        b.set_cardinality(card);
        return b;
    }
    std::vector<uint16_t> vals;
    vals.reserve(card);
    for (uint32_t k = 0; k < card; ++k) vals.push_back(load_u16le(pay + 2 * k));
    return ArrayContainer(std::move(vals));
}

}  // namespace

RoaringBitmap deserialize(std::span<const uint8_t> image) {
    if (auto err = validate(image)) throw FormatException(*err);
    const uint8_t* p = image.data();
    const size_t n = load_u32le(p + 8);
    const uint8_t* flags = p + kHeaderBytes;
    const uint8_t* desc = flags + (n + 7) / 8;
    const uint8_t* offs = desc + 4 * n;
    std::vector<uint16_t> keys;
    std::vector<Container> containers;
    keys.reserve(n);
    containers.reserve(n);
    for (size_t i = 0; i < n; ++i) {
        keys.push_back(load_u16le(desc + 4 * i));
        const uint32_t card = load_u16le(desc + 4 * i + 2) + 1u;
        const bool is_run = (flags[i >> 3] >> (i & 7)) & 1u;
        containers.push_back(parse_container(p + load_u32le(offs + 4 * i), card, is_run));
    }
    return RoaringBitmap::from_parts(std::move(keys), std::move(containers));
}

// --- FrozenBitmap -------------------------------------------------------

FrozenBitmap FrozenBitmap::attach(std::span<const uint8_t> image) {
    if (auto err = validate(image)) throw FormatException(*err);
    return attach_unchecked(image);
}

FrozenBitmap FrozenBitmap::attach_unchecked(std::span<const uint8_t> image) {
    FrozenBitmap fz;
    fz.image_ = image;
    fz.n_ = load_u32le(image.data() + 8);
    fz.flags_ = image.data() + kHeaderBytes;
    fz.descriptors_ = fz.flags_ + (fz.n_ + 7) / 8;
    fz.offsets_ = fz.descriptors_ + 4 * fz.n_;
    return fz;
}

uint16_t FrozenBitmap::key_at(size_t i) const { return load_u16le(descriptors_ + 4 * i); }

uint32_t FrozenBitmap::cardinality_at(size_t i) const {
    return load_u16le(descriptors_ + 4 * i + 2) + 1u;
}

ContainerType FrozenBitmap::type_at(size_t i) const {
    if ((flags_[i >> 3] >> (i & 7)) & 1u) return ContainerType::Run;
    return cardinality_at(i) > kMaxArrayCardinality ? ContainerType::Bitmap
                                                    : ContainerType::Array;
}

std::span<const uint8_t> FrozenBitmap::payload_at(size_t i) const {
    const uint32_t off = load_u32le(offsets_ + 4 * i);
    const uint8_t* pay = image_.data() + off;
    switch (type_at(i)) {
        case ContainerType::Run: return {pay, 2 + 4ull * load_u16le(pay)};
        case ContainerType::Bitmap: return {pay, kBitmapBytes};
        case ContainerType::Array: return {pay, 2ull * cardinality_at(i)};
    }
    return {};
}

uint64_t FrozenBitmap::cardinality() const {
    uint64_t total = 0;
    for (size_t i = 0; i < n_; ++i) total += cardinality_at(i);
    return total;
}

size_t FrozenBitmap::key_index(uint16_t key) const {
    size_t lo = 0, hi = n_;
    while (lo < hi) {
        const size_t mid = (lo + hi) / 2;
        if (key_at(mid) < key)
            lo = mid + 1;
        else
            hi = mid;
    }
    return lo;
}

bool FrozenBitmap::contains(uint32_t v) const {
    const uint16_t key = static_cast<uint16_t>(v >> 16);
    const size_t i = key_index(key);
    if (i == n_ || key_at(i) != key) return false;
    const uint16_t low = static_cast<uint16_t>(v);
    const auto pay = payload_at(i);
    switch (type_at(i)) {
        case ContainerType::Array: {
            size_t lo = 0, hi = pay.size() / 2;
            while (lo < hi) {
                const size_t mid = (lo + hi) / 2;
                if (load_u16le(pay.data() + 2 * mid) < low)
                    lo = mid + 1;
                else
                    hi = mid;
            }
            return lo < pay.size() / 2 && load_u16le(pay.data() + 2 * lo) == low;
        }
        case ContainerType::Bitmap:
            return (load_u64le(pay.data() + 8 * (low >> 6)) >> (low & 63)) & 1u;
        case ContainerType::Run: {
            const uint32_t r = load_u16le(pay.data());
            size_t lo = 0, hi = r;
            while (lo < hi) {  // first run with start > low
                const size_t mid = (lo + hi) / 2;
                if (load_u16le(pay.data() + 2 + 4 * mid) <= low)
                    lo = mid + 1;
                else
                    hi = mid;
            }
            if (lo == 0) return false;
            const uint32_t start = load_u16le(pay.data() + 2 + 4 * (lo - 1));
            const uint32_t lm1 = load_u16le(pay.data() + 2 + 4 * (lo - 1) + 2);
            return low <= start + lm1;
        }
    }
    return false;
}

uint64_t FrozenBitmap::rank(uint32_t v) const {
    const uint16_t key = static_cast<uint16_t>(v >> 16);
    const uint16_t low = static_cast<uint16_t>(v);
    uint64_t total = 0;
    for (size_t i = 0; i < n_ && key_at(i) <= key; ++i) {
        if (key_at(i) < key) {
            total += cardinality_at(i);
            continue;
        }
        const auto pay = payload_at(i);
        switch (type_at(i)) {
            case ContainerType::Array: {
                size_t lo = 0, hi = pay.size() / 2;
                while (lo < hi) {  // first value > low
                    const size_t mid = (lo + hi) / 2;
                    if (load_u16le(pay.data() + 2 * mid) <= low)
                        lo = mid + 1;
                    else
                        hi = mid;
                }
                total += lo;
                break;
            }
            case ContainerType::Bitmap: {
                const uint32_t full_words = low >> 6;
                for (uint32_t w = 0; w < full_words; ++w)
                    total += static_cast<uint64_t>(
                        std::popcount(load_u64le(pay.data() + 8 * w)));
                const uint64_t word = load_u64le(pay.data() + 8 * full_words);
                const uint64_t mask = (low & 63) == 63 ? ~uint64_t{0}
                                                       : ((uint64_t{1} << ((low & 63) + 1)) - 1);
                total += static_cast<uint64_t>(std::popcount(word & mask));
                break;
            }
            case ContainerType::Run: {
                const uint32_t r = load_u16le(pay.data());
                for (uint32_t k = 0; k < r; ++k) {
                    const uint32_t start = load_u16le(pay.data() + 2 + 4 * k);
                    const uint32_t lm1 = load_u16le(pay.data() + 2 + 4 * k + 2);
                    if (start > low) break;
                    total += std::min<uint32_t>(low - start, lm1) + 1;
                }
                break;
            }
        }
    }
    return total;
}

uint32_t FrozenBitmap::select(uint64_t n) const {
    for (size_t i = 0; i < n_; ++i) {
        const uint64_t card = cardinality_at(i);
        if (n >= card) {
            n -= card;
            continue;
        }
        const uint32_t base = static_cast<uint32_t>(key_at(i)) << 16;
        const auto pay = payload_at(i);
        switch (type_at(i)) {
            case ContainerType::Array:
                return base | load_u16le(pay.data() + 2 * n);
            case ContainerType::Bitmap: {
                for (uint32_t w = 0; w < kBitmapWords; ++w) {
                    uint64_t word = load_u64le(pay.data() + 8 * w);
                    const uint32_t ones = static_cast<uint32_t>(std::popcount(word));
                    if (n >= ones) {
                        n -= ones;
                        continue;
                    }
                    for (uint64_t k = 0; k < n; ++k) word &= word - 1;
                    return base | (w * 64 + static_cast<uint32_t>(std::countr_zero(word)));
                }
                break;
            }
            case ContainerType::Run: {
                const uint32_t r = load_u16le(pay.data());
                for (uint32_t k = 0; k < r; ++k) {
                    const uint32_t start = load_u16le(pay.data() + 2 + 4 * k);
                    const uint32_t len = load_u16le(pay.data() + 2 + 4 * k + 2) + 1u;
                    if (n < len) return base | (start + static_cast<uint32_t>(n));
                    n -= len;
                }
                break;
            }
        }
    }
    throw std::out_of_range("select index beyond set cardinality");
}

Container FrozenBitmap::materialize_at(size_t i) const {
    return parse_container(payload_at(i).data(), cardinality_at(i),
                           type_at(i) == ContainerType::Run);
}

RoaringBitmap FrozenBitmap::to_bitmap() const {
    std::vector<uint16_t> keys;
    std::vector<Container> containers;
    keys.reserve(n_);
    containers.reserve(n_);
    for (size_t i = 0; i < n_; ++i) {
        keys.push_back(key_at(i));
        containers.push_back(materialize_at(i));
    }
    return RoaringBitmap::from_parts(std::move(keys), std::move(containers));
}

// --- frozen cursor --------------------------------------------------------

FrozenBitmap::Cursor::Cursor(const FrozenBitmap* fz) : fz_(fz) {
    if (fz_) enter_container();
}

void FrozenBitmap::Cursor::enter_container() {
    payload_ = fz_->payload_at(ci_);
    type_ = fz_->type_at(ci_);
    const uint32_t base = static_cast<uint32_t>(fz_->key_at(ci_)) << 16;
    switch (type_) {
        case ContainerType::Array:
            idx_ = 0;
            cur_ = base | load_u16le(payload_.data());
            break;
        case ContainerType::Bitmap:
            wi_ = 0;
            bits_ = load_u64le(payload_.data());
            while (bits_ == 0) bits_ = load_u64le(payload_.data() + 8 * ++wi_);
            cur_ = base | (wi_ * 64 + static_cast<uint32_t>(std::countr_zero(bits_)));
            break;
        case ContainerType::Run:
            idx_ = 0;
            off_ = 0;
            cur_ = base | load_u16le(payload_.data() + 2);
            break;
    }
}

void FrozenBitmap::Cursor::advance() {
    const uint32_t base = cur_ & 0xFFFF0000u;
    switch (type_) {
        case ContainerType::Array:
            if (2 * ++idx_ < payload_.size()) {
                cur_ = base | load_u16le(payload_.data() + 2 * idx_);
                return;
            }
            break;
        case ContainerType::Bitmap:
            bits_ &= bits_ - 1;
            while (bits_ == 0 && ++wi_ < kBitmapWords)
                bits_ = load_u64le(payload_.data() + 8 * wi_);
            if (bits_) {
                cur_ = base | (wi_ * 64 + static_cast<uint32_t>(std::countr_zero(bits_)));
                return;
            }
            break;
        case ContainerType::Run: {
            const uint32_t start = load_u16le(payload_.data() + 2 + 4 * idx_);
            const uint32_t lm1 = load_u16le(payload_.data() + 2 + 4 * idx_ + 2);
            if (++off_ <= lm1) {
                cur_ = base | (start + off_);
                return;
            }
            if (2 + 4 * ++idx_ < payload_.size()) {
                off_ = 0;
                cur_ = base | load_u16le(payload_.data() + 2 + 4 * idx_);
                return;
            }
            break;
        }
    }
    if (++ci_ < fz_->n_)
        enter_container();
    else
        fz_ = nullptr;
}

// --- BitmapView -----------------------------------------------------------

size_t BitmapView::container_count() const {
    return heap_ ? heap_->container_count() : frozen_->container_count();
}

uint16_t BitmapView::key_at(size_t i) const {
    return heap_ ? heap_->key_at(i) : frozen_->key_at(i);
}

uint64_t BitmapView::cardinality() const {
    return heap_ ? heap_->cardinality() : frozen_->cardinality();
}

uint64_t BitmapView::size_bytes() const {
    return heap_ ? serialized_size(*heap_) : frozen_->image().size();
}

bool BitmapView::contains(uint32_t v) const {
    return heap_ ? heap_->contains(v) : frozen_->contains(v);
}

std::optional<uint32_t> BitmapView::max_value() const {
    if (heap_) return heap_->max_value();
    if (frozen_->empty()) return std::nullopt;
    return frozen_->select(frozen_->cardinality() - 1);
}

const Container& BitmapView::container_at(size_t i, Container& scratch) const {
    if (heap_) return heap_->container_at(i);
    scratch = frozen_->materialize_at(i);
    return scratch;
}

RoaringBitmap BitmapView::to_bitmap() const { return heap_ ? *heap_ : frozen_->to_bitmap(); }

namespace {

RoaringBitmap view_binary_op(const BitmapView& a, const BitmapView& b,
                             Container (*op)(const Container&, const Container&), bool keep_left,
                             bool keep_right) {
    std::vector<uint16_t> keys;
    std::vector<Container> containers;
    Container scratch_a, scratch_b;
    size_t i = 0, j = 0;
    const size_t na = a.container_count(), nb = b.container_count();
    while (i < na || j < nb) {
        const bool left_first = j == nb || (i < na && a.key_at(i) < b.key_at(j));
        const bool right_first = i == na || (j < nb && b.key_at(j) < a.key_at(i));
        if (left_first) {
            if (keep_left) {
                keys.push_back(a.key_at(i));
                containers.push_back(a.container_at(i, scratch_a));
            }
            ++i;
        } else if (right_first) {
            if (keep_right) {
                keys.push_back(b.key_at(j));
                containers.push_back(b.container_at(j, scratch_b));
            }
            ++j;
        } else {
            Container c = op(a.container_at(i, scratch_a), b.container_at(j, scratch_b));
            if (!container_empty(c)) {
                keys.push_back(a.key_at(i));
                containers.push_back(std::move(c));
            }
            ++i;
            ++j;
        }
    }
    return RoaringBitmap::from_parts(std::move(keys), std::move(containers));
}

}  // namespace

RoaringBitmap view_and(const BitmapView& a, const BitmapView& b) {
    return view_binary_op(a, b, container_and, false, false);
}
RoaringBitmap view_or(const BitmapView& a, const BitmapView& b) {
    return view_binary_op(a, b, container_or, true, true);
}
RoaringBitmap view_xor(const BitmapView& a, const BitmapView& b) {
    return view_binary_op(a, b, container_xor, true, true);
}
RoaringBitmap view_andnot(const BitmapView& a, const BitmapView& b) {
    return view_binary_op(a, b, container_andnot, true, false);
}

}  // namespace roaring
