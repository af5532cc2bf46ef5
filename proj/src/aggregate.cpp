#include "roaring/aggregate.hpp"

#include <deque>
#include <queue>

namespace roaring {

const char* to_string(AggregationStrategy s) {
    switch (s) {
        case AggregationStrategy::Naive: return "naive";
        case AggregationStrategy::Heap: return "heap";
        case AggregationStrategy::LazyNaive: return "lazy";
    }
    return "?";
}

RoaringBitmap union_naive(std::span<const BitmapView> inputs) {
    RoaringBitmap acc;
    for (const auto& v : inputs) {
        if (const RoaringBitmap* h = v.heap())
            acc.or_inplace(*h);
        else
            acc.or_inplace(v.to_bitmap());
    }
    return acc;
}

RoaringBitmap union_lazy(std::span<const BitmapView> inputs) {
    RoaringBitmap acc;
    for (const auto& v : inputs) {
        if (const RoaringBitmap* h = v.heap())
            acc.lazy_or_inplace(*h);
        else
            acc.lazy_or_inplace(v.to_bitmap());
    }
    acc.repair();
    return acc;
}

RoaringBitmap union_heap(std::span<const BitmapView> inputs) {
    if (inputs.empty()) return {};

    struct Item {
        uint64_t size;
        uint64_t seq;
        const BitmapView* input;  // null once the operand is an owned partial
        size_t owned;
    };
    auto later = [](const Item& a, const Item& b) {
        return a.size != b.size ? a.size > b.size : a.seq > b.seq;
    };
    std::priority_queue<Item, std::vector<Item>, decltype(later)> pq(later);
    uint64_t seq = 0;
    for (const auto& v : inputs) pq.push({v.size_bytes(), seq++, &v, 0});

    std::deque<RoaringBitmap> owned;
    auto as_view = [&](const Item& it) {
        return it.input ? *it.input : BitmapView(owned[it.owned]);
    };
    auto release = [&](const Item& it) {
        if (!it.input) owned[it.owned] = RoaringBitmap();
    };
    while (pq.size() > 1) {
        const Item a = pq.top();
        pq.pop();
        const Item b = pq.top();
        pq.pop();
        owned.push_back(view_or(as_view(a), as_view(b)));
        release(a);
        release(b);
        pq.push({serialized_size(owned.back()), seq++, nullptr, owned.size() - 1});
    }
    const Item last = pq.top();
    return last.input ? last.input->to_bitmap() : std::move(owned[last.owned]);
}

RoaringBitmap union_all(std::span<const BitmapView> inputs, AggregationStrategy strategy) {
    switch (strategy) {
        case AggregationStrategy::Naive: return union_naive(inputs);
        case AggregationStrategy::Heap: return union_heap(inputs);
        case AggregationStrategy::LazyNaive: return union_lazy(inputs);
    }
    return {};
}

std::vector<BitmapView> views_of(std::span<const RoaringBitmap> bitmaps) {
    return {bitmaps.begin(), bitmaps.end()};
}

std::vector<BitmapView> views_of(std::span<const FrozenBitmap> frozen) {
    return {frozen.begin(), frozen.end()};
}

}  // namespace roaring
