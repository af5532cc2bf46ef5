#include "roaring/stats.hpp"

#include <stdexcept>

namespace roaring {

const TypeStats& ContainerStats::of(ContainerType t) const {
    switch (t) {
        case ContainerType::Array: return array;
        case ContainerType::Bitmap: return bitmap;
        case ContainerType::Run: return run;
    }
    return array;
}

TypeStats ContainerStats::total() const {
    return {array.containers + bitmap.containers + run.containers,
            array.cardinality + bitmap.cardinality + run.cardinality,
            array.payload_bytes + bitmap.payload_bytes + run.payload_bytes};
}

namespace {

double share(uint64_t part, uint64_t whole) {
    return whole == 0 ? 0.0 : 100.0 * static_cast<double>(part) / static_cast<double>(whole);
}

}  // namespace

double ContainerStats::container_share(ContainerType t) const {
    return share(of(t).containers, total().containers);
}
double ContainerStats::cardinality_share(ContainerType t) const {
    return share(of(t).cardinality, total().cardinality);
}
double ContainerStats::bytes_share(ContainerType t) const {
    return share(of(t).payload_bytes, total().payload_bytes);
}

ContainerStats container_stats(std::span<const BitmapView> bitmaps) {
    ContainerStats stats;
    auto tally = [&](ContainerType type, uint32_t card, uint64_t bytes) {
        TypeStats& ts = type == ContainerType::Array    ? stats.array
                        : type == ContainerType::Bitmap ? stats.bitmap
                                                        : stats.run;
        ++ts.containers;
        ts.cardinality += card;
        ts.payload_bytes += bytes;
    };
    Container scratch;
    for (const auto& v : bitmaps) {
        for (size_t i = 0; i < v.container_count(); ++i) {
            const Container& c = v.container_at(i, scratch);
            const uint32_t card = container_cardinality(c);
            switch (type_of(c)) {
                case ContainerType::Array: tally(ContainerType::Array, card, 2ull * card); break;
                case ContainerType::Bitmap: tally(ContainerType::Bitmap, card, kBitmapBytes); break;
                case ContainerType::Run:
                    tally(ContainerType::Run, card, 2ull + 4ull * container_run_count(c));
                    break;
            }
        }
    }
    return stats;
}

double bits_per_int(std::span<const BitmapView> bitmaps) {
    uint64_t bytes = 0, values = 0;
    for (const auto& v : bitmaps) {
        bytes += v.size_bytes();
        values += v.cardinality();
    }
    if (values == 0) throw std::domain_error("bits_per_int over an empty collection");
    return 8.0 * static_cast<double>(bytes) / static_cast<double>(values);
}

}  // namespace roaring
