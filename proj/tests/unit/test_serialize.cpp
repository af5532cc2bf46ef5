#include <algorithm>
#include <cstring>
#include <random>
#include <vector>

#include "doctest.h"
#include "reference.hpp"
#include "roaring/oracle.hpp"
#include "roaring/serialize.hpp"

using namespace roaring;

namespace {

// Multi-chunk value generator: a handful of chunks, each in a random regime.
std::vector<uint32_t> gen_u32_values(std::mt19937_64& rng) {
    const int chunks = 1 + static_cast<int>(rng() % 5);
    std::vector<uint32_t> keys;
    while (keys.size() < static_cast<size_t>(chunks)) {
        uint32_t k = static_cast<uint32_t>(rng() % 64);
        if (std::find(keys.begin(), keys.end(), k) == keys.end()) keys.push_back(k);
    }
    std::sort(keys.begin(), keys.end());
    std::vector<uint32_t> out;
    for (uint32_t k : keys) {
        const uint32_t base = k << 16;
        for (uint16_t low : refmodel::gen_any(rng)) out.push_back(base | low);
    }
    return out;
}

RoaringBitmap gen_bitmap(std::mt19937_64& rng) {
    auto vals = gen_u32_values(rng);
    auto bm = RoaringBitmap::from_sorted(vals);
    if (rng() & 1) bm.run_optimize();
    return bm;
}

std::vector<uint8_t> hex_bytes(const char* hex) {
    std::vector<uint8_t> out;
    for (const char* p = hex; *p;) {
        if (*p == ' ') {
            ++p;
            continue;
        }
        out.push_back(static_cast<uint8_t>(std::stoi(std::string(p, p + 2), nullptr, 16)));
        p += 2;
    }
    return out;
}

}  // namespace

TEST_CASE("empty set serializes to the bare 12-byte header") {
    RoaringBitmap bm;
    const auto img = serialize(bm);
    CHECK(img.size() == 12);
    CHECK(serialized_size(bm) == 12);
    CHECK(img == hex_bytes("52 4F 41 52 01 00 00 00 00 00 00 00"));
    CHECK(!validate(img));
    CHECK(deserialize(img).empty());
    const auto fz = FrozenBitmap::attach(img);
    CHECK(fz.empty());
    CHECK(fz.container_count() == 0);
    CHECK(fz.cardinality() == 0);
    CHECK(!fz.contains(0));
    CHECK(fz.rank(~uint32_t{0}) == 0);
    CHECK(fz.cursor().done());
    CHECK(fz.to_bitmap().empty());
}

TEST_CASE("single-run golden image is byte-exact") {
    RoaringBitmap bm;
    bm.add_range(10, 1001);  // {10..1000}, one run
    REQUIRE(bm.container_count() == 1);
    REQUIRE(type_of(bm.container_at(0)) == ContainerType::Run);
    const auto img = serialize(bm);
    CHECK(img.size() == 27);
    CHECK(serialized_size(bm) == 27);
    // header | flags | key, card-1 | offset | run count, start, length-1
    CHECK(img == hex_bytes("52 4F 41 52 01 00 00 00 01 00 00 00"
                           "01"
                           "00 00 DE 03"
                           "15 00 00 00"
                           "01 00 0A 00 DE 03"));
    CHECK(!validate(img));
    CHECK(deserialize(img) == bm);

    const auto fz = FrozenBitmap::attach(img);
    CHECK(fz.container_count() == 1);
    CHECK(fz.key_at(0) == 0);
    CHECK(fz.type_at(0) == ContainerType::Run);
    CHECK(fz.cardinality_at(0) == 991);
    CHECK(fz.cardinality() == 991);
    CHECK(fz.payload_at(0).size() == 6);
    CHECK(!fz.contains(9));
    CHECK(fz.contains(10));
    CHECK(fz.contains(1000));
    CHECK(!fz.contains(1001));
    CHECK(fz.rank(9) == 0);
    CHECK(fz.rank(10) == 1);
    CHECK(fz.rank(500) == 491);
    CHECK(fz.rank(~uint32_t{0}) == 991);
    CHECK(fz.select(0) == 10);
    CHECK(fz.select(990) == 1000);
    CHECK_THROWS_AS(fz.select(991), std::out_of_range);
}

TEST_CASE("payload sizes follow the 2c / 8192 / 2+4r cost model") {
    std::mt19937_64 rng(0xC057);
    for (int iter = 0; iter < 40; ++iter) {
        const auto bm = gen_bitmap(rng);
        const size_t n = bm.container_count();
        uint64_t expect = 12 + (n + 7) / 8 + 8 * n;
        for (size_t i = 0; i < n; ++i) {
            const Container& c = bm.container_at(i);
            switch (type_of(c)) {
                case ContainerType::Array: expect += 2 * container_cardinality(c); break;
                case ContainerType::Bitmap: expect += 8192; break;
                case ContainerType::Run: expect += 2 + 4 * container_run_count(c); break;
            }
        }
        CHECK(serialized_size(bm) == expect);
        CHECK(serialize(bm).size() == expect);
    }
}

TEST_CASE("round trip preserves the set and the exact bytes") {
    std::mt19937_64 rng(0x5EDE);
    for (int iter = 0; iter < 120; ++iter) {
        CAPTURE(iter);
        const auto bm = gen_bitmap(rng);
        const auto img = serialize(bm);
        REQUIRE(!validate(img));
        const auto back = deserialize(img);
        REQUIRE(back == bm);
        // Types survive too, so the re-serialized image is identical.
        REQUIRE(serialize(back) == img);
    }
}

TEST_CASE("non-minimal run containers are accepted and round-trip bit-exactly") {
    // Two singleton runs would be cheaper as an array; the reader must keep
    // the representation it was given anyway.
    std::vector<Container> cs;
    cs.emplace_back(RunContainer({Run{5, 0}, Run{9, 0}}));
    auto bm = RoaringBitmap::from_parts({3}, std::move(cs));
    const auto img = serialize(bm);
    CHECK(!validate(img));
    const auto back = deserialize(img);
    CHECK(back == bm);
    CHECK(type_of(back.container_at(0)) == ContainerType::Run);
    CHECK(serialize(back) == img);
}

TEST_CASE("serializing a lazy set throws until repaired") {
    std::mt19937_64 rng(0x1A2);
    auto a = RoaringBitmap::from_sorted(gen_u32_values(rng));
    const auto b = a.flipped(0, 1 << 17);
    a.lazy_or_inplace(b);
    REQUIRE(a.lazy());
    CHECK_THROWS_AS(serialize(a), std::logic_error);
    a.repair();
    CHECK(!validate(serialize(a)));
}

TEST_CASE("every format error is reachable and reported first") {
    // Two containers: an array {1,2,3} under key 1 and a run under key 2.
    RoaringBitmap bm;
    bm.add(0x10001);
    bm.add(0x10002);
    bm.add(0x10003);
    bm.add_range(0x20000, 0x20100);
    REQUIRE(bm.container_count() == 2);
    REQUIRE(type_of(bm.container_at(0)) == ContainerType::Array);
    REQUIRE(type_of(bm.container_at(1)) == ContainerType::Run);
    const auto good = serialize(bm);
    REQUIRE(!validate(good));
    // Layout: 12 header | 1 flag byte | 8 descriptor | 8 offsets | 6 array | 6 run.
    const size_t desc = 13, offs = desc + 8, pay = offs + 8;
    REQUIRE(good.size() == pay + 6 + 6);

    auto mutate = [&](size_t at, uint8_t v) {
        auto img = good;
        img[at] = v;
        return img;
    };

    SUBCASE("BadMagic") {
        CHECK(validate(mutate(0, 'X')) == FormatError::BadMagic);
        CHECK(validate(mutate(3, 'r')) == FormatError::BadMagic);
    }
    SUBCASE("BadVersion") {
        CHECK(validate(mutate(4, 2)) == FormatError::BadVersion);
        CHECK(validate(mutate(7, 0x80)) == FormatError::BadVersion);
    }
    SUBCASE("TruncatedInput: shorter than any header") {
        std::vector<uint8_t> empty;
        CHECK(validate(empty) == FormatError::TruncatedInput);
        for (size_t len = 1; len < 12; ++len)
            CHECK(validate(std::span(good.data(), len)) == FormatError::TruncatedInput);
    }
    SUBCASE("TruncatedInput: every proper prefix fails") {
        for (size_t len = 12; len < good.size(); ++len) {
            CAPTURE(len);
            CHECK(validate(std::span(good.data(), len)) == FormatError::TruncatedInput);
        }
    }
    SUBCASE("TruncatedInput: trailing garbage") {
        auto img = good;
        img.push_back(0);
        CHECK(validate(img) == FormatError::TruncatedInput);
    }
    SUBCASE("UnsortedKeys: container count too large for u16 keys") {
        auto img = mutate(8, 0x01);  // n = 65537
        img[9] = 0;
        img[10] = 1;
        img[11] = 0;
        CHECK(validate(img) == FormatError::UnsortedKeys);
    }
    SUBCASE("UnsortedKeys: duplicate and decreasing keys") {
        CHECK(validate(mutate(desc + 4, 1)) == FormatError::UnsortedKeys);  // 2 -> 1, duplicate
        CHECK(validate(mutate(desc + 4, 0)) == FormatError::UnsortedKeys);  // 2 -> 0, decreasing
    }
    SUBCASE("UnsortedKeys: array payload out of order") {
        CHECK(validate(mutate(pay, 9)) == FormatError::UnsortedKeys);      // 1,2,3 -> 9,2,3
        CHECK(validate(mutate(pay + 2, 1)) == FormatError::UnsortedKeys);  // duplicate value
    }
    SUBCASE("OffsetOutOfBounds: any drift from the packed layout") {
        CHECK(validate(mutate(offs, static_cast<uint8_t>(pay + 1))) ==
              FormatError::OffsetOutOfBounds);
        CHECK(validate(mutate(offs + 7, 0x80)) == FormatError::OffsetOutOfBounds);
    }
    SUBCASE("CardinalityMismatch: run lengths disagree with the descriptor") {
        // Run payload: count, start=0, length-1=255. Shrink the run.
        CHECK(validate(mutate(pay + 6 + 4, 0xFE)) == FormatError::CardinalityMismatch);
    }
    SUBCASE("IllegalRunOrder: start + length overflows the chunk") {
        auto img = good;
        img[pay + 6 + 2] = 0xFF;  // start = 0xFFxx
        img[pay + 6 + 3] = 0xFF;
        CHECK(validate(img) == FormatError::IllegalRunOrder);
    }
    SUBCASE("deserialize throws a typed exception") {
        const auto img = mutate(4, 9);
        CHECK(validate(img) == FormatError::BadVersion);
        try {
            (void)deserialize(img);
            FAIL("expected FormatException");
        } catch (const FormatException& e) {
            CHECK(e.error() == FormatError::BadVersion);
            CHECK(std::string(e.what()).find("BadVersion") != std::string::npos);
        }
        CHECK_THROWS_AS(FrozenBitmap::attach(img), FormatException);
    }
}

TEST_CASE("run payload ordering violations are rejected") {
    std::vector<Container> cs;
    cs.emplace_back(RunContainer({Run{10, 2}, Run{20, 2}}));  // [10,12],[20,22]
    auto bm = RoaringBitmap::from_parts({0}, std::move(cs));
    const auto good = serialize(bm);
    REQUIRE(!validate(good));
    const size_t pay = 12 + 1 + 4 + 4;  // second run's start at pay+6

    auto with = [&](size_t at, uint8_t v) {
        auto img = good;
        img[at] = v;
        return img;
    };
    // Overlap, adjacency, and reversal all trip the run-order check.
    CHECK(validate(with(pay + 6, 11)) == FormatError::IllegalRunOrder);
    CHECK(validate(with(pay + 6, 13)) == FormatError::IllegalRunOrder);
    CHECK(validate(with(pay + 6, 5)) == FormatError::IllegalRunOrder);
    // A properly separated rewrite still validates (sum unchanged).
    CHECK(!validate(with(pay + 6, 30)));
}

TEST_CASE("bitmap payload popcount must match the descriptor") {
    std::vector<uint32_t> vals;
    for (uint32_t v = 0; v < 10000; ++v) vals.push_back(2 * v);
    auto bm = RoaringBitmap::from_sorted(vals);
    REQUIRE(type_of(bm.container_at(0)) == ContainerType::Bitmap);
    const auto good = serialize(bm);
    REQUIRE(!validate(good));
    const size_t pay = 12 + 1 + 4 + 4;
    auto img = good;
    img[pay] ^= 0x01;  // drop bit 0
    CHECK(validate(img) == FormatError::CardinalityMismatch);
    img[pay] ^= 0x01;  // restore it
    img[pay] ^= 0x03;  // swap bit 0 for bit 1: count matches but the set differs
    CHECK(!validate(img));
    CHECK(deserialize(img).contains(1));
    CHECK(!deserialize(img).contains(0));
}

TEST_CASE("frozen view answers queries identically to the heap form") {
    std::mt19937_64 rng(0xF0F0);
    for (int iter = 0; iter < 60; ++iter) {
        CAPTURE(iter);
        const auto bm = gen_bitmap(rng);
        const auto img = serialize(bm);
        const auto fz = FrozenBitmap::attach(img);

        REQUIRE(fz.container_count() == bm.container_count());
        REQUIRE(fz.cardinality() == bm.cardinality());
        for (size_t i = 0; i < bm.container_count(); ++i) {
            CHECK(fz.key_at(i) == bm.key_at(i));
            CHECK(fz.type_at(i) == type_of(bm.container_at(i)));
            CHECK(fz.cardinality_at(i) == container_cardinality(bm.container_at(i)));
        }

        // Full iteration equality.
        const auto vals = bm.to_vector();
        size_t k = 0;
        for (auto cur = fz.cursor(); !cur.done(); cur.advance()) {
            REQUIRE(k < vals.size());
            REQUIRE(cur.value() == vals[k]);
            ++k;
        }
        REQUIRE(k == vals.size());

        // Membership, rank, select on hits and misses.
        for (int probe = 0; probe < 200; ++probe) {
            const uint32_t v = vals.empty() || (rng() & 1) ? static_cast<uint32_t>(rng())
                                                           : vals[rng() % vals.size()];
            CAPTURE(v);
            CHECK(fz.contains(v) == bm.contains(v));
            CHECK(fz.rank(v) == bm.rank(v));
        }
        for (int probe = 0; probe < 50 && !vals.empty(); ++probe) {
            const uint64_t idx = rng() % vals.size();
            CHECK(fz.select(idx) == vals[idx]);
        }
        if (!vals.empty()) CHECK_THROWS_AS(fz.select(vals.size()), std::out_of_range);

        // Materialization gives back the same containers and set.
        CHECK(fz.to_bitmap() == bm);
        for (size_t i = 0; i < fz.container_count(); ++i) {
            const Container c = fz.materialize_at(i);
            CHECK(type_of(c) == type_of(bm.container_at(i)));
            CHECK(container_cardinality(c) == container_cardinality(bm.container_at(i)));
        }
    }
}

TEST_CASE("frozen view works from an unaligned buffer") {
    std::mt19937_64 rng(0xA11);
    auto bm = gen_bitmap(rng);
    while (bm.empty()) bm = gen_bitmap(rng);
    const auto img = serialize(bm);
    for (size_t shift = 1; shift <= 3; ++shift) {
        std::vector<uint8_t> buf(img.size() + shift, 0xEE);
        std::memcpy(buf.data() + shift, img.data(), img.size());
        const std::span<const uint8_t> view(buf.data() + shift, img.size());
        REQUIRE(!validate(view));
        const auto fz = FrozenBitmap::attach(view);
        CHECK(fz.cardinality() == bm.cardinality());
        CHECK(fz.to_bitmap() == bm);
        const auto vals = bm.to_vector();
        for (int probe = 0; probe < 64; ++probe) {
            const uint32_t v = vals[rng() % vals.size()];
            CHECK(fz.contains(v));
            CHECK(fz.rank(v) == bm.rank(v));
        }
    }
}

TEST_CASE("view algebra matches the heap operators for every handle mix") {
    std::mt19937_64 rng(0xBEEF);
    for (int iter = 0; iter < 40; ++iter) {
        CAPTURE(iter);
        const auto a = gen_bitmap(rng);
        const auto b = gen_bitmap(rng);
        const auto ia = serialize(a);
        const auto ib = serialize(b);
        const auto fa = FrozenBitmap::attach(ia);
        const auto fb = FrozenBitmap::attach(ib);

        const auto and_ref = a & b;
        const auto or_ref = a | b;
        const auto xor_ref = a ^ b;
        const auto sub_ref = a - b;

        const BitmapView mixes[3][2] = {{a, fb}, {fa, b}, {fa, fb}};
        for (const auto& [va, vb] : mixes) {
            CHECK(view_and(va, vb) == and_ref);
            CHECK(view_or(va, vb) == or_ref);
            CHECK(view_xor(va, vb) == xor_ref);
            CHECK(view_andnot(va, vb) == sub_ref);
        }
        CHECK(view_and(BitmapView(a), BitmapView(b)) == and_ref);
    }
}

TEST_CASE("view handles report size and membership uniformly") {
    std::mt19937_64 rng(0x517E);
    auto bm = gen_bitmap(rng);
    while (bm.empty()) bm = gen_bitmap(rng);
    const auto img = serialize(bm);
    const auto fz = FrozenBitmap::attach(img);
    const BitmapView vh(bm), vf(fz);
    CHECK(!vh.frozen());
    CHECK(vf.frozen());
    CHECK(vh.size_bytes() == img.size());
    CHECK(vf.size_bytes() == img.size());
    CHECK(vh.cardinality() == vf.cardinality());
    CHECK(vh.container_count() == vf.container_count());
    for (int probe = 0; probe < 100; ++probe) {
        const uint32_t v = static_cast<uint32_t>(rng());
        CHECK(vh.contains(v) == vf.contains(v));
    }
    Container scratch;
    for (size_t i = 0; i < vh.container_count(); ++i) {
        CHECK(vh.key_at(i) == vf.key_at(i));
        const Container& ch = vh.container_at(i, scratch);
        CHECK(&ch == &bm.container_at(i));  // heap views borrow, not copy
        Container scratch2;
        const Container& cf = vf.container_at(i, scratch2);
        CHECK(&cf == &scratch2);  // frozen views materialize into the scratch
        CHECK(container_cardinality(ch) == container_cardinality(cf));
    }
    CHECK(vh.to_bitmap() == bm);
    CHECK(vf.to_bitmap() == bm);
}
