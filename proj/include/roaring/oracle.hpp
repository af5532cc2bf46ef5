#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace roaring {

// Plain sorted-vector set used as the ground truth in differential tests and
// as the uncompressed baseline in benchmarks. Every operation is written the
// obvious way; nothing here shares code with the compressed containers.
// Range edits cost O(hi - lo + n), so keep oracle universes test-sized.
class OracleSet {
public:
    OracleSet() = default;
    explicit OracleSet(std::vector<uint32_t> values);  // sorts and dedups

    bool contains(uint32_t v) const;
    bool add(uint32_t v);
    bool remove(uint32_t v);

    void add_range(uint64_t lo, uint64_t hi);     // [lo, hi)
    void remove_range(uint64_t lo, uint64_t hi);  // [lo, hi)
    void flip_range(uint64_t lo, uint64_t hi);    // [lo, hi)

    uint64_t cardinality() const { return values_.size(); }
    bool empty() const { return values_.empty(); }
    std::optional<uint32_t> min_value() const;
    std::optional<uint32_t> max_value() const;

    uint64_t rank(uint32_t v) const;    // values <= v
    uint32_t select(uint64_t n) const;  // 0-based; throws std::out_of_range

    bool intersects(const OracleSet& other) const;

    std::span<const uint32_t> values() const { return values_; }
    const std::vector<uint32_t>& to_vector() const { return values_; }

    bool operator==(const OracleSet&) const = default;

private:
    std::vector<uint32_t> values_;
};

OracleSet operator&(const OracleSet& a, const OracleSet& b);
OracleSet operator|(const OracleSet& a, const OracleSet& b);
OracleSet operator^(const OracleSet& a, const OracleSet& b);
OracleSet operator-(const OracleSet& a, const OracleSet& b);

}  // namespace roaring
