#include "roaring/oracle.hpp"

#include <algorithm>
#include <stdexcept>

namespace roaring {

OracleSet::OracleSet(std::vector<uint32_t> values) : values_(std::move(values)) {
    std::sort(values_.begin(), values_.end());
    values_.erase(std::unique(values_.begin(), values_.end()), values_.end());
}

bool OracleSet::contains(uint32_t v) const {
    return std::binary_search(values_.begin(), values_.end(), v);
}

bool OracleSet::add(uint32_t v) {
    auto it = std::lower_bound(values_.begin(), values_.end(), v);
    if (it != values_.end() && *it == v) return false;
    values_.insert(it, v);
    return true;
}

bool OracleSet::remove(uint32_t v) {
    auto it = std::lower_bound(values_.begin(), values_.end(), v);
    if (it == values_.end() || *it != v) return false;
    values_.erase(it);
    return true;
}

void OracleSet::add_range(uint64_t lo, uint64_t hi) {
    if (lo >= hi) return;
    hi = std::min<uint64_t>(hi, uint64_t{1} << 32);
    std::vector<uint32_t> merged;
    merged.reserve(values_.size() + static_cast<size_t>(hi - lo));
    auto it = values_.begin();
    while (it != values_.end() && *it < lo) merged.push_back(*it++);
    for (uint64_t v = lo; v < hi; ++v) merged.push_back(static_cast<uint32_t>(v));
    while (it != values_.end() && *it < hi) ++it;
    while (it != values_.end()) merged.push_back(*it++);
    values_ = std::move(merged);
}

void OracleSet::remove_range(uint64_t lo, uint64_t hi) {
    if (lo >= hi) return;
    auto first = std::lower_bound(values_.begin(), values_.end(), lo);
    auto last = first;
    while (last != values_.end() && *last < hi) ++last;
    values_.erase(first, last);
}

void OracleSet::flip_range(uint64_t lo, uint64_t hi) {
    if (lo >= hi) return;
    hi = std::min<uint64_t>(hi, uint64_t{1} << 32);
    std::vector<uint32_t> next;
    next.reserve(values_.size() + static_cast<size_t>(hi - lo));
    auto it = values_.begin();
    while (it != values_.end() && *it < lo) next.push_back(*it++);
    for (uint64_t v = lo; v < hi; ++v) {
        const bool present = it != values_.end() && *it == v;
        if (present)
            ++it;
        else
            next.push_back(static_cast<uint32_t>(v));
    }
    while (it != values_.end()) next.push_back(*it++);
    values_ = std::move(next);
}

std::optional<uint32_t> OracleSet::min_value() const {
    if (values_.empty()) return std::nullopt;
    return values_.front();
}

std::optional<uint32_t> OracleSet::max_value() const {
    if (values_.empty()) return std::nullopt;
    return values_.back();
}

uint64_t OracleSet::rank(uint32_t v) const {
    return static_cast<uint64_t>(std::upper_bound(values_.begin(), values_.end(), v) -
                                 values_.begin());
}

uint32_t OracleSet::select(uint64_t n) const {
    if (n >= values_.size()) throw std::out_of_range("select index beyond set cardinality");
    return values_[static_cast<size_t>(n)];
}

bool OracleSet::intersects(const OracleSet& other) const {
    size_t i = 0, j = 0;
    while (i < values_.size() && j < other.values_.size()) {
        if (values_[i] == other.values_[j]) return true;
        if (values_[i] < other.values_[j])
            ++i;
        else
            ++j;
    }
    return false;
}

OracleSet operator&(const OracleSet& a, const OracleSet& b) {
    std::vector<uint32_t> out;
    std::set_intersection(a.values().begin(), a.values().end(), b.values().begin(),
                          b.values().end(), std::back_inserter(out));
    return OracleSet(std::move(out));
}

OracleSet operator|(const OracleSet& a, const OracleSet& b) {
    std::vector<uint32_t> out;
    std::set_union(a.values().begin(), a.values().end(), b.values().begin(), b.values().end(),
                   std::back_inserter(out));
    return OracleSet(std::move(out));
}

OracleSet operator^(const OracleSet& a, const OracleSet& b) {
    std::vector<uint32_t> out;
    std::set_symmetric_difference(a.values().begin(), a.values().end(), b.values().begin(),
                                  b.values().end(), std::back_inserter(out));
    return OracleSet(std::move(out));
}

OracleSet operator-(const OracleSet& a, const OracleSet& b) {
    std::vector<uint32_t> out;
    std::set_difference(a.values().begin(), a.values().end(), b.values().begin(), b.values().end(),
                        std::back_inserter(out));
    return OracleSet(std::move(out));
}

}  // namespace roaring
