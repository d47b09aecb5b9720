#pragma once

// Open-addressing hash set of fixed-width int32 tuples, numbered in insertion
// order. Used as the visited set of every breadth-first search.

#include <cstdint>
#include <cstring>
#include <utility>
#include <vector>

namespace sevenbh {

class TupleSet {
public:
    explicit TupleSet(std::size_t width) : width_(width == 0 ? 1 : width), table_(1024, kEmpty) {}

    std::size_t size() const { return count_; }
    std::size_t width() const { return width_; }
    const std::int32_t* at(std::uint32_t id) const { return pool_.data() + std::size_t{id} * width_; }

    // Returns the id of the tuple and whether it was newly inserted.
    std::pair<std::uint32_t, bool> insert(const std::int32_t* t) {
        if ((count_ + 1) * 2 > table_.size()) grow();
        std::size_t slot = hash(t) & (table_.size() - 1);
        while (table_[slot] != kEmpty) {
            if (std::memcmp(at(table_[slot]), t, width_ * sizeof(std::int32_t)) == 0)
                return {table_[slot], false};
            slot = (slot + 1) & (table_.size() - 1);
        }
        const auto id = static_cast<std::uint32_t>(count_++);
        pool_.insert(pool_.end(), t, t + width_);
        table_[slot] = id;
        return {id, true};
    }

    bool contains(const std::int32_t* t) const {
        std::size_t slot = hash(t) & (table_.size() - 1);
        while (table_[slot] != kEmpty) {
            if (std::memcmp(at(table_[slot]), t, width_ * sizeof(std::int32_t)) == 0) return true;
            slot = (slot + 1) & (table_.size() - 1);
        }
        return false;
    }

private:
    static constexpr std::uint32_t kEmpty = 0xffffffffu;

    std::uint64_t hash(const std::int32_t* t) const {
        std::uint64_t h = 0x9e3779b97f4a7c15ull;
        for (std::size_t i = 0; i < width_; ++i) {
            h ^= static_cast<std::uint32_t>(t[i]);
            h *= 0xff51afd7ed558ccdull;
            h ^= h >> 32;
        }
        return h;
    }

    void grow() {
        std::vector<std::uint32_t> bigger(table_.size() * 2, kEmpty);
        for (std::uint32_t id = 0; id < count_; ++id) {
            std::size_t slot = hash(at(id)) & (bigger.size() - 1);
            while (bigger[slot] != kEmpty) slot = (slot + 1) & (bigger.size() - 1);
            bigger[slot] = id;
        }
        table_.swap(bigger);
    }

    std::size_t width_;
    std::vector<std::uint32_t> table_;
    std::vector<std::int32_t> pool_;
    std::size_t count_ = 0;
};

}  // namespace sevenbh
