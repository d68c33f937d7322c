#pragma once

// O(1) weighted selection for the two non-uniform growth rules. Both the
// network grower and the tree growers use these, with identical push/select
// call sequences, which is what makes replay from a shared RNG stream exact.

#include <cstdint>
#include <vector>

#include "spnet/rng.hpp"

namespace spnet {

// Weight 1 + (times item attracted): one slot per weight unit.
class PreferentialSlots {
public:
    void clear() { slots_.clear(); }

    void add_item(std::int32_t i) { slots_.push_back(i); }

    // draw ~ weight; attraction raises the winner's weight by one, so it
    // gains a slot
    std::int32_t select_and_reinforce(Rng& rng) {
        std::int32_t i = slots_[rng.below(slots_.size())];
        slots_.push_back(i);
        return i;
    }

    std::size_t total_weight() const { return slots_.size(); }

private:
    std::vector<std::int32_t> slots_;
};

// Weight 2 - (times item attracted): two slots at birth, the drawn slot is
// retired, items at weight 0 are never drawn again.
class SaturationSlots {
public:
    void clear() { slots_.clear(); }

    void add_item(std::int32_t i) {
        slots_.push_back(i);
        slots_.push_back(i);
    }

    std::int32_t select_and_exhaust(Rng& rng) {
        std::size_t s = rng.below(slots_.size());
        std::int32_t i = slots_[s];
        slots_[s] = slots_.back();
        slots_.pop_back();
        return i;
    }

    std::size_t total_weight() const { return slots_.size(); }

private:
    std::vector<std::int32_t> slots_;
};

}  // namespace spnet
