#pragma once

#include <cstdint>

#include "zerosum/atoms.hpp"

namespace zerosum {

inline uint64_t apply_to_mask(const Automorphism& f, uint64_t mask) {
    uint64_t out = 0;
    while (mask) {
        size_t i = static_cast<size_t>(__builtin_ctzll(mask));
        mask &= mask - 1;
        out |= uint64_t(1) << f.image[i];
    }
    return out;
}

/// Smallest image of the subset under the verified automorphisms; subsets
/// with equal canonical form have identical atom structure, so one
/// representative per orbit suffices in sweeps.
inline uint64_t canonical_mask(const std::vector<Automorphism>& maps, uint64_t mask) {
    uint64_t best = mask;
    for (const auto& f : maps) best = std::min(best, apply_to_mask(f, mask));
    return best;
}

/// All canonical nonempty subsets of the universe, ascending.
inline std::vector<uint64_t> orbit_representatives(const std::vector<Automorphism>& maps,
                                                   uint64_t universe) {
    std::vector<uint64_t> reps;
    for (uint64_t mask = universe; mask; mask = (mask - 1) & universe)
        if (canonical_mask(maps, mask) == mask) reps.push_back(mask);
    std::sort(reps.begin(), reps.end());
    return reps;
}

/// Closure of the generators (by index bitmask) under addition, as a bitmask.
inline uint64_t subgroup_mask(const GroupTables& t, uint64_t gens) {
    uint64_t closed = (uint64_t(1) << t.zero_index) | gens;
    while (true) {
        uint64_t next = closed;
        uint64_t scan = closed;
        while (scan) {
            size_t x = static_cast<size_t>(__builtin_ctzll(scan));
            scan &= scan - 1;
            next |= t.shifted(closed, x);
        }
        if (next == closed) return closed;
        closed = next;
    }
}

}  // namespace zerosum
