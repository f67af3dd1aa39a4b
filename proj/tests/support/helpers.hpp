#pragma once

// Shared helpers for the test binaries: quick config construction and a few
// mask builders. Kept header-only and dependency-free on purpose.

#include <initializer_list>
#include <utility>

#include "collgrid/grid.hpp"
#include "collgrid/stream.hpp"

namespace testsup {

inline collgrid::ActiveMask mask_of(int L, std::initializer_list<std::pair<int, int>> sites) {
    collgrid::ActiveMask mask(L);
    for (auto [r, c] : sites) mask.set(r, c, true);
    return mask;
}

inline collgrid::SimulationConfig basic_config(int L, int T, double p = 1.0,
                                               std::uint64_t seed = 0) {
    collgrid::SimulationConfig cfg;
    cfg.grid = collgrid::GridSpec(L);
    cfg.mask = collgrid::all_active_mask(L);
    cfg.schedule = collgrid::make_basic_schedule(cfg.grid, T);
    cfg.total_timesteps = T;
    cfg.edge_probability = p;
    cfg.rng_seed = seed;
    return cfg;
}

inline collgrid::SimulationConfig with_mask(collgrid::SimulationConfig cfg, collgrid::ActiveMask mask) {
    cfg.mask = std::move(mask);
    return cfg;
}

}  // namespace testsup
