#pragma once

// Mask/schedule search: re-derives the active-site grids behind the catalogue
// topologies. Exhaustive and lexicographic up to L = 4 so results are
// reproducible artifacts; seeded random sampling beyond that.

#include "collgrid/analysis.hpp"

namespace collgrid {

enum class Scheme : std::uint8_t { Basic, Extended };

struct SearchResult {
    ActiveMask mask;
    EntrySchedule schedule;
    int T = 0;
    int matched_component_count = 0;  // copies inside the certification scope
    int complete_copies = 0;          // complete non-isolated target copies in the whole graph
};

// Odd lanes stream Forward, even lanes Backward, on both axes.
inline EntrySchedule per_lane_alternating_schedule(const GridSpec& grid, int T) {
    if (T < 1) throw std::invalid_argument("per_lane_alternating_schedule: T must be >= 1");
    EntrySchedule s;
    for (int lane = 1; lane <= grid.side_length; ++lane) {
        Directive d = lane % 2 == 1 ? Directive::Forward : Directive::Backward;
        s.horizontal.emplace_back(static_cast<std::size_t>(T), d);
        s.vertical.emplace_back(static_cast<std::size_t>(T), d);
    }
    return s;
}

// Horizontal streams Forward, vertical streams Backward.
inline EntrySchedule per_axis_alternating_schedule(const GridSpec& grid, int T) {
    if (T < 1) throw std::invalid_argument("per_axis_alternating_schedule: T must be >= 1");
    EntrySchedule s;
    s.horizontal.assign(static_cast<std::size_t>(grid.side_length),
                        std::vector<Directive>(static_cast<std::size_t>(T), Directive::Forward));
    s.vertical.assign(static_cast<std::size_t>(grid.side_length),
                      std::vector<Directive>(static_cast<std::size_t>(T), Directive::Backward));
    return s;
}

inline std::vector<EntrySchedule> schedule_family(const GridSpec& grid, int T, Scheme scheme) {
    std::vector<EntrySchedule> family{make_basic_schedule(grid, T)};
    if (scheme == Scheme::Extended) {
        family.push_back(per_lane_alternating_schedule(grid, T));
        family.push_back(per_axis_alternating_schedule(grid, T));
    }
    return family;
}

// Lexicographic mask order: masks read row-major as strings with '.' < '#',
// so index 0 is all-inactive and the all-active mask comes last.
inline ActiveMask mask_from_lex_index(int L, std::uint64_t index) {
    ActiveMask mask(L);
    const int cells = L * L;
    for (int idx = 0; idx < cells; ++idx)
        if ((index >> (cells - 1 - idx)) & 1ULL) mask.set(idx / L + 1, idx % L + 1, true);
    return mask;
}

namespace detail {

struct CertifiedMatch {
    int matched = 0;
    int complete_copies = 0;
};

// Does this exact configuration produce the target? Basic scheme: every
// interior complete component must classify as the target. Extended scheme:
// some steady-state window must classify entirely as the target.
inline std::optional<CertifiedMatch> certify_config(const SimulationConfig& cfg, const TopologyClass& target) {
    RunTrace trace = run(cfg);
    LabeledGraph graph = extract_graph(trace);

    auto pieces_match = [&](const std::vector<Component>& pieces) {
        if (pieces.empty()) return false;
        for (const Component& c : pieces)
            if (c.graph.n > 64 || !topology_matches(classify(c.graph), target)) return false;
        return true;
    };

    int matched = -1;
    if (is_basic_schedule(cfg.schedule)) {
        std::vector<Component> scope = interior_components(graph);
        if (pieces_match(scope)) matched = static_cast<int>(scope.size());
    } else {
        const int L = cfg.grid.side_length, T = cfg.total_timesteps;
        for (int t0 = 1; T >= 2 * L && t0 <= T - 2 * L + 1; ++t0) {
            std::vector<Component> pieces = window_components(trace, graph, t0);
            if (pieces.empty()) break;
            if (pieces_match(pieces)) {
                matched = static_cast<int>(pieces.size());
                break;
            }
        }
    }
    if (matched < 0) return std::nullopt;

    CertifiedMatch result;
    result.matched = matched;
    for (const Component& c : split_components(graph))
        if (c.complete && c.order() >= 2 && c.graph.n <= 64 && topology_matches(classify(c.graph), target))
            ++result.complete_copies;
    return result;
}

}  // namespace detail

// First (mask, schedule) in deterministic order whose run produces the target
// topology; nothing if the budget runs out first. Exhaustive and lexicographic
// for L <= 4, seeded random masks beyond.
inline std::optional<SearchResult> search_pattern(const TopologyClass& target, int L, int T, Scheme scheme,
                                                  std::uint64_t budget, std::uint64_t seed = 0) {
    if (budget == 0) throw std::invalid_argument("search_pattern: budget must be >= 1");
    GridSpec grid(L);
    if (T < 1) throw std::invalid_argument("search_pattern: T must be >= 1");
    std::vector<EntrySchedule> family = schedule_family(grid, T, scheme);

    const bool exhaustive = L <= 4;
    const std::uint64_t mask_space = exhaustive ? (1ULL << (L * L)) : 0;
    const std::uint64_t mask_count = exhaustive ? std::min(budget, mask_space) : budget;
    std::mt19937_64 mask_rng(seed);

    for (std::uint64_t i = 0; i < mask_count; ++i) {
        ActiveMask mask(L);
        if (exhaustive) {
            mask = mask_from_lex_index(L, i);
        } else {
            for (int r = 1; r <= L; ++r)
                for (int c = 1; c <= L; ++c) mask.set(r, c, (mask_rng() & 1ULL) != 0);
        }
        for (const EntrySchedule& schedule : family) {
            SimulationConfig cfg;
            cfg.grid = grid;
            cfg.mask = mask;
            cfg.schedule = schedule;
            cfg.total_timesteps = T;
            cfg.edge_probability = 1.0;
            cfg.rng_seed = seed;
            if (auto match = detail::certify_config(cfg, target)) {
                SearchResult result;
                result.mask = mask;
                result.schedule = schedule;
                result.T = T;
                result.matched_component_count = match->matched;
                result.complete_copies = match->complete_copies;
                return result;
            }
        }
    }
    return std::nullopt;
}

}  // namespace collgrid
