#pragma once

// Stream kinematics: vertices advance one site per timestep along their lane,
// co-locations at active sites emit edge events. A run is fully deterministic
// given (config, seed); the probabilistic coin consumes exactly one uniform
// draw per collision event in event order, so runs at different p over the
// same seed share their draws (the coupling behind the monotonicity property).

#include <algorithm>
#include <array>
#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "collgrid/grid.hpp"

namespace collgrid {

enum class Axis : std::uint8_t { H, V };

struct VertexTag {
    Axis axis = Axis::H;
    int lane = 1;        // row for H, column for V
    int generation = 1;  // entry timestep
    Directive direction = Directive::Forward;  // Forward or Backward, never Skip

    // (axis, lane, generation) identifies a vertex; direction rides along.
    friend auto operator<=>(const VertexTag& a, const VertexTag& b) {
        return std::tie(a.axis, a.lane, a.generation) <=> std::tie(b.axis, b.lane, b.generation);
    }
    friend bool operator==(const VertexTag& a, const VertexTag& b) {
        return (a <=> b) == 0;
    }
};

// Conserved component key of the basic scheme.
inline long long kappa(const VertexTag& v) { return static_cast<long long>(v.generation) - v.lane; }

inline std::string tag_label(const VertexTag& v) {
    return std::string(v.axis == Axis::H ? "H." : "V.") + std::to_string(v.lane) + "." +
           std::to_string(v.generation);
}

// Closed-form location of a vertex at timestep t, or nothing when it has not
// entered yet (t < g) or already left (t > g + L - 1).
inline std::optional<std::pair<int, int>> position(const VertexTag& v, int t, int L) {
    if (t < 1) throw std::invalid_argument("position: t must be >= 1");
    const int k = t - v.generation;  // sites already traversed
    if (k < 0 || k >= L) return std::nullopt;
    const int along = v.direction == Directive::Forward ? k + 1 : L - k;
    if (v.axis == Axis::H) return std::make_pair(v.lane, along);
    return std::make_pair(along, v.lane);
}

struct EdgeEvent {
    VertexTag a, b;  // normalized so a < b
    int row = 0, col = 0;
    int timestep = 0;
    bool formed = false;  // false when the coin failed or the pair was already linked

    EdgeEvent() = default;
    EdgeEvent(VertexTag x, VertexTag y, int r, int c, int t, bool f)
        : a(x), b(y), row(r), col(c), timestep(t), formed(f) {
        if (b < a) std::swap(a, b);
        if (a == b) throw std::invalid_argument("EdgeEvent: endpoints must be distinct");
    }
    std::pair<VertexTag, VertexTag> pair() const { return {a, b}; }
};

struct RunTrace {
    SimulationConfig config;
    std::vector<EdgeEvent> events;    // sorted by (t, row, col, endpoints)
    std::vector<VertexTag> roster;    // every vertex that entered, sorted
    std::vector<VertexTag> complete;  // subset that fully traversed by T, sorted
};

namespace detail {

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

// 53-bit uniform in [0, 1); u < p is then exact at both endpoints.
inline double uniform_draw(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

}  // namespace detail

// Deterministic derived seeds for Monte Carlo streams.
inline std::uint64_t mix_seed(std::uint64_t base, std::uint64_t a) {
    return detail::splitmix64(base ^ detail::splitmix64(a + 0x51ed270b7a3fca42ULL));
}
inline std::uint64_t mix_seed(std::uint64_t base, std::uint64_t a, std::uint64_t b) {
    return mix_seed(mix_seed(base, a), b);
}

// Vertices scheduled to enter (directive != Skip, g <= T), sorted.
inline std::vector<VertexTag> scheduled_roster(const SimulationConfig& config) {
    std::vector<VertexTag> roster;
    const int L = config.grid.side_length;
    const int T = config.total_timesteps;
    for (Axis axis : {Axis::H, Axis::V}) {
        for (int lane = 1; lane <= L; ++lane) {
            for (int g = 1; g <= T; ++g) {
                Directive d = config.schedule.directive(axis == Axis::H, lane, g);
                if (d == Directive::Skip) continue;
                roster.push_back(VertexTag{axis, lane, g, d});
            }
        }
    }
    std::sort(roster.begin(), roster.end());
    return roster;
}

// Advance all streams through timesteps 1..T and log every collision event.
inline RunTrace run(const SimulationConfig& config) {
    config.validate();
    const int L = config.grid.side_length;
    const int T = config.total_timesteps;
    const double p = config.edge_probability;

    RunTrace trace;
    trace.config = config;
    trace.roster = scheduled_roster(config);
    for (const VertexTag& v : trace.roster)
        if (v.generation + L - 1 <= T) trace.complete.push_back(v);

    std::mt19937_64 rng(config.rng_seed);
    std::set<std::pair<VertexTag, VertexTag>> linked;

    for (int t = 1; t <= T; ++t) {
        // Bucket the vertices currently on the grid by site, row-major.
        std::map<std::pair<int, int>, std::vector<VertexTag>> occupancy;
        for (const VertexTag& v : trace.roster) {
            if (t < v.generation || t > v.generation + L - 1) continue;
            if (auto site = position(v, t, L)) occupancy[*site].push_back(v);
        }
        for (auto& [site, tags] : occupancy) {
            if (!config.mask.at(site.first, site.second)) continue;
            if (tags.size() < 2) continue;
            if (tags.size() > 4)
                throw std::logic_error("run: more than 4 vertices at one site (engine invariant)");
            std::sort(tags.begin(), tags.end());
            for (std::size_t i = 0; i < tags.size(); ++i) {
                for (std::size_t j = i + 1; j < tags.size(); ++j) {
                    const double u = detail::uniform_draw(rng);  // consumed unconditionally
                    auto key = std::minmax(tags[i], tags[j]);
                    const bool duplicate = linked.count(key) != 0;
                    const bool formed = !duplicate && u < p;
                    if (formed) linked.insert(key);
                    trace.events.emplace_back(tags[i], tags[j], site.first, site.second, t, formed);
                }
            }
        }
    }
    return trace;
}

}  // namespace collgrid
