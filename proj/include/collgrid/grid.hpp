#pragma once

// Grid geometry, active-site masks, entry schedules and the mask-composition
// transforms (diagonal repetition, skew-diagonal linking).
//
// Conventions used throughout the library:
//   * rows are numbered 1..L top to bottom, columns 1..L left to right
//   * horizontal streams enter at column 1 when moving Forward, column L when
//     moving Backward; vertical streams enter at row 1 / row L respectively
//   * generations and timesteps both start at 1; generation g enters at t = g

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace collgrid {

enum class Directive : std::uint8_t { Forward, Backward, Skip };

inline char directive_char(Directive d) {
    switch (d) {
    case Directive::Forward: return 'F';
    case Directive::Backward: return 'B';
    default: return 'S';
    }
}

struct GridSpec {
    int side_length = 1;  // L; the grid has N = L*L sites

    explicit GridSpec(int L = 1) : side_length(L) {
        if (L < 1) throw std::invalid_argument("GridSpec: side_length must be >= 1");
    }
    int sites() const { return side_length * side_length; }
};

// L x L boolean matrix of interaction sites, stored row-major.
struct ActiveMask {
    int side = 1;
    std::vector<char> cells;  // 1 = active, char instead of bool to keep plain references

    explicit ActiveMask(int L = 1, bool fill = false)
        : side(L), cells(static_cast<std::size_t>(L) * L, fill ? 1 : 0) {
        if (L < 1) throw std::invalid_argument("ActiveMask: side must be >= 1");
    }

    bool at(int r, int c) const {
        check(r, c);
        return cells[static_cast<std::size_t>(r - 1) * side + (c - 1)] != 0;
    }
    void set(int r, int c, bool v) {
        check(r, c);
        cells[static_cast<std::size_t>(r - 1) * side + (c - 1)] = v ? 1 : 0;
    }
    int active_count() const {
        int n = 0;
        for (char x : cells) n += (x != 0);
        return n;
    }
    bool operator==(const ActiveMask&) const = default;

private:
    void check(int r, int c) const {
        if (r < 1 || r > side || c < 1 || c > side)
            throw std::out_of_range("ActiveMask: site (" + std::to_string(r) + "," +
                                    std::to_string(c) + ") outside 1.." + std::to_string(side));
    }
};

inline ActiveMask all_active_mask(int L) { return ActiveMask(L, true); }

// Per-lane, per-generation stream directives. horizontal[r-1][g-1] is the
// directive for the row-r stream at generation g (same layout for columns).
// A lane simply has no entry for generations beyond its directive list.
struct EntrySchedule {
    std::vector<std::vector<Directive>> horizontal;
    std::vector<std::vector<Directive>> vertical;

    int lanes() const { return static_cast<int>(horizontal.size()); }
    int generations() const {
        std::size_t g = 0;
        for (const auto& lane : horizontal) g = std::max(g, lane.size());
        for (const auto& lane : vertical) g = std::max(g, lane.size());
        return static_cast<int>(g);
    }
    Directive directive(bool horizontal_axis, int lane, int g) const {
        const auto& side = horizontal_axis ? horizontal : vertical;
        if (lane < 1 || lane > static_cast<int>(side.size())) return Directive::Skip;
        const auto& dirs = side[static_cast<std::size_t>(lane - 1)];
        if (g < 1 || g > static_cast<int>(dirs.size())) return Directive::Skip;
        return dirs[static_cast<std::size_t>(g - 1)];
    }
    bool operator==(const EntrySchedule&) const = default;
};

// Basic scheme: every lane on both axes fires Forward at every generation 1..T.
inline EntrySchedule make_basic_schedule(const GridSpec& grid, int T) {
    if (T < 1) throw std::invalid_argument("make_basic_schedule: T must be >= 1");
    EntrySchedule s;
    std::vector<Directive> lane(static_cast<std::size_t>(T), Directive::Forward);
    s.horizontal.assign(static_cast<std::size_t>(grid.side_length), lane);
    s.vertical.assign(static_cast<std::size_t>(grid.side_length), lane);
    return s;
}

inline bool is_basic_schedule(const EntrySchedule& s) {
    auto all_forward = [](const std::vector<std::vector<Directive>>& side) {
        for (const auto& lane : side)
            for (Directive d : lane)
                if (d != Directive::Forward) return false;
        return true;
    };
    return all_forward(s.horizontal) && all_forward(s.vertical);
}

struct SimulationConfig {
    GridSpec grid;
    ActiveMask mask;
    EntrySchedule schedule;
    int total_timesteps = 1;   // T
    double edge_probability = 1.0;
    std::uint64_t rng_seed = 0;

    void validate() const {
        const int L = grid.side_length;
        if (mask.side != L)
            throw std::invalid_argument("SimulationConfig: mask side differs from grid side");
        if (static_cast<int>(schedule.horizontal.size()) != L ||
            static_cast<int>(schedule.vertical.size()) != L)
            throw std::invalid_argument("SimulationConfig: schedule lane count differs from grid side");
        if (total_timesteps < 1)
            throw std::invalid_argument("SimulationConfig: total_timesteps must be >= 1");
        if (!(edge_probability >= 0.0 && edge_probability <= 1.0))
            throw std::invalid_argument("SimulationConfig: edge_probability outside [0,1]");
    }
};

// k block copies of a B x B mask along the main diagonal of a (kB) x (kB)
// grid, everything else inactive.
inline ActiveMask repeat_diagonal(const ActiveMask& mask, int k) {
    if (k < 1) throw std::invalid_argument("repeat_diagonal: k must be >= 1");
    const int B = mask.side;
    ActiveMask out(B * k);
    for (int i = 0; i < k; ++i)
        for (int r = 1; r <= B; ++r)
            for (int c = 1; c <= B; ++c)
                if (mask.at(r, c)) out.set(i * B + r, i * B + c, true);
    return out;
}

// Join consecutive diagonal blocks by activating the two cells straddling each
// block corner: (iB, iB+1) and (iB+1, iB) for block pairs i, i+1.
inline ActiveMask link_skew(const ActiveMask& mask, int B) {
    if (B < 1 || mask.side % B != 0)
        throw std::invalid_argument("link_skew: side length is not a multiple of the block size");
    const int k = mask.side / B;
    if (k < 2) throw std::invalid_argument("link_skew: need at least 2 blocks");
    ActiveMask out = mask;
    for (int i = 1; i < k; ++i) {
        out.set(i * B, i * B + 1, true);
        out.set(i * B + 1, i * B, true);
    }
    return out;
}

}  // namespace collgrid
