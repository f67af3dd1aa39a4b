#include <catch2/catch_amalgamated.hpp>

#include <random>
#include <set>
#include <stdexcept>
#include <tuple>
#include <vector>

#include "collgrid/stream.hpp"
#include "support/helpers.hpp"
#include "support/walker_oracle.hpp"

using namespace collgrid;

namespace {

using EventKey = std::tuple<int, int, int, std::string, std::string>;

std::vector<EventKey> keys_of(const std::vector<EdgeEvent>& events) {
    std::vector<EventKey> out;
    for (const auto& e : events)
        out.emplace_back(e.timestep, e.row, e.col, tag_label(e.a), tag_label(e.b));
    return out;
}

std::vector<EventKey> keys_of(const std::vector<testsup::WalkerEvent>& events) {
    std::vector<EventKey> out;
    for (const auto& e : events)
        out.emplace_back(e.timestep, e.row, e.col, tag_label(e.a), tag_label(e.b));
    return out;
}

// Random directive strings per lane; roughly half Skip so streams are sparse.
SimulationConfig random_config(std::mt19937_64& rng) {
    int L = 1 + int(rng() % 4);
    int T = 2 + int(rng() % 9);
    SimulationConfig cfg;
    cfg.grid = GridSpec(L);
    cfg.mask = ActiveMask(L);
    for (int r = 1; r <= L; ++r)
        for (int c = 1; c <= L; ++c)
            if (rng() & 1) cfg.mask.set(r, c, true);
    auto random_lane = [&] {
        std::vector<Directive> dirs;
        for (int g = 1; g <= T; ++g) {
            switch (rng() % 4) {
            case 0: dirs.push_back(Directive::Forward); break;
            case 1: dirs.push_back(Directive::Backward); break;
            default: dirs.push_back(Directive::Skip); break;
            }
        }
        return dirs;
    };
    for (int lane = 0; lane < L; ++lane) {
        cfg.schedule.horizontal.push_back(random_lane());
        cfg.schedule.vertical.push_back(random_lane());
    }
    cfg.total_timesteps = T;
    cfg.edge_probability = 1.0;
    cfg.rng_seed = rng();
    return cfg;
}

}  // namespace

TEST_CASE("position follows the closed-form trajectory", "[stream]") {
    const int L = 4;
    VertexTag hf{Axis::H, 2, 3, Directive::Forward};
    CHECK(position(hf, 3, L) == std::make_pair(2, 1));
    CHECK(position(hf, 5, L) == std::make_pair(2, 3));
    CHECK(position(hf, 6, L) == std::make_pair(2, 4));
    CHECK_FALSE(position(hf, 2, L).has_value());   // not entered yet
    CHECK_FALSE(position(hf, 7, L).has_value());   // already left

    VertexTag hb{Axis::H, 1, 2, Directive::Backward};
    CHECK(position(hb, 2, L) == std::make_pair(1, 4));
    CHECK(position(hb, 5, L) == std::make_pair(1, 1));

    VertexTag vf{Axis::V, 3, 1, Directive::Forward};
    CHECK(position(vf, 1, L) == std::make_pair(1, 3));
    CHECK(position(vf, 4, L) == std::make_pair(4, 3));

    VertexTag vb{Axis::V, 2, 4, Directive::Backward};
    CHECK(position(vb, 4, L) == std::make_pair(4, 2));
    CHECK(position(vb, 7, L) == std::make_pair(1, 2));

    CHECK_THROWS_AS(position(hf, 0, L), std::invalid_argument);
}

TEST_CASE("kappa and labels", "[stream]") {
    CHECK(kappa(VertexTag{Axis::H, 1, 1, Directive::Forward}) == 0);
    CHECK(kappa(VertexTag{Axis::H, 2, 1, Directive::Forward}) == -1);
    CHECK(kappa(VertexTag{Axis::V, 1, 3, Directive::Forward}) == 2);
    CHECK(tag_label(VertexTag{Axis::H, 1, 1, Directive::Forward}) == "H.1.1");
    CHECK(tag_label(VertexTag{Axis::V, 2, 5, Directive::Backward}) == "V.2.5");
}

TEST_CASE("edge events normalize their endpoints", "[stream]") {
    VertexTag h{Axis::H, 1, 1, Directive::Forward};
    VertexTag v{Axis::V, 1, 1, Directive::Forward};
    EdgeEvent e(v, h, 1, 1, 1, true);
    CHECK(e.a == h);  // H sorts before V
    CHECK(e.b == v);
    CHECK_THROWS_AS(EdgeEvent(h, h, 1, 1, 1, true), std::invalid_argument);
}

TEST_CASE("first timestep of the all-active 2x2 run", "[stream]") {
    RunTrace trace = run(testsup::basic_config(2, 1));
    REQUIRE(trace.events.size() == 1);
    const EdgeEvent& e = trace.events[0];
    CHECK(e.timestep == 1);
    CHECK(e.row == 1);
    CHECK(e.col == 1);
    CHECK(tag_label(e.a) == "H.1.1");
    CHECK(tag_label(e.b) == "V.1.1");
    CHECK(e.formed);
}

TEST_CASE("second timestep fills every site of the 2x2 grid", "[stream]") {
    RunTrace trace = run(testsup::basic_config(2, 2));
    std::vector<EventKey> expected = {
        {1, 1, 1, "H.1.1", "V.1.1"},
        {2, 1, 1, "H.1.2", "V.1.2"},
        {2, 1, 2, "H.1.1", "V.2.2"},
        {2, 2, 1, "H.2.2", "V.1.1"},
        {2, 2, 2, "H.2.1", "V.2.1"},
    };
    CHECK(keys_of(trace.events) == expected);
}

TEST_CASE("all-active 2x2 run over three timesteps", "[stream]") {
    // Reference values cross-checked against the cell-stepping oracle below.
    RunTrace trace = run(testsup::basic_config(2, 3));
    CHECK(trace.roster.size() == 12);
    CHECK(trace.complete.size() == 8);
    REQUIRE(trace.events.size() == 9);
    for (const auto& e : trace.events) CHECK(e.formed);

    testsup::WalkerResult oracle = testsup::walk(trace.config);
    CHECK(keys_of(trace.events) == keys_of(oracle.events));
    CHECK(trace.roster == oracle.roster);
    CHECK(trace.complete == oracle.complete);

    // Completion is exactly "entered early enough to cross": g + L - 1 <= T.
    for (const auto& v : trace.roster) {
        bool expect = v.generation + 1 <= 3;
        bool got = std::binary_search(trace.complete.begin(), trace.complete.end(), v);
        CHECK(got == expect);
    }
}

TEST_CASE("single-site grid pairs the two streams of each generation", "[stream]") {
    RunTrace trace = run(testsup::basic_config(1, 2));
    std::vector<EventKey> expected = {
        {1, 1, 1, "H.1.1", "V.1.1"},
        {2, 1, 1, "H.1.2", "V.1.2"},
    };
    CHECK(keys_of(trace.events) == expected);
    CHECK(trace.complete.size() == 4);  // L = 1: every entrant finishes immediately
}

TEST_CASE("inactive sites emit nothing", "[stream]") {
    SimulationConfig cfg = testsup::with_mask(testsup::basic_config(2, 5), ActiveMask(2));
    RunTrace trace = run(cfg);
    CHECK(trace.events.empty());
    CHECK(trace.roster.size() == 20);
}

TEST_CASE("zero probability records events without forming edges", "[stream]") {
    RunTrace trace = run(testsup::basic_config(2, 3, 0.0));
    REQUIRE(trace.events.size() == 9);
    for (const auto& e : trace.events) CHECK_FALSE(e.formed);
}

TEST_CASE("engine agrees with the cell-stepping oracle on random configs", "[stream]") {
    std::mt19937_64 rng(2026);
    for (int iter = 0; iter < 60; ++iter) {
        SimulationConfig cfg = random_config(rng);
        RunTrace trace = run(cfg);
        testsup::WalkerResult oracle = testsup::walk(cfg);
        REQUIRE(keys_of(trace.events) == keys_of(oracle.events));
        REQUIRE(trace.roster == oracle.roster);
        REQUIRE(trace.complete == oracle.complete);
    }
}

TEST_CASE("collision law for the basic scheme", "[stream]") {
    std::mt19937_64 rng(7);
    for (int iter = 0; iter < 25; ++iter) {
        int L = 2 + int(rng() % 3);
        int T = 2 + int(rng() % 12);
        RunTrace trace = run(testsup::basic_config(L, T, 1.0, rng()));
        for (const auto& e : trace.events) {
            REQUIRE(e.a.axis == Axis::H);
            REQUIRE(e.b.axis == Axis::V);
            // Both arrivals land on the same site one step after their sum clock.
            CHECK(e.a.generation + e.col == e.timestep + 1);
            CHECK(e.b.generation + e.row == e.timestep + 1);
            CHECK(kappa(e.a) == kappa(e.b));
        }
    }
}

TEST_CASE("no unordered pair ever meets twice", "[stream]") {
    std::mt19937_64 rng(99);
    for (int iter = 0; iter < 40; ++iter) {
        SimulationConfig cfg = random_config(rng);
        RunTrace trace = run(cfg);
        std::set<std::pair<VertexTag, VertexTag>> seen;
        for (const auto& e : trace.events) {
            CHECK(seen.insert(e.pair()).second);
        }
    }
}

TEST_CASE("events arrive sorted by time then site", "[stream]") {
    std::mt19937_64 rng(4);
    for (int iter = 0; iter < 20; ++iter) {
        RunTrace trace = run(random_config(rng));
        auto order = [](const EdgeEvent& e) {
            return std::make_tuple(e.timestep, e.row, e.col, e.a, e.b);
        };
        CHECK(std::is_sorted(trace.events.begin(), trace.events.end(),
                             [&](const EdgeEvent& x, const EdgeEvent& y) {
                                 return order(x) < order(y);
                             }));
    }
}

TEST_CASE("runs are reproducible", "[stream]") {
    SimulationConfig cfg = testsup::basic_config(3, 8, 0.4, 12345);
    RunTrace a = run(cfg);
    RunTrace b = run(cfg);
    REQUIRE(a.events.size() == b.events.size());
    for (std::size_t i = 0; i < a.events.size(); ++i) {
        CHECK(a.events[i].pair() == b.events[i].pair());
        CHECK(a.events[i].formed == b.events[i].formed);
    }
}

TEST_CASE("shared seeds couple runs monotonically in p", "[stream]") {
    std::mt19937_64 rng(31);
    for (int iter = 0; iter < 10; ++iter) {
        SimulationConfig cfg = testsup::basic_config(2 + int(rng() % 3), 6 + int(rng() % 6));
        cfg.rng_seed = rng();
        std::set<std::pair<VertexTag, VertexTag>> prev;
        for (double p : {0.0, 0.25, 0.5, 0.75, 1.0}) {
            cfg.edge_probability = p;
            RunTrace trace = run(cfg);
            std::set<std::pair<VertexTag, VertexTag>> formed;
            for (const auto& e : trace.events)
                if (e.formed) formed.insert(e.pair());
            for (const auto& pr : prev) CHECK(formed.count(pr) == 1);
            prev = std::move(formed);
        }
    }
}

TEST_CASE("derived seeds are deterministic and spread out", "[stream]") {
    CHECK(mix_seed(1, 2) == mix_seed(1, 2));
    CHECK(mix_seed(1, 2, 3) == mix_seed(1, 2, 3));
    std::set<std::uint64_t> seeds;
    for (std::uint64_t a = 0; a < 100; ++a) {
        seeds.insert(mix_seed(42, a));
        seeds.insert(mix_seed(43, a));
        seeds.insert(mix_seed(42, a, 1));
    }
    CHECK(seeds.size() == 300);
}
