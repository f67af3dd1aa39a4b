#pragma once

// Quantitative checks of the scheme's claims: structure counts, size/degree
// bounds, steady-state windows for the extended scheme, percolation sweeps
// with probabilistic edges, and multi-copy redundancy statistics.

#include <cmath>
#include <functional>
#include <limits>
#include <thread>

#include "collgrid/topology.hpp"

namespace collgrid {

struct CountReport {
    int T = 0, L = 0;
    int components_total = 0;
    int components_complete = 0;
    int components_incomplete = 0;
    int components_interior = 0;  // complete, non-isolated, kappa >= 0 (boundary fragments excluded)
    int isolated_vertices = 0;    // real streamed qubits, reported separately
    int max_component_order = 0;  // over complete components
    int max_degree = 0;
    int copies_of_modal_topology = 0;
    std::string modal_topology;   // empty when nothing classifiable is complete
};

namespace detail {

inline std::string class_string_guarded(const SimpleGraph& g) {
    if (g.n > 64) return "Oversize(" + std::to_string(g.n) + ")";
    return topology_to_string(classify(g));
}

}  // namespace detail

// Components of the subgraph induced on the vertices accepted by `keep`
// (indices into graph.vertices). Order-1 pieces are dropped: isolated
// vertices never take part in topology matching.
inline std::vector<Component> induced_components(const LabeledGraph& graph,
                                                 const std::function<bool(int)>& keep) {
    std::vector<int> selected;
    std::vector<int> remap(static_cast<std::size_t>(graph.order()), -1);
    for (int i = 0; i < graph.order(); ++i)
        if (keep(i)) {
            remap[static_cast<std::size_t>(i)] = static_cast<int>(selected.size());
            selected.push_back(i);
        }
    const int n = static_cast<int>(selected.size());
    UnionFind uf(n);
    std::vector<std::pair<int, int>> kept_edges;
    for (auto [a, b] : graph.edges) {
        int ra = remap[static_cast<std::size_t>(a)], rb = remap[static_cast<std::size_t>(b)];
        if (ra == -1 || rb == -1) continue;
        kept_edges.emplace_back(ra, rb);
        uf.unite(ra, rb);
    }
    std::map<int, int> root_to_id;
    std::vector<int> comp_of(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i)
        comp_of[static_cast<std::size_t>(i)] =
            root_to_id.emplace(uf.find(i), static_cast<int>(root_to_id.size())).first->second;

    std::vector<Component> comps(root_to_id.size());
    std::vector<int> local(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        Component& c = comps[static_cast<std::size_t>(comp_of[static_cast<std::size_t>(i)])];
        local[static_cast<std::size_t>(i)] = static_cast<int>(c.tags.size());
        c.tags.push_back(graph.vertices[static_cast<std::size_t>(selected[static_cast<std::size_t>(i)])]);
        c.complete = true;  // refined below from per-vertex flags
    }
    for (std::size_t ci = 0; ci < comps.size(); ++ci)
        comps[ci].graph = SimpleGraph(static_cast<int>(comps[ci].tags.size()));
    for (int i = 0; i < n; ++i) {
        int gi = selected[static_cast<std::size_t>(i)];
        if (!graph.vertex_complete[static_cast<std::size_t>(gi)])
            comps[static_cast<std::size_t>(comp_of[static_cast<std::size_t>(i)])].complete = false;
    }
    for (auto [ra, rb] : kept_edges) {
        int ci = comp_of[static_cast<std::size_t>(ra)];
        comps[static_cast<std::size_t>(ci)].graph.add_edge(local[static_cast<std::size_t>(ra)],
                                                           local[static_cast<std::size_t>(rb)]);
    }
    std::erase_if(comps, [](const Component& c) { return c.order() < 2; });
    for (Component& c : comps) {
        std::set<long long> ks;
        for (const VertexTag& v : c.tags) ks.insert(kappa(v));
        c.kappas.assign(ks.begin(), ks.end());
    }
    return comps;
}

// Steady-state window: vertices whose whole grid transit fits in [t0, T-L],
// i.e. complete vertices with t0 <= g <= T - 2L + 1.
inline std::vector<Component> window_components(const RunTrace& trace, const LabeledGraph& graph, int t0) {
    const int L = trace.config.grid.side_length;
    const int T = trace.config.total_timesteps;
    const int g_hi = T - 2 * L + 1;
    return induced_components(graph, [&](int i) {
        const VertexTag& v = graph.vertices[static_cast<std::size_t>(i)];
        return graph.vertex_complete[static_cast<std::size_t>(i)] && v.generation >= t0 &&
               v.generation <= g_hi;
    });
}

// Basic-scheme certification scope: complete, non-isolated components whose
// conserved key is interior (kappa >= 0); early boundary fragments excluded.
inline std::vector<Component> interior_components(const LabeledGraph& graph) {
    std::vector<Component> out;
    for (Component& c : split_components(graph))
        if (c.complete && c.order() >= 2 && c.kappas.front() >= 0) out.push_back(std::move(c));
    return out;
}

inline CountReport count_structures(const RunTrace& trace) {
    CountReport report;
    report.T = trace.config.total_timesteps;
    report.L = trace.config.grid.side_length;

    LabeledGraph graph = extract_graph(trace);
    std::vector<Component> comps = split_components(graph);
    report.components_total = static_cast<int>(comps.size());

    std::vector<int> deg(static_cast<std::size_t>(graph.order()), 0);
    for (auto [a, b] : graph.edges) ++deg[static_cast<std::size_t>(a)], ++deg[static_cast<std::size_t>(b)];
    for (int d : deg) report.max_degree = std::max(report.max_degree, d);

    std::map<std::string, int> class_counts;
    for (const Component& c : comps) {
        if (c.order() == 1) ++report.isolated_vertices;
        if (!c.complete) {
            ++report.components_incomplete;
            continue;
        }
        ++report.components_complete;
        report.max_component_order = std::max(report.max_component_order, c.order());
        if (c.order() >= 2) {
            if (c.kappas.front() >= 0) ++report.components_interior;
            ++class_counts[detail::class_string_guarded(c.graph)];
        }
    }
    for (const auto& [name, count] : class_counts) {
        if (count > report.copies_of_modal_topology) {
            report.copies_of_modal_topology = count;
            report.modal_topology = name;
        }
    }
    return report;
}

// The explicit size/degree caps: complete components hold at most 2L vertices
// and no vertex ever forms more than L edges.
inline std::vector<std::string> check_bounds(const CountReport& report) {
    std::vector<std::string> violations;
    if (report.max_component_order > 2 * report.L)
        violations.push_back("complete component of order " + std::to_string(report.max_component_order) +
                             " exceeds 2L = " + std::to_string(2 * report.L));
    if (report.max_degree > report.L)
        violations.push_back("vertex degree " + std::to_string(report.max_degree) +
                             " exceeds L = " + std::to_string(report.L));
    return violations;
}

// Smallest t0 whose window is nonempty and classifies entirely as `target`.
// Reported alongside the scheme's promised 2L budget by callers.
inline int steady_state_overhead(const SimulationConfig& config, const TopologyClass& target) {
    config.validate();
    const int L = config.grid.side_length;
    const int T = config.total_timesteps;
    if (T < 2 * L) throw no_steady_state("steady_state_overhead: window is empty (T < 2L)");
    RunTrace trace = run(config);
    LabeledGraph graph = extract_graph(trace);
    for (int t0 = 1; t0 <= T - 2 * L + 1; ++t0) {
        std::vector<Component> pieces = window_components(trace, graph, t0);
        if (pieces.empty()) break;  // windows only shrink as t0 grows
        bool all = true;
        for (const Component& c : pieces) {
            if (c.graph.n > 64 || !topology_matches(classify(c.graph), target)) {
                all = false;
                break;
            }
        }
        if (all) return t0;
    }
    throw no_steady_state("steady_state_overhead: no window classifies as " + topology_to_string(target));
}

enum class TrialProperty {
    ComponentComplete,  // at least one reference copy survives connected
    SpansTargetOrder,   // some component reaches the reference copy's order
};

struct PercolationPoint {
    double p = 0.0;
    int trials = 0;
    int successes = 0;
    double fraction = 0.0;
    long long intact_copies = 0;  // summed over trials, for the redundancy stats
};

struct PercolationReport {
    std::vector<PercolationPoint> points;
    int copy_count = 0;           // M: reference copies at p = 1
    int copy_order = 0;
    std::string copy_topology;
    double p_critical = std::numeric_limits<double>::quiet_NaN();
    std::vector<std::vector<char>> trial_success;  // [point][trial]
};

// Probability that at least one of M independent copies is intact.
inline double redundancy_stats(int copies, double q) {
    if (copies < 1) throw std::invalid_argument("redundancy_stats: copies must be >= 1");
    if (!(q >= 0.0 && q <= 1.0)) throw std::invalid_argument("redundancy_stats: q outside [0,1]");
    return 1.0 - std::pow(1.0 - q, copies);
}

namespace detail {

// Reference copies: the certification-scope components of the deterministic
// p = 1 run, filtered to the modal topology.
inline std::vector<std::vector<int>> reference_copies(const SimulationConfig& config, int& copy_order,
                                                      std::string& copy_topology) {
    SimulationConfig ref = config;
    ref.edge_probability = 1.0;
    RunTrace trace = run(ref);
    LabeledGraph graph = extract_graph(trace);

    std::vector<Component> cands;
    if (is_basic_schedule(config.schedule)) {
        cands = interior_components(graph);
    } else {
        const int L = config.grid.side_length, T = config.total_timesteps;
        for (int t0 = 1; T >= 2 * L && t0 <= T - 2 * L + 1 && cands.empty(); ++t0)
            cands = window_components(trace, graph, t0);
    }
    if (cands.empty()) return {};

    std::map<std::string, int> counts;
    for (const Component& c : cands) ++counts[class_string_guarded(c.graph)];
    int best = 0;
    for (const auto& [name, count] : counts)
        if (count > best) best = count, copy_topology = name;

    std::vector<std::vector<int>> copies;
    for (const Component& c : cands) {
        if (class_string_guarded(c.graph) != copy_topology) continue;
        std::vector<int> idx;
        for (const VertexTag& v : c.tags) idx.push_back(graph.index_of(v));
        copies.push_back(std::move(idx));
        copy_order = c.order();
    }
    return copies;
}

struct TrialOutcome {
    char success = 0;
    int intact = 0;
};

inline TrialOutcome evaluate_trial(const SimulationConfig& base, double p, std::uint64_t seed,
                                   const std::vector<std::vector<int>>& copies, int copy_order,
                                   TrialProperty property, const LabeledGraph& skeleton) {
    SimulationConfig cfg = base;
    cfg.edge_probability = p;
    cfg.rng_seed = seed;
    RunTrace trace = run(cfg);

    const int n = skeleton.order();
    UnionFind uf(n);
    for (const EdgeEvent& ev : trace.events)
        if (ev.formed) uf.unite(skeleton.index_of(ev.a), skeleton.index_of(ev.b));

    TrialOutcome out;
    for (const auto& copy : copies) {
        int root = uf.find(copy.front());
        bool intact = true;
        for (std::size_t i = 1; i < copy.size() && intact; ++i) intact = uf.find(copy[i]) == root;
        out.intact += intact;
    }
    if (property == TrialProperty::ComponentComplete) {
        out.success = out.intact >= 1;
    } else {
        std::vector<int> size(static_cast<std::size_t>(n), 0);
        int biggest = 0;
        for (int i = 0; i < n; ++i) biggest = std::max(biggest, ++size[static_cast<std::size_t>(uf.find(i))]);
        out.success = copy_order > 0 && biggest >= copy_order;
    }
    return out;
}

}  // namespace detail

// Monte Carlo sweep over the p grid. Seeds derive from (base seed, p index,
// trial index) — or (base seed, trial index) in coupled mode, which shares
// every uniform draw across p values and makes the property monotone
// trial-for-trial. Thread count never changes the report.
inline PercolationReport percolation_sweep(const SimulationConfig& config, const std::vector<double>& p_grid,
                                           int trials, TrialProperty property, bool coupled = false,
                                           int threads = 1) {
    config.validate();
    if (trials < 1) throw std::invalid_argument("percolation_sweep: trials must be >= 1");
    if (p_grid.empty()) throw std::invalid_argument("percolation_sweep: empty p grid");
    for (std::size_t i = 0; i < p_grid.size(); ++i) {
        if (!(p_grid[i] >= 0.0 && p_grid[i] <= 1.0))
            throw std::invalid_argument("percolation_sweep: p outside [0,1]");
        if (i > 0 && p_grid[i] <= p_grid[i - 1])
            throw std::invalid_argument("percolation_sweep: p grid must be strictly ascending");
    }
    if (threads < 1) threads = 1;

    PercolationReport report;
    std::vector<std::vector<int>> copies =
        detail::reference_copies(config, report.copy_order, report.copy_topology);
    report.copy_count = static_cast<int>(copies.size());

    // Index skeleton shared by every trial (roster depends only on the schedule).
    LabeledGraph skeleton;
    {
        RunTrace empty_trace;
        empty_trace.config = config;
        empty_trace.roster = scheduled_roster(config);
        skeleton.vertices = empty_trace.roster;
    }

    report.points.resize(p_grid.size());
    report.trial_success.assign(p_grid.size(), std::vector<char>(static_cast<std::size_t>(trials), 0));
    std::vector<std::vector<int>> intact(p_grid.size(), std::vector<int>(static_cast<std::size_t>(trials), 0));

    auto worker = [&](int first_trial, int step) {
        for (std::size_t pi = 0; pi < p_grid.size(); ++pi) {
            for (int trial = first_trial; trial < trials; trial += step) {
                std::uint64_t seed = coupled
                                         ? mix_seed(config.rng_seed, static_cast<std::uint64_t>(trial))
                                         : mix_seed(config.rng_seed, pi, static_cast<std::uint64_t>(trial));
                detail::TrialOutcome out = detail::evaluate_trial(config, p_grid[pi], seed, copies,
                                                                  report.copy_order, property, skeleton);
                report.trial_success[pi][static_cast<std::size_t>(trial)] = out.success;
                intact[pi][static_cast<std::size_t>(trial)] = out.intact;
            }
        }
    };
    if (threads == 1) {
        worker(0, 1);
    } else {
        std::vector<std::thread> pool;
        for (int tid = 0; tid < threads; ++tid) pool.emplace_back(worker, tid, threads);
        for (std::thread& th : pool) th.join();
    }

    for (std::size_t pi = 0; pi < p_grid.size(); ++pi) {
        PercolationPoint& pt = report.points[pi];
        pt.p = p_grid[pi];
        pt.trials = trials;
        for (int trial = 0; trial < trials; ++trial) {
            pt.successes += report.trial_success[pi][static_cast<std::size_t>(trial)];
            pt.intact_copies += intact[pi][static_cast<std::size_t>(trial)];
        }
        pt.fraction = static_cast<double>(pt.successes) / trials;
    }
    // 50% crossing, linearly interpolated between bracketing grid points.
    for (std::size_t pi = 0; pi < report.points.size(); ++pi) {
        if (report.points[pi].fraction < 0.5) continue;
        if (pi == 0) {
            report.p_critical = report.points[0].p;
        } else {
            const PercolationPoint& lo = report.points[pi - 1];
            const PercolationPoint& hi = report.points[pi];
            report.p_critical = lo.p + (0.5 - lo.fraction) * (hi.p - lo.p) / (hi.fraction - lo.fraction);
        }
        break;
    }
    return report;
}

}  // namespace collgrid
