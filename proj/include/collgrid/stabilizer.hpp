#pragma once

// Exact small-scale quantum verification. Dense amplitude vectors up to 20
// qubits: build the graph state for a component (|+>^n, then C-Phase per
// edge), check the stabilizer conditions K_a = X_a prod_{b in N(a)} Z_b, and
// carve vertices out via the graph-state Z-measurement rule.
//
// Qubit convention: graph vertex i (0-based) is qubit i+1, and qubit 1 is the
// most significant bit of the basis index. Amplitude dumps are reproducible
// because components order their vertices by (axis, lane, generation).

#include <complex>

#include "collgrid/graph.hpp"

namespace collgrid {

struct QuantumRegister {
    int n = 0;
    std::vector<std::complex<double>> amp;

    std::size_t dim() const { return amp.size(); }
    // Value of qubit q (1-based, MSB first) in basis index idx.
    bool bit(std::size_t idx, int q) const { return (idx >> (n - q)) & 1u; }
};

constexpr int kMaxQubits = 20;

inline void check_qubit_count(int n, const char* who) {
    if (n < 1 || n > kMaxQubits)
        throw unsupported_size(std::string(who) + ": qubit count " + std::to_string(n) +
                               " outside 1.." + std::to_string(kMaxQubits));
}

inline QuantumRegister plus_state(int n) {
    check_qubit_count(n, "plus_state");
    QuantumRegister reg;
    reg.n = n;
    reg.amp.assign(std::size_t{1} << n, std::pow(2.0, -0.5 * n));
    return reg;
}

// diag(1,1,1,-1) on qubits a,b: negate amplitudes where both bits are set.
inline QuantumRegister apply_cphase(QuantumRegister reg, int a, int b) {
    if (a == b) throw std::invalid_argument("apply_cphase: qubits must differ (no self loops)");
    if (a < 1 || a > reg.n || b < 1 || b > reg.n)
        throw std::invalid_argument("apply_cphase: qubit outside 1..n");
    for (std::size_t idx = 0; idx < reg.dim(); ++idx)
        if (reg.bit(idx, a) && reg.bit(idx, b)) reg.amp[idx] = -reg.amp[idx];
    return reg;
}

inline QuantumRegister build_graph_state(const SimpleGraph& g) {
    check_qubit_count(g.n, "build_graph_state");
    QuantumRegister reg = plus_state(g.n);
    for (auto [a, b] : g.edges) reg = apply_cphase(std::move(reg), a + 1, b + 1);
    return reg;
}

inline QuantumRegister build_graph_state(const Component& comp) { return build_graph_state(comp.graph); }

struct StabilizerGenerator {
    std::vector<char> paulis;  // 'I', 'X', 'Y' or 'Z' per qubit, index q-1
    int phase = +1;
};

inline std::vector<StabilizerGenerator> graph_stabilizers(const SimpleGraph& g) {
    auto adj = g.adjacency();
    std::vector<StabilizerGenerator> gens(static_cast<std::size_t>(g.n));
    for (int a = 0; a < g.n; ++a) {
        StabilizerGenerator& k = gens[static_cast<std::size_t>(a)];
        k.paulis.assign(static_cast<std::size_t>(g.n), 'I');
        k.paulis[static_cast<std::size_t>(a)] = 'X';
        for (int b : adj[static_cast<std::size_t>(a)]) k.paulis[static_cast<std::size_t>(b)] = 'Z';
    }
    return gens;
}

inline QuantumRegister apply_pauli(const QuantumRegister& reg, const StabilizerGenerator& gen) {
    if (static_cast<int>(gen.paulis.size()) != reg.n)
        throw std::invalid_argument("apply_pauli: generator length differs from register size");
    std::size_t flip = 0;
    std::vector<int> z_or_y, ys;
    for (int q = 1; q <= reg.n; ++q) {
        char p = gen.paulis[static_cast<std::size_t>(q - 1)];
        if (p == 'X' || p == 'Y') flip |= std::size_t{1} << (reg.n - q);
        if (p == 'Z' || p == 'Y') z_or_y.push_back(q);
        if (p == 'Y') ys.push_back(q);
    }
    // i^{#Y}, computed exactly; graph-state generators never carry Y anyway.
    static constexpr std::complex<double> kIPowers[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
    const std::complex<double> y_unit = kIPowers[ys.size() % 4];
    QuantumRegister out;
    out.n = reg.n;
    out.amp.assign(reg.dim(), {});
    for (std::size_t idx = 0; idx < reg.dim(); ++idx) {
        int sign = gen.phase;
        for (int q : z_or_y)
            if (reg.bit(idx, q)) sign = -sign;
        out.amp[idx ^ flip] = y_unit * static_cast<double>(sign) * reg.amp[idx];
    }
    return out;
}

inline double max_norm_difference(const QuantumRegister& a, const QuantumRegister& b) {
    if (a.n != b.n) throw std::invalid_argument("max_norm_difference: register sizes differ");
    double worst = 0.0;
    for (std::size_t idx = 0; idx < a.dim(); ++idx)
        worst = std::max(worst, std::abs(a.amp[idx] - b.amp[idx]));
    return worst;
}

constexpr double kStabilizerTolerance = 1e-10;

// How many of the n generators fix the register (for reporting), and the
// boolean verdict used everywhere else.
inline int count_fixed_stabilizers(const QuantumRegister& reg, const SimpleGraph& g) {
    if (g.n != reg.n) throw std::invalid_argument("verify_graph_state: qubit count differs from graph order");
    int fixed = 0;
    for (const StabilizerGenerator& k : graph_stabilizers(g))
        fixed += max_norm_difference(apply_pauli(reg, k), reg) <= kStabilizerTolerance;
    return fixed;
}

inline bool verify_graph_state(const QuantumRegister& reg, const SimpleGraph& g) {
    return count_fixed_stabilizers(reg, g) == g.n;
}

inline bool verify_graph_state(const QuantumRegister& reg, const Component& comp) {
    return verify_graph_state(reg, comp.graph);
}

// Z measurement in graph form: delete the vertex; outcome 1 leaves Z
// byproducts on its former neighbors. Proved against the dense oracle in the
// test suite rather than assumed.
struct ZMeasurement {
    SimpleGraph graph;           // reduced graph over the kept vertices, relabeled
    std::vector<int> kept;       // old ids in ascending order; kept[i] is new vertex i
    std::vector<int> byproduct;  // old ids needing a Z correction (empty on outcome 0)
};

inline ZMeasurement measure_z(const SimpleGraph& g, int a, int outcome) {
    if (a < 0 || a >= g.n) throw std::invalid_argument("measure_z: vertex outside graph");
    if (outcome != 0 && outcome != 1) throw std::invalid_argument("measure_z: outcome must be 0 or 1");
    ZMeasurement result;
    std::vector<int> remap(static_cast<std::size_t>(g.n), -1);
    for (int v = 0; v < g.n; ++v)
        if (v != a) {
            remap[static_cast<std::size_t>(v)] = static_cast<int>(result.kept.size());
            result.kept.push_back(v);
        }
    result.graph = SimpleGraph(g.n - 1);
    for (auto [x, y] : g.edges) {
        if (x == a || y == a) {
            if (outcome == 1) result.byproduct.push_back(x == a ? y : x);
            continue;
        }
        result.graph.add_edge(remap[static_cast<std::size_t>(x)], remap[static_cast<std::size_t>(y)]);
    }
    std::sort(result.byproduct.begin(), result.byproduct.end());
    return result;
}

struct TaggedZMeasurement {
    Component component;
    std::vector<VertexTag> byproduct;
};

inline TaggedZMeasurement measure_z(const Component& comp, const VertexTag& a, int outcome) {
    auto it = std::lower_bound(comp.tags.begin(), comp.tags.end(), a);
    if (it == comp.tags.end() || *it != a)
        throw std::invalid_argument("measure_z: vertex " + tag_label(a) + " not in component");
    ZMeasurement plain = measure_z(comp.graph, static_cast<int>(it - comp.tags.begin()), outcome);
    TaggedZMeasurement result;
    result.component.graph = plain.graph;
    result.component.complete = comp.complete;
    for (int old : plain.kept) result.component.tags.push_back(comp.tags[static_cast<std::size_t>(old)]);
    for (int old : plain.byproduct) result.byproduct.push_back(comp.tags[static_cast<std::size_t>(old)]);
    std::set<long long> ks;
    for (const VertexTag& v : result.component.tags) ks.insert(kappa(v));
    result.component.kappas.assign(ks.begin(), ks.end());
    return result;
}

// Post-selected carving: measure every vertex outside `keep` with outcome 0
// (ascending order), leaving the induced subgraph on the kept vertices.
inline SimpleGraph carve_unit_cell(const SimpleGraph& g, std::vector<int> keep) {
    std::sort(keep.begin(), keep.end());
    keep.erase(std::unique(keep.begin(), keep.end()), keep.end());
    for (int v : keep)
        if (v < 0 || v >= g.n) throw std::invalid_argument("carve_unit_cell: keep vertex outside graph");
    SimpleGraph current = g;
    std::vector<int> current_ids(static_cast<std::size_t>(g.n));  // old labels of current vertices
    for (int v = 0; v < g.n; ++v) current_ids[static_cast<std::size_t>(v)] = v;
    for (int v = g.n - 1; v >= 0; --v) {  // descending keeps earlier indices stable
        if (std::binary_search(keep.begin(), keep.end(), current_ids[static_cast<std::size_t>(v)])) continue;
        ZMeasurement step = measure_z(current, v, 0);
        current = step.graph;
        std::vector<int> next_ids;
        for (int old : step.kept) next_ids.push_back(current_ids[static_cast<std::size_t>(old)]);
        current_ids = next_ids;
    }
    return current;
}

inline Component carve_unit_cell(const Component& comp, const std::vector<VertexTag>& keep) {
    std::vector<int> keep_idx;
    for (const VertexTag& v : keep) {
        auto it = std::lower_bound(comp.tags.begin(), comp.tags.end(), v);
        if (it == comp.tags.end() || *it != v)
            throw std::invalid_argument("carve_unit_cell: keep vertex " + tag_label(v) + " not in component");
        keep_idx.push_back(static_cast<int>(it - comp.tags.begin()));
    }
    std::sort(keep_idx.begin(), keep_idx.end());
    keep_idx.erase(std::unique(keep_idx.begin(), keep_idx.end()), keep_idx.end());
    Component result;
    result.graph = carve_unit_cell(comp.graph, keep_idx);
    for (int idx : keep_idx) result.tags.push_back(comp.tags[static_cast<std::size_t>(idx)]);
    result.complete = comp.complete;
    std::set<long long> ks;
    for (const VertexTag& v : result.tags) ks.insert(kappa(v));
    result.kappas.assign(ks.begin(), ks.end());
    return result;
}

}  // namespace collgrid
