#pragma once

// Graph core: trace -> labeled simple graph, connected components via
// union-find, degree statistics, and exact isomorphism for small graphs.

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <set>
#include <utility>
#include <vector>

#include "collgrid/errors.hpp"
#include "collgrid/stream.hpp"

namespace collgrid {

// Plain index graph on vertices 0..n-1; edges kept sorted, unique, a < b.
struct SimpleGraph {
    int n = 0;
    std::vector<std::pair<int, int>> edges;

    SimpleGraph() = default;
    explicit SimpleGraph(int order) : n(order) {}

    void add_edge(int a, int b) {
        if (a == b) throw std::invalid_argument("SimpleGraph: self loop");
        if (a < 0 || b < 0 || a >= n || b >= n)
            throw std::out_of_range("SimpleGraph: endpoint outside 0..n-1");
        if (b < a) std::swap(a, b);
        auto e = std::make_pair(a, b);
        auto it = std::lower_bound(edges.begin(), edges.end(), e);
        if (it == edges.end() || *it != e) edges.insert(it, e);
    }
    bool has_edge(int a, int b) const {
        if (b < a) std::swap(a, b);
        return std::binary_search(edges.begin(), edges.end(), std::make_pair(a, b));
    }
    std::vector<std::vector<int>> adjacency() const {
        std::vector<std::vector<int>> adj(static_cast<std::size_t>(n));
        for (auto [a, b] : edges) {
            adj[static_cast<std::size_t>(a)].push_back(b);
            adj[static_cast<std::size_t>(b)].push_back(a);
        }
        return adj;
    }
    std::vector<int> degrees() const {
        std::vector<int> deg(static_cast<std::size_t>(n), 0);
        for (auto [a, b] : edges) ++deg[static_cast<std::size_t>(a)], ++deg[static_cast<std::size_t>(b)];
        return deg;
    }
    bool operator==(const SimpleGraph&) const = default;
};

// Union-find with path compression (edge logs are edge lists; near-linear).
struct UnionFind {
    std::vector<int> parent;

    explicit UnionFind(int n) : parent(static_cast<std::size_t>(n)) {
        std::iota(parent.begin(), parent.end(), 0);
    }
    int find(int x) {
        while (parent[static_cast<std::size_t>(x)] != x) {
            parent[static_cast<std::size_t>(x)] = parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
            x = parent[static_cast<std::size_t>(x)];
        }
        return x;
    }
    bool unite(int a, int b) {
        a = find(a), b = find(b);
        if (a == b) return false;
        if (b < a) std::swap(a, b);  // keep the smallest index as root: stable component ids
        parent[static_cast<std::size_t>(b)] = a;
        return true;
    }
};

// Tagged graph extracted from a run. Vertices are kept sorted; indices into
// that order double as SimpleGraph vertex ids everywhere downstream.
struct LabeledGraph {
    std::vector<VertexTag> vertices;               // sorted
    std::vector<std::pair<int, int>> edges;        // index pairs, sorted, a < b
    std::vector<int> component_id;                 // per vertex, dense 0..k-1
    std::vector<char> component_complete;          // per component
    std::vector<char> vertex_complete;             // per vertex

    int order() const { return static_cast<int>(vertices.size()); }
    int size() const { return static_cast<int>(edges.size()); }
    int components() const { return static_cast<int>(component_complete.size()); }

    int index_of(const VertexTag& v) const {
        auto it = std::lower_bound(vertices.begin(), vertices.end(), v);
        if (it == vertices.end() || *it != v)
            throw std::invalid_argument("LabeledGraph: unknown vertex " + tag_label(v));
        return static_cast<int>(it - vertices.begin());
    }
    SimpleGraph simple() const {
        SimpleGraph g(order());
        for (auto e : edges) g.add_edge(e.first, e.second);
        return g;
    }
};

inline LabeledGraph extract_graph(const RunTrace& trace) {
    LabeledGraph g;
    g.vertices = trace.roster;  // already sorted
    const int n = g.order();

    std::set<VertexTag> complete_set(trace.complete.begin(), trace.complete.end());
    g.vertex_complete.resize(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i)
        g.vertex_complete[static_cast<std::size_t>(i)] = complete_set.count(g.vertices[static_cast<std::size_t>(i)]) != 0;

    UnionFind uf(n);
    std::set<std::pair<int, int>> edge_set;
    for (const EdgeEvent& ev : trace.events) {
        if (!ev.formed) continue;
        int a = g.index_of(ev.a), b = g.index_of(ev.b);
        if (b < a) std::swap(a, b);
        edge_set.emplace(a, b);
        uf.unite(a, b);
    }
    g.edges.assign(edge_set.begin(), edge_set.end());

    // Dense component ids, numbered by smallest member index.
    std::map<int, int> root_to_id;
    g.component_id.resize(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        int root = uf.find(i);
        auto [it, fresh] = root_to_id.emplace(root, static_cast<int>(root_to_id.size()));
        g.component_id[static_cast<std::size_t>(i)] = it->second;
        (void)fresh;
    }
    g.component_complete.assign(root_to_id.size(), 1);
    for (int i = 0; i < n; ++i)
        if (!g.vertex_complete[static_cast<std::size_t>(i)])
            g.component_complete[static_cast<std::size_t>(g.component_id[static_cast<std::size_t>(i)])] = 0;
    return g;
}

// Degree of every vertex, isolated ones included as degree 0.
inline std::map<int, int> degree_histogram(const LabeledGraph& g) {
    std::vector<int> deg(static_cast<std::size_t>(g.order()), 0);
    for (auto [a, b] : g.edges) ++deg[static_cast<std::size_t>(a)], ++deg[static_cast<std::size_t>(b)];
    std::map<int, int> hist;
    for (int d : deg) ++hist[d];
    return hist;
}

// One connected component, re-indexed 0..n-1 over sorted member tags.
struct Component {
    std::vector<VertexTag> tags;  // sorted
    SimpleGraph graph;
    bool complete = false;
    std::vector<long long> kappas;  // distinct g - lane values present, sorted

    int order() const { return graph.n; }
};

inline std::vector<Component> split_components(const LabeledGraph& g) {
    std::vector<Component> comps(static_cast<std::size_t>(g.components()));
    std::vector<int> local(static_cast<std::size_t>(g.order()));
    for (int i = 0; i < g.order(); ++i) {
        Component& comp = comps[static_cast<std::size_t>(g.component_id[static_cast<std::size_t>(i)])];
        local[static_cast<std::size_t>(i)] = static_cast<int>(comp.tags.size());
        comp.tags.push_back(g.vertices[static_cast<std::size_t>(i)]);  // stays sorted: i ascends
    }
    for (std::size_t c = 0; c < comps.size(); ++c) {
        comps[c].graph = SimpleGraph(static_cast<int>(comps[c].tags.size()));
        comps[c].complete = g.component_complete[c] != 0;
        std::set<long long> ks;
        for (const VertexTag& v : comps[c].tags) ks.insert(kappa(v));
        comps[c].kappas.assign(ks.begin(), ks.end());
    }
    for (auto [a, b] : g.edges) {
        int c = g.component_id[static_cast<std::size_t>(a)];
        comps[static_cast<std::size_t>(c)].graph.add_edge(local[static_cast<std::size_t>(a)],
                                                          local[static_cast<std::size_t>(b)]);
    }
    return comps;
}

namespace detail {

constexpr int kIsoCap = 24;

// Backtracking isomorphism over degree-compatible candidates. Adjacency is
// kept as bitmasks; fine for the <= 24-vertex graphs this library deals with.
inline bool iso_backtrack(const std::vector<std::uint32_t>& adj1, const std::vector<std::uint32_t>& adj2,
                          const std::vector<int>& deg1, const std::vector<int>& deg2,
                          std::vector<int>& map12, std::vector<char>& used, std::size_t next) {
    const std::size_t n = adj1.size();
    if (next == n) return true;
    for (std::size_t cand = 0; cand < n; ++cand) {
        if (used[cand] || deg1[next] != deg2[cand]) continue;
        bool ok = true;
        for (std::size_t prev = 0; prev < next && ok; ++prev) {
            const bool e1 = (adj1[next] >> prev) & 1u;
            const bool e2 = (adj2[cand] >> static_cast<unsigned>(map12[prev])) & 1u;
            ok = (e1 == e2);
        }
        if (!ok) continue;
        used[cand] = 1;
        map12[next] = static_cast<int>(cand);
        if (iso_backtrack(adj1, adj2, deg1, deg2, map12, used, next + 1)) return true;
        used[cand] = 0;
    }
    return false;
}

}  // namespace detail

inline bool are_isomorphic(const SimpleGraph& g1, const SimpleGraph& g2) {
    if (g1.n > detail::kIsoCap || g2.n > detail::kIsoCap)
        throw unsupported_size("are_isomorphic: graphs above " + std::to_string(detail::kIsoCap) +
                               " vertices are not supported");
    if (g1.n != g2.n || g1.edges.size() != g2.edges.size()) return false;
    std::vector<int> deg1 = g1.degrees(), deg2 = g2.degrees();
    std::vector<int> s1 = deg1, s2 = deg2;
    std::sort(s1.begin(), s1.end());
    std::sort(s2.begin(), s2.end());
    if (s1 != s2) return false;

    const std::size_t n = static_cast<std::size_t>(g1.n);
    std::vector<std::uint32_t> adj1(n, 0), adj2(n, 0);
    for (auto [a, b] : g1.edges) {
        adj1[static_cast<std::size_t>(a)] |= 1u << b;
        adj1[static_cast<std::size_t>(b)] |= 1u << a;
    }
    for (auto [a, b] : g2.edges) {
        adj2[static_cast<std::size_t>(a)] |= 1u << b;
        adj2[static_cast<std::size_t>(b)] |= 1u << a;
    }
    std::vector<int> map12(n, -1);
    std::vector<char> used(n, 0);
    return detail::iso_backtrack(adj1, adj2, deg1, deg2, map12, used, 0);
}

}  // namespace collgrid
