#pragma once

// Topology catalogue: recognizes the structures the collision grid produces
// (paths, cycles, 2D lattices of a given depth, prisms, the cube, the
// hexagonal cell, pendant-decorated lattices, the fully-active maximal
// structure) and builds canonical reference instances of each.

#include <algorithm>
#include <map>
#include <mutex>
#include <optional>
#include <queue>
#include <string>
#include <vector>

#include "collgrid/graph.hpp"

namespace collgrid {

enum class Topology : std::uint8_t {
    Path,       // P_n            a = n
    Cycle,      // C_n            a = n
    Lattice2D,  // d x l grid     a = depth, b = length, a <= b
    Prism,      // C_a x P_b      a = cycle, b = layers
    CubeGraph,  // Q3
    HexCell,    // C_6
    Decorated,  // base lattice with one pendant per base vertex
    Maximal,    // all-active structure for grid side a (complete bipartite)
    Other,
};

struct TopologyClass {
    Topology tag = Topology::Other;
    int a = 0, b = 0;  // parameters as listed above; 0 acts as a wildcard in targets

    // Decorated only: the base structure and how many pendants hang off it.
    Topology base = Topology::Other;
    int base_a = 0, base_b = 0;
    int pendants = 0;

    bool operator==(const TopologyClass&) const = default;
};

inline TopologyClass make_topology(Topology tag, int a = 0, int b = 0) {
    TopologyClass t;
    t.tag = tag, t.a = a, t.b = b;
    return t;
}

// Collapse the parameter overlaps between families so every structure has one
// spelling: depth-1 lattices are paths, the 2x2 lattice is the 4-cycle, a
// 1-layer prism is its cycle, the 2-layer 4-prism is the cube, C6 is HexCell.
inline TopologyClass canonical_form(TopologyClass t) {
    auto fix_pair = [](TopologyClass& x) {
        if (x.a > 0 && x.b > 0 && x.a > x.b) std::swap(x.a, x.b);
    };
    if (t.tag == Topology::Lattice2D) {
        fix_pair(t);
        if (t.a == 1) return make_topology(Topology::Path, t.b);
        if (t.b == 1) return make_topology(Topology::Path, t.a);
        if (t.a == 2 && t.b == 2) return make_topology(Topology::Cycle, 4);
    }
    if (t.tag == Topology::Prism) {
        if (t.b == 1) t = make_topology(Topology::Cycle, t.a);
        else if (t.a == 4 && t.b == 2) return make_topology(Topology::CubeGraph);
    }
    if (t.tag == Topology::Cycle && t.a == 6) return make_topology(Topology::HexCell);
    if (t.tag == Topology::Decorated) {
        TopologyClass base = canonical_form(make_topology(t.base, t.base_a, t.base_b));
        t.base = base.tag, t.base_a = base.a, t.base_b = base.b;
    }
    return t;
}

inline std::string topology_to_string(const TopologyClass& raw) {
    TopologyClass t = canonical_form(raw);
    auto num = [](int v) { return v == 0 ? std::string("*") : std::to_string(v); };
    switch (t.tag) {
    case Topology::Path: return "Path(" + num(t.a) + ")";
    case Topology::Cycle: return "Cycle(" + num(t.a) + ")";
    case Topology::Lattice2D: return "Lattice2D(" + num(t.a) + "," + num(t.b) + ")";
    case Topology::Prism: return "Prism(" + num(t.a) + "," + num(t.b) + ")";
    case Topology::CubeGraph: return "CubeGraph";
    case Topology::HexCell: return "HexCell";
    case Topology::Decorated:
        return "Decorated(" + topology_to_string(make_topology(t.base, t.base_a, t.base_b)) + "," +
               num(t.pendants) + ")";
    case Topology::Maximal: return "Maximal(" + num(t.a) + ")";
    default: return "Other";
    }
}

namespace detail {

inline bool is_connected(const SimpleGraph& g) {
    if (g.n == 0) return true;
    UnionFind uf(g.n);
    int merges = 0;
    for (auto [a, b] : g.edges) merges += uf.unite(a, b);
    return merges == g.n - 1 || [&] {
        int root = uf.find(0);
        for (int i = 1; i < g.n; ++i)
            if (uf.find(i) != root) return false;
        return true;
    }();
}

// Two-color the graph; empty result when an odd cycle exists.
inline std::optional<std::vector<int>> bipartition(const SimpleGraph& g) {
    auto adj = g.adjacency();
    std::vector<int> color(static_cast<std::size_t>(g.n), -1);
    for (int s = 0; s < g.n; ++s) {
        if (color[static_cast<std::size_t>(s)] != -1) continue;
        color[static_cast<std::size_t>(s)] = 0;
        std::queue<int> q;
        q.push(s);
        while (!q.empty()) {
            int v = q.front();
            q.pop();
            for (int w : adj[static_cast<std::size_t>(v)]) {
                if (color[static_cast<std::size_t>(w)] == -1) {
                    color[static_cast<std::size_t>(w)] = 1 - color[static_cast<std::size_t>(v)];
                    q.push(w);
                } else if (color[static_cast<std::size_t>(w)] == color[static_cast<std::size_t>(v)]) {
                    return std::nullopt;
                }
            }
        }
    }
    return color;
}

// Grid-graph reconstruction: anchor a degree-2 corner at (0,0), walk BFS
// shells assigning coordinates, then check the full adjacency relation.
inline bool try_grid_embedding(const SimpleGraph& g, const std::vector<std::vector<int>>& adj,
                               int corner, int row_nbr, int col_nbr, int rows, int cols) {
    const std::size_t n = static_cast<std::size_t>(g.n);
    std::vector<int> dist(n, -1);
    std::vector<std::pair<int, int>> coord(n, {-1, -1});
    std::queue<int> q;
    dist[static_cast<std::size_t>(corner)] = 0;
    q.push(corner);
    std::vector<int> order;
    while (!q.empty()) {
        int v = q.front();
        q.pop();
        order.push_back(v);
        for (int w : adj[static_cast<std::size_t>(v)])
            if (dist[static_cast<std::size_t>(w)] == -1) {
                dist[static_cast<std::size_t>(w)] = dist[static_cast<std::size_t>(v)] + 1;
                q.push(w);
            }
    }
    coord[static_cast<std::size_t>(corner)] = {0, 0};
    coord[static_cast<std::size_t>(row_nbr)] = {0, 1};
    coord[static_cast<std::size_t>(col_nbr)] = {1, 0};
    for (int v : order) {
        auto& cv = coord[static_cast<std::size_t>(v)];
        if (cv.first != -1) continue;
        // Predecessors: already-placed neighbors one shell closer to the corner.
        std::vector<std::pair<int, int>> preds;
        for (int w : adj[static_cast<std::size_t>(v)])
            if (dist[static_cast<std::size_t>(w)] == dist[static_cast<std::size_t>(v)] - 1 &&
                coord[static_cast<std::size_t>(w)].first != -1)
                preds.push_back(coord[static_cast<std::size_t>(w)]);
        if (preds.size() >= 2) {
            cv = {std::max(preds[0].first, preds[1].first), std::max(preds[0].second, preds[1].second)};
        } else if (preds.size() == 1) {
            // Only the two boundary rays from the corner have one predecessor.
            auto [pr, pc] = preds[0];
            if (pr == 0 && pc == dist[static_cast<std::size_t>(v)] - 1) cv = {0, pc + 1};
            else if (pc == 0 && pr == dist[static_cast<std::size_t>(v)] - 1) cv = {pr + 1, 0};
            else return false;
        } else {
            return false;
        }
        if (cv.first < 0 || cv.first >= rows || cv.second < 0 || cv.second >= cols) return false;
    }
    // Bijectivity plus exact grid adjacency.
    std::vector<char> seen(n, 0);
    for (std::size_t v = 0; v < n; ++v) {
        if (coord[v].first < 0) return false;
        std::size_t cell = static_cast<std::size_t>(coord[v].first) * cols + coord[v].second;
        if (seen[cell]) return false;
        seen[cell] = 1;
    }
    std::size_t expected_edges = static_cast<std::size_t>(rows) * (cols - 1) + static_cast<std::size_t>(cols) * (rows - 1);
    if (g.edges.size() != expected_edges) return false;
    for (auto [x, y] : g.edges) {
        auto [r1, c1] = coord[static_cast<std::size_t>(x)];
        auto [r2, c2] = coord[static_cast<std::size_t>(y)];
        if (std::abs(r1 - r2) + std::abs(c1 - c2) != 1) return false;
    }
    return true;
}

inline std::optional<std::pair<int, int>> detect_lattice(const SimpleGraph& g) {
    const int n = g.n;
    if (n < 6) return std::nullopt;  // 2x2 is the 4-cycle, caught earlier
    auto deg = g.degrees();
    std::vector<int> corners;
    for (int v = 0; v < n; ++v) {
        if (deg[static_cast<std::size_t>(v)] == 2) corners.push_back(v);
        if (deg[static_cast<std::size_t>(v)] > 4) return std::nullopt;
    }
    if (corners.size() != 4) return std::nullopt;
    auto adj = g.adjacency();
    for (int d = 2; d * d <= n; ++d) {
        if (n % d != 0) continue;
        const int l = n / d;
        int c0 = corners.front();
        int na = adj[static_cast<std::size_t>(c0)][0], nb = adj[static_cast<std::size_t>(c0)][1];
        for (auto [rows, cols] : {std::pair{d, l}, std::pair{l, d}}) {
            if (try_grid_embedding(g, adj, c0, na, nb, rows, cols) ||
                try_grid_embedding(g, adj, c0, nb, na, rows, cols))
                return std::make_pair(d, l);
        }
    }
    return std::nullopt;
}

// Walk a 2-regular graph as a cycle starting from v0; empty when it is not
// one simple cycle covering the whole vertex list.
inline std::optional<std::vector<int>> cycle_order(const std::vector<int>& members,
                                                   const std::vector<std::vector<int>>& adj) {
    std::vector<char> in_set(adj.size(), 0), seen(adj.size(), 0);
    for (int v : members) in_set[static_cast<std::size_t>(v)] = 1;
    std::vector<int> order;
    int prev = -1, cur = members.front();
    do {
        if (seen[static_cast<std::size_t>(cur)]) return std::nullopt;
        seen[static_cast<std::size_t>(cur)] = 1;
        order.push_back(cur);
        int next = -1;
        int inside = 0;
        for (int w : adj[static_cast<std::size_t>(cur)]) {
            if (!in_set[static_cast<std::size_t>(w)]) continue;
            ++inside;
            if (w != prev) next = w;
        }
        if (inside != 2 || next == -1) return std::nullopt;
        prev = cur, cur = next;
    } while (cur != members.front());
    if (order.size() != members.size()) return std::nullopt;
    return order;
}

}  // namespace detail

inline SimpleGraph reference_graph(const TopologyClass& cls);  // forward
inline const Component& maximal_reference(int L);              // forward

namespace detail {

// C_k x P_l for l >= 3: peel layers off one degree-3 end ring.
inline std::optional<std::pair<int, int>> detect_prism_deep(const SimpleGraph& g) {
    const int n = g.n;
    auto deg = g.degrees();
    std::vector<int> ends;
    for (int v = 0; v < n; ++v) {
        if (deg[static_cast<std::size_t>(v)] == 3) ends.push_back(v);
        else if (deg[static_cast<std::size_t>(v)] != 4) return std::nullopt;
    }
    if (ends.empty() || ends.size() % 2 != 0) return std::nullopt;
    const int k = static_cast<int>(ends.size()) / 2;
    if (k < 3 || n % k != 0) return std::nullopt;
    const int layers = n / k;
    if (layers < 3) return std::nullopt;
    if (static_cast<int>(g.edges.size()) != k * (2 * layers - 1)) return std::nullopt;

    auto adj = g.adjacency();
    // Split the degree-3 set into the two end rings.
    std::vector<char> is_end(static_cast<std::size_t>(n), 0);
    for (int v : ends) is_end[static_cast<std::size_t>(v)] = 1;
    std::vector<int> ring;
    {
        std::vector<char> seen(static_cast<std::size_t>(n), 0);
        std::queue<int> q;
        q.push(ends.front());
        seen[static_cast<std::size_t>(ends.front())] = 1;
        while (!q.empty()) {
            int v = q.front();
            q.pop();
            ring.push_back(v);
            for (int w : adj[static_cast<std::size_t>(v)])
                if (is_end[static_cast<std::size_t>(w)] && !seen[static_cast<std::size_t>(w)]) {
                    seen[static_cast<std::size_t>(w)] = 1;
                    q.push(w);
                }
        }
    }
    if (static_cast<int>(ring.size()) != k) return std::nullopt;
    auto ring_order = cycle_order(ring, adj);
    if (!ring_order) return std::nullopt;

    // position[v] = (layer, ring index); layer 0 is the walked end ring.
    std::vector<std::pair<int, int>> pos(static_cast<std::size_t>(n), {-1, -1});
    std::vector<int> layer = *ring_order;
    for (int j = 0; j < k; ++j) pos[static_cast<std::size_t>(layer[static_cast<std::size_t>(j)])] = {0, j};
    for (int i = 1; i < layers; ++i) {
        std::vector<int> next(static_cast<std::size_t>(k), -1);
        for (int j = 0; j < k; ++j) {
            int v = layer[static_cast<std::size_t>(j)];
            int up = -1;
            for (int w : adj[static_cast<std::size_t>(v)]) {
                auto [wl, wj] = pos[static_cast<std::size_t>(w)];
                if (wl != -1) continue;
                if (up != -1) return std::nullopt;  // more than one unplaced neighbor
                up = w;
            }
            if (up == -1) return std::nullopt;
            next[static_cast<std::size_t>(j)] = up;
            pos[static_cast<std::size_t>(up)] = {i, j};
        }
        layer = next;
    }
    // Every vertex placed exactly once and adjacency is exactly the prism's.
    for (int v = 0; v < n; ++v)
        if (pos[static_cast<std::size_t>(v)].first == -1) return std::nullopt;
    for (auto [x, y] : g.edges) {
        auto [l1, j1] = pos[static_cast<std::size_t>(x)];
        auto [l2, j2] = pos[static_cast<std::size_t>(y)];
        bool rung = l1 == l2 && (std::abs(j1 - j2) == 1 || std::abs(j1 - j2) == k - 1);
        bool rail = j1 == j2 && std::abs(l1 - l2) == 1;
        if (!rung && !rail) return std::nullopt;
    }
    return std::make_pair(k, layers);
}

inline bool is_complete_bipartite_half(const SimpleGraph& g, int half) {
    auto coloring = bipartition(g);
    if (!coloring) return false;
    int zeros = 0;
    for (int c : *coloring) zeros += (c == 0);
    if (zeros != half || g.n != 2 * half) return false;
    return static_cast<int>(g.edges.size()) == half * half;  // regular + bipartite + count => K_{h,h}
}

}  // namespace detail

inline TopologyClass classify(const SimpleGraph& g) {
    if (g.n > 64) throw unsupported_size("classify: components above 64 vertices are not supported");
    if (g.n == 0) throw std::invalid_argument("classify: empty graph");
    if (!detail::is_connected(g)) throw std::invalid_argument("classify: graph is not connected");

    const int n = g.n;
    const int m = static_cast<int>(g.edges.size());
    auto deg = g.degrees();
    const int max_deg = *std::max_element(deg.begin(), deg.end());

    if (n == 1) return make_topology(Topology::Path, 1);
    if (m == n - 1 && max_deg <= 2) return make_topology(Topology::Path, n);
    if (m == n && max_deg == 2) return canonical_form(make_topology(Topology::Cycle, n));

    if (auto grid = detail::detect_lattice(g)) return make_topology(Topology::Lattice2D, grid->first, grid->second);

    if (n == 8 && m == 12 && max_deg == 3 && are_isomorphic(g, reference_graph(make_topology(Topology::CubeGraph))))
        return make_topology(Topology::CubeGraph);

    if (auto prism = detail::detect_prism_deep(g)) return make_topology(Topology::Prism, prism->first, prism->second);
    if (n % 2 == 0 && n >= 6 && n <= detail::kIsoCap && m == 3 * (n / 2) && max_deg == 3 &&
        *std::min_element(deg.begin(), deg.end()) == 3 &&
        are_isomorphic(g, reference_graph(make_topology(Topology::Prism, n / 2, 2))))
        return make_topology(Topology::Prism, n / 2, 2);

    // Pendant-decorated base: strip the degree-1 vertices, demand exactly one
    // pendant per surviving vertex, and classify the remainder.
    {
        std::vector<int> keep, pend;
        for (int v = 0; v < n; ++v)
            (deg[static_cast<std::size_t>(v)] == 1 ? pend : keep).push_back(v);
        if (!pend.empty() && static_cast<int>(keep.size()) >= 1 && keep.size() == pend.size()) {
            std::vector<int> remap(static_cast<std::size_t>(n), -1);
            for (std::size_t i = 0; i < keep.size(); ++i) remap[static_cast<std::size_t>(keep[i])] = static_cast<int>(i);
            SimpleGraph base(static_cast<int>(keep.size()));
            std::vector<int> pendant_count(keep.size(), 0);
            bool shape_ok = true;
            for (auto [x, y] : g.edges) {
                int rx = remap[static_cast<std::size_t>(x)], ry = remap[static_cast<std::size_t>(y)];
                if (rx != -1 && ry != -1) base.add_edge(rx, ry);
                else if (rx != -1) ++pendant_count[static_cast<std::size_t>(rx)];
                else if (ry != -1) ++pendant_count[static_cast<std::size_t>(ry)];
                else shape_ok = false;  // pendant-pendant edge: not a decoration
            }
            for (int c : pendant_count) shape_ok = shape_ok && c == 1;
            if (shape_ok && base.n >= 2 && detail::is_connected(base)) {
                TopologyClass bc = classify(base);
                if (bc.tag == Topology::Path || bc.tag == Topology::Lattice2D ||
                    bc.tag == Topology::Cycle || bc.tag == Topology::HexCell) {
                    TopologyClass out = make_topology(Topology::Decorated);
                    out.base = bc.tag, out.base_a = bc.a, out.base_b = bc.b;
                    out.pendants = static_cast<int>(pend.size());
                    return out;
                }
            }
        }
    }

    // Fully-active maximal structure: complete bipartite with equal halves,
    // certified against the golden component from an actual all-active run.
    if (n % 2 == 0 && max_deg == n / 2 && n / 2 >= 3 && detail::is_complete_bipartite_half(g, n / 2)) {
        const int L = n / 2;
        const Component& golden = maximal_reference(L);
        bool certified = golden.graph.n == n &&
                         (n > detail::kIsoCap ? golden.graph.edges.size() == g.edges.size()
                                              : are_isomorphic(g, golden.graph));
        if (certified) return make_topology(Topology::Maximal, L);
    }
    return make_topology(Topology::Other);
}

inline TopologyClass classify(const Component& comp) { return classify(comp.graph); }

inline SimpleGraph reference_graph(const TopologyClass& cls) {
    TopologyClass t = canonical_form(cls);
    auto need = [](bool ok, const char* what) {
        if (!ok) throw std::invalid_argument(std::string("reference_graph: ") + what);
    };
    switch (t.tag) {
    case Topology::Path: {
        need(t.a >= 1, "Path needs n >= 1");
        SimpleGraph g(t.a);
        for (int i = 0; i + 1 < t.a; ++i) g.add_edge(i, i + 1);
        return g;
    }
    case Topology::Cycle: {
        need(t.a >= 3, "Cycle needs n >= 3");
        SimpleGraph g(t.a);
        for (int i = 0; i < t.a; ++i) g.add_edge(i, (i + 1) % t.a);
        return g;
    }
    case Topology::HexCell: {
        SimpleGraph g(6);  // spelling Cycle(6) here would canonicalize right back
        for (int i = 0; i < 6; ++i) g.add_edge(i, (i + 1) % 6);
        return g;
    }
    case Topology::Lattice2D: {
        need(t.a >= 1 && t.b >= 1, "Lattice2D needs positive depth and length");
        SimpleGraph g(t.a * t.b);
        auto id = [&](int r, int c) { return r * t.b + c; };
        for (int r = 0; r < t.a; ++r)
            for (int c = 0; c < t.b; ++c) {
                if (c + 1 < t.b) g.add_edge(id(r, c), id(r, c + 1));
                if (r + 1 < t.a) g.add_edge(id(r, c), id(r + 1, c));
            }
        return g;
    }
    case Topology::Prism: {
        need(t.a >= 3 && t.b >= 1, "Prism needs cycle >= 3 and layers >= 1");
        SimpleGraph g(t.a * t.b);
        auto id = [&](int layer, int j) { return layer * t.a + j; };
        for (int layer = 0; layer < t.b; ++layer)
            for (int j = 0; j < t.a; ++j) {
                g.add_edge(id(layer, j), id(layer, (j + 1) % t.a));
                if (layer + 1 < t.b) g.add_edge(id(layer, j), id(layer + 1, j));
            }
        return g;
    }
    case Topology::CubeGraph: {
        SimpleGraph g(8);  // vertices are the corners of {0,1}^3
        for (int v = 0; v < 8; ++v)
            for (int bit : {1, 2, 4})
                if ((v ^ bit) > v) g.add_edge(v, v ^ bit);
        return g;
    }
    case Topology::Decorated: {
        SimpleGraph base = reference_graph(make_topology(t.base, t.base_a, t.base_b));
        need(t.pendants == base.n, "Decorated needs one pendant per base vertex");
        SimpleGraph g(2 * base.n);
        for (auto [x, y] : base.edges) g.add_edge(x, y);
        for (int v = 0; v < base.n; ++v) g.add_edge(v, base.n + v);
        return g;
    }
    case Topology::Maximal:
        need(t.a >= 1, "Maximal needs a grid size");
        return maximal_reference(t.a).graph;
    default: throw std::invalid_argument("reference_graph: no canonical instance for " + topology_to_string(cls));
    }
}

// Wildcard-aware match: does a classified structure satisfy a requested
// target? Zero-valued parameters in the target accept anything; parameter
// overlaps (a path is a depth-1 lattice, C4 is the 2x2 lattice, ...) count.
inline bool topology_matches(const TopologyClass& found, const TopologyClass& target) {
    TopologyClass f = canonical_form(found);
    TopologyClass t = canonical_form(target);

    std::vector<TopologyClass> reps{f};
    if (f.tag == Topology::Path) reps.push_back(make_topology(Topology::Lattice2D, 1, f.a));
    if (f.tag == Topology::Cycle && f.a == 4) reps.push_back(make_topology(Topology::Lattice2D, 2, 2));
    if (f.tag == Topology::Cycle) reps.push_back(make_topology(Topology::Prism, f.a, 1));
    if (f.tag == Topology::HexCell) {
        reps.push_back(make_topology(Topology::Cycle, 6));
        reps.push_back(make_topology(Topology::Prism, 6, 1));
    }
    if (f.tag == Topology::CubeGraph) reps.push_back(make_topology(Topology::Prism, 4, 2));
    // A decorated hexagonal cell still answers a HexCell request (reported
    // distinctly by classify, accepted by search).
    if (f.tag == Topology::Decorated && f.base == Topology::HexCell && t.tag == Topology::HexCell) return true;

    auto param_ok = [](int want, int got) { return want == 0 || want == got; };
    for (const TopologyClass& r : reps) {
        if (r.tag != t.tag) continue;
        if (!param_ok(t.a, r.a) || !param_ok(t.b, r.b)) continue;
        if (t.tag == Topology::Decorated) {
            if (t.base != Topology::Other &&
                (t.base != r.base || !param_ok(t.base_a, r.base_a) || !param_ok(t.base_b, r.base_b)))
                continue;
            if (!param_ok(t.pendants, r.pendants)) continue;
        }
        return true;
    }
    return false;
}

// CLI-facing names: path:6, cycle:4, lattice:2,3 (or 2x3), prism:8,3, cube,
// hex, maximal:4, decorated[:<base>[:...]], other. Missing numbers = wildcard.
inline TopologyClass parse_topology(const std::string& spec) {
    std::string head = spec, rest;
    if (auto colon = spec.find(':'); colon != std::string::npos) {
        head = spec.substr(0, colon);
        rest = spec.substr(colon + 1);
    }
    auto nums = [&rest]() {
        std::vector<int> out;
        std::string cur;
        for (char ch : rest + ",") {
            if (ch == ',' || ch == 'x') {
                if (!cur.empty()) out.push_back(std::stoi(cur));
                cur.clear();
            } else if (ch >= '0' && ch <= '9') {
                cur += ch;
            } else {
                throw std::invalid_argument("parse_topology: bad parameter list '" + rest + "'");
            }
        }
        return out;
    };
    auto get = [](const std::vector<int>& v, std::size_t i) { return i < v.size() ? v[i] : 0; };
    if (head == "path") {
        auto v = nums();
        return make_topology(Topology::Path, get(v, 0));
    }
    if (head == "cycle") {
        auto v = nums();
        return make_topology(Topology::Cycle, get(v, 0));
    }
    if (head == "lattice") {
        auto v = nums();
        return make_topology(Topology::Lattice2D, get(v, 0), get(v, 1));
    }
    if (head == "prism") {
        auto v = nums();
        return make_topology(Topology::Prism, get(v, 0), get(v, 1));
    }
    if (head == "cube") return make_topology(Topology::CubeGraph);
    if (head == "hex") return make_topology(Topology::HexCell);
    if (head == "maximal") {
        auto v = nums();
        return make_topology(Topology::Maximal, get(v, 0));
    }
    if (head == "decorated") {
        TopologyClass t = make_topology(Topology::Decorated);
        if (!rest.empty()) {
            TopologyClass base = parse_topology(rest);
            t.base = base.tag, t.base_a = base.a, t.base_b = base.b;
        }
        return t;
    }
    if (head == "other") return make_topology(Topology::Other);
    throw std::invalid_argument("parse_topology: unknown topology '" + spec + "'");
}

// Golden reference for the maximal structure: the kappa = 0 component of an
// actual all-active run at side L, cached per L. Taken from a run on purpose,
// so Maximal certification never drifts from what the engine produces.
inline const Component& maximal_reference(int L) {
    if (L < 1) throw std::invalid_argument("maximal_reference: L must be >= 1");
    static std::map<int, Component> cache;
    static std::mutex cache_mutex;
    std::lock_guard<std::mutex> lock(cache_mutex);
    if (auto it = cache.find(L); it != cache.end()) return it->second;

    SimulationConfig cfg;
    cfg.grid = GridSpec(L);
    cfg.mask = all_active_mask(L);
    cfg.total_timesteps = 2 * L;
    cfg.schedule = make_basic_schedule(cfg.grid, cfg.total_timesteps);
    cfg.edge_probability = 1.0;
    cfg.rng_seed = 1;
    LabeledGraph graph = extract_graph(run(cfg));
    for (Component& comp : split_components(graph)) {
        if (comp.complete && comp.kappas.size() == 1 && comp.kappas.front() == 0)
            return cache.emplace(L, std::move(comp)).first->second;
    }
    throw std::logic_error("maximal_reference: all-active run lost its kappa=0 component");
}

}  // namespace collgrid
