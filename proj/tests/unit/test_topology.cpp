#include <catch2/catch_amalgamated.hpp>

#include <random>
#include <stdexcept>
#include <vector>

#include "collgrid/topology.hpp"
#include "support/helpers.hpp"

using namespace collgrid;

namespace {

// Shuffle vertex ids; classification must not care about labeling.
SimpleGraph shuffled(const SimpleGraph& g, std::mt19937_64& rng) {
    std::vector<int> perm(std::size_t(g.n));
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), rng);
    SimpleGraph out(g.n);
    for (auto [a, b] : g.edges) out.add_edge(perm[std::size_t(a)], perm[std::size_t(b)]);
    return out;
}

}  // namespace

TEST_CASE("canonical forms collapse overlapping spellings", "[topology]") {
    CHECK(canonical_form(make_topology(Topology::Lattice2D, 1, 7)) == make_topology(Topology::Path, 7));
    CHECK(canonical_form(make_topology(Topology::Lattice2D, 7, 1)) == make_topology(Topology::Path, 7));
    CHECK(canonical_form(make_topology(Topology::Lattice2D, 2, 2)) == make_topology(Topology::Cycle, 4));
    CHECK(canonical_form(make_topology(Topology::Lattice2D, 5, 3)) == make_topology(Topology::Lattice2D, 3, 5));
    CHECK(canonical_form(make_topology(Topology::Prism, 5, 1)) == make_topology(Topology::Cycle, 5));
    CHECK(canonical_form(make_topology(Topology::Prism, 6, 1)) == make_topology(Topology::HexCell));
    CHECK(canonical_form(make_topology(Topology::Prism, 4, 2)) == make_topology(Topology::CubeGraph));
    CHECK(canonical_form(make_topology(Topology::Cycle, 6)) == make_topology(Topology::HexCell));
    CHECK(canonical_form(make_topology(Topology::Cycle, 5)) == make_topology(Topology::Cycle, 5));
}

TEST_CASE("topology names", "[topology]") {
    CHECK(topology_to_string(make_topology(Topology::Path, 16)) == "Path(16)");
    CHECK(topology_to_string(make_topology(Topology::Cycle, 6)) == "HexCell");
    CHECK(topology_to_string(make_topology(Topology::Lattice2D, 2, 0)) == "Lattice2D(2,*)");
    CHECK(topology_to_string(make_topology(Topology::Prism, 8, 3)) == "Prism(8,3)");
    CHECK(topology_to_string(make_topology(Topology::Maximal, 4)) == "Maximal(4)");
    CHECK(topology_to_string(make_topology(Topology::Other)) == "Other");
    TopologyClass dec = make_topology(Topology::Decorated);
    dec.base = Topology::HexCell;
    dec.pendants = 6;
    CHECK(topology_to_string(dec) == "Decorated(HexCell,6)");
}

TEST_CASE("classification of the catalogue references", "[topology]") {
    // classify(reference_graph(t)) returns t itself for every canonical class.
    std::vector<TopologyClass> catalogue = {
        make_topology(Topology::Path, 1),
        make_topology(Topology::Path, 2),
        make_topology(Topology::Path, 6),
        make_topology(Topology::Path, 16),
        make_topology(Topology::Cycle, 3),
        make_topology(Topology::Cycle, 4),
        make_topology(Topology::Cycle, 5),
        make_topology(Topology::Cycle, 8),
        make_topology(Topology::HexCell),
        make_topology(Topology::Lattice2D, 2, 3),
        make_topology(Topology::Lattice2D, 2, 4),
        make_topology(Topology::Lattice2D, 3, 3),
        make_topology(Topology::Lattice2D, 4, 12),
        make_topology(Topology::Prism, 3, 2),
        make_topology(Topology::Prism, 5, 2),
        make_topology(Topology::Prism, 8, 3),
        make_topology(Topology::Prism, 3, 5),
        make_topology(Topology::CubeGraph),
        make_topology(Topology::Maximal, 3),
        make_topology(Topology::Maximal, 4),
    };
    for (const auto& t : catalogue) {
        SimpleGraph g = reference_graph(t);
        CHECK(classify(g) == canonical_form(t));
    }
}

TEST_CASE("classification is label-invariant", "[topology]") {
    std::mt19937_64 rng(77);
    std::vector<TopologyClass> sample = {
        make_topology(Topology::Path, 9),
        make_topology(Topology::Cycle, 7),
        make_topology(Topology::HexCell),
        make_topology(Topology::Lattice2D, 3, 4),
        make_topology(Topology::Prism, 4, 3),
        make_topology(Topology::CubeGraph),
    };
    for (const auto& t : sample)
        for (int round = 0; round < 3; ++round)
            CHECK(classify(shuffled(reference_graph(t), rng)) == canonical_form(t));
}

TEST_CASE("reference instances have the expected sizes", "[topology]") {
    SimpleGraph prism = reference_graph(make_topology(Topology::Prism, 8, 3));
    CHECK(prism.n == 24);
    CHECK(prism.edges.size() == 40);

    SimpleGraph cube = reference_graph(make_topology(Topology::CubeGraph));
    CHECK(cube.n == 8);
    CHECK(cube.edges.size() == 12);
    for (int d : cube.degrees()) CHECK(d == 3);

    SimpleGraph one = reference_graph(make_topology(Topology::Path, 1));
    CHECK(one.n == 1);
    CHECK(one.edges.empty());

    SimpleGraph lattice = reference_graph(make_topology(Topology::Lattice2D, 4, 12));
    CHECK(lattice.n == 48);
    CHECK(lattice.edges.size() == 4 * 11 + 12 * 3);
}

TEST_CASE("decorated lattices round-trip through classify", "[topology]") {
    TopologyClass dec = make_topology(Topology::Decorated);
    dec.base = Topology::Lattice2D;
    dec.base_a = 2, dec.base_b = 3;
    dec.pendants = 6;
    SimpleGraph g = reference_graph(dec);
    CHECK(g.n == 12);
    TopologyClass cls = classify(g);
    CHECK(cls.tag == Topology::Decorated);
    CHECK(cls.base == Topology::Lattice2D);
    CHECK(cls.base_a == 2);
    CHECK(cls.base_b == 3);
    CHECK(cls.pendants == 6);

    TopologyClass hex_dec = make_topology(Topology::Decorated);
    hex_dec.base = Topology::HexCell;
    hex_dec.pendants = 6;
    TopologyClass hex_cls = classify(reference_graph(hex_dec));
    CHECK(hex_cls.tag == Topology::Decorated);
    CHECK(hex_cls.base == Topology::HexCell);
}

TEST_CASE("the maximal reference is the complete join of the two stream sets", "[topology]") {
    const Component& golden = maximal_reference(4);
    CHECK(golden.graph.n == 8);
    CHECK(golden.graph.edges.size() == 16);
    for (int d : golden.graph.degrees()) CHECK(d == 4);
    CHECK(golden.complete);
    CHECK(classify(golden.graph) == make_topology(Topology::Maximal, 4));

    // Small sides canonicalize to their familiar names instead.
    CHECK(classify(maximal_reference(2).graph) == make_topology(Topology::Cycle, 4));
}

TEST_CASE("classify rejects what it cannot handle", "[topology]") {
    CHECK_THROWS_AS(classify(SimpleGraph(0)), std::invalid_argument);
    SimpleGraph two(2);  // no edge: disconnected
    CHECK_THROWS_AS(classify(two), std::invalid_argument);
    SimpleGraph big(65);
    CHECK_THROWS_AS(classify(big), unsupported_size);
}

TEST_CASE("structures outside the catalogue classify as Other", "[topology]") {
    SimpleGraph star(5);  // K_{1,4}: max degree 4, no catalogue member
    for (int v = 1; v < 5; ++v) star.add_edge(0, v);
    CHECK(classify(star).tag == Topology::Other);

    SimpleGraph k4(4);  // complete graph on 4: 3-regular but too dense for C4
    for (int a = 0; a < 4; ++a)
        for (int b = a + 1; b < 4; ++b) k4.add_edge(a, b);
    CHECK(classify(k4).tag == Topology::Other);

    // Hexagon with a short chord: right degree profile for a 2x3 lattice but
    // the wrong shape (the antipodal chord would be the lattice).
    SimpleGraph theta = reference_graph(make_topology(Topology::Cycle, 6));
    theta.add_edge(0, 2);
    CHECK(classify(theta).tag == Topology::Other);
    SimpleGraph ladder = reference_graph(make_topology(Topology::Cycle, 6));
    ladder.add_edge(0, 3);
    CHECK(classify(ladder) == make_topology(Topology::Lattice2D, 2, 3));
}

TEST_CASE("wildcard matching", "[topology]") {
    CHECK(topology_matches(make_topology(Topology::Path, 16), make_topology(Topology::Path, 0)));
    CHECK(topology_matches(make_topology(Topology::Path, 16), make_topology(Topology::Path, 16)));
    CHECK_FALSE(topology_matches(make_topology(Topology::Path, 15), make_topology(Topology::Path, 16)));

    // Parameter overlaps are honored in the found -> target direction.
    CHECK(topology_matches(make_topology(Topology::Path, 6), make_topology(Topology::Lattice2D, 1, 6)));
    CHECK(topology_matches(make_topology(Topology::Cycle, 4), make_topology(Topology::Lattice2D, 2, 2)));
    CHECK(topology_matches(make_topology(Topology::Cycle, 4), make_topology(Topology::Lattice2D, 2, 0)));
    CHECK(topology_matches(make_topology(Topology::HexCell), make_topology(Topology::Cycle, 6)));
    CHECK(topology_matches(make_topology(Topology::HexCell), make_topology(Topology::Prism, 6, 1)));
    CHECK(topology_matches(make_topology(Topology::CubeGraph), make_topology(Topology::Prism, 4, 2)));
    CHECK(topology_matches(make_topology(Topology::Cycle, 5), make_topology(Topology::Prism, 5, 1)));
    CHECK_FALSE(topology_matches(make_topology(Topology::Cycle, 5), make_topology(Topology::Lattice2D, 0, 0)));
    CHECK_FALSE(topology_matches(make_topology(Topology::Path, 4), make_topology(Topology::Cycle, 4)));

    TopologyClass dec_hex = make_topology(Topology::Decorated);
    dec_hex.base = Topology::HexCell;
    dec_hex.pendants = 6;
    CHECK(topology_matches(dec_hex, make_topology(Topology::HexCell)));
    CHECK(topology_matches(dec_hex, make_topology(Topology::Decorated)));
    TopologyClass dec_path_target = make_topology(Topology::Decorated);
    dec_path_target.base = Topology::Path;
    CHECK_FALSE(topology_matches(dec_hex, dec_path_target));
}

TEST_CASE("topology parsing", "[topology]") {
    CHECK(parse_topology("path:16") == make_topology(Topology::Path, 16));
    CHECK(parse_topology("path") == make_topology(Topology::Path, 0));
    CHECK(parse_topology("cycle:4") == make_topology(Topology::Cycle, 4));
    CHECK(parse_topology("lattice:2,3") == make_topology(Topology::Lattice2D, 2, 3));
    CHECK(parse_topology("lattice:2x3") == make_topology(Topology::Lattice2D, 2, 3));
    CHECK(parse_topology("lattice:2") == make_topology(Topology::Lattice2D, 2, 0));
    CHECK(parse_topology("prism:8,3") == make_topology(Topology::Prism, 8, 3));
    CHECK(parse_topology("cube") == make_topology(Topology::CubeGraph));
    CHECK(parse_topology("hex") == make_topology(Topology::HexCell));
    CHECK(parse_topology("maximal:4") == make_topology(Topology::Maximal, 4));
    TopologyClass dec = parse_topology("decorated:hex");
    CHECK(dec.tag == Topology::Decorated);
    CHECK(dec.base == Topology::HexCell);
    CHECK(parse_topology("other") == make_topology(Topology::Other));
    CHECK_THROWS_AS(parse_topology("pyramid"), std::invalid_argument);
    CHECK_THROWS_AS(parse_topology("path:ab"), std::invalid_argument);
}

TEST_CASE("reference_graph rejects wildcards and unbuildable classes", "[topology]") {
    CHECK_THROWS_AS(reference_graph(make_topology(Topology::Path, 0)), std::invalid_argument);
    CHECK_THROWS_AS(reference_graph(make_topology(Topology::Cycle, 2)), std::invalid_argument);
    CHECK_THROWS_AS(reference_graph(make_topology(Topology::Other)), std::invalid_argument);
}
