#include <catch2/catch.hpp>

#include <algorithm>
#include <set>

#include "symrank/graph.hpp"
#include "symrank/rng.hpp"

using namespace symrank;

namespace {

// All labeled semisimple graphs on n vertices, one per subset of K_n-with-loops edges.
std::vector<SemisimpleGraph> all_graphs(int n) {
    std::vector<Edge> slots;
    for (int i = 1; i <= n; ++i)
        for (int j = i; j <= n; ++j) slots.push_back({i, j});
    std::vector<SemisimpleGraph> out;
    for (std::uint64_t mask = 0; mask < (1ull << slots.size()); ++mask) {
        SemisimpleGraph g(n);
        for (std::size_t k = 0; k < slots.size(); ++k)
            if (mask & (1ull << k)) g.add_edge(slots[k].first, slots[k].second);
        out.push_back(std::move(g));
    }
    return out;
}

SemisimpleGraph random_graph(int n, double p, Rng& rng) {
    SemisimpleGraph g(n);
    for (int i = 1; i <= n; ++i)
        for (int j = i; j <= n; ++j)
            if (rng.uniform01() < p) g.add_edge(i, j);
    return g;
}

// Reference bipartiteness: try all 2-colorings.
bool bipartite_by_enumeration(const SemisimpleGraph& g) {
    const int n = g.vertex_count();
    for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
        bool ok = true;
        for (const auto& [i, j] : g.edges()) {
            const bool ci = mask & (1u << (i - 1)), cj = mask & (1u << (j - 1));
            if (i == j || ci == cj) { ok = false; break; }
        }
        if (ok) return true;
    }
    return g.edge_count() == 0 || n == 0;
}

SemisimpleGraph looped_cycle(int n) {
    SemisimpleGraph g(n);
    for (int v = 1; v <= n; ++v) {
        g.add_edge(v, v);
        g.add_edge(v, v % n + 1);
    }
    return g;
}

} // namespace

TEST_CASE("complement swaps the complete looped pattern with the empty one") {
    const auto k2 = SemisimpleGraph::complete_looped(2);
    const auto empty2 = SemisimpleGraph(2);
    CHECK(complement(k2) == empty2);
    CHECK(complement(empty2) == k2);
}

TEST_CASE("complement of the looped 4-cycle is the diagonal pair") {
    const auto c4 = looped_cycle(4);
    const SemisimpleGraph expected(4, {{1, 3}, {2, 4}});
    CHECK(complement(c4) == expected);
}

TEST_CASE("complement is an involution") {
    for (int n = 0; n <= 4; ++n)
        for (const auto& g : all_graphs(n)) CHECK(complement(complement(g)) == g);
    Rng rng(2024);
    for (int trial = 0; trial < 300; ++trial) {
        const int n = 5 + static_cast<int>(rng.below(4));
        const auto g = random_graph(n, rng.uniform01(), rng);
        CHECK(complement(complement(g)) == g);
    }
}

TEST_CASE("bipartiteness: diagonal pair on 4 vertices") {
    const SemisimpleGraph g(4, {{1, 3}, {2, 4}});
    const auto check = is_bipartite(g);
    REQUIRE(check.bipartite);
    // The returned classes must separate both edges.
    const std::set<int> a(check.class_a.begin(), check.class_a.end());
    for (const auto& [i, j] : g.edges()) CHECK(a.count(i) != a.count(j));
}

TEST_CASE("bipartiteness: loops and odd cycles fail with witnesses") {
    SemisimpleGraph looped(3, {{2, 2}});
    auto check = is_bipartite(looped);
    REQUIRE_FALSE(check.bipartite);
    REQUIRE(check.odd_closed_walk == std::vector<int>{2});

    SemisimpleGraph triangle(3, {{1, 2}, {2, 3}, {1, 3}});
    check = is_bipartite(triangle);
    REQUIRE_FALSE(check.bipartite);
    REQUIRE(check.odd_closed_walk.size() % 2 == 1);
    // Witness is a genuine closed walk in the graph.
    const auto& walk = check.odd_closed_walk;
    for (std::size_t k = 0; k < walk.size(); ++k)
        CHECK(triangle.has_edge(walk[k], walk[(k + 1) % walk.size()]));
}

TEST_CASE("bipartiteness agrees with exhaustive 2-coloring on n <= 5") {
    for (int n = 1; n <= 5; ++n)
        for (const auto& g : all_graphs(n))
            CHECK(is_bipartite(g).bipartite == bipartite_by_enumeration(g));
}

TEST_CASE("cycle profile classifies the stated examples") {
    SemisimpleGraph two_loops(2, {{1, 1}, {2, 2}});
    auto profile = cycle_profile(two_loops);
    REQUIRE(profile.components.size() == 2);
    for (const auto& c : profile.components) {
        CHECK(c.kind == CycleKind::unique_odd_cycle);
        CHECK(c.cycle.size() == 1);
    }

    SemisimpleGraph path(3, {{1, 2}, {2, 3}});
    profile = cycle_profile(path);
    REQUIRE(profile.components.size() == 1);
    CHECK(profile.components[0].kind == CycleKind::acyclic);

    SemisimpleGraph square(4, {{1, 2}, {2, 3}, {3, 4}, {1, 4}});
    profile = cycle_profile(square);
    REQUIRE(profile.components.size() == 1);
    CHECK(profile.components[0].kind == CycleKind::unique_even_cycle);
    CHECK(profile.components[0].cycle.size() == 4);
}

TEST_CASE("cycle kinds match the edge-count arithmetic on random graphs") {
    Rng rng(5150);
    for (int trial = 0; trial < 200; ++trial) {
        const int n = 2 + static_cast<int>(rng.below(6));
        const auto g = random_graph(n, 0.35, rng);
        for (const auto& c : cycle_profile(g).components) {
            const int v = static_cast<int>(c.vertices.size());
            if (c.edge_count <= v - 1) CHECK(c.kind == CycleKind::acyclic);
            else if (c.edge_count == v)
                CHECK((c.kind == CycleKind::unique_odd_cycle ||
                       c.kind == CycleKind::unique_even_cycle));
            else CHECK(c.kind == CycleKind::multiple_cycles);
        }
    }
}

TEST_CASE("family tags: clique unions, star trees, gcr-one graphs") {
    const auto k2k3 = disjoint_union(SemisimpleGraph::complete_looped(2),
                                     SemisimpleGraph::complete_looped(3));
    auto fam = classify_family(k2k3);
    REQUIRE(fam.has(FamilyTag::disjoint_union_of_looped_cliques));
    CHECK(fam.clique_sizes == std::vector<int>{3, 2});

    SemisimpleGraph star(3, {{1, 1}, {2, 2}, {3, 3}, {1, 2}, {1, 3}});
    fam = classify_family(star);
    CHECK(fam.has(FamilyTag::looped_forest));
    CHECK(fam.has(FamilyTag::looped_star_tree_plus_isolated));

    SemisimpleGraph triangle(3, {{1, 2}, {2, 3}, {1, 3}});
    fam = classify_family(triangle);
    CHECK(fam.has(FamilyTag::gcr_one_graph));
    CHECK_FALSE(fam.has(FamilyTag::disjoint_union_of_looped_cliques));
}

TEST_CASE("maximum independent set") {
    SemisimpleGraph path(3, {{1, 1}, {2, 2}, {3, 3}, {1, 2}, {2, 3}});
    CHECK(max_independent_set_size(path) == 2);
    CHECK(max_independent_set_size(SemisimpleGraph::complete_looped(4)) == 1);
    const auto two_edges = disjoint_union(SemisimpleGraph::complete_looped(2),
                                          SemisimpleGraph::complete_looped(2));
    CHECK(max_independent_set_size(two_edges) == 2);
    CHECK_THROWS_AS(max_independent_set_size(SemisimpleGraph(25)), SizeLimitError);
}

TEST_CASE("maximum bipartite induced subgraph") {
    CHECK(max_bipartite_induced_size(SemisimpleGraph(4, {{1, 3}, {2, 4}})) == 4);
    CHECK(max_bipartite_induced_size(SemisimpleGraph::complete_looped(3)) == 0);
    CHECK_THROWS_AS(max_bipartite_induced_size(SemisimpleGraph(17)), SizeLimitError);

    // Looped complete bipartite K_{2,3}: its complement caps at 4.
    SemisimpleGraph k23(5);
    for (int v = 1; v <= 5; ++v) k23.add_edge(v, v);
    for (int a = 1; a <= 2; ++a)
        for (int b = 3; b <= 5; ++b) k23.add_edge(a, b);
    CHECK(max_bipartite_induced_size(complement(k23)) == 4);
}

TEST_CASE("complement of a two-clique union is bipartite on all vertices") {
    Rng rng(77);
    for (int trial = 0; trial < 20; ++trial) {
        const int a = 1 + static_cast<int>(rng.below(4));
        const int b = 1 + static_cast<int>(rng.below(4));
        const auto g = disjoint_union(SemisimpleGraph::complete_looped(a),
                                      SemisimpleGraph::complete_looped(b));
        CHECK(max_bipartite_induced_size(complement(g)) == a + b);
    }
}

TEST_CASE("graph text format round-trips bit-exactly") {
    const std::string text = "# looped path\nn 3\n1 1\n1 2\n2 2\n2 3\n3 3\n";
    const auto g = parse_graph(text);
    CHECK(g.vertex_count() == 3);
    CHECK(g.edge_count() == 5);
    const std::string canonical = write_graph(g);
    CHECK(parse_graph(canonical) == g);
    CHECK(write_graph(parse_graph(canonical)) == canonical);

    Rng rng(31337);
    for (int trial = 0; trial < 50; ++trial) {
        const auto h = random_graph(1 + static_cast<int>(rng.below(7)), 0.4, rng);
        CHECK(parse_graph(write_graph(h)) == h);
    }
}

TEST_CASE("graph text format rejects malformed input") {
    CHECK_THROWS_AS(parse_graph("1 2\n"), InputError);
    CHECK_THROWS_AS(parse_graph("n 2\n1 3\n"), InputError);
    CHECK_THROWS_AS(parse_graph("n 2\n1 2\n1 2\n"), InputError);
    CHECK_THROWS_AS(parse_graph("n 2\n1 2 3\n"), InputError);
    CHECK_THROWS_AS(parse_graph(""), InputError);
}
