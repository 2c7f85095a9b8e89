#include <catch2/catch.hpp>

#include "symrank/classifier.hpp"
#include "symrank/graph.hpp"
#include "symrank/rng.hpp"

using namespace symrank;

namespace {

SemisimpleGraph looped_cycle(int n) {
    SemisimpleGraph g(n);
    for (int v = 1; v <= n; ++v) {
        g.add_edge(v, v);
        g.add_edge(v, v % n + 1);
    }
    return g;
}

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

} // namespace

TEST_CASE("full-rank typicality decisions") {
    CHECK(is_full_rank_typical(looped_cycle(4)).full_rank_typical);
    CHECK(is_full_rank_typical(SemisimpleGraph::complete_looped(5)).full_rank_typical);

    // Complement contains a triangle: not full-rank typical, witness is odd.
    auto pattern = SemisimpleGraph::complete_looped(5);
    SemisimpleGraph g(5);
    for (const auto& [i, j] : pattern.edges())
        if (!(j <= 3 && i < j)) g.add_edge(i, j);
    const auto frt = is_full_rank_typical(g);
    CHECK_FALSE(frt.full_rank_typical);
    CHECK(frt.complement_check.odd_closed_walk.size() % 2 == 1);
}

TEST_CASE("typical ranks of clique unions") {
    const auto k2k2 = disjoint_union(SemisimpleGraph::complete_looped(2),
                                     SemisimpleGraph::complete_looped(2));
    auto report = typical_ranks(k2k2);
    REQUIRE(report.typical_set.has_value());
    CHECK(*report.typical_set == std::pair{2, 4});
    CHECK(report.gcr == 2);

    const auto k2k3 = disjoint_union(SemisimpleGraph::complete_looped(2),
                                     SemisimpleGraph::complete_looped(3));
    report = typical_ranks(k2k3);
    CHECK(*report.typical_set == std::pair{3, 5});
    CHECK(report.gcr == 3);

    const auto three = disjoint_union(
        disjoint_union(SemisimpleGraph::complete_looped(3), SemisimpleGraph::complete_looped(2)),
        SemisimpleGraph::complete_looped(2));
    report = typical_ranks(three);
    CHECK(*report.typical_set == std::pair{3, 5});

    report = typical_ranks(SemisimpleGraph::complete_looped(4));
    CHECK(*report.typical_set == std::pair{4, 4});
    CHECK(report.gcr == 4);
}

TEST_CASE("typical ranks of small loop patterns") {
    SemisimpleGraph one_loop(1, {{1, 1}});
    auto report = typical_ranks(one_loop);
    CHECK(*report.typical_set == std::pair{1, 1});

    SemisimpleGraph two_loops(2, {{1, 1}, {2, 2}});
    report = typical_ranks(two_loops);
    CHECK(*report.typical_set == std::pair{1, 2});
    CHECK(report.gcr == 1);

    auto empty = SemisimpleGraph(3);
    report = typical_ranks(empty);
    CHECK(*report.typical_set == std::pair{0, 0});
    CHECK(report.gcr == 0);
}

TEST_CASE("typical ranks of gcr-one graphs") {
    SemisimpleGraph triangle(3, {{1, 2}, {2, 3}, {1, 3}});
    auto report = typical_ranks(triangle);
    CHECK(*report.typical_set == std::pair{1, 1});

    SemisimpleGraph two_triangles(6, {{1, 2}, {2, 3}, {1, 3}, {4, 5}, {5, 6}, {4, 6}});
    report = typical_ranks(two_triangles);
    CHECK(*report.typical_set == std::pair{1, 2});
    CHECK(report.gcr == 1);
}

TEST_CASE("typical ranks of looped forests") {
    SemisimpleGraph star(3, {{1, 1}, {2, 2}, {3, 3}, {1, 2}, {1, 3}});
    auto report = typical_ranks(star);
    CHECK(*report.typical_set == std::pair{2, 3});
    CHECK(report.gcr == 2);

    // Two disjoint looped edges: a looped forest with two disjoint non-loop edges.
    const auto forest = disjoint_union(SemisimpleGraph::complete_looped(2),
                                       SemisimpleGraph::complete_looped(2));
    report = typical_ranks(forest);
    CHECK(*report.typical_set == std::pair{2, 4});

    // Looped path on 4 vertices: forest, not a star tree.
    SemisimpleGraph path4(4, {{1, 1}, {2, 2}, {3, 3}, {4, 4}, {1, 2}, {2, 3}, {3, 4}});
    report = typical_ranks(path4);
    CHECK(*report.typical_set == std::pair{2, 4});

    // Star tree plus extra looped isolated vertices keeps maximum 3.
    SemisimpleGraph star_iso(5, {{1, 1}, {2, 2}, {3, 3}, {4, 4}, {5, 5}, {1, 2}, {1, 3}});
    report = typical_ranks(star_iso);
    CHECK(*report.typical_set == std::pair{2, 3});
}

TEST_CASE("bounds for uncharacterized patterns") {
    // Looped 4-cycle: not a forest, not a clique union; bounds pin max = 4.
    auto report = typical_ranks(looped_cycle(4));
    CHECK_FALSE(report.typical_set.has_value());
    CHECK(report.max_lower == 4);
    CHECK(report.max_upper == 4);

    // Looped 5-cycle: bounds [4, 5], open between them.
    report = typical_ranks(looped_cycle(5));
    CHECK(report.max_lower == 4);
    CHECK(report.max_upper == 5);

    // Looped 6-cycle: complement's bipartite induced bound still 4 at most... compute.
    report = typical_ranks(looped_cycle(6));
    REQUIRE(report.max_lower.has_value());
    REQUIRE(report.max_upper.has_value());
    CHECK(*report.max_lower <= *report.max_upper);
    CHECK(*report.max_upper <= 5); // 2 + 6 - 3
}

TEST_CASE("full-rank typicality is monotone under edge addition") {
    for (int n = 1; n <= 4; ++n) {
        for (const auto& g : all_graphs(n)) {
            if (!is_full_rank_typical(g).full_rank_typical) continue;
            for (int i = 1; i <= n; ++i)
                for (int j = i; j <= n; ++j) {
                    if (g.has_edge(i, j)) continue;
                    SemisimpleGraph bigger = g;
                    bigger.add_edge(i, j);
                    CHECK(is_full_rank_typical(bigger).full_rank_typical);
                }
        }
    }
}

TEST_CASE("bounds stay ordered on random looped graphs") {
    Rng rng(606);
    for (int trial = 0; trial < 500; ++trial) {
        const int n = 1 + static_cast<int>(rng.below(10));
        SemisimpleGraph g(n);
        for (int v = 1; v <= n; ++v) g.add_edge(v, v);
        for (int i = 1; i <= n; ++i)
            for (int j = i + 1; j <= n; ++j)
                if (rng.uniform01() < 0.3) g.add_edge(i, j);
        const auto report = typical_ranks(g);
        if (report.typical_set) {
            CHECK(report.typical_set->first <= report.typical_set->second);
            CHECK(report.typical_set->second <= 2 * report.typical_set->first);
        } else {
            REQUIRE(report.max_lower.has_value());
            REQUIRE(report.max_upper.has_value());
            CHECK(*report.max_lower <= *report.max_upper);
        }
    }
}

TEST_CASE("suspension shift adds one everywhere") {
    SemisimpleGraph two_loops(2, {{1, 1}, {2, 2}});
    const auto base = typical_ranks(two_loops);
    const auto shifted = suspension_shift(base);
    CHECK(*shifted.typical_set == std::pair{2, 3});
    CHECK(shifted.gcr == 2);

    TypicalRankReport singleton;
    singleton.n = 1;
    singleton.gcr = 1;
    singleton.typical_set = {1, 1};
    CHECK(*suspension_shift(singleton).typical_set == std::pair{2, 2});

    TypicalRankReport wide;
    wide.n = 4;
    wide.gcr = 2;
    wide.typical_set = {2, 4};
    CHECK(*suspension_shift(wide).typical_set == std::pair{3, 5});

    TypicalRankReport inexact;
    inexact.n = 4;
    CHECK_THROWS_AS(suspension_shift(inexact), InputError);

    // The shifted prediction matches the direct classification of the
    // suspended graph: two looped vertices plus a looped suspension is the
    // looped star tree on three vertices.
    const auto star = add_looped_suspension_vertex(two_loops);
    const auto direct = typical_ranks(star);
    CHECK(*direct.typical_set == *shifted.typical_set);
}
