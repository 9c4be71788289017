#include "dtorus/graph_oracle.hpp"
#include "dtorus/theorem.hpp"

#include <catch_amalgamated.hpp>

using namespace dtorus;
using namespace dtorus::oracle;

TEST_CASE("torus graphs")
{
    for (const auto& [sides, v, e] : {std::tuple{std::vector<int>{3}, 3, 3},
                                      std::tuple{std::vector<int>{3, 3}, 9, 18},
                                      std::tuple{std::vector<int>{3, 3, 3}, 27, 81}}) {
        const auto g = build_torus(TorusSpec(sides));
        CHECK(g.vertex_count() == v);
        CHECK(g.edge_count() == e);
        CHECK(g.degree() == 2 * static_cast<int>(sides.size()));
        // each step is undone by the reverse step
        for (std::int64_t x = 0; x < g.vertex_count(); ++x)
            for (int s = 0; s < g.degree(); ++s)
                CHECK(g.neighbor(g.neighbor(x, s), reverse_direction(s)) == x);
    }
    const auto g = build_torus(TorusSpec({3, 4}));
    std::vector<int> c;
    g.decode(g.encode(std::vector<int>{2, 3}), c);
    CHECK(c == std::vector<int>{2, 3});
}

TEST_CASE("edge matrix rows sum to q")
{
    for (const auto& sides : {std::vector<int>{3}, std::vector<int>{4, 5}, std::vector<int>{3, 3, 3}}) {
        const TorusSpec t(sides);
        const DirectedEdgeMatrix w(build_torus(t));
        CHECK(w.size() == static_cast<std::size_t>(2 * t.edge_count()));
        for (std::size_t e = 0; e < w.size(); ++e)
            CHECK(w.row_sum(e) == 2 * t.dimension() - 1);
        // no backtracking entry: (v, s) -> (head, s^1)
        const auto g = build_torus(t);
        CHECK(w.entry(0, static_cast<std::size_t>(g.neighbor(0, 0) * g.degree() + 1)) == 0);
        CHECK(w.entry(0, static_cast<std::size_t>(g.neighbor(0, 0) * g.degree() + 0)) == 1);
    }
}

TEST_CASE("trace and enumerative counts")
{
    CHECK(trace_count(TorusSpec({3}), 3) == 6);
    CHECK(trace_count(TorusSpec({3}), 4) == 0);
    CHECK(trace_count(TorusSpec({3, 3}), 6) == 972);
    CHECK(count_reduced_cycles_enumerative(TorusSpec({3}), 3) == 6);
    CHECK(count_reduced_cycles_enumerative(TorusSpec({3, 3}), 3) == 36);
    CHECK(count_reduced_cycles_enumerative(TorusSpec({3, 3}), 5) == 360);
}

TEST_CASE("three routes agree")
{
    for (const auto& sides : {std::vector<int>{3}, std::vector<int>{4}, std::vector<int>{5},
                              std::vector<int>{3, 3}, std::vector<int>{3, 4}, std::vector<int>{3, 5}}) {
        const TorusSpec t(sides);
        for (int n = 1; n <= 8; ++n) {
            const BigInt expected = count_reduced_cycles(t, n).total;
            CHECK(trace_count(t, n) == expected);
            CHECK(count_reduced_cycles_enumerative(t, n) == expected);
            CHECK(count_reduced_cycles_via_lattice(t, n) == expected);
        }
    }
}

TEST_CASE("reduced path counts to scaled partition targets")
{
    CHECK(count_reduced_paths_mod_m({2, 3, 6, {0, 0}}) == 24);
    CHECK(count_reduced_paths_mod_m({2, 3, 6, {6, 0}}) == 1);
    CHECK(count_reduced_paths_mod_m({2, 3, 6, {3, 3}}) == 20);
    CHECK(count_reduced_paths_mod_m(LatticeWalkQuery::for_partition(3, 2, 6, Partition({1, 1}))) == 20);
    // unreachable by parity or distance
    CHECK(count_reduced_paths_mod_m({2, 3, 5, {6, 0}}) == 0);
    CHECK(count_reduced_paths_mod_m({2, 3, 8, {3, 0}}) == 0);
    CHECK(count_reduced_paths_mod_m({2, 3, 7, {3, 0}}) == 42);
    CHECK_THROWS(count_reduced_paths_mod_m({2, 3, 6, {0}}));
}

TEST_CASE("lattice path counts over all translates give the per-vertex cycle count")
{
    for (int n = 1; n <= 8; ++n) {
        BigInt sum = 0;
        for (int p1 = -3; p1 <= 3; ++p1)
            for (int p2 = -3; p2 <= 3; ++p2)
                sum += count_reduced_paths_mod_m({2, 3, n, {3 * p1, 3 * p2}});
        CHECK(sum * 9 == trace_count(TorusSpec({3, 3}), n));
    }
}

TEST_CASE("work budget is refused up front")
{
    CHECK_THROWS_AS(count_reduced_cycles_enumerative(TorusSpec({3, 3}), 30), budget_exceeded);
    CHECK_THROWS_AS(count_reduced_paths_mod_m({2, 3, 10, {0, 0}}, WorkBudget{1000}), budget_exceeded);
    CHECK(walk_tree_bound(1, 3) == 2 + 2 + 2);
    CHECK(walk_tree_bound(2, 2) == 4 + 12);
}
