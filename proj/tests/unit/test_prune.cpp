#include "fixtures.hpp"
#include "../oracles.hpp"

#include <colorenergy/error.hpp>
#include <colorenergy/prune.hpp>

#include <doctest.h>

#include <algorithm>

using namespace colorenergy;
using fixtures::mono;
using fixtures::rainbow;

namespace
{
    auto hand_built(const std::vector<std::pair<Tuple, Tuple>> & edges) -> PrunedEnergyGraph
    {
        return PrunedEnergyGraph::from_parts(mono(8), fixtures::striped_partition(8, 2), edges, 0);
    }
}

TEST_SUITE("prune")
{
    TEST_CASE("partition is balanced and seeded")
    {
        for (int n : {7, 10, 13})
            for (int r : {2, 3}) {
                auto p = make_partition(n, r, 42);
                int lo = n / r, hi = (n + r - 1) / r;
                for (auto & cls : p.classes) {
                    CHECK(static_cast<int>(cls.size()) >= lo);
                    CHECK(static_cast<int>(cls.size()) <= hi);
                }
                auto q = make_partition(n, r, 42);
                CHECK(p.part_of == q.part_of);
                CHECK(p.side_of == q.side_of);
            }
    }

    TEST_CASE("tuple ids follow lexicographic order")
    {
        auto pg = build_pruned(oracle::random_coloring(9, 3, 1), 3, 5);
        for (TupleId id = 0; id + 1 < pg.vertex_count(); ++id) {
            CHECK(pg.tuple(id) < pg.tuple(id + 1));
            CHECK(pg.id_of(pg.tuple(id)) == id);
        }
    }

    TEST_CASE("builder output passes verification")
    {
        for (std::uint64_t seed = 0; seed < 30; ++seed) {
            int r = 2 + static_cast<int>(seed % 2);
            int n = 8 + static_cast<int>(seed % 10);
            auto g = oracle::random_coloring(n, 2 + static_cast<int>(seed % 5), seed);
            PruneStats stats;
            auto pg = build_pruned(g, r, seed, {}, &stats);
            CHECK(verify_pruned(pg).ok());
            CHECK(stats.edges_after == pg.num_edges());
            CHECK(stats.edges_before_exact == (BigInt(1) << (r - 1)) * stats.edges_before_paper);
            for (auto [a, b] : pg.edges()) {
                auto x = pg.tuple(a), y = pg.tuple(b);
                Color c = g.color(x[0], y[0]);
                for (int k = 0; k < r; ++k) {
                    REQUIRE(x[k] != y[k]);
                    CHECK(g.color(x[k], y[k]) == c);
                    CHECK(pg.partition().side_of[x[k]] != pg.partition().side_of[y[k]]);
                    auto e = pg.project_edge(a, b, k);
                    CHECK(e.u < e.v);
                }
            }
        }
    }

    TEST_CASE("rainbow and monochromatic inputs")
    {
        auto rb = build_pruned(rainbow(10), 2, 3);
        CHECK(verify_pruned(rb).ok());
        for (TupleId x = 0; x < rb.vertex_count(); ++x)
            CHECK(rb.degree(x) <= 1);

        auto a = build_pruned(mono(4), 2, 17);
        auto b = build_pruned(mono(4), 2, 17);
        CHECK(verify_pruned(a).ok());
        CHECK(std::equal(a.edges().begin(), a.edges().end(), b.edges().begin(), b.edges().end()));
    }

    TEST_CASE("same seed gives identical output")
    {
        auto g = oracle::random_coloring(14, 3, 99);
        auto a = build_pruned(g, 3, 123);
        auto b = build_pruned(g, 3, 123);
        CHECK(a.partition().part_of == b.partition().part_of);
        CHECK(std::equal(a.edges().begin(), a.edges().end(), b.edges().begin(), b.edges().end()));
    }

    TEST_CASE("explicit partition is honoured")
    {
        PruneOptions o;
        o.partition = fixtures::striped_partition(8, 2);
        auto pg = build_pruned(mono(8), 2, 1, o);
        CHECK(pg.partition().part_of == o.partition->part_of);
        CHECK(verify_pruned(pg).ok());
        CHECK(pg.num_edges() > 0);
    }

    TEST_CASE("bipartition violation is reported with the edge")
    {
        auto pg = hand_built({{{0, 1}, {2, 5}}});
        auto rep = verify_pruned(pg);
        CHECK(rep.count(PruneProperty::BipartitionCrossing) == 1);
        auto it = std::find_if(rep.violations.begin(), rep.violations.end(),
                [](auto & v) { return v.property == PruneProperty::BipartitionCrossing; });
        REQUIRE(it != rep.violations.end());
        std::vector<Vertex> a{0, 1}, b{2, 5};
        CHECK(std::find(it->witness.begin(), it->witness.end(), pg.id_of(a)) != it->witness.end());
        CHECK(std::find(it->witness.begin(), it->witness.end(), pg.id_of(b)) != it->witness.end());
    }

    TEST_CASE("distance-two clash is reported")
    {
        auto pg = hand_built({{{0, 1}, {4, 5}}, {{0, 1}, {6, 5}}});
        auto rep = verify_pruned(pg);
        CHECK(rep.count(PruneProperty::BipartitionCrossing) == 0);
        CHECK(rep.count(PruneProperty::CoordinateDistinct) >= 1);

        auto clean = hand_built({{{0, 1}, {4, 5}}, {{0, 1}, {6, 7}}});
        CHECK(verify_pruned(clean).ok());
    }

    TEST_CASE("non-energy edges are reported")
    {
        auto g = fixtures::rainbow(8);
        auto pg = PrunedEnergyGraph::from_parts(g, fixtures::striped_partition(8, 2),
                std::vector<std::pair<Tuple, Tuple>>{{{0, 1}, {4, 5}}}, 0);
        CHECK(verify_pruned(pg).count(PruneProperty::EnergyEdge) == 1);
    }

    TEST_CASE("hand-built graphs reject tuples outside the product")
    {
        std::vector<std::pair<Tuple, Tuple>> bad{{{0, 2}, {4, 5}}};
        CHECK_THROWS_AS(hand_built(bad), Error);
    }
}
