#include "fixtures.hpp"
#include "../oracles.hpp"

#include <colorenergy/energy.hpp>
#include <colorenergy/error.hpp>

#include <doctest.h>

using namespace colorenergy;
using fixtures::mono;
using fixtures::rainbow;

TEST_SUITE("energy")
{
    TEST_CASE("small materialized graphs")
    {
        auto rb = build_energy_graph(rainbow(3), 2, EnergyMode::Materialize);
        CHECK(rb.vertex_count() == 9);
        CHECK(rb.edges().size() == 6);
        CHECK(oracle::energy_edges(rainbow(3), 2) == 6);

        auto m = build_energy_graph(mono(3), 2, EnergyMode::Materialize);
        CHECK(m.edges().size() == 18);
        CHECK(m.edge_count_exact() == 18);
        CHECK(m.paper_edge_statistic() == 9);
    }

    TEST_CASE("edge count closed form matches enumeration")
    {
        for (std::uint64_t seed = 0; seed < 12; ++seed) {
            int n = 3 + static_cast<int>(seed % 6);
            auto g = oracle::random_coloring(n, 1 + static_cast<int>(seed % 4), seed);
            for (int r : {2, 3}) {
                if (r == 3 && n > 6)
                    continue;
                auto eg = build_energy_graph(g, r, EnergyMode::Materialize);
                BigInt want = oracle::energy_edges(g, r);
                CHECK(BigInt(eg.edges().size()) == want);
                CHECK(eg.edge_count_exact() == want);
                CHECK(eg.edge_count_exact() == (BigInt(1) << (r - 1)) * power_sum(g, r));
            }
        }
    }

    TEST_CASE("edge colors and no loops")
    {
        auto g = oracle::random_coloring(6, 3, 4);
        auto eg = build_energy_graph(g, 2, EnergyMode::Materialize);
        for (auto & e : eg.edges()) {
            auto x = eg.decode(e.a), y = eg.decode(e.b);
            CHECK(e.a < e.b);
            for (int k = 0; k < 2; ++k) {
                REQUIRE(x[k] != y[k]);
                CHECK(g.color(x[k], y[k]) == e.color);
            }
        }
    }

    TEST_CASE("implicit and materialized answer the same adjacency queries")
    {
        auto g = oracle::random_coloring(5, 2, 8);
        auto mat = build_energy_graph(g, 2, EnergyMode::Materialize);
        auto imp = build_energy_graph(g, 2, EnergyMode::Implicit);
        std::set<std::pair<std::uint64_t, std::uint64_t>> listed;
        for (auto & e : mat.edges())
            listed.emplace(e.a, e.b);
        for (std::uint64_t a = 0; a < 25; ++a)
            for (std::uint64_t b = 0; b < 25; ++b) {
                auto x = mat.decode(a), y = mat.decode(b);
                auto ai = imp.adjacent(x, y);
                CHECK(ai == mat.adjacent(x, y));
                CHECK(ai.has_value() == listed.contains({std::min(a, b), std::max(a, b)}));
            }
        CHECK(imp.edge_count_exact() == mat.edge_count_exact());
        CHECK_THROWS_AS(imp.edges(), Error);
    }

    TEST_CASE("capacity guard")
    {
        EnergyCaps caps;
        caps.max_vertices = 100;
        try {
            build_energy_graph(mono(20), 2, EnergyMode::Materialize, caps);
            FAIL("expected CapacityExceeded");
        } catch (const Error & e) {
            CHECK(e.kind() == ErrorKind::CapacityExceeded);
        }
        CHECK(build_energy_graph(mono(20), 2, EnergyMode::Implicit, caps).edge_count_exact() == 2 * 190 * 190);
    }

    TEST_CASE("color energy")
    {
        CHECK(color_energy(rainbow(3)) == 12);
        CHECK(color_energy(mono(3)) == 36);
        CHECK(color_energy(mono(2)) == 4);
        for (std::uint64_t seed = 0; seed < 10; ++seed) {
            auto g = oracle::random_coloring(4 + static_cast<int>(seed % 4), 3, seed);
            CHECK(color_energy(g) == oracle::quadruple_energy(g));
        }
    }

    TEST_CASE("hoelder bound examples")
    {
        auto b = holder_lower_bound(fixtures::k4_matchings(), 2);
        CHECK(b.power_sum == 12);
        CHECK(b.certificate_ok);
        CHECK(b.equality);
        CHECK(b.bound == doctest::Approx(3.0));

        for (int r : {2, 3, 4}) {
            auto m = holder_lower_bound(mono(6), r);
            CHECK(m.equality);
            CHECK(m.bound == doctest::Approx(1.0));
        }
        auto rb = holder_lower_bound(rainbow(3), 2);
        CHECK(rb.bound == doctest::Approx(3.0));
        CHECK(rb.root_exponent == Rational(1, 1));
        CHECK(holder_lower_bound(mono(5), 3).root_exponent == Rational(1, 2));
        CHECK_THROWS_AS(holder_lower_bound(mono(4), 1), Error);
    }

    TEST_CASE("hoelder certificate holds on random colorings")
    {
        for (std::uint64_t seed = 0; seed < 100; ++seed) {
            auto g = oracle::random_coloring(6 + static_cast<int>(seed % 20), 1 + static_cast<int>(seed % 30), seed);
            for (int r : {2, 3, 5}) {
                auto b = holder_lower_bound(g, r);
                CHECK(b.certificate_ok);
                CHECK(b.lhs >= b.rhs);
                CHECK(b.bound <= g.num_colors() + 1e-9);
            }
        }
    }
}
