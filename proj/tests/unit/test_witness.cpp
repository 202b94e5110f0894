#include "fixtures.hpp"

#include <colorenergy/error.hpp>
#include <colorenergy/plant.hpp>
#include <colorenergy/prune.hpp>
#include <colorenergy/witness.hpp>

#include <doctest.h>

using namespace colorenergy;
using fixtures::mono;
using fixtures::rainbow;

namespace
{
    auto kind_of(auto && f) -> ErrorKind
    {
        try {
            f();
        } catch (const Error & e) {
            return e.kind();
        }
        FAIL("expected an Error");
        return ErrorKind::IoError;
    }

    struct Planted
    {
        PlantedInstance inst;
        PrunedEnergyGraph pg;
    };

    auto planted(const char * pattern, int n, std::uint64_t seed) -> Planted
    {
        auto inst = plant_pattern(n, 2, parse_pattern(pattern), PlantOptions{seed, 0});
        PruneOptions o;
        o.partition = inst.partition;
        auto pg = build_pruned(inst.coloring, 2, seed + 1, o);
        return {std::move(inst), std::move(pg)};
    }
}

TEST_SUITE("witness")
{
    TEST_CASE("subdivided triangle and the equivalent theta agree")
    {
        auto p = planted("cycle_star:3,2", 44, 5);
        auto kt = extract_subKt(p.pg, 3);
        REQUIRE(kt.found());
        CHECK(kt.report->p_claimed == 12);
        CHECK(kt.report->q_claimed == 61);
        CHECK(kt.report->vertices.size() <= 12);
        CHECK(kt.report->repetitions >= 6);
        CHECK(validate_witness(p.inst.coloring, *kt.report).valid);

        auto theta = extract_theta(p.pg, 3, 2, PipelineParams{2});
        REQUIRE(theta.found());
        CHECK(theta.report->p_claimed == 12);
        CHECK(theta.report->q_claimed == 61);
        CHECK(validate_witness(p.inst.coloring, *theta.report).valid);
    }

    TEST_CASE("rainbow colorings give nothing")
    {
        auto g = rainbow(16);
        auto pg = build_pruned(g, 2, 3);
        auto kt = extract_subKt(pg, 3);
        CHECK(kt.status == PipelineStatus::NotFound);
        CHECK(kt.search_complete);
        CHECK(! kt.report);
        CHECK(extract_theta(pg, 3, 2).status == PipelineStatus::NotFound);
    }

    TEST_CASE("pipeline parameter checks")
    {
        auto pg = build_pruned(mono(8), 2, 1);
        CHECK(kind_of([&] { extract_theta(pg, 2, 2); }) == ErrorKind::InvalidParams);
        CHECK(kind_of([&] { extract_subKt(pg, 2); }) == ErrorKind::InvalidParams);
        CHECK(kind_of([&] { extract_subKtt(pg, 3, 1); }) == ErrorKind::InvalidParams);
        auto pg4 = build_pruned(mono(12), 4, 1);
        CHECK(kind_of([&] { extract_subKtt(pg4, 3, 2); }) == ErrorKind::InvalidParams);
        auto pg3 = build_pruned(mono(9), 3, 1);
        CHECK(kind_of([&] { extract_subKt(pg3, 3); }) == ErrorKind::InvalidParams);
    }

    TEST_CASE("default multiplicities")
    {
        CHECK(default_theta_multiplicity(2, 3, 2) == 2 * 3 * 3);
        CHECK(default_theta_multiplicity(2, 3, 3) == 2 * 2 * 9 * 3);
        CHECK(default_subktt_multiplicity(2, 3, 2) == 30 * 2 * 3 * 4);
    }

    TEST_CASE("greedy low color clique")
    {
        auto g = mono(5);
        auto out = greedy_low_color_clique(g, 3, 1);
        REQUIRE(out.found());
        CHECK(out.report->vertices.size() == 3);
        CHECK(out.report->distinct_colors == 1);
        CHECK(out.report->q_claimed == 3);
        CHECK(validate_witness(g, *out.report).valid);

        for (int n : {3, 6, 9})
            CHECK(greedy_low_color_clique(rainbow(n), 3, 1).status == PipelineStatus::Inapplicable);

        CHECK(kind_of([&] { greedy_low_color_clique(g, 2, 1); }) == ErrorKind::InvalidParams);
        CHECK(kind_of([&] { greedy_low_color_clique(g, 4, 4); }) == ErrorKind::InvalidParams);
        CHECK(kind_of([&] { greedy_low_color_clique(g, 6, 1); }) == ErrorKind::InvalidParams);
    }

    TEST_CASE("greedy threshold formula")
    {
        // q = C(k,2) - m(k-m) - C(m,2) + m + 1
        auto g = mono(12);
        for (int k = 3; k <= 6; ++k)
            for (int m = 1; m < k; ++m) {
                auto out = greedy_low_color_clique(g, k, m);
                REQUIRE(out.found());
                CHECK(out.report->q_claimed == choose2(k) - m * (k - m) - choose2(m) + m + 1);
                CHECK(out.report->distinct_colors <= m);
            }
    }

    TEST_CASE("incidence witness on a star")
    {
        auto g = mono(6);
        auto f = parse_pattern("kab_l:1,2,1");
        auto out = incidence_witness(g, f, 1, 1.5);
        REQUIRE(out.found());
        auto & r = *out.report;
        CHECK(r.p_claimed == 4);
        CHECK(r.q_claimed == 6);
        CHECK(r.vertices.size() <= 4);
        CHECK(r.repetitions >= 1);
        CHECK(validate_witness(g, r).valid);

        CHECK(kind_of([&] { incidence_witness(g, f, 0, 1.5); }) == ErrorKind::InvalidParams);
        CHECK(kind_of([&] { incidence_witness(g, f, 1, 2.5); }) == ErrorKind::InvalidParams);
    }

    TEST_CASE("incidence witness finds nothing when every class is thin")
    {
        auto out = incidence_witness(rainbow(10), parse_pattern("kab_l:2,2,1"), 0, 1.5);
        CHECK(! out.found());
        CHECK(! out.report);
    }

    TEST_CASE("validation rejects tampered and compliant reports")
    {
        auto g = mono(5);
        auto good = greedy_low_color_clique(g, 3, 1);
        REQUIRE(good.found());
        CHECK(validate_witness(g, *good.report).valid);

        auto inflated = *good.report;
        inflated.repetitions += 3;
        CHECK(! validate_witness(g, inflated).valid);

        auto lost = *good.report;
        lost.vertices.push_back(17);
        CHECK(! validate_witness(g, lost).valid);

        auto rb = rainbow(6);
        auto honest = make_witness_report(rb, "manual", {0, 1, 2}, 3, 3, Json::object());
        auto v = validate_witness(rb, honest);
        CHECK(! v.valid);
        CHECK(! v.reason.empty());
    }

    TEST_CASE("report padding and json")
    {
        auto g = mono(7);
        auto r = make_witness_report(g, "manual", {1, 2, 4}, 4, 5, Json::object());
        CHECK(r.padded == std::vector<Vertex>{0, 1, 2, 4});
        CHECK(r.padded_distinct_colors == 1);
        CHECK(validate_witness(g, r).valid);
        auto j = report_to_json(r);
        CHECK(j.at("pipeline") == "manual");
        CHECK(j.at("repetitions") == 2);

        PipelineOutcome o;
        o.status = PipelineStatus::PaddingInfeasible;
        CHECK(outcome_to_json(o).at("status") == "padding_infeasible");
    }
}
