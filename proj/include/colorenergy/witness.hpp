#ifndef COLORENERGY_WITNESS_HPP
#define COLORENERGY_WITNESS_HPP

#include <colorenergy/colored_graph.hpp>
#include <colorenergy/gen.hpp>
#include <colorenergy/io.hpp>
#include <colorenergy/prune.hpp>
#include <colorenergy/reveal.hpp>

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace colorenergy
{
    /**
     * A vertex set W whose clique violates the (p,q) condition. Repetitions
     * are counted on the whole clique K[W]; since repetitions only grow when
     * vertices are added, repetitions >= C(p,2) - q + 1 means every p-set
     * containing W spans fewer than q colors.
     */
    struct WitnessReport
    {
        std::string pipeline;
        std::vector<Vertex> vertices;
        int p_claimed = 0;
        std::int64_t q_claimed = 0;
        int distinct_colors = 0;
        std::int64_t repetitions = 0;
        std::vector<Vertex> padded;         // W extended to p vertices (empty when n < p)
        int padded_distinct_colors = 0;
        Json provenance;
    };

    /// Recounts colors on W and on its padding to p vertices.
    auto make_witness_report(const ColoredGraph & g, std::string pipeline, std::vector<Vertex> vertices, int p,
            std::int64_t q, Json provenance) -> WitnessReport;

    struct WitnessVerdict
    {
        bool valid = false;
        std::string reason;
    };

    auto validate_witness(const ColoredGraph & g, const WitnessReport & report) -> WitnessVerdict;

    auto report_to_json(const WitnessReport & report) -> Json;

    enum class PipelineStatus
    {
        Found,
        NotFound,
        ReservoirDepleted,
        Inapplicable,
        PaddingInfeasible
    };

    auto status_name(PipelineStatus status) -> std::string_view;

    struct PipelineOutcome
    {
        PipelineStatus status = PipelineStatus::NotFound;
        std::optional<WitnessReport> report;
        bool search_complete = false;   // the structure search ran to completion
        std::uint64_t nodes = 0;
        std::size_t embeddings_tried = 0;
        std::string detail;

        auto found() const -> bool { return status == PipelineStatus::Found; }
    };

    auto outcome_to_json(const PipelineOutcome & outcome) -> Json;

    struct PipelineParams
    {
        /// Leaves (theta, b=2), paths (theta, b>=3) or pages (subdivided
        /// bipartite) in the searched structure; defaults to the full constant.
        std::optional<int> multiplicity;
        std::uint64_t budget = 10'000'000;
        /// Embeddings tried before giving up on reservoir or page shortages.
        std::size_t max_embeddings = 16;
    };

    auto default_theta_multiplicity(int r, int a, int b) -> int;
    auto default_subktt_multiplicity(int r, int b, int l) -> int;

    /// r = 2 only. Union of both projections of a K_t^+ copy.
    auto extract_subKt(const PrunedEnergyGraph & pg, int t, const PipelineParams & params = {}) -> PipelineOutcome;

    /// b = 2: cycle plus star with reservoir from the leaves. b >= 3: theta
    /// with many paths, b of them revealed and the rest feeding the reservoir.
    auto extract_theta(const PrunedEnergyGraph & pg, int a, int b, const PipelineParams & params = {})
        -> PipelineOutcome;

    /// K_{3,b}^l revealed in b chapters of three pages each.
    auto extract_subKtt(const PrunedEnergyGraph & pg, int b, int l, const PipelineParams & params = {})
        -> PipelineOutcome;

    /// Majority-color greedy; Inapplicable when fewer than k - m vertices survive.
    auto greedy_low_color_clique(const ColoredGraph & g, int k, int m) -> PipelineOutcome;

    /// Color incidence graph search for a bipartite F with side `a_side` of F
    /// placed on the vertices of G and the other side on the colors.
    auto incidence_witness(const ColoredGraph & g, const PatternGraph & f, int a_side, double gamma,
            const PipelineParams & params = {}) -> PipelineOutcome;
}

#endif
