#ifndef COLORENERGY_REVEAL_HPP
#define COLORENERGY_REVEAL_HPP

#include <colorenergy/colored_graph.hpp>
#include <colorenergy/energy.hpp>
#include <colorenergy/prune.hpp>

#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <vector>

namespace colorenergy
{
    /// Edge of the pruned graph with its designated endpoint `from`, whose
    /// projection must already be revealed when the edge is processed.
    struct OrderedEdge
    {
        TupleId from = 0;
        TupleId to = 0;

        auto operator==(const OrderedEdge &) const -> bool = default;
    };

    // projections into G
    auto add_projection(EdgeSubgraph & h, const PrunedEnergyGraph & pg, TupleId vertex) -> void;
    auto add_projection(EdgeSubgraph & h, const PrunedEnergyGraph & pg, TupleId a, TupleId b) -> void;
    auto projection_of_vertices(const PrunedEnergyGraph & pg, std::span<const TupleId> vertices) -> EdgeSubgraph;
    auto projection_of_edges(const PrunedEnergyGraph & pg, std::span<const TupleEdge> edges) -> EdgeSubgraph;
    auto projection_contained(const PrunedEnergyGraph & pg, TupleId vertex, const EdgeSubgraph & h) -> bool;

    struct CompatibilityVerdict
    {
        bool ok = true;
        std::size_t failed_step = 0; // 1-based, when !ok
        std::string reason;
    };

    /// Checks that every designated endpoint projects into H plus the
    /// projections of the earlier edges (vertex containment).
    auto check_compatible(const PrunedEnergyGraph & pg, const EdgeSubgraph & h, std::span<const OrderedEdge> order)
        -> CompatibilityVerdict;

    /// Greedy generator: least unrevealed edge with a revealed endpoint, least
    /// such endpoint designated. Throws NoCompatibleOrder when stuck.
    auto generate_compatible_order(const PrunedEnergyGraph & pg, const EdgeSubgraph & h,
            std::span<const TupleEdge> edges) -> std::vector<OrderedEdge>;

    /// Uniformly random choice of available edge and of admissible endpoint.
    auto random_compatible_order(const PrunedEnergyGraph & pg, const EdgeSubgraph & h, std::span<const TupleEdge> edges,
            std::mt19937_64 & rng) -> std::vector<OrderedEdge>;

    /// Path v_0, ..., v_l ordered from v_0.
    auto canonical_path_order(std::span<const TupleId> path) -> std::vector<OrderedEdge>;

    enum class Outcome
    {
        NewVertex,
        Savings,
        Delayed
    };

    auto outcome_letter(Outcome o) -> char; // 'n', 's', 'd'

    struct RevealStep
    {
        OrderedEdge edge;
        Color color = 0;
        std::vector<Outcome> per_coordinate;
        int n = 0;
        int s = 0;
        int d = 0;
    };

    struct RevealLedger
    {
        int r = 2;
        std::vector<RevealStep> steps;
        std::int64_t N = 0, S = 0, D = 0;
        std::vector<std::int64_t> Nk, Sk, Dk;
        std::int64_t d = 0;  // steps with no delayed coordinate
        Rational sav;
        EdgeSubgraph initial;
        EdgeSubgraph final_graph;
        std::int64_t initial_repetitions = 0;
        std::int64_t final_repetitions = 0;

        auto m() const -> std::size_t { return steps.size(); }

        /// H^{(i)}: the initial graph plus the projections of the first i edges.
        auto snapshot(const PrunedEnergyGraph & pg, std::size_t i) const -> EdgeSubgraph;
    };

    /**
     * Graph revealing algorithm. Step i classifies each coordinate k of the
     * non-designated endpoint against H^{(i-1)}. Throws IncompatibleOrder if a
     * designated endpoint is not yet revealed, InvalidParams for edges outside
     * the pruned graph, and InvariantViolated if two consecutive T-edges share a
     * projection in some coordinate.
     */
    auto reveal_ledger(const PrunedEnergyGraph & pg, const EdgeSubgraph & h, std::span<const OrderedEdge> order)
        -> RevealLedger;

    /// S + sum over delayed steps of (r - d_i)/(r - 1), recomputed from the steps.
    auto total_savings(const RevealLedger & ledger) -> Rational;

    /**
     * For a path (v_0..v_l) with pi(v_0) in F and 1 <= j <= j2 <= l, where the
     * k-th projection of edge j is not yet revealed and pi_k(v_{j2}) lies in F,
     * returns the first step j* in [j, j2] with a savings in coordinate k
     * (coordinates and steps 1-based). std::nullopt would refute the claim.
     * Throws HypothesisViolated when the preconditions fail.
     */
    auto eventual_savings_site(const PrunedEnergyGraph & pg, const EdgeSubgraph & f, std::span<const TupleId> path,
            int k, std::size_t j, std::size_t j2) -> std::optional<std::size_t>;

    struct Reservoir
    {
        TupleId source = 0;
        std::vector<TupleId> members;
    };

    /// Empty string when R is an H-reservoir, else the failing condition.
    auto reservoir_problem(const PrunedEnergyGraph & pg, const EdgeSubgraph & h, const Reservoir & reservoir)
        -> std::string;

    struct WitnessGraph
    {
        EdgeSubgraph graph;
        std::int64_t vertex_budget = 0;
        std::int64_t base_repetitions = 0;
        std::int64_t new_repetitions = 0;
        std::int64_t guaranteed_repetitions = 0;
        std::int64_t reservoir_vertices = 0; // D fed to the reservoir step
    };

    /// Adds D vertices from the reservoir: w full members then z coordinates of
    /// one more member, where D = wr + z.
    auto apply_reservoir(const PrunedEnergyGraph & pg, const EdgeSubgraph & h, const Reservoir & reservoir,
            std::int64_t D) -> WitnessGraph;

    /**
     * Reveals T in the given order, then tops up from a reservoir of
     * H u pi(T) with D' = S + D - t vertices. The result has at most
     * |V(H)| + rm - t vertices and at least (r-1)m repetitions outside H.
     */
    auto construct_witness(const PrunedEnergyGraph & pg, const EdgeSubgraph & h, std::span<const OrderedEdge> order,
            const Reservoir & reservoir, std::int64_t t) -> WitnessGraph;
}

#endif
