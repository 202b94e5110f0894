#ifndef COLORENERGY_PRUNE_HPP
#define COLORENERGY_PRUNE_HPP

#include <colorenergy/colored_graph.hpp>
#include <colorenergy/energy.hpp>
#include <colorenergy/gen.hpp>

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace colorenergy
{
    /// Vertex partition V = V_1 u ... u V_r with each V_i split into V_i' (side 0)
    /// and V_i'' (side 1).
    struct Partition
    {
        int r = 2;
        std::vector<int> part_of;
        std::vector<int> side_of;
        std::vector<std::vector<Vertex>> classes; // sorted members of each V_i

        static auto from_assignment(int r, std::vector<int> part_of, std::vector<int> side_of) -> Partition;
        auto n() const -> int { return static_cast<int>(part_of.size()); }
        auto side_sizes(int i) const -> std::pair<int, int>;
    };

    /// Seeded uniform balanced partition plus seeded bipartitions.
    auto make_partition(int n, int r, std::uint64_t seed) -> Partition;

    using TupleId = std::uint64_t;
    using TupleEdge = std::pair<TupleId, TupleId>; // first < second

    /**
     * Subgraph of the r-th energy graph on V_1 x ... x V_r. Tuple ids are
     * mixed-radix indices over the sorted class members, so id order is the
     * lexicographic order of tuples.
     */
    class PrunedEnergyGraph
    {
    public:
        PrunedEnergyGraph() = default;

        /// No validation beyond range checks; used by the builder and by tests
        /// that hand-build violating graphs.
        static auto from_parts(const ColoredGraph & g, Partition partition, std::span<const std::pair<Tuple, Tuple>> edges,
                std::uint64_t seed) -> PrunedEnergyGraph;

        auto r() const -> int { return _partition.r; }
        auto base() const -> const ColoredGraph & { return *_base; }
        auto partition() const -> const Partition & { return _partition; }
        auto seed() const -> std::uint64_t { return _seed; }

        auto vertex_count() const -> std::uint64_t { return _vertex_count; }
        auto tuple(TupleId id) const -> Tuple;
        auto coordinate(TupleId id, int k) const -> Vertex;
        auto id_of(std::span<const Vertex> tuple) const -> TupleId;
        auto in_product(std::span<const Vertex> tuple) const -> bool;

        auto edges() const -> std::span<const TupleEdge> { return _edges; }
        auto num_edges() const -> std::size_t { return _edges.size(); }
        auto neighbours(TupleId id) const -> std::span<const int>;
        auto adjacent(TupleId a, TupleId b) const -> bool;
        auto degree(TupleId id) const -> int;

        /// Adjacency as a simple graph over tuple ids, for the subgraph matcher.
        auto host() const -> const SimpleGraph & { return _host; }

        /// Projection of a single edge onto coordinate k.
        auto project_edge(TupleId a, TupleId b, int k) const -> Edge
        {
            return make_edge(coordinate(a, k), coordinate(b, k));
        }

    private:
        std::shared_ptr<const ColoredGraph> _base;
        Partition _partition;
        std::uint64_t _seed = 0;
        std::uint64_t _vertex_count = 0;
        std::vector<std::uint64_t> _radix;       // stride of coordinate k
        std::vector<std::vector<int>> _local;    // local index of each vertex within its class
        std::vector<TupleEdge> _edges;
        SimpleGraph _host;
    };

    struct PruneOptions
    {
        /// Use this partition instead of drawing one from the seed.
        std::optional<Partition> partition;
        std::uint64_t max_vertices = std::uint64_t{1} << 22;
        std::uint64_t max_candidate_edges = std::uint64_t{1} << 22;
    };

    struct PruneStats
    {
        BigInt edges_before_paper;   // sum_c m_c^r of the full energy graph
        BigInt edges_before_exact;   // 2^{r-1} sum_c m_c^r
        std::uint64_t candidate_edges = 0;   // after partition and bipartition filters
        std::uint64_t thinned_edges = 0;     // removed by neighbour thinning
        std::uint64_t swept_edges = 0;       // removed by the final distance-2 sweep
        std::uint64_t edges_after = 0;
        int max_color_degree = 0;
        double retention_fraction = 0.0;     // edges_after / edges_before_exact
    };

    /**
     * Randomized pruning: balanced partition and bipartitions, crossing energy
     * edges only, then per (vertex, coordinate, value) thinning keeping the
     * lexicographically least neighbour, then a sweep that removes any edge
     * still involved in a distance-2 coordinate clash. The output always
     * passes verify_pruned.
     */
    auto build_pruned(const ColoredGraph & g, int r, std::uint64_t seed, const PruneOptions & options = {},
            PruneStats * stats = nullptr) -> PrunedEnergyGraph;

    enum class PruneProperty
    {
        EnergyEdge = 0,
        ProductStructure = 1,
        BipartitionCrossing = 2,
        CoordinateDistinct = 3
    };

    struct PruneViolation
    {
        PruneProperty property;
        std::string detail;
        std::vector<TupleId> witness;
    };

    struct PruneReport
    {
        std::vector<PruneViolation> violations;

        auto ok() const -> bool { return violations.empty(); }
        auto count(PruneProperty property) const -> std::size_t;
    };

    auto verify_pruned(const PrunedEnergyGraph & pg) -> PruneReport;
}

#endif
