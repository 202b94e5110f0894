#ifndef COLORENERGY_COLORED_GRAPH_HPP
#define COLORENERGY_COLORED_GRAPH_HPP

#include <compare>
#include <cstdint>
#include <optional>
#include <set>
#include <span>
#include <vector>

namespace colorenergy
{
    using Vertex = int;
    using Color = int;

    /// Unordered vertex pair, always stored with u < v.
    struct Edge
    {
        Vertex u = 0;
        Vertex v = 0;

        auto operator<=>(const Edge &) const = default;
    };

    inline auto make_edge(Vertex a, Vertex b) -> Edge
    {
        return a < b ? Edge{a, b} : Edge{b, a};
    }

    inline constexpr auto choose2(std::int64_t k) -> std::int64_t
    {
        return k * (k - 1) / 2;
    }

    /**
     * A total edge-coloring of K_n. Colors are dense ids 0..num_colors()-1 and
     * every id is used by at least one edge. Immutable once built.
     */
    class ColoredGraph
    {
    public:
        ColoredGraph() = default;

        /// Edge colors listed for pairs (i,j), i<j, in lexicographic order.
        /// Colors must already be dense; use canonical() otherwise.
        ColoredGraph(int n, std::vector<Color> edge_colors);

        /// Accepts arbitrary integer labels and compresses them to dense ids,
        /// preserving the relative order of the labels.
        static auto canonical(int n, std::span<const std::int64_t> labels) -> ColoredGraph;

        auto n() const -> int { return _n; }
        auto num_colors() const -> int { return _num_colors; }
        auto num_edges() const -> std::int64_t { return static_cast<std::int64_t>(_edge_colors.size()); }

        auto color(Vertex a, Vertex b) const -> Color
        {
            return _matrix[static_cast<std::size_t>(a) * _n + b];
        }

        auto edge_index(Vertex a, Vertex b) const -> std::size_t;
        auto edge_colors() const -> const std::vector<Color> & { return _edge_colors; }
        auto color_class(Color c) const -> std::span<const Edge> { return _classes[c]; }
        auto class_sizes() const -> std::vector<std::int64_t>;

        auto operator==(const ColoredGraph & other) const -> bool
        {
            return _n == other._n && _edge_colors == other._edge_colors;
        }

    private:
        int _n = 0;
        int _num_colors = 0;
        std::vector<Color> _edge_colors;
        std::vector<Color> _matrix;
        std::vector<std::vector<Edge>> _classes;
    };

    struct PQParams
    {
        int p = 2;
        std::int64_t q = 1;

        /// Throws InvalidParams unless 2 <= p <= n and 1 <= q <= C(p,2).
        auto validate(int n) const -> void;
    };

    struct RepetitionCount
    {
        std::vector<Vertex> subset;
        std::int64_t distinct_colors = 0;
        std::int64_t repetitions = 0;
    };

    auto repetitions_of_subset(const ColoredGraph & g, std::span<const Vertex> subset) -> RepetitionCount;

    struct VerifyMode
    {
        bool exhaustive = true;
        std::uint64_t trials = 0;
        std::uint64_t seed = 0;

        static auto make_exhaustive() -> VerifyMode { return {}; }
        static auto make_sampled(std::uint64_t trials, std::uint64_t seed) -> VerifyMode { return {false, trials, seed}; }
    };

    struct PQVerdict
    {
        bool holds = true;
        bool exhaustive = true;
        std::optional<std::vector<Vertex>> violator;
        std::uint64_t subsets_checked = 0;
    };

    /**
     * Checks that every p-subset spans at least q colors. Exhaustive mode
     * returns the lexicographically least violator; sampled mode draws p-subsets
     * uniformly with replacement and a "holds" answer there is not a proof.
     */
    auto is_pq_coloring(const ColoredGraph & g, const PQParams & params, const VerifyMode & mode = {}) -> PQVerdict;

    auto max_color_degree(const ColoredGraph & g) -> int;

    auto is_proper(const ColoredGraph & g) -> bool;

    /// Greedy edge-coloring of each color class with fresh ids. The result is
    /// proper and refines the input partition.
    auto properize(const ColoredGraph & g) -> ColoredGraph;

    /// A subgraph of the host K_n given by explicit vertex and edge sets.
    struct EdgeSubgraph
    {
        std::set<Vertex> vertices;
        std::set<Edge> edges;

        auto add_vertex(Vertex v) -> bool { return vertices.insert(v).second; }
        auto add_edge(Edge e) -> bool
        {
            vertices.insert(e.u);
            vertices.insert(e.v);
            return edges.insert(e).second;
        }
        auto has_vertex(Vertex v) const -> bool { return vertices.contains(v); }
        auto has_edge(Edge e) const -> bool { return edges.contains(e); }
        auto merge(const EdgeSubgraph & other) -> void;
        auto contains(const EdgeSubgraph & other) const -> bool;

        auto operator==(const EdgeSubgraph &) const -> bool = default;
    };

    /// |E(h)| minus the number of distinct colors on E(h).
    auto edge_repetitions(const ColoredGraph & g, const EdgeSubgraph & h) -> std::int64_t;
}

#endif
