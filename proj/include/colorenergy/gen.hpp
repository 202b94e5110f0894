#ifndef COLORENERGY_GEN_HPP
#define COLORENERGY_GEN_HPP

#include <colorenergy/colored_graph.hpp>

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace colorenergy
{
    struct RandomScheme
    {
        int colors = 2;
        std::uint64_t seed = 0;
    };

    /// Circle-method 1-factorization (restricted from K_{n+1} when n is odd).
    struct RoundRobinScheme
    {
    };

    /// chi({i,j}) = (i + j) mod colors
    struct ModularScheme
    {
        int colors = 1;
    };

    using ColoringScheme = std::variant<RandomScheme, RoundRobinScheme, ModularScheme>;

    /// Unused color ids (possible for Random and Modular) are compressed away.
    auto generate_coloring(int n, const ColoringScheme & scheme) -> ColoredGraph;

    /// Simple undirected graph with sorted adjacency lists.
    class SimpleGraph
    {
    public:
        SimpleGraph() = default;
        explicit SimpleGraph(int n) : _adj(n) {}
        SimpleGraph(int n, std::span<const std::pair<int, int>> edges);

        auto size() const -> int { return static_cast<int>(_adj.size()); }
        auto num_edges() const -> std::size_t { return _num_edges; }
        auto degree(int v) const -> int { return static_cast<int>(_adj[v].size()); }
        auto neighbours(int v) const -> std::span<const int> { return _adj[v]; }
        auto adjacent(int a, int b) const -> bool;
        auto edges() const -> std::vector<std::pair<int, int>>;

    private:
        std::vector<std::vector<int>> _adj;
        std::size_t _num_edges = 0;
    };

    enum class PatternKind
    {
        SubdividedClique,
        Theta,
        SubdividedBipartite,
        CycleWithStar,
        Path
    };

    enum class VertexRole
    {
        Branch,
        Subdivision,
        Endpoint,
        PathInterior,
        Hub,
        CycleVertex,
        Leaf,
        SideA,
        SideB,
        PathVertex
    };

    auto role_name(VertexRole role) -> std::string_view;

    /**
     * Labelled pattern graph. Vertex layout per kind:
     *  - SubdividedClique(t): branch 0..t-1, then one subdivision vertex per
     *    branch pair in lexicographic pair order.
     *  - Theta(a,b): endpoints 0 and 1; paths[i] runs 0 -> 1 with a edges.
     *  - SubdividedBipartite(a,b,l): side A 0..a-1, side B a..a+b-1;
     *    paths[i*a + j] runs from A_j to B_i with l edges.
     *  - CycleWithStar(a,k): cycle 0..2a-1 (hub 0), leaves 2a..2a+k-1;
     *    paths[0] is the cycle listed from the hub, closing back at the hub.
     *  - Path(l): l vertices 0..l-1 in order.
     */
    struct PatternGraph
    {
        PatternKind kind = PatternKind::Path;
        std::vector<int> params;
        SimpleGraph graph;
        std::vector<VertexRole> roles;
        std::vector<std::vector<int>> paths;
        std::vector<int> side; // 0/1 proper 2-coloring when bipartite, else empty

        auto num_vertices() const -> int { return graph.size(); }
        auto num_edges() const -> std::size_t { return graph.num_edges(); }
        auto name() const -> std::string;

        auto path(int j, int i) const -> const std::vector<int> &; // SubdividedBipartite only
        auto leaves() const -> std::vector<int>;                    // CycleWithStar only
    };

    auto make_pattern(PatternKind kind, std::span<const int> params) -> PatternGraph;

    /// "ktplus:t", "theta:a,b", "kab_l:a,b,l", "cycle_star:a,k", "path:l"
    auto parse_pattern(std::string_view text) -> PatternGraph;

    struct Embedding
    {
        std::vector<int> map; // pattern vertex -> host vertex

        auto operator==(const Embedding &) const -> bool = default;
    };

    struct SearchOptions
    {
        std::size_t limit = 1;
        std::uint64_t budget = 10'000'000;
        /// Deduplicate embeddings by image (vertex set + edge set) rather than by map.
        bool distinct_images = true;
        /// Optional per-vertex admissibility filter (pattern vertex, host vertex).
        std::function<bool(int, int)> allow;
    };

    struct SearchResult
    {
        std::vector<Embedding> embeddings;
        std::uint64_t nodes = 0;
        bool budget_exhausted = false;

        /// True when the search space was fully explored (no limit or budget cut).
        bool complete = false;
    };

    /// Streams embeddings to the visitor until it returns false, the limit is
    /// reached, or the node budget runs out.
    auto for_each_embedding(const SimpleGraph & host, const PatternGraph & pattern, const SearchOptions & options,
            const std::function<bool(const Embedding &)> & visit) -> SearchResult;

    auto find_subgraph(const SimpleGraph & host, const PatternGraph & pattern, const SearchOptions & options = {})
        -> SearchResult;

    auto is_embedding(const SimpleGraph & host, const PatternGraph & pattern, const Embedding & embedding) -> bool;

    /// Matcher vertex order: highest degree first, then most already-placed neighbours.
    auto matching_order(const PatternGraph & pattern) -> std::vector<int>;
}

#endif
