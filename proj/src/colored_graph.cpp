#include <colorenergy/colored_graph.hpp>
#include <colorenergy/error.hpp>
#include <colorenergy/rng.hpp>

#include <algorithm>
#include <map>
#include <numeric>
#include <string>

using std::int64_t;
using std::size_t;
using std::to_string;
using std::vector;

namespace colorenergy
{
    ColoredGraph::ColoredGraph(int n, vector<Color> edge_colors) :
        _n(n),
        _edge_colors(std::move(edge_colors))
    {
        if (n < 1)
            fail(ErrorKind::MalformedInput, "vertex count must be at least 1, got " + to_string(n));
        if (static_cast<int64_t>(_edge_colors.size()) != choose2(n))
            fail(ErrorKind::MalformedInput, "expected " + to_string(choose2(n)) + " edge colors for n=" + to_string(n)
                    + ", got " + to_string(_edge_colors.size()));

        Color max_color = -1;
        for (Color c : _edge_colors) {
            if (c < 0)
                fail(ErrorKind::MalformedInput, "negative color id " + to_string(c));
            max_color = std::max(max_color, c);
        }
        _num_colors = max_color + 1;

        _matrix.assign(static_cast<size_t>(n) * n, -1);
        _classes.assign(_num_colors, {});
        size_t idx = 0;
        for (Vertex i = 0; i < n; ++i)
            for (Vertex j = i + 1; j < n; ++j) {
                Color c = _edge_colors[idx++];
                _matrix[static_cast<size_t>(i) * n + j] = c;
                _matrix[static_cast<size_t>(j) * n + i] = c;
                _classes[c].push_back({i, j});
            }

        for (Color c = 0; c < _num_colors; ++c)
            if (_classes[c].empty())
                fail(ErrorKind::MalformedInput, "color id " + to_string(c) + " is unused; ids must be dense");
    }

    auto ColoredGraph::canonical(int n, std::span<const int64_t> labels) -> ColoredGraph
    {
        vector<int64_t> sorted(labels.begin(), labels.end());
        std::sort(sorted.begin(), sorted.end());
        sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());

        vector<Color> colors;
        colors.reserve(labels.size());
        for (int64_t label : labels)
            colors.push_back(static_cast<Color>(std::lower_bound(sorted.begin(), sorted.end(), label) - sorted.begin()));
        return ColoredGraph(n, std::move(colors));
    }

    auto ColoredGraph::edge_index(Vertex a, Vertex b) const -> size_t
    {
        Edge e = make_edge(a, b);
        // edges before row u: sum_{i<u} (n-1-i)
        auto u = static_cast<size_t>(e.u), n = static_cast<size_t>(_n);
        return u * (2 * n - u - 1) / 2 + (static_cast<size_t>(e.v) - u - 1);
    }

    auto ColoredGraph::class_sizes() const -> vector<int64_t>
    {
        vector<int64_t> result;
        result.reserve(_classes.size());
        for (auto & cls : _classes)
            result.push_back(static_cast<int64_t>(cls.size()));
        return result;
    }

    auto PQParams::validate(int n) const -> void
    {
        if (p < 2 || p > n)
            fail(ErrorKind::InvalidParams, "p must satisfy 2 <= p <= n (p=" + to_string(p) + ", n=" + to_string(n) + ")");
        if (q < 1 || q > choose2(p))
            fail(ErrorKind::InvalidParams, "q must satisfy 1 <= q <= C(p,2) (q=" + to_string(q) + ", p=" + to_string(p) + ")");
    }

    auto repetitions_of_subset(const ColoredGraph & g, std::span<const Vertex> subset) -> RepetitionCount
    {
        if (subset.size() < 2)
            fail(ErrorKind::SubsetTooSmall, "subset must contain at least 2 vertices");
        vector<char> seen_vertex(g.n(), 0);
        for (Vertex v : subset) {
            if (v < 0 || v >= g.n())
                fail(ErrorKind::VertexOutOfRange, "vertex " + to_string(v) + " out of range [0," + to_string(g.n()) + ")");
            if (seen_vertex[v])
                fail(ErrorKind::InvalidParams, "vertex " + to_string(v) + " repeated in subset");
            seen_vertex[v] = 1;
        }

        vector<Color> colors;
        for (size_t i = 0; i < subset.size(); ++i)
            for (size_t j = i + 1; j < subset.size(); ++j)
                colors.push_back(g.color(subset[i], subset[j]));
        std::sort(colors.begin(), colors.end());
        auto distinct = static_cast<int64_t>(std::unique(colors.begin(), colors.end()) - colors.begin());

        RepetitionCount result;
        result.subset.assign(subset.begin(), subset.end());
        result.distinct_colors = distinct;
        result.repetitions = choose2(static_cast<int64_t>(subset.size())) - distinct;
        return result;
    }

    namespace
    {
        struct ExhaustiveChecker
        {
            const ColoredGraph & g;
            int p;
            int64_t q;
            vector<int> counts;
            vector<Vertex> current;
            int64_t distinct = 0;
            std::uint64_t checked = 0;
            std::optional<vector<Vertex>> violator;

            auto add(Vertex w) -> void
            {
                for (Vertex u : current)
                    if (counts[g.color(u, w)]++ == 0)
                        ++distinct;
                current.push_back(w);
            }

            auto remove() -> void
            {
                Vertex w = current.back();
                current.pop_back();
                for (Vertex u : current)
                    if (--counts[g.color(u, w)] == 0)
                        --distinct;
            }

            // Distinct colors only grow as vertices are added, so a partial
            // subset already at q colors cannot be extended into a violator.
            auto search(Vertex next) -> bool
            {
                if (static_cast<int>(current.size()) == p) {
                    ++checked;
                    if (distinct < q) {
                        violator = current;
                        return true;
                    }
                    return false;
                }
                if (distinct >= q) {
                    ++checked;
                    return false;
                }
                int needed = p - static_cast<int>(current.size());
                for (Vertex w = next; w + needed <= g.n(); ++w) {
                    add(w);
                    bool found = search(w + 1);
                    remove();
                    if (found)
                        return true;
                }
                return false;
            }
        };
    }

    auto is_pq_coloring(const ColoredGraph & g, const PQParams & params, const VerifyMode & mode) -> PQVerdict
    {
        params.validate(g.n());
        PQVerdict verdict;
        verdict.exhaustive = mode.exhaustive;

        if (mode.exhaustive) {
            ExhaustiveChecker checker{g, params.p, params.q, vector<int>(g.num_colors(), 0), {}, 0, 0, std::nullopt};
            checker.search(0);
            verdict.subsets_checked = checker.checked;
            verdict.violator = checker.violator;
            verdict.holds = ! checker.violator.has_value();
            return verdict;
        }

        if (mode.trials < 1)
            fail(ErrorKind::InvalidParams, "sampled verification needs at least one trial");

        auto rng = make_rng(mode.seed, "verify.sampled");
        vector<Vertex> pool(g.n());
        std::iota(pool.begin(), pool.end(), 0);
        vector<int> counts(g.num_colors(), 0);
        for (std::uint64_t trial = 0; trial < mode.trials; ++trial) {
            // partial Fisher-Yates: the first p entries form a uniform p-subset
            for (int i = 0; i < params.p; ++i) {
                std::uniform_int_distribution<int> pick(i, g.n() - 1);
                std::swap(pool[i], pool[pick(rng)]);
            }
            vector<Vertex> subset(pool.begin(), pool.begin() + params.p);
            std::sort(subset.begin(), subset.end());
            auto count = repetitions_of_subset(g, subset);
            ++verdict.subsets_checked;
            if (count.distinct_colors < params.q) {
                verdict.holds = false;
                verdict.violator = subset;
                break;
            }
        }
        return verdict;
    }

    auto max_color_degree(const ColoredGraph & g) -> int
    {
        int best = 0;
        vector<int> counts(g.num_colors(), 0);
        for (Vertex v = 0; v < g.n(); ++v) {
            std::fill(counts.begin(), counts.end(), 0);
            for (Vertex u = 0; u < g.n(); ++u)
                if (u != v)
                    best = std::max(best, ++counts[g.color(v, u)]);
        }
        return best;
    }

    auto is_proper(const ColoredGraph & g) -> bool
    {
        return g.n() < 2 || max_color_degree(g) <= 1;
    }

    auto properize(const ColoredGraph & g) -> ColoredGraph
    {
        vector<int64_t> labels(g.edge_colors().size(), -1);
        int64_t offset = 0;
        for (Color c = 0; c < g.num_colors(); ++c) {
            // local colors used at each vertex, within this class only
            std::map<Vertex, vector<char>> used;
            int local_max = -1;
            for (const Edge & e : g.color_class(c)) {
                auto & at_u = used[e.u];
                auto & at_v = used[e.v];
                int local = 0;
                while ((local < static_cast<int>(at_u.size()) && at_u[local])
                        || (local < static_cast<int>(at_v.size()) && at_v[local]))
                    ++local;
                for (auto * slot : {&at_u, &at_v}) {
                    if (static_cast<int>(slot->size()) <= local)
                        slot->resize(local + 1, 0);
                    (*slot)[local] = 1;
                }
                labels[g.edge_index(e.u, e.v)] = offset + local;
                local_max = std::max(local_max, local);
            }
            offset += local_max + 1;
        }
        return ColoredGraph::canonical(g.n(), labels);
    }

    auto EdgeSubgraph::merge(const EdgeSubgraph & other) -> void
    {
        vertices.insert(other.vertices.begin(), other.vertices.end());
        edges.insert(other.edges.begin(), other.edges.end());
    }

    auto EdgeSubgraph::contains(const EdgeSubgraph & other) const -> bool
    {
        return std::includes(vertices.begin(), vertices.end(), other.vertices.begin(), other.vertices.end())
            && std::includes(edges.begin(), edges.end(), other.edges.begin(), other.edges.end());
    }

    auto edge_repetitions(const ColoredGraph & g, const EdgeSubgraph & h) -> int64_t
    {
        vector<Color> colors;
        colors.reserve(h.edges.size());
        for (const Edge & e : h.edges)
            colors.push_back(g.color(e.u, e.v));
        std::sort(colors.begin(), colors.end());
        auto distinct = std::unique(colors.begin(), colors.end()) - colors.begin();
        return static_cast<int64_t>(h.edges.size()) - static_cast<int64_t>(distinct);
    }
}
