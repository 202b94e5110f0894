#include <colorenergy/gen.hpp>
#include <colorenergy/error.hpp>
#include <colorenergy/rng.hpp>

#include <algorithm>
#include <charconv>
#include <set>
#include <string>

using std::int64_t;
using std::pair;
using std::size_t;
using std::string;
using std::to_string;
using std::vector;

namespace colorenergy
{
    namespace
    {
        auto check_color_count(int n, int colors) -> void
        {
            if (colors < 1 || colors > choose2(n))
                fail(ErrorKind::InvalidColorCount, "color count must satisfy 1 <= c <= C(n,2) (c=" + to_string(colors)
                        + ", n=" + to_string(n) + ")");
        }

        auto round_robin_color(int n, Vertex i, Vertex j) -> int64_t
        {
            // even order m = n or n+1; vertex m-1 is the centre of the circle
            int m = (n % 2 == 0) ? n : n + 1;
            int mod = m - 1;
            if (j == m - 1)
                return (2 * static_cast<int64_t>(i)) % mod;
            return (static_cast<int64_t>(i) + j) % mod;
        }
    }

    auto generate_coloring(int n, const ColoringScheme & scheme) -> ColoredGraph
    {
        if (n < 1)
            fail(ErrorKind::InvalidParams, "n must be at least 1");
        vector<int64_t> labels;
        labels.reserve(static_cast<size_t>(choose2(n)));

        if (auto * random = std::get_if<RandomScheme>(&scheme)) {
            check_color_count(n, random->colors);
            auto rng = make_rng(random->seed, "gen.random");
            std::uniform_int_distribution<int> pick(0, random->colors - 1);
            for (Vertex i = 0; i < n; ++i)
                for (Vertex j = i + 1; j < n; ++j)
                    labels.push_back(pick(rng));
        }
        else if (std::holds_alternative<RoundRobinScheme>(scheme)) {
            if (n < 2)
                fail(ErrorKind::InvalidParams, "round-robin coloring needs n >= 2");
            for (Vertex i = 0; i < n; ++i)
                for (Vertex j = i + 1; j < n; ++j)
                    labels.push_back(round_robin_color(n, i, j));
        }
        else {
            auto & modular = std::get<ModularScheme>(scheme);
            check_color_count(n, modular.colors);
            for (Vertex i = 0; i < n; ++i)
                for (Vertex j = i + 1; j < n; ++j)
                    labels.push_back((static_cast<int64_t>(i) + j) % modular.colors);
        }
        return ColoredGraph::canonical(n, labels);
    }

    SimpleGraph::SimpleGraph(int n, std::span<const pair<int, int>> edges) :
        _adj(n)
    {
        for (auto [a, b] : edges) {
            if (a == b || a < 0 || b < 0 || a >= n || b >= n)
                fail(ErrorKind::InvalidParams, "bad edge (" + to_string(a) + "," + to_string(b) + ")");
            _adj[a].push_back(b);
            _adj[b].push_back(a);
        }
        for (auto & row : _adj) {
            std::sort(row.begin(), row.end());
            row.erase(std::unique(row.begin(), row.end()), row.end());
            _num_edges += row.size();
        }
        _num_edges /= 2;
    }

    auto SimpleGraph::adjacent(int a, int b) const -> bool
    {
        auto & row = _adj[a].size() <= _adj[b].size() ? _adj[a] : _adj[b];
        int other = &row == &_adj[a] ? b : a;
        return std::binary_search(row.begin(), row.end(), other);
    }

    auto SimpleGraph::edges() const -> vector<pair<int, int>>
    {
        vector<pair<int, int>> result;
        result.reserve(_num_edges);
        for (int a = 0; a < size(); ++a)
            for (int b : _adj[a])
                if (a < b)
                    result.emplace_back(a, b);
        return result;
    }

    auto role_name(VertexRole role) -> std::string_view
    {
        switch (role) {
            case VertexRole::Branch: return "branch";
            case VertexRole::Subdivision: return "subdivision";
            case VertexRole::Endpoint: return "endpoint";
            case VertexRole::PathInterior: return "path_interior";
            case VertexRole::Hub: return "hub";
            case VertexRole::CycleVertex: return "cycle";
            case VertexRole::Leaf: return "leaf";
            case VertexRole::SideA: return "side_a";
            case VertexRole::SideB: return "side_b";
            case VertexRole::PathVertex: return "path";
        }
        return "unknown";
    }

    auto PatternGraph::name() const -> string
    {
        auto join = [&]() {
            string s;
            for (size_t i = 0; i < params.size(); ++i)
                s += (i ? "," : "") + to_string(params[i]);
            return s;
        };
        switch (kind) {
            case PatternKind::SubdividedClique: return "ktplus:" + join();
            case PatternKind::Theta: return "theta:" + join();
            case PatternKind::SubdividedBipartite: return "kab_l:" + join();
            case PatternKind::CycleWithStar: return "cycle_star:" + join();
            case PatternKind::Path: return "path:" + join();
        }
        return "unknown";
    }

    auto PatternGraph::path(int j, int i) const -> const vector<int> &
    {
        if (kind != PatternKind::SubdividedBipartite)
            fail(ErrorKind::InvalidParams, "path(j,i) is only defined for subdivided bipartite patterns");
        return paths.at(static_cast<size_t>(i) * params[0] + j);
    }

    auto PatternGraph::leaves() const -> vector<int>
    {
        vector<int> result;
        for (int v = 0; v < num_vertices(); ++v)
            if (roles[v] == VertexRole::Leaf)
                result.push_back(v);
        return result;
    }

    namespace
    {
        auto two_color(const SimpleGraph & g) -> vector<int>
        {
            vector<int> side(g.size(), -1);
            for (int s = 0; s < g.size(); ++s) {
                if (side[s] != -1)
                    continue;
                side[s] = 0;
                vector<int> stack{s};
                while (! stack.empty()) {
                    int v = stack.back();
                    stack.pop_back();
                    for (int w : g.neighbours(v)) {
                        if (side[w] == -1) {
                            side[w] = 1 - side[v];
                            stack.push_back(w);
                        }
                        else if (side[w] == side[v])
                            return {};
                    }
                }
            }
            return side;
        }

        auto need(bool ok, const string & what) -> void
        {
            if (! ok)
                fail(ErrorKind::InvalidParams, what);
        }
    }

    auto make_pattern(PatternKind kind, std::span<const int> params) -> PatternGraph
    {
        PatternGraph pattern;
        pattern.kind = kind;
        pattern.params.assign(params.begin(), params.end());
        vector<pair<int, int>> edges;
        vector<VertexRole> roles;

        auto add_path = [&](vector<int> vertices) {
            for (size_t i = 0; i + 1 < vertices.size(); ++i)
                edges.emplace_back(vertices[i], vertices[i + 1]);
            pattern.paths.push_back(std::move(vertices));
        };

        switch (kind) {
            case PatternKind::SubdividedClique: {
                need(params.size() == 1, "ktplus takes one parameter t");
                int t = params[0];
                need(t >= 3, "ktplus requires t >= 3");
                roles.assign(t, VertexRole::Branch);
                for (int i = 0; i < t; ++i)
                    for (int j = i + 1; j < t; ++j) {
                        int s = static_cast<int>(roles.size());
                        roles.push_back(VertexRole::Subdivision);
                        add_path({i, s, j});
                    }
                break;
            }
            case PatternKind::Theta: {
                need(params.size() == 2, "theta takes parameters a,b");
                int a = params[0], b = params[1];
                need(a >= 2 && b >= 2, "theta requires a,b >= 2");
                roles = {VertexRole::Endpoint, VertexRole::Endpoint};
                for (int i = 0; i < b; ++i) {
                    vector<int> path{0};
                    for (int k = 0; k < a - 1; ++k) {
                        path.push_back(static_cast<int>(roles.size()));
                        roles.push_back(VertexRole::PathInterior);
                    }
                    path.push_back(1);
                    add_path(std::move(path));
                }
                break;
            }
            case PatternKind::SubdividedBipartite: {
                need(params.size() == 3, "kab_l takes parameters a,b,l");
                int a = params[0], b = params[1], l = params[2];
                need(a >= 1 && b >= 1 && l >= 1, "kab_l requires a,b,l >= 1");
                roles.assign(a, VertexRole::SideA);
                roles.insert(roles.end(), b, VertexRole::SideB);
                for (int i = 0; i < b; ++i)
                    for (int j = 0; j < a; ++j) {
                        vector<int> path{j};
                        for (int k = 0; k < l - 1; ++k) {
                            path.push_back(static_cast<int>(roles.size()));
                            roles.push_back(VertexRole::PathInterior);
                        }
                        path.push_back(a + i);
                        add_path(std::move(path));
                    }
                break;
            }
            case PatternKind::CycleWithStar: {
                need(params.size() == 2, "cycle_star takes parameters a,k");
                int a = params[0], k = params[1];
                need(a >= 2 && k >= 0, "cycle_star requires a >= 2, k >= 0");
                roles.assign(2 * a, VertexRole::CycleVertex);
                roles[0] = VertexRole::Hub;
                vector<int> cycle;
                for (int v = 0; v < 2 * a; ++v)
                    cycle.push_back(v);
                cycle.push_back(0);
                add_path(std::move(cycle));
                for (int i = 0; i < k; ++i) {
                    edges.emplace_back(0, 2 * a + i);
                    roles.push_back(VertexRole::Leaf);
                }
                break;
            }
            case PatternKind::Path: {
                need(params.size() == 1, "path takes one parameter l");
                int l = params[0];
                need(l >= 1, "path requires l >= 1");
                roles.assign(l, VertexRole::PathVertex);
                vector<int> path;
                for (int v = 0; v < l; ++v)
                    path.push_back(v);
                add_path(std::move(path));
                break;
            }
        }

        pattern.graph = SimpleGraph(static_cast<int>(roles.size()), edges);
        pattern.roles = std::move(roles);
        pattern.side = two_color(pattern.graph);
        return pattern;
    }

    auto parse_pattern(std::string_view text) -> PatternGraph
    {
        auto colon = text.find(':');
        if (colon == std::string_view::npos)
            fail(ErrorKind::InvalidParams, "pattern must look like kind:params, got '" + string(text) + "'");
        auto kind_text = text.substr(0, colon);
        auto rest = text.substr(colon + 1);

        vector<int> params;
        while (! rest.empty()) {
            auto comma = rest.find(',');
            auto piece = rest.substr(0, comma);
            int value = 0;
            auto [ptr, ec] = std::from_chars(piece.data(), piece.data() + piece.size(), value);
            if (ec != std::errc{} || ptr != piece.data() + piece.size())
                fail(ErrorKind::InvalidParams, "bad pattern parameter '" + string(piece) + "'");
            params.push_back(value);
            if (comma == std::string_view::npos)
                break;
            rest = rest.substr(comma + 1);
        }

        PatternKind kind;
        if (kind_text == "ktplus")
            kind = PatternKind::SubdividedClique;
        else if (kind_text == "theta")
            kind = PatternKind::Theta;
        else if (kind_text == "kab_l")
            kind = PatternKind::SubdividedBipartite;
        else if (kind_text == "cycle_star")
            kind = PatternKind::CycleWithStar;
        else if (kind_text == "path")
            kind = PatternKind::Path;
        else
            fail(ErrorKind::InvalidParams, "unknown pattern kind '" + string(kind_text) + "'");
        return make_pattern(kind, params);
    }

    auto matching_order(const PatternGraph & pattern) -> vector<int>
    {
        const auto & g = pattern.graph;
        int n = g.size();
        vector<int> order;
        vector<char> placed(n, 0);
        vector<int> placed_neighbours(n, 0);
        while (static_cast<int>(order.size()) < n) {
            int best = -1;
            for (int v = 0; v < n; ++v) {
                if (placed[v])
                    continue;
                if (best == -1
                        || placed_neighbours[v] > placed_neighbours[best]
                        || (placed_neighbours[v] == placed_neighbours[best] && g.degree(v) > g.degree(best)))
                    best = v;
            }
            placed[best] = 1;
            order.push_back(best);
            for (int w : g.neighbours(best))
                ++placed_neighbours[w];
        }
        return order;
    }

    namespace
    {
        struct Matcher
        {
            const SimpleGraph & host;
            const PatternGraph & pattern;
            const SearchOptions & options;
            const std::function<bool(const Embedding &)> & visit;

            vector<int> order;
            vector<int> anchor;                 // earliest placed neighbour, or -1
            vector<vector<int>> back_neighbours; // placed neighbours at time of placement
            vector<int> map;
            vector<char> used;
            std::set<vector<int>> seen_images;
            SearchResult result;
            bool stop = false;

            auto image_key() const -> vector<int>
            {
                vector<int> vertices(map.begin(), map.end());
                std::sort(vertices.begin(), vertices.end());
                vector<int> key = vertices;
                key.push_back(-1);
                vector<pair<int, int>> image_edges;
                for (auto [a, b] : pattern.graph.edges())
                    image_edges.emplace_back(std::min(map[a], map[b]), std::max(map[a], map[b]));
                std::sort(image_edges.begin(), image_edges.end());
                for (auto [a, b] : image_edges) {
                    key.push_back(a);
                    key.push_back(b);
                }
                return key;
            }

            auto emit() -> void
            {
                if (options.distinct_images && ! seen_images.insert(image_key()).second)
                    return;
                Embedding embedding{map};
                result.embeddings.push_back(embedding);
                if (! visit(embedding) || result.embeddings.size() >= options.limit)
                    stop = true;
            }

            auto try_place(size_t depth, int p, int h) -> void
            {
                if (used[h] || host.degree(h) < pattern.graph.degree(p))
                    return;
                if (options.allow && ! options.allow(p, h))
                    return;
                for (int w : back_neighbours[depth])
                    if (! host.adjacent(h, map[w]))
                        return;
                if (++result.nodes > options.budget) {
                    result.budget_exhausted = true;
                    stop = true;
                    return;
                }
                map[p] = h;
                used[h] = 1;
                search(depth + 1);
                used[h] = 0;
                map[p] = -1;
            }

            auto search(size_t depth) -> void
            {
                if (depth == order.size()) {
                    emit();
                    return;
                }
                int p = order[depth];
                if (anchor[depth] >= 0) {
                    auto candidates = host.neighbours(map[anchor[depth]]);
                    for (int h : candidates) {
                        try_place(depth, p, h);
                        if (stop)
                            return;
                    }
                }
                else {
                    for (int h = 0; h < host.size(); ++h) {
                        try_place(depth, p, h);
                        if (stop)
                            return;
                    }
                }
            }
        };
    }

    auto for_each_embedding(const SimpleGraph & host, const PatternGraph & pattern, const SearchOptions & options,
            const std::function<bool(const Embedding &)> & visit) -> SearchResult
    {
        if (options.limit < 1)
            fail(ErrorKind::InvalidParams, "search limit must be at least 1");

        Matcher m{host, pattern, options, visit, {}, {}, {}, {}, {}, {}, {}, false};
        m.order = matching_order(pattern);
        int pn = pattern.num_vertices();
        vector<int> position(pn, -1);
        for (size_t d = 0; d < m.order.size(); ++d)
            position[m.order[d]] = static_cast<int>(d);
        m.anchor.assign(pn, -1);
        m.back_neighbours.assign(pn, {});
        for (size_t d = 0; d < m.order.size(); ++d) {
            int p = m.order[d];
            for (int w : pattern.graph.neighbours(p))
                if (position[w] < static_cast<int>(d)) {
                    m.back_neighbours[d].push_back(w);
                    if (m.anchor[d] == -1 || position[w] < position[m.anchor[d]])
                        m.anchor[d] = w;
                }
        }
        m.map.assign(pn, -1);
        m.used.assign(host.size(), 0);

        if (pn <= host.size())
            m.search(0);
        m.result.complete = ! m.stop;
        return std::move(m.result);
    }

    auto find_subgraph(const SimpleGraph & host, const PatternGraph & pattern, const SearchOptions & options) -> SearchResult
    {
        return for_each_embedding(host, pattern, options, [](const Embedding &) { return true; });
    }

    auto is_embedding(const SimpleGraph & host, const PatternGraph & pattern, const Embedding & embedding) -> bool
    {
        if (static_cast<int>(embedding.map.size()) != pattern.num_vertices())
            return false;
        std::set<int> image;
        for (int h : embedding.map) {
            if (h < 0 || h >= host.size() || ! image.insert(h).second)
                return false;
        }
        for (auto [a, b] : pattern.graph.edges())
            if (! host.adjacent(embedding.map[a], embedding.map[b]))
                return false;
        return true;
    }
}
