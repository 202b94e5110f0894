#include <colorenergy/plant.hpp>
#include <colorenergy/error.hpp>
#include <colorenergy/rng.hpp>

#include <algorithm>
#include <map>
#include <numeric>
#include <string>

using std::int64_t;
using std::to_string;
using std::vector;

namespace colorenergy
{
    auto PlantedInstance::tuple_of(int pattern_vertex) const -> Tuple
    {
        Tuple t;
        for (auto & copy : copies)
            t.push_back(copy.at(pattern_vertex));
        return t;
    }

    auto plant_pattern(int n, int r, const PatternGraph & pattern, const PlantOptions & options) -> PlantedInstance
    {
        if (r < 2)
            fail(ErrorKind::InvalidParams, "planting needs r >= 2");
        if (pattern.side.empty())
            fail(ErrorKind::InvalidParams, "planted pattern must be bipartite");
        int v_count = pattern.num_vertices();
        if (n / r < v_count)
            fail(ErrorKind::InvalidParams, "n = " + to_string(n) + " is too small for " + to_string(r)
                    + " copies of a " + to_string(v_count) + "-vertex pattern");

        auto rng = make_rng(options.seed, "plant.layout");
        vector<Vertex> order(n);
        std::iota(order.begin(), order.end(), 0);
        std::shuffle(order.begin(), order.end(), rng);
        vector<int> part_of(n), side_of(n);
        vector<vector<Vertex>> classes(r);
        for (int i = 0; i < n; ++i) {
            part_of[order[i]] = i % r;
            classes[i % r].push_back(order[i]);
        }

        PlantedInstance out;
        out.pattern = pattern;
        out.copies.assign(r, vector<Vertex>(v_count, -1));
        vector<int> side_order(v_count);
        std::iota(side_order.begin(), side_order.end(), 0);
        std::stable_sort(side_order.begin(), side_order.end(),
                [&](int a, int b) { return pattern.side[a] < pattern.side[b]; });
        for (int k = 0; k < r; ++k) {
            auto & cls = classes[k];
            for (int idx = 0; idx < v_count; ++idx) {
                int pv = side_order[idx];
                out.copies[k][pv] = cls[idx];
                side_of[cls[idx]] = pattern.side[pv];
            }
            for (size_t idx = v_count; idx < cls.size(); ++idx)
                side_of[cls[idx]] = static_cast<int>(rng() & 1);
        }
        out.partition = Partition::from_assignment(r, std::move(part_of), std::move(side_of));

        std::map<Edge, int64_t> planted;
        auto pattern_edges = pattern.graph.edges();
        for (size_t e = 0; e < pattern_edges.size(); ++e)
            for (int k = 0; k < r; ++k)
                planted[make_edge(out.copies[k][pattern_edges[e].first], out.copies[k][pattern_edges[e].second])] =
                        static_cast<int64_t>(e);

        int64_t filler = options.filler_colors > 0 ? options.filler_colors : std::max<int64_t>(1, choose2(n) / 2);
        auto color_rng = make_rng(options.seed, "plant.filler");
        std::uniform_int_distribution<int64_t> pick(0, filler - 1);
        vector<int64_t> labels;
        labels.reserve(static_cast<size_t>(choose2(n)));
        int64_t base = static_cast<int64_t>(pattern_edges.size());
        for (Vertex i = 0; i < n; ++i)
            for (Vertex j = i + 1; j < n; ++j) {
                auto it = planted.find(Edge{i, j});
                labels.push_back(it != planted.end() ? it->second : base + pick(color_rng));
            }
        out.coloring = ColoredGraph::canonical(n, labels);
        return out;
    }
}
