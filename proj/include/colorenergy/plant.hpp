#ifndef COLORENERGY_PLANT_HPP
#define COLORENERGY_PLANT_HPP

#include <colorenergy/colored_graph.hpp>
#include <colorenergy/gen.hpp>
#include <colorenergy/prune.hpp>

#include <cstdint>
#include <vector>

namespace colorenergy
{
    struct PlantOptions
    {
        std::uint64_t seed = 0;
        /// Size of the random filler palette; 0 means C(n,2)/2.
        int filler_colors = 0;
    };

    /**
     * A coloring of K_n carrying r vertex-disjoint color-isomorphic copies of a
     * bipartite pattern, copy k inside class V_k with pattern side 0 in V_k'
     * and side 1 in V_k''. Every pattern edge gets its own color shared by all
     * copies; remaining edges are random filler colors.
     */
    struct PlantedInstance
    {
        ColoredGraph coloring;
        Partition partition;
        PatternGraph pattern;
        std::vector<std::vector<Vertex>> copies; // copies[k][pattern vertex]

        auto tuple_of(int pattern_vertex) const -> Tuple;
    };

    auto plant_pattern(int n, int r, const PatternGraph & pattern, const PlantOptions & options = {})
        -> PlantedInstance;
}

#endif
