#ifndef COLORENERGY_TESTS_FIXTURES_HPP
#define COLORENERGY_TESTS_FIXTURES_HPP

#include <colorenergy/colored_graph.hpp>
#include <colorenergy/gen.hpp>
#include <colorenergy/prune.hpp>

#include <numeric>
#include <vector>

namespace fixtures
{
    using namespace colorenergy;

    inline auto rainbow(int n) -> ColoredGraph
    {
        std::vector<Color> c(static_cast<size_t>(choose2(n)));
        std::iota(c.begin(), c.end(), 0);
        return ColoredGraph(n, c);
    }

    inline auto mono(int n) -> ColoredGraph
    {
        return ColoredGraph(n, std::vector<Color>(static_cast<size_t>(choose2(n)), 0));
    }

    inline auto k4_matchings() -> ColoredGraph
    {
        return generate_coloring(4, RoundRobinScheme{});
    }

    // V_i = {v : v % r == i}, first half of the vertices on side 0
    inline auto striped_partition(int n, int r) -> Partition
    {
        std::vector<int> part(n), side(n);
        for (int v = 0; v < n; ++v) {
            part[v] = v % r;
            side[v] = v < n / 2 ? 0 : 1;
        }
        return Partition::from_assignment(r, part, side);
    }
}

#endif
