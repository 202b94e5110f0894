// Brute-force reference implementations. Deliberately naive: they share no
// code paths with the library beyond the ColoredGraph accessors.
#ifndef COLORENERGY_TESTS_ORACLES_HPP
#define COLORENERGY_TESTS_ORACLES_HPP

#include <colorenergy/colored_graph.hpp>
#include <colorenergy/energy.hpp>
#include <colorenergy/prune.hpp>
#include <colorenergy/reveal.hpp>
#include <colorenergy/rng.hpp>

#include <cstdint>
#include <map>
#include <random>
#include <set>
#include <vector>

namespace oracle
{
    using namespace colorenergy;

    inline auto distinct_colors(const ColoredGraph & g, const std::vector<Vertex> & s) -> std::int64_t
    {
        std::set<Color> seen;
        for (size_t i = 0; i < s.size(); ++i)
            for (size_t j = i + 1; j < s.size(); ++j)
                seen.insert(g.color(s[i], s[j]));
        return static_cast<std::int64_t>(seen.size());
    }

    /// Every p-subset via bitmasks; n <= 20.
    inline auto is_pq(const ColoredGraph & g, int p, std::int64_t q) -> bool
    {
        int n = g.n();
        for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
            if (__builtin_popcount(mask) != p)
                continue;
            std::vector<Vertex> s;
            for (int v = 0; v < n; ++v)
                if (mask >> v & 1)
                    s.push_back(v);
            if (distinct_colors(g, s) < q)
                return false;
        }
        return true;
    }

    inline auto subgraph_repetitions(const ColoredGraph & g, const EdgeSubgraph & h) -> std::int64_t
    {
        std::set<Color> seen;
        for (auto & e : h.edges)
            seen.insert(g.color(e.u, e.v));
        return static_cast<std::int64_t>(h.edges.size()) - static_cast<std::int64_t>(seen.size());
    }

    inline auto class_sizes(const ColoredGraph & g) -> std::map<Color, std::int64_t>
    {
        std::map<Color, std::int64_t> m;
        for (Vertex i = 0; i < g.n(); ++i)
            for (Vertex j = i + 1; j < g.n(); ++j)
                ++m[g.color(i, j)];
        return m;
    }

    /// Unordered pairs of r-tuples whose coordinate pairs are all edges of one color.
    inline auto energy_edges(const ColoredGraph & g, int r) -> std::int64_t
    {
        int n = g.n();
        std::int64_t total = 1;
        for (int k = 0; k < r; ++k)
            total *= n;
        auto decode = [&](std::int64_t code) {
            std::vector<Vertex> t(r);
            for (int k = r - 1; k >= 0; --k) {
                t[k] = static_cast<Vertex>(code % n);
                code /= n;
            }
            return t;
        };
        std::int64_t count = 0;
        for (std::int64_t a = 0; a < total; ++a) {
            auto x = decode(a);
            for (std::int64_t b = a + 1; b < total; ++b) {
                auto y = decode(b);
                bool ok = true;
                Color c = -1;
                for (int k = 0; k < r && ok; ++k) {
                    if (x[k] == y[k]) {
                        ok = false;
                        break;
                    }
                    Color ck = g.color(x[k], y[k]);
                    if (c == -1)
                        c = ck;
                    ok = ck == c;
                }
                count += ok;
            }
        }
        return count;
    }

    /// Ordered quadruples (v1,v2,v3,v4), v1 != v2, v3 != v4, chi(v1v2) = chi(v3v4).
    inline auto quadruple_energy(const ColoredGraph & g) -> std::int64_t
    {
        int n = g.n();
        std::int64_t count = 0;
        for (Vertex a = 0; a < n; ++a)
            for (Vertex b = 0; b < n; ++b)
                for (Vertex c = 0; c < n; ++c)
                    for (Vertex d = 0; d < n; ++d)
                        if (a != b && c != d && g.color(a, b) == g.color(c, d))
                            ++count;
        return count;
    }

    inline auto coords(const PrunedEnergyGraph & pg, TupleId x, int k) -> Vertex
    {
        return pg.tuple(x)[k];
    }

    /// N_k = |V(H u pi_k(T))| - |V(H)|
    inline auto closed_form_Nk(const PrunedEnergyGraph & pg, const EdgeSubgraph & h,
            const std::vector<OrderedEdge> & order, int k) -> std::int64_t
    {
        std::set<Vertex> vertices(h.vertices.begin(), h.vertices.end());
        for (auto & e : order) {
            vertices.insert(coords(pg, e.from, k));
            vertices.insert(coords(pg, e.to, k));
        }
        return static_cast<std::int64_t>(vertices.size()) - static_cast<std::int64_t>(h.vertices.size());
    }

    /// D_k = sum over e of max(0, |pi_k^{-1}(e)| - [e not in E(H)])
    inline auto closed_form_Dk(const PrunedEnergyGraph & pg, const EdgeSubgraph & h,
            const std::vector<OrderedEdge> & order, int k) -> std::int64_t
    {
        std::map<Edge, std::int64_t> preimage;
        for (auto & e : order)
            ++preimage[make_edge(coords(pg, e.from, k), coords(pg, e.to, k))];
        std::int64_t total = 0;
        for (auto & [e, count] : preimage)
            total += std::max<std::int64_t>(0, count - (h.has_edge(e) ? 0 : 1));
        return total;
    }

    /// Step classification replayed from scratch on plain vertex and edge sets.
    struct StepFlags
    {
        std::vector<std::vector<char>> flags; // [step][k] in {'n','s','d'}
    };

    inline auto replay(const PrunedEnergyGraph & pg, const EdgeSubgraph & h, const std::vector<OrderedEdge> & order)
        -> StepFlags
    {
        int r = pg.r();
        std::set<Vertex> vertices(h.vertices.begin(), h.vertices.end());
        std::set<Edge> edges(h.edges.begin(), h.edges.end());
        StepFlags out;
        for (auto & e : order) {
            auto a = pg.tuple(e.from), b = pg.tuple(e.to);
            std::vector<char> f(r);
            for (int k = 0; k < r; ++k) {
                Edge pe = make_edge(a[k], b[k]);
                if (edges.contains(pe))
                    f[k] = 'd';
                else if (vertices.contains(b[k]))
                    f[k] = 's';
                else
                    f[k] = 'n';
            }
            for (int k = 0; k < r; ++k) {
                vertices.insert(a[k]);
                vertices.insert(b[k]);
                edges.insert(make_edge(a[k], b[k]));
            }
            out.flags.push_back(f);
        }
        return out;
    }

    inline auto savings_from_flags(const StepFlags & s, int r) -> Rational
    {
        Rational total(0);
        for (auto & f : s.flags) {
            int sv = 0, dv = 0;
            for (char c : f) {
                sv += c == 's';
                dv += c == 'd';
            }
            total += sv;
            if (dv > 0)
                total += Rational(r - dv, r - 1);
        }
        return total;
    }

    inline auto random_coloring(int n, int colors, std::uint64_t seed) -> ColoredGraph
    {
        std::mt19937_64 rng(seed);
        std::uniform_int_distribution<std::int64_t> pick(0, colors - 1);
        std::vector<std::int64_t> labels;
        for (int i = 0; i < n * (n - 1) / 2; ++i)
            labels.push_back(pick(rng));
        return ColoredGraph::canonical(n, labels);
    }
}

#endif
