#include <colorenergy/prune.hpp>
#include <colorenergy/error.hpp>
#include <colorenergy/rng.hpp>

#include <algorithm>
#include <climits>
#include <numeric>
#include <set>
#include <string>
#include <unordered_map>

using std::pair;
using std::size_t;
using std::to_string;
using std::uint64_t;
using std::vector;

namespace colorenergy
{
    namespace
    {
        auto tuple_text(const Tuple & t) -> std::string
        {
            std::string s = "(";
            for (size_t i = 0; i < t.size(); ++i) {
                if (i)
                    s += ",";
                s += to_string(t[i]);
            }
            return s + ")";
        }

        auto build_classes(int r, const vector<int> & part_of) -> vector<vector<Vertex>>
        {
            vector<vector<Vertex>> classes(r);
            for (Vertex v = 0; v < static_cast<Vertex>(part_of.size()); ++v)
                classes[part_of[v]].push_back(v);
            return classes;
        }
    }

    auto Partition::from_assignment(int r, vector<int> part_of, vector<int> side_of) -> Partition
    {
        if (r < 1)
            fail(ErrorKind::InvalidParams, "partition needs r >= 1");
        if (part_of.size() != side_of.size())
            fail(ErrorKind::InvalidParams, "part and side assignments differ in length");
        for (size_t v = 0; v < part_of.size(); ++v) {
            if (part_of[v] < 0 || part_of[v] >= r)
                fail(ErrorKind::InvalidParams, "vertex " + to_string(v) + " assigned to part out of range");
            if (side_of[v] != 0 && side_of[v] != 1)
                fail(ErrorKind::InvalidParams, "vertex " + to_string(v) + " has side other than 0/1");
        }
        Partition p;
        p.r = r;
        p.classes = build_classes(r, part_of);
        p.part_of = std::move(part_of);
        p.side_of = std::move(side_of);
        return p;
    }

    auto Partition::side_sizes(int i) const -> pair<int, int>
    {
        int primed = 0, double_primed = 0;
        for (Vertex v : classes[i])
            (side_of[v] == 0 ? primed : double_primed)++;
        return {primed, double_primed};
    }

    auto make_partition(int n, int r, uint64_t seed) -> Partition
    {
        if (r < 2)
            fail(ErrorKind::InvalidParams, "energy order r must be at least 2");
        if (n < r)
            fail(ErrorKind::InvalidParams, "need n >= r to partition into r classes");
        auto rng = make_rng(seed, "prune.partition");
        vector<Vertex> order(n);
        std::iota(order.begin(), order.end(), 0);
        std::shuffle(order.begin(), order.end(), rng);

        vector<int> part_of(n), side_of(n);
        for (int i = 0; i < n; ++i)
            part_of[order[i]] = i % r;

        // balanced random halves inside each class
        auto side_rng = make_rng(seed, "prune.bipartition");
        for (auto & cls : build_classes(r, part_of)) {
            std::shuffle(cls.begin(), cls.end(), side_rng);
            for (size_t j = 0; j < cls.size(); ++j)
                side_of[cls[j]] = (j < cls.size() / 2) ? 0 : 1;
        }
        return Partition::from_assignment(r, std::move(part_of), std::move(side_of));
    }

    auto PrunedEnergyGraph::from_parts(const ColoredGraph & g, Partition partition,
            std::span<const pair<Tuple, Tuple>> edges, uint64_t seed) -> PrunedEnergyGraph
    {
        if (partition.n() != g.n())
            fail(ErrorKind::InvalidParams, "partition covers " + to_string(partition.n()) + " vertices, coloring has "
                    + to_string(g.n()));
        PrunedEnergyGraph pg;
        pg._base = std::make_shared<const ColoredGraph>(g);
        pg._partition = std::move(partition);
        pg._seed = seed;

        int r = pg._partition.r;
        pg._radix.assign(r, 1);
        pg._vertex_count = 1;
        for (int k = r - 1; k >= 0; --k) {
            pg._radix[k] = pg._vertex_count;
            pg._vertex_count *= pg._partition.classes[k].size();
        }
        if (pg._vertex_count > static_cast<uint64_t>(INT_MAX))
            fail(ErrorKind::CapacityExceeded, "product of classes too large to index");
        pg._local.assign(r, vector<int>(g.n(), -1));
        for (int k = 0; k < r; ++k)
            for (size_t j = 0; j < pg._partition.classes[k].size(); ++j)
                pg._local[k][pg._partition.classes[k][j]] = static_cast<int>(j);

        std::set<TupleEdge> unique;
        for (auto & [x, y] : edges) {
            if (! pg.in_product(x) || ! pg.in_product(y))
                fail(ErrorKind::InvalidParams, "edge endpoint " + tuple_text(pg.in_product(x) ? y : x)
                        + " is not in V_1 x ... x V_r");
            auto a = pg.id_of(x), b = pg.id_of(y);
            if (a == b)
                fail(ErrorKind::InvalidParams, "loop at tuple " + tuple_text(x));
            unique.insert({std::min(a, b), std::max(a, b)});
        }
        pg._edges.assign(unique.begin(), unique.end());

        vector<pair<int, int>> host_edges;
        host_edges.reserve(pg._edges.size());
        for (auto [a, b] : pg._edges)
            host_edges.emplace_back(static_cast<int>(a), static_cast<int>(b));
        pg._host = SimpleGraph(static_cast<int>(pg._vertex_count), host_edges);
        return pg;
    }

    auto PrunedEnergyGraph::tuple(TupleId id) const -> Tuple
    {
        Tuple t(r());
        for (int k = 0; k < r(); ++k)
            t[k] = coordinate(id, k);
        return t;
    }

    auto PrunedEnergyGraph::coordinate(TupleId id, int k) const -> Vertex
    {
        auto & cls = _partition.classes[k];
        return cls[(id / _radix[k]) % cls.size()];
    }

    auto PrunedEnergyGraph::in_product(std::span<const Vertex> t) const -> bool
    {
        if (static_cast<int>(t.size()) != r())
            return false;
        for (int k = 0; k < r(); ++k)
            if (t[k] < 0 || t[k] >= _partition.n() || _partition.part_of[t[k]] != k)
                return false;
        return true;
    }

    auto PrunedEnergyGraph::id_of(std::span<const Vertex> t) const -> TupleId
    {
        if (! in_product(t))
            fail(ErrorKind::VertexOutOfRange, "tuple is not in V_1 x ... x V_r");
        TupleId id = 0;
        for (int k = 0; k < r(); ++k)
            id += static_cast<uint64_t>(_local[k][t[k]]) * _radix[k];
        return id;
    }

    auto PrunedEnergyGraph::neighbours(TupleId id) const -> std::span<const int>
    {
        return _host.neighbours(static_cast<int>(id));
    }

    auto PrunedEnergyGraph::adjacent(TupleId a, TupleId b) const -> bool
    {
        return _host.adjacent(static_cast<int>(a), static_cast<int>(b));
    }

    auto PrunedEnergyGraph::degree(TupleId id) const -> int
    {
        return _host.degree(static_cast<int>(id));
    }

    auto build_pruned(const ColoredGraph & g, int r, uint64_t seed, const PruneOptions & options, PruneStats * stats)
        -> PrunedEnergyGraph
    {
        Partition partition = options.partition ? *options.partition : make_partition(g.n(), r, seed);
        if (partition.r != r)
            fail(ErrorKind::InvalidParams, "supplied partition has a different r");

        // an empty edge list fixes the index layout; edges are added below
        PrunedEnergyGraph layout = PrunedEnergyGraph::from_parts(g, partition, {}, seed);
        if (layout.vertex_count() > options.max_vertices)
            fail(ErrorKind::CapacityExceeded, "pruned vertex count " + to_string(layout.vertex_count())
                    + " exceeds the cap");

        // candidate edges: each coordinate pair crosses its bipartition; the
        // first coordinate is oriented V_1' -> V_1'' so each pair appears once
        vector<TupleEdge> candidates;
        vector<Tuple> x_of;
        for (Color c = 0; c < g.num_colors(); ++c) {
            vector<vector<pair<Vertex, Vertex>>> options_at(r);
            for (const Edge & e : g.color_class(c)) {
                int k = partition.part_of[e.u];
                if (k != partition.part_of[e.v] || partition.side_of[e.u] == partition.side_of[e.v])
                    continue;
                Vertex primed = partition.side_of[e.u] == 0 ? e.u : e.v;
                Vertex other = primed == e.u ? e.v : e.u;
                options_at[k].emplace_back(primed, other);
                if (k != 0)
                    options_at[k].emplace_back(other, primed);
            }
            uint64_t count = 1;
            for (auto & o : options_at) {
                count *= o.size();
                if (count == 0)
                    break;
            }
            if (count == 0)
                continue;
            if (candidates.size() + count > options.max_candidate_edges)
                fail(ErrorKind::CapacityExceeded, "candidate edge count exceeds the cap");

            vector<size_t> choice(r, 0);
            Tuple x(r), y(r);
            while (true) {
                for (int k = 0; k < r; ++k) {
                    x[k] = options_at[k][choice[k]].first;
                    y[k] = options_at[k][choice[k]].second;
                }
                auto a = layout.id_of(x), b = layout.id_of(y);
                candidates.push_back({std::min(a, b), std::max(a, b)});
                int k = r - 1;
                while (k >= 0) {
                    if (++choice[k] < options_at[k].size())
                        break;
                    choice[k] = 0;
                    --k;
                }
                if (k < 0)
                    break;
            }
        }
        std::sort(candidates.begin(), candidates.end());

        // thinning: for each (z, k, value) only the least neighbour survives,
        // and an edge is kept only if both endpoints keep each other
        uint64_t n = static_cast<uint64_t>(g.n());
        auto key = [&](TupleId z, int k, Vertex value) {
            return (z * static_cast<uint64_t>(r) + static_cast<uint64_t>(k)) * n + static_cast<uint64_t>(value);
        };
        std::unordered_map<uint64_t, TupleId> least;
        least.reserve(candidates.size() * 2 * r);
        auto offer = [&](TupleId z, TupleId w) {
            for (int k = 0; k < r; ++k) {
                auto [it, inserted] = least.try_emplace(key(z, k, layout.coordinate(w, k)), w);
                if (! inserted && w < it->second)
                    it->second = w;
            }
        };
        for (auto [a, b] : candidates) {
            offer(a, b);
            offer(b, a);
        }
        auto keeps = [&](TupleId z, TupleId w) {
            for (int k = 0; k < r; ++k)
                if (least.at(key(z, k, layout.coordinate(w, k))) != w)
                    return false;
            return true;
        };
        vector<TupleEdge> kept;
        for (auto [a, b] : candidates)
            if (keeps(a, b) && keeps(b, a))
                kept.push_back({a, b});
        uint64_t thinned = candidates.size() - kept.size();

        // sweep: drop the lexicographically greater edge of any distance-2 clash
        std::set<TupleEdge> alive(kept.begin(), kept.end());
        uint64_t swept = 0;
        bool changed = true;
        while (changed) {
            changed = false;
            vector<vector<TupleId>> adj(layout.vertex_count());
            for (auto [a, b] : alive) {
                adj[a].push_back(b);
                adj[b].push_back(a);
            }
            for (TupleId z = 0; z < layout.vertex_count() && ! changed; ++z) {
                auto & nb = adj[z];
                for (size_t i = 0; i < nb.size() && ! changed; ++i)
                    for (size_t j = i + 1; j < nb.size() && ! changed; ++j) {
                        bool clash = false;
                        for (int k = 0; k < r; ++k)
                            clash = clash || layout.coordinate(nb[i], k) == layout.coordinate(nb[j], k);
                        if (! clash)
                            continue;
                        TupleEdge e1{std::min(z, nb[i]), std::max(z, nb[i])};
                        TupleEdge e2{std::min(z, nb[j]), std::max(z, nb[j])};
                        alive.erase(std::max(e1, e2));
                        ++swept;
                        changed = true;
                    }
            }
        }

        vector<pair<Tuple, Tuple>> final_edges;
        final_edges.reserve(alive.size());
        for (auto [a, b] : alive)
            final_edges.emplace_back(layout.tuple(a), layout.tuple(b));
        PrunedEnergyGraph pg = PrunedEnergyGraph::from_parts(g, std::move(partition), final_edges, seed);

        auto report = verify_pruned(pg);
        if (! report.ok())
            fail(ErrorKind::InvariantViolated, "pruned graph failed verification: " + report.violations.front().detail);

        if (stats) {
            stats->edges_before_paper = power_sum(g, r);
            stats->edges_before_exact = stats->edges_before_paper;
            for (int i = 0; i < r - 1; ++i)
                stats->edges_before_exact *= 2;
            stats->candidate_edges = candidates.size();
            stats->thinned_edges = thinned;
            stats->swept_edges = swept;
            stats->edges_after = pg.num_edges();
            stats->max_color_degree = max_color_degree(g);
            stats->retention_fraction = stats->edges_before_exact > 0
                ? static_cast<double>(pg.num_edges()) / stats->edges_before_exact.convert_to<double>()
                : 0.0;
        }
        return pg;
    }

    auto PruneReport::count(PruneProperty property) const -> size_t
    {
        return static_cast<size_t>(std::count_if(violations.begin(), violations.end(),
                [&](const PruneViolation & v) { return v.property == property; }));
    }

    auto verify_pruned(const PrunedEnergyGraph & pg) -> PruneReport
    {
        PruneReport report;
        const auto & part = pg.partition();
        const auto & g = pg.base();
        int r = pg.r();

        // property 1: classes partition V and are balanced
        int n = part.n();
        int lo = n / r, hi = (n + r - 1) / r;
        for (int i = 0; i < r; ++i) {
            int size = static_cast<int>(part.classes[i].size());
            if (size < lo || size > hi)
                report.violations.push_back({PruneProperty::ProductStructure,
                        "class V_" + to_string(i + 1) + " has size " + to_string(size) + ", expected between "
                                + to_string(lo) + " and " + to_string(hi),
                        {}});
        }
        for (Vertex v = 0; v < n; ++v) {
            int p = part.part_of[v];
            if (p < 0 || p >= r || ! std::binary_search(part.classes[p].begin(), part.classes[p].end(), v))
                report.violations.push_back({PruneProperty::ProductStructure,
                        "vertex " + to_string(v) + " is not in its recorded class", {}});
        }

        for (auto [a, b] : pg.edges()) {
            Tuple x = pg.tuple(a), y = pg.tuple(b);
            // genuine energy edge with every projection an edge of G
            std::optional<Color> common;
            bool genuine = true;
            for (int k = 0; k < r && genuine; ++k) {
                if (x[k] == y[k]) {
                    genuine = false;
                    break;
                }
                Color c = g.color(x[k], y[k]);
                genuine = ! common || *common == c;
                common = c;
            }
            if (! genuine)
                report.violations.push_back({PruneProperty::EnergyEdge,
                        "edge " + tuple_text(x) + "-" + tuple_text(y) + " is not monochromatic across coordinates",
                        {a, b}});

            for (int k = 0; k < r; ++k)
                if (part.side_of[x[k]] == part.side_of[y[k]]) {
                    report.violations.push_back({PruneProperty::BipartitionCrossing,
                            "edge " + tuple_text(x) + "-" + tuple_text(y) + " coordinate " + to_string(k + 1)
                                    + " stays inside V_" + to_string(k + 1) + (part.side_of[x[k]] == 0 ? "'" : "''"),
                            {a, b}});
                    break;
                }

            for (int k = 0; k < r; ++k)
                if (x[k] == y[k]) {
                    report.violations.push_back({PruneProperty::CoordinateDistinct,
                            "adjacent tuples " + tuple_text(x) + " and " + tuple_text(y) + " share coordinate "
                                    + to_string(k + 1),
                            {a, b}});
                    break;
                }
        }

        // property 3 at distance 2: neighbours of a common vertex
        std::set<pair<TupleId, TupleId>> reported;
        for (TupleId z = 0; z < pg.vertex_count(); ++z) {
            auto nb = pg.neighbours(z);
            for (size_t i = 0; i < nb.size(); ++i)
                for (size_t j = i + 1; j < nb.size(); ++j) {
                    TupleId x = static_cast<TupleId>(nb[i]), y = static_cast<TupleId>(nb[j]);
                    for (int k = 0; k < r; ++k)
                        if (pg.coordinate(x, k) == pg.coordinate(y, k)) {
                            if (reported.insert({x, y}).second)
                                report.violations.push_back({PruneProperty::CoordinateDistinct,
                                        "tuples " + tuple_text(pg.tuple(x)) + " and " + tuple_text(pg.tuple(y))
                                                + " at distance 2 via " + tuple_text(pg.tuple(z))
                                                + " share coordinate " + to_string(k + 1),
                                        {x, z, y}});
                            break;
                        }
                }
        }
        return report;
    }
}
