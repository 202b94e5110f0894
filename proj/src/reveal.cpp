#include <colorenergy/reveal.hpp>
#include <colorenergy/error.hpp>

#include <algorithm>
#include <map>
#include <set>
#include <string>

using std::int64_t;
using std::size_t;
using std::to_string;
using std::vector;

namespace colorenergy
{
    namespace
    {
        auto as_edge(const OrderedEdge & e) -> TupleEdge
        {
            return {std::min(e.from, e.to), std::max(e.from, e.to)};
        }

        auto require_in_graph(const PrunedEnergyGraph & pg, TupleEdge e) -> void
        {
            if (e.first >= pg.vertex_count() || e.second >= pg.vertex_count() || ! pg.adjacent(e.first, e.second))
                fail(ErrorKind::InvalidParams, "edge (" + to_string(e.first) + "," + to_string(e.second)
                        + ") is not an edge of the pruned graph");
        }

        auto vertices_contained(const PrunedEnergyGraph & pg, TupleId x, const std::set<Vertex> & vertices) -> bool
        {
            for (int k = 0; k < pg.r(); ++k)
                if (! vertices.contains(pg.coordinate(x, k)))
                    return false;
            return true;
        }

        auto dedupe_edges(const PrunedEnergyGraph & pg, std::span<const TupleEdge> edges) -> vector<TupleEdge>
        {
            vector<TupleEdge> result;
            for (auto e : edges) {
                TupleEdge norm{std::min(e.first, e.second), std::max(e.first, e.second)};
                require_in_graph(pg, norm);
                result.push_back(norm);
            }
            std::sort(result.begin(), result.end());
            if (std::adjacent_find(result.begin(), result.end()) != result.end())
                fail(ErrorKind::InvalidParams, "edge listed twice in T");
            return result;
        }

        template <typename Pick>
        auto build_order(const PrunedEnergyGraph & pg, const EdgeSubgraph & h, std::span<const TupleEdge> edges,
                Pick pick) -> vector<OrderedEdge>
        {
            vector<TupleEdge> remaining = dedupe_edges(pg, edges);
            std::set<Vertex> revealed = h.vertices;
            vector<OrderedEdge> order;
            while (! remaining.empty()) {
                // (edge index, admissible endpoints)
                vector<std::pair<size_t, vector<TupleId>>> available;
                for (size_t i = 0; i < remaining.size(); ++i) {
                    vector<TupleId> ends;
                    auto [a, b] = remaining[i];
                    if (vertices_contained(pg, a, revealed))
                        ends.push_back(a);
                    if (vertices_contained(pg, b, revealed))
                        ends.push_back(b);
                    if (! ends.empty())
                        available.emplace_back(i, std::move(ends));
                }
                if (available.empty())
                    fail(ErrorKind::NoCompatibleOrder, to_string(remaining.size())
                            + " edges remain with no endpoint projecting into the revealed graph");
                auto [index, from] = pick(available);
                auto [a, b] = remaining[index];
                OrderedEdge e{from, from == a ? b : a};
                for (int k = 0; k < pg.r(); ++k)
                    revealed.insert(pg.coordinate(e.to, k));
                order.push_back(e);
                remaining.erase(remaining.begin() + static_cast<std::ptrdiff_t>(index));
            }
            return order;
        }
    }

    auto add_projection(EdgeSubgraph & h, const PrunedEnergyGraph & pg, TupleId vertex) -> void
    {
        for (int k = 0; k < pg.r(); ++k)
            h.add_vertex(pg.coordinate(vertex, k));
    }

    auto add_projection(EdgeSubgraph & h, const PrunedEnergyGraph & pg, TupleId a, TupleId b) -> void
    {
        for (int k = 0; k < pg.r(); ++k)
            h.add_edge(pg.project_edge(a, b, k));
    }

    auto projection_of_vertices(const PrunedEnergyGraph & pg, std::span<const TupleId> vertices) -> EdgeSubgraph
    {
        EdgeSubgraph h;
        for (TupleId x : vertices)
            add_projection(h, pg, x);
        return h;
    }

    auto projection_of_edges(const PrunedEnergyGraph & pg, std::span<const TupleEdge> edges) -> EdgeSubgraph
    {
        EdgeSubgraph h;
        for (auto [a, b] : edges)
            add_projection(h, pg, a, b);
        return h;
    }

    auto projection_contained(const PrunedEnergyGraph & pg, TupleId vertex, const EdgeSubgraph & h) -> bool
    {
        return vertices_contained(pg, vertex, h.vertices);
    }

    auto check_compatible(const PrunedEnergyGraph & pg, const EdgeSubgraph & h, std::span<const OrderedEdge> order)
        -> CompatibilityVerdict
    {
        std::set<Vertex> revealed = h.vertices;
        for (size_t i = 0; i < order.size(); ++i) {
            if (! vertices_contained(pg, order[i].from, revealed))
                return {false, i + 1, "designated endpoint of step " + to_string(i + 1) + " is not yet revealed"};
            for (int k = 0; k < pg.r(); ++k)
                revealed.insert(pg.coordinate(order[i].to, k));
        }
        return {};
    }

    auto generate_compatible_order(const PrunedEnergyGraph & pg, const EdgeSubgraph & h,
            std::span<const TupleEdge> edges) -> vector<OrderedEdge>
    {
        // remaining edges are sorted, so the first available one is the least
        return build_order(pg, h, edges, [](auto & available) {
            return std::pair{available.front().first, available.front().second.front()};
        });
    }

    auto random_compatible_order(const PrunedEnergyGraph & pg, const EdgeSubgraph & h, std::span<const TupleEdge> edges,
            std::mt19937_64 & rng) -> vector<OrderedEdge>
    {
        return build_order(pg, h, edges, [&](auto & available) {
            std::uniform_int_distribution<size_t> pick_edge(0, available.size() - 1);
            auto & [index, ends] = available[pick_edge(rng)];
            std::uniform_int_distribution<size_t> pick_end(0, ends.size() - 1);
            return std::pair{index, ends[pick_end(rng)]};
        });
    }

    auto canonical_path_order(std::span<const TupleId> path) -> vector<OrderedEdge>
    {
        vector<OrderedEdge> order;
        for (size_t i = 0; i + 1 < path.size(); ++i)
            order.push_back({path[i], path[i + 1]});
        return order;
    }

    auto outcome_letter(Outcome o) -> char
    {
        switch (o) {
            case Outcome::NewVertex: return 'n';
            case Outcome::Savings: return 's';
            case Outcome::Delayed: return 'd';
        }
        return '?';
    }

    auto RevealLedger::snapshot(const PrunedEnergyGraph & pg, size_t i) const -> EdgeSubgraph
    {
        if (i > steps.size())
            fail(ErrorKind::InvalidParams, "snapshot index beyond the number of steps");
        EdgeSubgraph h = initial;
        for (size_t j = 0; j < i; ++j)
            add_projection(h, pg, steps[j].edge.from, steps[j].edge.to);
        return h;
    }

    auto reveal_ledger(const PrunedEnergyGraph & pg, const EdgeSubgraph & h, std::span<const OrderedEdge> order)
        -> RevealLedger
    {
        int r = pg.r();
        const auto & g = pg.base();
        RevealLedger ledger;
        ledger.r = r;
        ledger.Nk.assign(r, 0);
        ledger.Sk.assign(r, 0);
        ledger.Dk.assign(r, 0);
        ledger.initial = h;
        ledger.initial_repetitions = edge_repetitions(g, h);
        ledger.sav = Rational(0);

        std::set<TupleEdge> seen;
        for (auto & e : order) {
            require_in_graph(pg, as_edge(e));
            if (! seen.insert(as_edge(e)).second)
                fail(ErrorKind::InvalidParams, "edge listed twice in the ordering");
        }

        // earlier T-edges at each tuple, for the consecutive-projection check
        std::map<TupleId, vector<TupleEdge>> incident;
        EdgeSubgraph current = h;
        for (size_t i = 0; i < order.size(); ++i) {
            const OrderedEdge & e = order[i];
            if (! projection_contained(pg, e.from, current))
                fail(ErrorKind::IncompatibleOrder, "step " + to_string(i + 1)
                        + ": designated endpoint does not project into the revealed graph");

            for (TupleId end : {e.from, e.to})
                for (auto prev : incident[end]) {
                    TupleId other = prev.first == end ? prev.second : prev.first;
                    TupleId mine = end == e.from ? e.to : e.from;
                    for (int k = 0; k < r; ++k)
                        if (pg.project_edge(end, other, k) == pg.project_edge(end, mine, k))
                            fail(ErrorKind::InvariantViolated, "step " + to_string(i + 1) + ": coordinate "
                                    + to_string(k + 1) + " repeats the projection of an adjacent edge");
                }

            RevealStep step;
            step.edge = e;
            step.color = g.color(pg.coordinate(e.from, 0), pg.coordinate(e.to, 0));
            for (int k = 0; k < r; ++k) {
                Vertex v = pg.coordinate(e.to, k);
                Edge projected = pg.project_edge(e.from, e.to, k);
                Outcome o;
                if (! current.has_vertex(v))
                    o = Outcome::NewVertex;
                else if (! current.has_edge(projected))
                    o = Outcome::Savings;
                else
                    o = Outcome::Delayed;
                step.per_coordinate.push_back(o);
                switch (o) {
                    case Outcome::NewVertex: ++step.n; ++ledger.Nk[k]; break;
                    case Outcome::Savings: ++step.s; ++ledger.Sk[k]; break;
                    case Outcome::Delayed: ++step.d; ++ledger.Dk[k]; break;
                }
            }
            add_projection(current, pg, e.from, e.to);
            incident[e.from].push_back(as_edge(e));
            incident[e.to].push_back(as_edge(e));

            ledger.N += step.n;
            ledger.S += step.s;
            ledger.D += step.d;
            if (step.d == 0)
                ++ledger.d;
            ledger.steps.push_back(std::move(step));
        }
        ledger.final_graph = std::move(current);
        ledger.final_repetitions = edge_repetitions(g, ledger.final_graph);
        ledger.sav = total_savings(ledger);
        return ledger;
    }

    auto total_savings(const RevealLedger & ledger) -> Rational
    {
        Rational sav(ledger.S);
        for (auto & step : ledger.steps)
            if (step.d > 0)
                sav += Rational(ledger.r - step.d, ledger.r - 1);
        return sav;
    }

    auto eventual_savings_site(const PrunedEnergyGraph & pg, const EdgeSubgraph & f, std::span<const TupleId> path,
            int k, size_t j, size_t j2) -> std::optional<size_t>
    {
        size_t l = path.size() < 1 ? 0 : path.size() - 1;
        if (k < 1 || k > pg.r())
            fail(ErrorKind::HypothesisViolated, "coordinate k out of range");
        if (j < 1 || j > j2 || j2 > l)
            fail(ErrorKind::HypothesisViolated, "need 1 <= j <= j' <= path length");
        int kk = k - 1;
        if (! projection_contained(pg, path[0], f))
            fail(ErrorKind::HypothesisViolated, "projection of the first path vertex is not in F");

        EdgeSubgraph revealed = f;
        for (size_t i = 1; i < j; ++i)
            revealed.add_edge(pg.project_edge(path[i - 1], path[i], kk));
        if (revealed.has_edge(pg.project_edge(path[j - 1], path[j], kk)))
            fail(ErrorKind::HypothesisViolated, "edge j is already revealed in coordinate k");
        if (! f.has_vertex(pg.coordinate(path[j2], kk)))
            fail(ErrorKind::HypothesisViolated, "pi_k(v_j') is not a vertex of F");

        auto order = canonical_path_order(path);
        auto ledger = reveal_ledger(pg, f, order);
        for (size_t step = j; step <= j2; ++step)
            if (ledger.steps[step - 1].per_coordinate[kk] == Outcome::Savings)
                return step;
        return std::nullopt;
    }

    auto reservoir_problem(const PrunedEnergyGraph & pg, const EdgeSubgraph & h, const Reservoir & reservoir)
        -> std::string
    {
        if (reservoir.source >= pg.vertex_count())
            return "source is not a vertex of the pruned graph";
        if (! projection_contained(pg, reservoir.source, h))
            return "projection of the source is not contained in H";
        std::set<TupleId> distinct;
        for (TupleId u : reservoir.members) {
            if (! distinct.insert(u).second)
                return "member " + to_string(u) + " listed twice";
            if (u >= pg.vertex_count() || ! pg.adjacent(u, reservoir.source))
                return "member " + to_string(u) + " is not adjacent to the source";
            for (int k = 0; k < pg.r(); ++k)
                if (h.has_vertex(pg.coordinate(u, k)))
                    return "projection of member " + to_string(u) + " meets H";
        }
        return {};
    }

    auto apply_reservoir(const PrunedEnergyGraph & pg, const EdgeSubgraph & h, const Reservoir & reservoir, int64_t D)
        -> WitnessGraph
    {
        int r = pg.r();
        if (D < 0)
            fail(ErrorKind::InvalidParams, "D must be non-negative");
        if (D > r * static_cast<int64_t>(reservoir.members.size()))
            fail(ErrorKind::ReservoirTooSmall, "D = " + to_string(D) + " exceeds r|R| = "
                    + to_string(r * static_cast<int64_t>(reservoir.members.size())));

        WitnessGraph out;
        out.graph = h;
        out.base_repetitions = edge_repetitions(pg.base(), h);
        out.reservoir_vertices = D;
        if (D > 0) {
            if (auto problem = reservoir_problem(pg, h, reservoir); ! problem.empty())
                fail(ErrorKind::NotAReservoir, problem);
            int64_t w = D / r, z = D % r;
            for (int64_t i = 0; i < w; ++i)
                add_projection(out.graph, pg, reservoir.source, reservoir.members[i]);
            if (z != 0)
                for (int k = 0; k < z; ++k)
                    out.graph.add_edge(pg.project_edge(reservoir.source, reservoir.members[w], k));
            out.guaranteed_repetitions = (r - 1) * w + z - (z != 0 ? 1 : 0);
        }
        out.vertex_budget = static_cast<int64_t>(h.vertices.size()) + D;
        out.new_repetitions = edge_repetitions(pg.base(), out.graph) - out.base_repetitions;

        if (static_cast<int64_t>(out.graph.vertices.size()) != out.vertex_budget)
            fail(ErrorKind::InvariantViolated, "reservoir step added " + to_string(out.graph.vertices.size()
                    - h.vertices.size()) + " vertices instead of " + to_string(D));
        if (out.new_repetitions < ((r - 1) * D) / r)
            fail(ErrorKind::InvariantViolated, "reservoir step gained only " + to_string(out.new_repetitions)
                    + " repetitions");
        return out;
    }

    auto construct_witness(const PrunedEnergyGraph & pg, const EdgeSubgraph & h, std::span<const OrderedEdge> order,
            const Reservoir & reservoir, int64_t t) -> WitnessGraph
    {
        if (t < 0)
            fail(ErrorKind::InvalidParams, "t must be non-negative");
        int r = pg.r();
        auto ledger = reveal_ledger(pg, h, order);
        if (ledger.sav < Rational(t))
            fail(ErrorKind::InsufficientSavings, "total savings " + to_string(ledger.sav.numerator()) + "/"
                    + to_string(ledger.sav.denominator()) + " is below t = " + to_string(t));

        // D' = S + D - t vertices come from the reservoir; note D' >= 0 since sav <= S + D
        int64_t extra = ledger.S + ledger.D - t;
        auto topped = apply_reservoir(pg, ledger.final_graph, reservoir, extra);

        int64_t m = static_cast<int64_t>(ledger.m());
        WitnessGraph out = std::move(topped);
        out.base_repetitions = edge_repetitions(pg.base(), h);
        out.new_repetitions = edge_repetitions(pg.base(), out.graph) - out.base_repetitions;
        out.vertex_budget = static_cast<int64_t>(h.vertices.size()) + r * m - t;
        out.guaranteed_repetitions = (r - 1) * m;
        out.reservoir_vertices = extra;

        if (! out.graph.contains(ledger.final_graph))
            fail(ErrorKind::InvariantViolated, "witness lost part of H u pi(T)");
        if (static_cast<int64_t>(out.graph.vertices.size()) > out.vertex_budget)
            fail(ErrorKind::InvariantViolated, "witness has " + to_string(out.graph.vertices.size())
                    + " vertices, budget " + to_string(out.vertex_budget));
        if (out.new_repetitions < out.guaranteed_repetitions)
            fail(ErrorKind::InvariantViolated, "witness has " + to_string(out.new_repetitions)
                    + " new repetitions, expected at least " + to_string(out.guaranteed_repetitions));
        return out;
    }
}
