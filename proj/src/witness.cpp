#include <colorenergy/witness.hpp>
#include <colorenergy/error.hpp>

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <string>

using std::int64_t;
using std::size_t;
using std::string;
using std::to_string;
using std::vector;

namespace colorenergy
{
    namespace
    {
        auto clique_q(int p, int64_t repetitions) -> int64_t
        {
            return choose2(p) - repetitions + 1;
        }

        auto embedding_json(const PrunedEnergyGraph & pg, const Embedding & e) -> Json
        {
            Json out = Json::array();
            for (int v : e.map)
                out.push_back(pg.tuple(static_cast<TupleId>(v)));
            return out;
        }

        auto map_path(const Embedding & e, const vector<int> & pattern_path) -> vector<TupleId>
        {
            vector<TupleId> out;
            for (int v : pattern_path)
                out.push_back(static_cast<TupleId>(e.map[v]));
            return out;
        }

        auto append_path(vector<OrderedEdge> & order, const vector<TupleId> & path) -> void
        {
            auto part = canonical_path_order(path);
            order.insert(order.end(), part.begin(), part.end());
        }

        auto order_of(const vector<vector<TupleId>> & paths) -> vector<OrderedEdge>
        {
            vector<OrderedEdge> order;
            for (auto & p : paths)
                append_path(order, p);
            return order;
        }

        auto add_coordinates(std::set<Vertex> & into, const PrunedEnergyGraph & pg, TupleId x) -> void
        {
            for (int k = 0; k < pg.r(); ++k)
                into.insert(pg.coordinate(x, k));
        }

        auto shares_coordinate(const std::set<Vertex> & with, const PrunedEnergyGraph & pg, TupleId x) -> bool
        {
            for (int k = 0; k < pg.r(); ++k)
                if (with.contains(pg.coordinate(x, k)))
                    return true;
            return false;
        }

        auto tuples_json(const PrunedEnergyGraph & pg, const vector<TupleId> & ids) -> Json
        {
            Json out = Json::array();
            for (auto id : ids)
                out.push_back(pg.tuple(id));
            return out;
        }

        auto finish(const ColoredGraph & g, PipelineOutcome & outcome, string pipeline, const EdgeSubgraph & h, int p,
                int64_t q, Json provenance) -> void
        {
            vector<Vertex> vertices(h.vertices.begin(), h.vertices.end());
            provenance["subgraph"] = subgraph_to_json(h);
            provenance["subgraph_repetitions"] = edge_repetitions(g, h);
            auto report = make_witness_report(g, std::move(pipeline), std::move(vertices), p, q, std::move(provenance));
            auto verdict = validate_witness(g, report);
            if (! verdict.valid)
                fail(ErrorKind::InvariantViolated, "pipeline produced an invalid witness: " + verdict.reason);
            outcome.status = PipelineStatus::Found;
            outcome.report = std::move(report);
        }

        auto witness_json(const WitnessGraph & w) -> Json
        {
            return Json{{"vertex_budget", w.vertex_budget}, {"base_repetitions", w.base_repetitions},
                    {"new_repetitions", w.new_repetitions}, {"guaranteed_repetitions", w.guaranteed_repetitions},
                    {"reservoir_vertices", w.reservoir_vertices}};
        }

        auto reservoir_json(const PrunedEnergyGraph & pg, const Reservoir & r) -> Json
        {
            return Json{{"source", pg.tuple(r.source)}, {"members", tuples_json(pg, r.members)}};
        }
    }

    auto make_witness_report(const ColoredGraph & g, string pipeline, vector<Vertex> vertices, int p, int64_t q,
            Json provenance) -> WitnessReport
    {
        std::sort(vertices.begin(), vertices.end());
        vertices.erase(std::unique(vertices.begin(), vertices.end()), vertices.end());
        WitnessReport report;
        report.pipeline = std::move(pipeline);
        report.p_claimed = p;
        report.q_claimed = q;
        report.provenance = std::move(provenance);
        auto count = repetitions_of_subset(g, vertices);
        report.distinct_colors = count.distinct_colors;
        report.repetitions = count.repetitions;
        report.vertices = std::move(vertices);

        if (g.n() >= p && static_cast<int>(report.vertices.size()) <= p) {
            report.padded = report.vertices;
            for (Vertex v = 0; v < g.n() && static_cast<int>(report.padded.size()) < p; ++v)
                if (! std::binary_search(report.vertices.begin(), report.vertices.end(), v))
                    report.padded.push_back(v);
            std::sort(report.padded.begin(), report.padded.end());
            report.padded_distinct_colors = repetitions_of_subset(g, report.padded).distinct_colors;
        }
        return report;
    }

    auto validate_witness(const ColoredGraph & g, const WitnessReport & report) -> WitnessVerdict
    {
        const auto & w = report.vertices;
        if (w.size() < 2)
            return {false, "witness has fewer than two vertices"};
        for (size_t i = 0; i < w.size(); ++i) {
            if (w[i] < 0 || w[i] >= g.n())
                return {false, "vertex " + to_string(w[i]) + " out of range"};
            if (i > 0 && w[i] <= w[i - 1])
                return {false, "vertices must be strictly increasing"};
        }
        if (report.p_claimed < 2 || report.q_claimed < 1 || report.q_claimed > choose2(report.p_claimed))
            return {false, "claimed (p,q) is not a valid parameter pair"};
        if (static_cast<int>(w.size()) > report.p_claimed)
            return {false, "witness has " + to_string(w.size()) + " vertices, more than p = "
                    + to_string(report.p_claimed)};

        auto count = repetitions_of_subset(g, w);
        if (count.distinct_colors != report.distinct_colors)
            return {false, "recounted " + to_string(count.distinct_colors) + " distinct colors, report says "
                    + to_string(report.distinct_colors)};
        if (count.repetitions != report.repetitions)
            return {false, "recounted " + to_string(count.repetitions) + " repetitions, report says "
                    + to_string(report.repetitions)};
        if (count.distinct_colors >= report.q_claimed)
            return {false, "clique spans " + to_string(count.distinct_colors) + " colors, not fewer than q"};
        int64_t needed = choose2(report.p_claimed) - report.q_claimed + 1;
        if (count.repetitions < needed)
            return {false, "clique has " + to_string(count.repetitions) + " repetitions; a p-set containing it could"
                    " still reach q colors (needs " + to_string(needed) + ")"};

        if (! report.padded.empty()) {
            if (static_cast<int>(report.padded.size()) != report.p_claimed)
                return {false, "padded clique does not have p vertices"};
            if (! std::includes(report.padded.begin(), report.padded.end(), w.begin(), w.end()))
                return {false, "padded clique does not contain the witness"};
            auto padded = repetitions_of_subset(g, report.padded);
            if (padded.distinct_colors != report.padded_distinct_colors)
                return {false, "padded clique color count mismatch"};
            if (padded.distinct_colors >= report.q_claimed)
                return {false, "padded clique spans at least q colors"};
        }
        return {true, {}};
    }

    auto report_to_json(const WitnessReport & report) -> Json
    {
        return Json{{"pipeline", report.pipeline}, {"vertices", report.vertices}, {"p_claimed", report.p_claimed},
                {"q_claimed", report.q_claimed}, {"distinct_colors", report.distinct_colors},
                {"repetitions", report.repetitions}, {"padded", report.padded},
                {"padded_distinct_colors", report.padded_distinct_colors}, {"provenance", report.provenance}};
    }

    auto status_name(PipelineStatus status) -> std::string_view
    {
        switch (status) {
            case PipelineStatus::Found: return "found";
            case PipelineStatus::NotFound: return "not_found";
            case PipelineStatus::ReservoirDepleted: return "reservoir_depleted";
            case PipelineStatus::Inapplicable: return "inapplicable";
            case PipelineStatus::PaddingInfeasible: return "padding_infeasible";
        }
        return "unknown";
    }

    auto outcome_to_json(const PipelineOutcome & outcome) -> Json
    {
        Json out{{"status", string(status_name(outcome.status))}, {"search_complete", outcome.search_complete},
                {"nodes", outcome.nodes}, {"embeddings_tried", outcome.embeddings_tried}, {"detail", outcome.detail}};
        out["report"] = outcome.report ? report_to_json(*outcome.report) : Json(nullptr);
        return out;
    }

    auto default_theta_multiplicity(int r, int a, int b) -> int
    {
        return b == 2 ? 2 * a * (r + 1) : 2 * r * a * a * b;
    }

    auto default_subktt_multiplicity(int r, int b, int l) -> int
    {
        return 30 * r * b * l * l;
    }

    auto extract_subKt(const PrunedEnergyGraph & pg, int t, const PipelineParams & params) -> PipelineOutcome
    {
        if (pg.r() != 2)
            fail(ErrorKind::InvalidParams, "the subdivided clique pipeline works on the 2nd energy graph only");
        if (t < 3)
            fail(ErrorKind::InvalidParams, "subdivided clique needs t >= 3");
        auto pattern = make_pattern(PatternKind::SubdividedClique, std::vector<int>{t});
        SearchOptions options;
        options.limit = 1;
        options.budget = params.budget;
        auto search = find_subgraph(pg.host(), pattern, options);

        PipelineOutcome outcome;
        outcome.nodes = search.nodes;
        outcome.search_complete = search.complete;
        if (search.embeddings.empty()) {
            outcome.detail = search.budget_exhausted ? "search budget exhausted" : "no K_t^+ in the pruned graph";
            return outcome;
        }
        outcome.embeddings_tried = 1;
        const auto & emb = search.embeddings.front();
        EdgeSubgraph h;
        for (auto [x, y] : pattern.graph.edges())
            add_projection(h, pg, static_cast<TupleId>(emb.map[x]), static_cast<TupleId>(emb.map[y]));

        int64_t pairs = choose2(t);
        int s = t + static_cast<int>(pairs);
        if (edge_repetitions(pg.base(), h) < 2 * pairs)
            fail(ErrorKind::InvariantViolated, "projections of K_t^+ carry fewer than 2 C(t,2) repetitions");
        Json provenance{{"pattern", pattern.name()}, {"r", 2}, {"embedding", embedding_json(pg, emb)}};
        finish(pg.base(), outcome, "subkt", h, 2 * s, clique_q(2 * s, 2 * pairs), std::move(provenance));
        return outcome;
    }

    auto extract_theta(const PrunedEnergyGraph & pg, int a, int b, const PipelineParams & params) -> PipelineOutcome
    {
        int r = pg.r();
        if (! (a > r && r >= 2))
            fail(ErrorKind::InvalidParams, "theta pipeline needs a > r >= 2 (a=" + to_string(a) + ", r="
                    + to_string(r) + ")");
        if (b < 2)
            fail(ErrorKind::InvalidParams, "theta pipeline needs b >= 2");
        int multiplicity = params.multiplicity.value_or(default_theta_multiplicity(r, a, b));
        if (b >= 3 && multiplicity < b)
            fail(ErrorKind::InvalidParams, "theta multiplicity must be at least b");
        if (multiplicity < 0)
            fail(ErrorKind::InvalidParams, "multiplicity must be non-negative");

        int l = 2 + b * (a - 1);
        int p = r * l;
        int64_t q = clique_q(p, static_cast<int64_t>(r - 1) * a * b);

        PatternGraph pattern = b == 2 ? make_pattern(PatternKind::CycleWithStar, std::vector<int>{a, multiplicity})
                                      : make_pattern(PatternKind::Theta, std::vector<int>{a, multiplicity});
        SearchOptions options;
        options.limit = params.max_embeddings;
        options.budget = params.budget;

        PipelineOutcome outcome;
        string last_shortage;
        auto attempt = [&](const Embedding & emb) -> bool {
            ++outcome.embeddings_tried;
            EdgeSubgraph h;
            vector<vector<TupleId>> t_paths;
            Reservoir reservoir;
            int64_t t;
            Json provenance{{"pattern", pattern.name()}, {"r", r}, {"a", a}, {"b", b},
                    {"multiplicity", multiplicity}, {"embedding", embedding_json(pg, emb)}};

            if (b == 2) {
                TupleId hub = static_cast<TupleId>(emb.map[0]);
                TupleId u = static_cast<TupleId>(emb.map[1]);
                add_projection(h, pg, u, hub);
                // cycle from u around to the hub: 1, 2, ..., 2a-1, 0
                const auto & cycle = pattern.paths.front();
                vector<int> walk(cycle.begin() + 1, cycle.end());
                t_paths.push_back(map_path(emb, walk));
                t = r;
                reservoir.source = hub;
            }
            else {
                TupleId v0 = static_cast<TupleId>(emb.map[0]);
                TupleId va = static_cast<TupleId>(emb.map[1]);
                add_projection(h, pg, v0);
                add_projection(h, pg, va);
                std::set<Vertex> excluded;
                add_coordinates(excluded, pg, v0);
                add_coordinates(excluded, pg, va);
                vector<int> selected;
                size_t wanted = static_cast<size_t>(a * b + b);
                for (int i = 0; i < multiplicity && selected.size() < wanted; ++i) {
                    auto path = map_path(emb, pattern.paths[i]);
                    if (shares_coordinate(excluded, pg, path[1]))
                        continue;
                    selected.push_back(i);
                    for (auto x : path)
                        add_coordinates(excluded, pg, x);
                }
                provenance["selected_paths"] = selected;
                if (static_cast<int>(selected.size()) < b) {
                    last_shortage = "only " + to_string(selected.size()) + " paths with fresh second vertices";
                    return false;
                }
                for (int i = 0; i < b; ++i)
                    t_paths.push_back(map_path(emb, pattern.paths[selected[i]]));
                reservoir.source = v0;
                for (size_t i = b; i < selected.size(); ++i)
                    reservoir.members.push_back(static_cast<TupleId>(emb.map[pattern.paths[selected[i]][1]]));
                t = static_cast<int64_t>(r) * b;
            }

            auto order = order_of(t_paths);
            auto ledger = reveal_ledger(pg, h, order);
            if (b == 2 && ledger.S < r)
                fail(ErrorKind::InvariantViolated, "revealed cycle has S = " + to_string(ledger.S) + " < r");
            if (b >= 3 && ledger.sav < Rational(t))
                fail(ErrorKind::InvariantViolated, "revealed theta paths have total savings below rb");

            if (b == 2) {
                std::set<Vertex> used(ledger.final_graph.vertices.begin(), ledger.final_graph.vertices.end());
                for (int leaf : pattern.leaves()) {
                    TupleId x = static_cast<TupleId>(emb.map[leaf]);
                    if (! shares_coordinate(used, pg, x))
                        reservoir.members.push_back(x);
                }
            }

            int64_t extra = ledger.S + ledger.D - t;
            provenance["ledger"] = ledger_to_json(pg, ledger);
            provenance["t"] = t;
            provenance["reservoir"] = reservoir_json(pg, reservoir);
            if (extra > r * static_cast<int64_t>(reservoir.members.size())) {
                last_shortage = "reservoir of " + to_string(reservoir.members.size()) + " members cannot absorb "
                        + to_string(extra) + " vertices";
                return false;
            }
            auto witness = construct_witness(pg, h, order, reservoir, t);
            provenance["witness_graph"] = witness_json(witness);
            finish(pg.base(), outcome, "theta", witness.graph, p, q, std::move(provenance));
            return true;
        };

        auto search = for_each_embedding(pg.host(), pattern, options, [&](const Embedding & e) {
            return ! attempt(e);
        });
        outcome.nodes = search.nodes;
        outcome.search_complete = search.complete;
        if (outcome.found())
            return outcome;
        if (outcome.embeddings_tried > 0) {
            outcome.status = PipelineStatus::ReservoirDepleted;
            outcome.detail = last_shortage;
        }
        else
            outcome.detail = search.budget_exhausted ? "search budget exhausted" : "no " + pattern.name()
                    + " in the pruned graph";
        return outcome;
    }

    namespace
    {
        struct Page
        {
            vector<vector<TupleId>> paths; // P_{1}, P_{2}, P_{3} as tuple paths a_j -> b_i
            int index = 0;                 // page index within the embedding
        };

        auto check_page_lemmas(const PrunedEnergyGraph & pg, const EdgeSubgraph & h, const Page & page,
                const RevealLedger & page_ledger, int l) -> void
        {
            int r = pg.r();
            auto first = reveal_ledger(pg, h, canonical_path_order(page.paths[0]));
            auto rest = reveal_ledger(pg, first.final_graph, order_of({page.paths[1], page.paths[2]}));
            for (int k = 0; k < r; ++k) {
                if (first.Nk[k] == l && rest.Sk[k] < 2)
                    fail(ErrorKind::InvariantViolated, "page " + to_string(page.index) + ", coordinate "
                            + to_string(k + 1) + ": first path all new but later paths save fewer than 2");
                if (first.Sk[k] == 1 && first.Dk[k] <= 1 && page_ledger.Sk[k] < 2)
                    fail(ErrorKind::InvariantViolated, "page " + to_string(page.index) + ", coordinate "
                            + to_string(k + 1) + ": one savings and at most one delay, yet page saves fewer than 2");
            }
        }
    }

    auto extract_subKtt(const PrunedEnergyGraph & pg, int b, int l, const PipelineParams & params) -> PipelineOutcome
    {
        int r = pg.r();
        if (b < 3 || l < 2)
            fail(ErrorKind::InvalidParams, "subdivided bipartite pipeline needs b >= 3 and l >= 2");
        if (r < 2 || r > 6 || 2 * r >= 3 * l)
            fail(ErrorKind::InvalidParams, "subdivided bipartite pipeline needs 2 <= r <= 6 and r < 3l/2");
        int multiplicity = params.multiplicity.value_or(default_subktt_multiplicity(r, b, l));
        if (multiplicity < 3 * b)
            fail(ErrorKind::InvalidParams, "multiplicity must be at least 3b pages");

        int s = 3 + b + 3 * (l - 1) * b;
        int p = r * s;
        int64_t q = clique_q(p, 3LL * (r - 1) * b * l);
        auto pattern = make_pattern(PatternKind::SubdividedBipartite, std::vector<int>{3, multiplicity, l});

        SearchOptions options;
        options.limit = params.max_embeddings;
        options.budget = params.budget;
        PipelineOutcome outcome;
        string last_shortage;

        auto attempt = [&](const Embedding & emb) -> bool {
            ++outcome.embeddings_tried;
            vector<TupleId> a_side{static_cast<TupleId>(emb.map[0]), static_cast<TupleId>(emb.map[1]),
                    static_cast<TupleId>(emb.map[2])};
            std::set<Vertex> excluded;
            for (auto x : a_side)
                add_coordinates(excluded, pg, x);

            // pages whose x_{j,i} avoid the coordinates of the branch vertices and earlier pages
            vector<Page> pages;
            size_t wanted = static_cast<size_t>(3 * b * (1 + l));
            for (int i = 0; i < multiplicity && pages.size() < wanted; ++i) {
                Page page;
                page.index = i;
                for (int j = 0; j < 3; ++j)
                    page.paths.push_back(map_path(emb, pattern.path(j, i)));
                bool fresh = true;
                for (auto & path : page.paths)
                    fresh = fresh && ! shares_coordinate(excluded, pg, path[1]);
                if (! fresh)
                    continue;
                for (auto & path : page.paths)
                    for (auto x : path)
                        add_coordinates(excluded, pg, x);
                pages.push_back(std::move(page));
            }
            if (static_cast<int>(pages.size()) < 3 * b) {
                last_shortage = "only " + to_string(pages.size()) + " pages with fresh first vertices";
                return false;
            }

            EdgeSubgraph h0;
            for (auto x : a_side)
                add_projection(h0, pg, x);
            EdgeSubgraph revealed = h0;
            vector<OrderedEdge> order;
            Json chapters = Json::array();
            bool all_pages_full = true;

            for (int ci = 0; ci < b; ++ci) {
                Json chapter{{"chapter", ci + 1}};
                Json page_savings = Json::array();
                std::optional<int> chosen;
                for (int offset = 0; offset < 3; ++offset) {
                    const Page & page = pages[3 * ci + offset];
                    auto ledger = reveal_ledger(pg, revealed, order_of(page.paths));
                    check_page_lemmas(pg, revealed, page, ledger, l);
                    page_savings.push_back(rational_text(ledger.sav));
                    bool full = ledger.sav >= Rational(2 * r);
                    all_pages_full = all_pages_full && full;
                    if (full && ! chosen)
                        chosen = offset;
                }
                chapter["page_savings"] = page_savings;

                vector<vector<TupleId>> chapter_paths;
                if (chosen) {
                    chapter_paths = pages[3 * ci + *chosen].paths;
                    chapter["choice"] = "page";
                    chapter["page"] = pages[3 * ci + *chosen].index;
                }
                else {
                    // fall back to the first path of each page; each must save 2r/3
                    EdgeSubgraph partial = revealed;
                    Json fallback = Json::array();
                    for (int offset = 0; offset < 3; ++offset) {
                        const auto & path = pages[3 * ci + offset].paths[0];
                        auto ledger = reveal_ledger(pg, partial, canonical_path_order(path));
                        if (ledger.sav < Rational(2 * r, 3))
                            fail(ErrorKind::ChapterGuaranteeFailed, "chapter " + to_string(ci + 1) + ": first path of page "
                                    + to_string(pages[3 * ci + offset].index) + " saves only "
                                    + rational_text(ledger.sav) + " < 2r/3");
                        fallback.push_back(rational_text(ledger.sav));
                        partial = ledger.final_graph;
                        chapter_paths.push_back(path);
                    }
                    chapter["choice"] = "first_paths";
                    chapter["first_path_savings"] = fallback;
                }

                auto chapter_order = order_of(chapter_paths);
                auto chapter_ledger = reveal_ledger(pg, revealed, chapter_order);
                if (chapter_ledger.sav < Rational(2 * r))
                    fail(ErrorKind::ChapterGuaranteeFailed, "chapter " + to_string(ci + 1) + " saves only "
                            + rational_text(chapter_ledger.sav) + " < 2r");
                chapter["savings"] = rational_text(chapter_ledger.sav);
                chapters.push_back(chapter);
                revealed = chapter_ledger.final_graph;
                order.insert(order.end(), chapter_order.begin(), chapter_order.end());
            }

            int64_t t = 2LL * r * b;
            auto ledger = reveal_ledger(pg, h0, order);
            if (ledger.sav < Rational(t))
                fail(ErrorKind::InvariantViolated, "chapter savings do not add up to 2rb");

            Reservoir reservoir;
            reservoir.source = a_side[0];
            for (size_t i = static_cast<size_t>(3 * b); i < pages.size(); ++i)
                reservoir.members.push_back(pages[i].paths[0][1]);

            Json provenance{{"pattern", pattern.name()}, {"r", r}, {"b", b}, {"l", l},
                    {"multiplicity", multiplicity}, {"embedding", embedding_json(pg, emb)}, {"chapters", chapters},
                    {"all_pages_full", all_pages_full}, {"ledger", ledger_to_json(pg, ledger)}, {"t", t},
                    {"reservoir", reservoir_json(pg, reservoir)}};
            vector<int> page_indices;
            for (auto & page : pages)
                page_indices.push_back(page.index);
            provenance["selected_pages"] = page_indices;

            int64_t extra = ledger.S + ledger.D - t;
            if (extra > r * static_cast<int64_t>(reservoir.members.size())) {
                last_shortage = "reservoir of " + to_string(reservoir.members.size()) + " members cannot absorb "
                        + to_string(extra) + " vertices";
                return false;
            }
            auto witness = construct_witness(pg, h0, order, reservoir, t);
            provenance["witness_graph"] = witness_json(witness);
            finish(pg.base(), outcome, "subktt", witness.graph, p, q, std::move(provenance));
            return true;
        };

        auto search = for_each_embedding(pg.host(), pattern, options, [&](const Embedding & e) {
            return ! attempt(e);
        });
        outcome.nodes = search.nodes;
        outcome.search_complete = search.complete;
        if (outcome.found())
            return outcome;
        if (outcome.embeddings_tried > 0) {
            outcome.status = PipelineStatus::ReservoirDepleted;
            outcome.detail = last_shortage;
        }
        else
            outcome.detail = search.budget_exhausted ? "search budget exhausted" : "no " + pattern.name()
                    + " in the pruned graph";
        return outcome;
    }

    auto greedy_low_color_clique(const ColoredGraph & g, int k, int m) -> PipelineOutcome
    {
        int n = g.n();
        if (k < 2 || k > n)
            fail(ErrorKind::InvalidParams, "greedy needs 2 <= k <= n");
        if (m < 1 || m > k - 1)
            fail(ErrorKind::InvalidParams, "greedy needs 1 <= m <= k - 1");
        if (k == 2)
            fail(ErrorKind::InvalidParams, "k = 2 allows any single color, so there is nothing to violate");

        PipelineOutcome outcome;
        outcome.search_complete = true;
        vector<Vertex> survivors(n);
        for (Vertex v = 0; v < n; ++v)
            survivors[v] = v;
        vector<Vertex> picked;
        Json steps = Json::array();
        for (int i = 0; i < m; ++i) {
            if (survivors.empty()) {
                outcome.status = PipelineStatus::Inapplicable;
                outcome.detail = "no vertices left at step " + to_string(i + 1);
                return outcome;
            }
            Vertex v = survivors.front();
            survivors.erase(survivors.begin());
            picked.push_back(v);
            std::map<Color, int> counts;
            for (Vertex u : survivors)
                ++counts[g.color(v, u)];
            Color best = 0;
            int best_count = 0;
            for (auto [c, count] : counts)
                if (count > best_count) {
                    best = c;
                    best_count = count;
                }
            vector<Vertex> next;
            for (Vertex u : survivors)
                if (g.color(v, u) == best)
                    next.push_back(u);
            survivors = std::move(next);
            steps.push_back({{"vertex", v}, {"color", best}, {"survivors", survivors.size()}});
        }
        if (static_cast<int>(survivors.size()) < k - m) {
            outcome.status = PipelineStatus::Inapplicable;
            outcome.detail = to_string(survivors.size()) + " vertices survive, need " + to_string(k - m);
            return outcome;
        }
        vector<Vertex> vertices = picked;
        vertices.insert(vertices.end(), survivors.begin(), survivors.begin() + (k - m));
        int64_t q = choose2(k) - static_cast<int64_t>(m) * (k - m) - choose2(m) + m + 1;

        auto report = make_witness_report(g, "greedy", vertices, k, q,
                Json{{"k", k}, {"m", m}, {"steps", steps}});
        auto verdict = validate_witness(g, report);
        if (! verdict.valid)
            fail(ErrorKind::InvariantViolated, "greedy produced an invalid witness: " + verdict.reason);
        outcome.status = PipelineStatus::Found;
        outcome.report = std::move(report);
        return outcome;
    }

    auto incidence_witness(const ColoredGraph & g, const PatternGraph & f, int a_side, double gamma,
            const PipelineParams & params) -> PipelineOutcome
    {
        if (! (gamma > 1.0 && gamma < 2.0))
            fail(ErrorKind::InvalidParams, "gamma must lie strictly between 1 and 2");
        if (f.side.empty())
            fail(ErrorKind::InvalidParams, "F must be bipartite");
        if (f.num_edges() < 2)
            fail(ErrorKind::InvalidParams, "F needs at least two edges");
        if (a_side != 0 && a_side != 1)
            fail(ErrorKind::InvalidParams, "a_side must be 0 or 1");

        vector<int> a_vertices, b_vertices;
        for (int v = 0; v < f.num_vertices(); ++v)
            (f.side[v] == a_side ? a_vertices : b_vertices).push_back(v);
        int64_t f_edges = static_cast<int64_t>(f.num_edges());
        int64_t gain = f_edges - static_cast<int64_t>(b_vertices.size());
        if (gain < 1)
            fail(ErrorKind::InvalidParams, "this side choice gives |E(F)| - |B| < 1, so no repetitions are forced");
        int p = static_cast<int>(a_vertices.size() + f_edges);
        int64_t q = clique_q(p, gain);

        int n = g.n();
        double threshold = std::pow(static_cast<double>(n), (2.0 - gamma) / 2.0);
        vector<bool> kept(g.num_colors(), false);
        int kept_count = 0;
        for (Color c = 0; c < g.num_colors(); ++c)
            if (static_cast<double>(g.color_class(c).size()) >= threshold) {
                kept[c] = true;
                ++kept_count;
            }

        PipelineOutcome outcome;
        Json provenance{{"pattern", f.name()}, {"a_side", a_side}, {"gamma", gamma}, {"threshold", threshold},
                {"kept_colors", kept_count}};
        if (kept_count == 0) {
            outcome.search_complete = true;
            outcome.detail = "every color class is below the threshold";
            return outcome;
        }

        // incidence graph: vertex v of G is node v, color c is node n + c
        vector<std::pair<int, int>> edges;
        for (Vertex v = 0; v < n; ++v) {
            std::set<Color> seen;
            for (Vertex u = 0; u < n; ++u)
                if (u != v && kept[g.color(v, u)])
                    seen.insert(g.color(v, u));
            for (Color c : seen)
                edges.emplace_back(v, n + c);
        }
        SimpleGraph host(n + g.num_colors(), edges);
        SearchOptions options;
        options.limit = 1;
        options.budget = params.budget;
        options.allow = [&](int pattern_vertex, int host_vertex) {
            return (f.side[pattern_vertex] == a_side) == (host_vertex < n);
        };
        auto search = find_subgraph(host, f, options);
        outcome.nodes = search.nodes;
        outcome.search_complete = search.complete;
        if (search.embeddings.empty()) {
            outcome.detail = search.budget_exhausted ? "search budget exhausted" : "no copy of F in the incidence graph";
            return outcome;
        }
        outcome.embeddings_tried = 1;
        const auto & emb = search.embeddings.front();

        std::set<Vertex> a_images;
        for (int v : a_vertices)
            a_images.insert(emb.map[v]);
        std::set<Color> b_colors;
        for (int v : b_vertices)
            b_colors.insert(emb.map[v] - n);

        // stars S_v: one edge of each neighbouring color, avoiding reuse where possible
        EdgeSubgraph star_union;
        for (Vertex center : a_images)
            star_union.add_vertex(center);
        int64_t star_edges = 0;
        Json stars = Json::array();
        for (int v : a_vertices) {
            Vertex center = emb.map[v];
            Json star = Json::array();
            for (int w : f.graph.neighbours(v)) {
                Color c = emb.map[w] - n;
                std::optional<Vertex> fresh, unused_edge, any;
                for (Vertex u = 0; u < n; ++u) {
                    if (u == center || g.color(center, u) != c)
                        continue;
                    if (! any)
                        any = u;
                    if (! unused_edge && ! star_union.has_edge(make_edge(center, u)))
                        unused_edge = u;
                    if (! fresh && ! star_union.has_vertex(u)) {
                        fresh = u;
                        break;
                    }
                }
                Vertex pick = fresh ? *fresh : unused_edge ? *unused_edge : *any;
                star_union.add_edge(make_edge(center, pick));
                star.push_back({center, pick, c});
                ++star_edges;
            }
            stars.push_back(star);
        }
        int64_t overlap = star_edges - static_cast<int64_t>(star_union.edges.size());
        provenance["stars"] = stars;
        provenance["overlap"] = overlap;
        provenance["embedding"] = emb.map;

        Json padding = Json::array();
        for (int64_t i = 0; i < overlap; ++i) {
            std::optional<Edge> best;
            int best_new = 3;
            for (Color c : b_colors)
                for (const Edge & e : g.color_class(c)) {
                    if (star_union.has_edge(e))
                        continue;
                    int added = (star_union.has_vertex(e.u) ? 0 : 1) + (star_union.has_vertex(e.v) ? 0 : 1);
                    if (added < best_new || (added == best_new && best && e < *best)) {
                        best = e;
                        best_new = added;
                    }
                }
            if (! best) {
                outcome.status = PipelineStatus::PaddingInfeasible;
                outcome.detail = "no unused edge with a color from B remains";
                return outcome;
            }
            star_union.add_edge(*best);
            padding.push_back({best->u, best->v});
        }
        provenance["padding"] = padding;
        if (static_cast<int>(star_union.vertices.size()) > p) {
            outcome.status = PipelineStatus::PaddingInfeasible;
            outcome.detail = "padding pushed the witness past |A| + |E(F)| vertices";
            return outcome;
        }
        if (edge_repetitions(g, star_union) < gain)
            fail(ErrorKind::InvariantViolated, "star union carries fewer than |E(F)| - |B| repetitions");
        finish(g, outcome, "incidence", star_union, p, q, std::move(provenance));
        return outcome;
    }
}
