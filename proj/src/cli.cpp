#include <colorenergy/cli.hpp>
#include <colorenergy/energy.hpp>
#include <colorenergy/error.hpp>
#include <colorenergy/exact.hpp>
#include <colorenergy/gen.hpp>
#include <colorenergy/plant.hpp>
#include <colorenergy/prune.hpp>
#include <colorenergy/reveal.hpp>
#include <colorenergy/rng.hpp>
#include <colorenergy/witness.hpp>

#include <CLI11.hpp>

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <ctime>
#include <fstream>
#include <functional>
#include <iomanip>
#include <ostream>
#include <sstream>

using std::int64_t;
using std::string;
using std::uint64_t;
using std::vector;

namespace colorenergy
{
    auto digest_hex(const string & bytes) -> string
    {
        char buffer[17];
        std::snprintf(buffer, sizeof buffer, "%016llx", static_cast<unsigned long long>(fnv1a64(bytes)));
        return buffer;
    }

    namespace
    {
        auto csv_cell(const Json & value) -> string
        {
            string text;
            if (value.is_string())
                text = value.get<string>();
            else if (value.is_null())
                text = "";
            else
                text = value.dump();
            if (text.find_first_of(",\"\n") == string::npos)
                return text;
            string quoted = "\"";
            for (char c : text) {
                if (c == '"')
                    quoted += '"';
                quoted += c;
            }
            return quoted + "\"";
        }

        auto now_text() -> string
        {
            auto t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
            std::tm tm{};
            gmtime_r(&t, &tm);
            std::ostringstream s;
            s << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
            return s.str();
        }
    }

    auto json_to_csv(const Json & j) -> string
    {
        vector<Json> rows;
        if (j.is_array())
            rows.assign(j.begin(), j.end());
        else
            rows.push_back(j);
        vector<string> header;
        for (auto & row : rows)
            if (row.is_object())
                for (auto & [key, value] : row.items())
                    if (std::find(header.begin(), header.end(), key) == header.end())
                        header.push_back(key);
        std::ostringstream out;
        for (size_t i = 0; i < header.size(); ++i)
            out << (i ? "," : "") << csv_cell(Json(header[i]));
        out << "\n";
        for (auto & row : rows) {
            for (size_t i = 0; i < header.size(); ++i) {
                out << (i ? "," : "");
                if (row.is_object() && row.contains(header[i]))
                    out << csv_cell(row[header[i]]);
            }
            out << "\n";
        }
        return out.str();
    }

    namespace
    {
        struct Globals
        {
            uint64_t seed = 0;
            string input;
            string output;
            string format = "json";
            string log;
            uint64_t budget = 10'000'000;
        };

        auto load_input(const Globals & g) -> ColoredGraph
        {
            if (g.input.empty())
                fail(ErrorKind::InvalidParams, "this command needs --input <coloring.json>");
            return parse_coloring(read_text_file(g.input));
        }

        auto load_partition(const string & path, int n) -> std::optional<Partition>
        {
            if (path.empty())
                return std::nullopt;
            Json j;
            try {
                j = Json::parse(read_text_file(path));
            }
            catch (const Json::parse_error & e) {
                fail(ErrorKind::MalformedInput, string("invalid partition JSON: ") + e.what());
            }
            return partition_from_json(j, n);
        }

        auto class_sizes_json(const ColoredGraph & g) -> Json
        {
            return Json(g.class_sizes());
        }

        /// Drops --log and --output so that a logged command line replays to stdout.
        auto replay_args(const vector<string> & args) -> vector<string>
        {
            vector<string> out;
            for (size_t i = 0; i < args.size(); ++i) {
                const string & a = args[i];
                if (a == "--log" || a == "--output" || a == "-o") {
                    ++i;
                    continue;
                }
                if (a.rfind("--log=", 0) == 0 || a.rfind("--output=", 0) == 0)
                    continue;
                out.push_back(a);
            }
            return out;
        }

        auto error_json(std::string_view kind, const string & message) -> string
        {
            return Json{{"error", {{"kind", string(kind)}, {"message", message}}}}.dump() + "\n";
        }
    }

    auto run_cli(const vector<string> & args, std::ostream & out, std::ostream & err) -> int
    {
        CLI::App app{"Color energy toolkit for generalized Ramsey colorings", "colorenergy"};
        app.require_subcommand(1);
        app.fallthrough();
        app.set_version_flag("--version", version_tag);

        Globals globals;
        std::optional<uint64_t> seed_flag;
        app.add_option("--seed", seed_flag, "Master seed (default: $CE_SEED, else 0)");
        app.add_option("--input,-i", globals.input, "Coloring JSON");
        app.add_option("--output,-o", globals.output, "Write output here (atomically) instead of stdout");
        app.add_option("--format", globals.format, "Output format")->check(CLI::IsMember({"json", "csv"}));
        app.add_option("--budget", globals.budget, "Node budget for structure searches");
        app.add_option("--log", globals.log, "Append an experiment record to this NDJSON file");

        std::function<Json()> handler;

        // verify
        auto * verify = app.add_subcommand("verify", "Check the (p,q) condition");
        int v_p = 3;
        int64_t v_q = 3;
        uint64_t v_samples = 0;
        verify->add_option("--p", v_p)->required();
        verify->add_option("--q", v_q)->required();
        verify->add_option("--samples", v_samples, "Sample this many p-subsets instead of checking all");
        verify->callback([&] {
            handler = [&] {
                auto g = load_input(globals);
                auto mode = v_samples ? VerifyMode::make_sampled(v_samples, derive_seed(globals.seed, "cli.verify"))
                                      : VerifyMode::make_exhaustive();
                auto verdict = is_pq_coloring(g, PQParams{v_p, v_q}, mode);
                return Json{{"p", v_p}, {"q", v_q}, {"n", g.n()}, {"num_colors", g.num_colors()},
                        {"verdict", verdict.holds}, {"exhaustive", verdict.exhaustive},
                        {"violator", verdict.violator ? Json(*verdict.violator) : Json(nullptr)},
                        {"subsets_checked", verdict.subsets_checked}};
            };
        });

        // gen
        auto * gen = app.add_subcommand("gen", "Generate a coloring, optionally with a planted pattern");
        int g_n = 8, g_colors = 2, g_r = 2, g_filler = 0;
        string g_scheme = "random", g_plant, g_partition_out;
        gen->add_option("--n", g_n)->required();
        gen->add_option("--scheme", g_scheme)->check(CLI::IsMember({"random", "roundrobin", "modular"}));
        gen->add_option("--colors", g_colors);
        gen->add_option("--plant", g_plant, "Pattern to plant r times, e.g. theta:3,3");
        gen->add_option("--r", g_r, "Number of planted copies");
        gen->add_option("--filler", g_filler, "Filler palette size for planted colorings");
        gen->add_option("--partition-out", g_partition_out, "Write the planting partition here");
        gen->callback([&] {
            handler = [&] {
                if (! g_plant.empty()) {
                    auto planted = plant_pattern(g_n, g_r, parse_pattern(g_plant),
                            PlantOptions{derive_seed(globals.seed, "cli.gen"), g_filler});
                    if (! g_partition_out.empty())
                        write_text_atomic(g_partition_out, dump_canonical(partition_to_json(planted.partition)));
                    return coloring_to_json(planted.coloring);
                }
                ColoringScheme scheme;
                if (g_scheme == "random")
                    scheme = RandomScheme{g_colors, derive_seed(globals.seed, "cli.gen")};
                else if (g_scheme == "roundrobin")
                    scheme = RoundRobinScheme{};
                else
                    scheme = ModularScheme{g_colors};
                return coloring_to_json(generate_coloring(g_n, scheme));
            };
        });

        // energy
        auto * energy = app.add_subcommand("energy", "Energy graph statistics and the Hölder bound");
        int e_r = 2;
        bool e_materialize = false;
        energy->add_option("--r", e_r);
        energy->add_flag("--materialize", e_materialize, "Also build the energy graph and count its edges");
        energy->callback([&] {
            handler = [&] {
                auto g = load_input(globals);
                auto bound = holder_lower_bound(g, e_r);
                auto eg = build_energy_graph(g, e_r, EnergyMode::Implicit);
                Json result{{"r", e_r}, {"num_colors", g.num_colors()}, {"class_sizes", class_sizes_json(g)},
                        {"paper_edge_statistic", bigint_json(bound.power_sum)},
                        {"edge_count_exact", bigint_json(eg.edge_count_exact())},
                        {"holder_bound_float", bound.bound}, {"certificate_ok", bound.certificate_ok},
                        {"certificate", {{"lhs", bigint_json(bound.lhs)}, {"rhs", bigint_json(bound.rhs)},
                                {"equality", bound.equality}}}};
                if (e_materialize) {
                    auto full = build_energy_graph(g, e_r, EnergyMode::Materialize);
                    result["materialized_edges"] = full.edges().size();
                }
                return result;
            };
        });

        // prune
        auto * prune = app.add_subcommand("prune", "Build the pruned energy graph");
        int p_r = 2;
        string p_partition;
        bool p_edges = false;
        prune->add_option("--r", p_r);
        prune->add_option("--partition", p_partition, "Partition JSON to use instead of a seeded one");
        prune->add_flag("--edges", p_edges, "Include the pruned edge list");
        prune->callback([&] {
            handler = [&] {
                auto g = load_input(globals);
                PruneOptions options;
                options.partition = load_partition(p_partition, g.n());
                PruneStats stats;
                auto pg = build_pruned(g, p_r, derive_seed(globals.seed, "cli.prune"), options, &stats);
                Json class_sizes = Json::array(), sides = Json::array();
                for (int i = 0; i < p_r; ++i) {
                    class_sizes.push_back(pg.partition().classes[i].size());
                    auto [a, b] = pg.partition().side_sizes(i);
                    sides.push_back({a, b});
                }
                Json result{{"seed", globals.seed}, {"r", p_r}, {"class_sizes", class_sizes},
                        {"bipartition_sizes", sides},
                        {"edges_before", {{"paper_statistic", bigint_json(stats.edges_before_paper)},
                                {"exact", bigint_json(stats.edges_before_exact)}}},
                        {"candidate_edges", stats.candidate_edges}, {"thinned_edges", stats.thinned_edges},
                        {"swept_edges", stats.swept_edges}, {"edges_after", stats.edges_after},
                        {"max_color_degree", stats.max_color_degree},
                        {"retention_fraction", stats.retention_fraction},
                        {"properties_ok", verify_pruned(pg).ok()}};
                if (p_edges)
                    result["pruned"] = pruned_to_json(pg, true);
                return result;
            };
        });

        // reveal
        auto * reveal = app.add_subcommand("reveal", "Run the revealing ledger on a pattern found in the pruned graph");
        int rv_r = 2;
        string rv_pattern = "path:4", rv_partition, rv_order = "greedy";
        reveal->add_option("--r", rv_r);
        reveal->add_option("--pattern", rv_pattern, "Pattern to reveal; H starts as the projection of its vertex 0");
        reveal->add_option("--partition", rv_partition);
        reveal->add_option("--order", rv_order)->check(CLI::IsMember({"greedy", "random"}));
        reveal->callback([&] {
            handler = [&] {
                auto g = load_input(globals);
                PruneOptions options;
                options.partition = load_partition(rv_partition, g.n());
                auto pg = build_pruned(g, rv_r, derive_seed(globals.seed, "cli.prune"), options);
                auto pattern = parse_pattern(rv_pattern);
                SearchOptions search_options;
                search_options.budget = globals.budget;
                auto search = find_subgraph(pg.host(), pattern, search_options);
                Json result{{"pattern", pattern.name()}, {"r", rv_r}, {"search_complete", search.complete},
                        {"nodes", search.nodes}};
                if (search.embeddings.empty()) {
                    result["found"] = false;
                    return result;
                }
                const auto & emb = search.embeddings.front();
                EdgeSubgraph h;
                add_projection(h, pg, static_cast<TupleId>(emb.map[0]));
                vector<TupleEdge> edges;
                for (auto [x, y] : pattern.graph.edges()) {
                    auto a = static_cast<TupleId>(emb.map[x]), b = static_cast<TupleId>(emb.map[y]);
                    edges.emplace_back(std::min(a, b), std::max(a, b));
                }
                vector<OrderedEdge> order;
                if (rv_order == "random") {
                    auto rng = make_rng(globals.seed, "cli.reveal.order");
                    order = random_compatible_order(pg, h, edges, rng);
                }
                else
                    order = generate_compatible_order(pg, h, edges);
                auto ledger = reveal_ledger(pg, h, order);
                Json embedding = Json::array();
                for (int v : emb.map)
                    embedding.push_back(pg.tuple(static_cast<TupleId>(v)));
                result["found"] = true;
                result["embedding"] = embedding;
                result["initial"] = subgraph_to_json(h);
                result["ledger"] = ledger_to_json(pg, ledger);
                return result;
            };
        });

        // witness
        auto * witness = app.add_subcommand("witness", "Extract a low-color clique witness");
        string w_pipeline = "theta", w_pattern = "kab_l:1,2,1", w_partition;
        int w_r = 2, w_t = 3, w_a = 3, w_b = 2, w_l = 2, w_k = 3, w_m = 1, w_a_side = 1;
        double w_gamma = 1.5;
        std::optional<int> w_multiplicity;
        size_t w_max_embeddings = 16;
        witness->add_option("--pipeline", w_pipeline)
                ->check(CLI::IsMember({"subkt", "theta", "subktt", "greedy", "incidence"}));
        witness->add_option("--r", w_r);
        witness->add_option("--t", w_t);
        witness->add_option("--a", w_a);
        witness->add_option("--b", w_b);
        witness->add_option("--l", w_l);
        witness->add_option("--k", w_k);
        witness->add_option("--m", w_m);
        witness->add_option("--gamma", w_gamma);
        witness->add_option("--pattern", w_pattern, "F for the incidence pipeline");
        witness->add_option("--a-side", w_a_side, "Side of F placed on the vertices of G");
        witness->add_option("--multiplicity", w_multiplicity, "Leaves, paths or pages in the searched structure");
        witness->add_option("--max-embeddings", w_max_embeddings);
        witness->add_option("--partition", w_partition);
        witness->callback([&] {
            handler = [&] {
                auto g = load_input(globals);
                PipelineParams params;
                params.multiplicity = w_multiplicity;
                params.budget = globals.budget;
                params.max_embeddings = w_max_embeddings;
                PipelineOutcome outcome;
                if (w_pipeline == "greedy")
                    outcome = greedy_low_color_clique(g, w_k, w_m);
                else if (w_pipeline == "incidence")
                    outcome = incidence_witness(g, parse_pattern(w_pattern), w_a_side, w_gamma, params);
                else {
                    PruneOptions options;
                    options.partition = load_partition(w_partition, g.n());
                    int r = w_pipeline == "subkt" ? 2 : w_r;
                    auto pg = build_pruned(g, r, derive_seed(globals.seed, "cli.prune"), options);
                    if (w_pipeline == "subkt")
                        outcome = extract_subKt(pg, w_t, params);
                    else if (w_pipeline == "theta")
                        outcome = extract_theta(pg, w_a, w_b, params);
                    else
                        outcome = extract_subKtt(pg, w_b, w_l, params);
                }
                auto result = outcome_to_json(outcome);
                result["pipeline"] = w_pipeline;
                return result;
            };
        });

        // exact
        auto * exact = app.add_subcommand("exact", "Exact f(n,p,q) by backtracking");
        int x_n = 4, x_p = 3;
        int64_t x_q = 3;
        string x_cache;
        exact->add_option("--n", x_n)->required();
        exact->add_option("--p", x_p)->required();
        exact->add_option("--q", x_q)->required();
        exact->add_option("--cache", x_cache, "JSON cache of exact values");
        exact->callback([&] {
            handler = [&] {
                if (x_cache.empty())
                    return exact_to_json(exact_f(x_n, x_p, x_q));
                auto cache = ExactCache::load(x_cache);
                auto before = cache.size();
                auto result = exact_to_json(cache.get_or_compute(x_n, x_p, x_q));
                if (cache.size() != before)
                    cache.save(x_cache);
                return result;
            };
        });

        // exponents
        auto * exponents = app.add_subcommand("exponents", "Exponent table for the bounds");
        string ex_theorem = "theta", ex_params;
        exponents->add_option("--theorem", ex_theorem)->required();
        exponents->add_option("--params", ex_params, "e.g. r=2,a=3..5,b=2");
        exponents->callback([&] {
            handler = [&] {
                Json rows = Json::array();
                for (auto & row : exponent_table(ex_theorem, parse_param_ranges(ex_params)))
                    rows.push_back(exponent_to_json(row));
                return Json{{"theorem", ex_theorem}, {"rows", rows}};
            };
        });

        // report
        auto * report = app.add_subcommand("report", "Summarize (and optionally replay) an experiment log");
        string rp_records;
        bool rp_replay = false;
        report->add_option("--records", rp_records, "NDJSON log written with --log")->required();
        report->add_flag("--replay", rp_replay, "Re-run each record and compare output digests");
        report->callback([&] {
            handler = [&] {
                std::istringstream lines(read_text_file(rp_records));
                string line;
                Json rows = Json::array();
                int64_t mismatches = 0;
                while (std::getline(lines, line)) {
                    if (line.empty())
                        continue;
                    Json record;
                    try {
                        record = Json::parse(line);
                    }
                    catch (const Json::parse_error & e) {
                        fail(ErrorKind::MalformedInput, string("bad log line: ") + e.what());
                    }
                    Json row{{"index", rows.size()}, {"command", record.value("command", "")},
                            {"seed", record.value("seed", uint64_t{0})}, {"status", record.value("status", "")},
                            {"input_digest", record.value("input_digest", "")},
                            {"output_digest", record.value("output_digest", "")}};
                    if (rp_replay && record.value("status", "") == "ok") {
                        std::ostringstream replay_out, replay_err;
                        auto replay = record.at("args").get<vector<string>>();
                        int code = run_cli(replay, replay_out, replay_err);
                        bool same = code == 0 && digest_hex(replay_out.str()) == row["output_digest"];
                        row["replay_ok"] = same;
                        if (! same)
                            ++mismatches;
                    }
                    rows.push_back(row);
                }
                return Json{{"records", rows.size()}, {"replayed", rp_replay}, {"mismatches", mismatches},
                        {"rows", rows}};
            };
        });

        vector<string> reversed(args.rbegin(), args.rend());
        try {
            app.parse(reversed);
        }
        catch (const CLI::CallForHelp &) {
            out << app.help();
            return 0;
        }
        catch (const CLI::CallForAllHelp &) {
            out << app.help("", CLI::AppFormatMode::All);
            return 0;
        }
        catch (const CLI::CallForVersion &) {
            out << version_tag << "\n";
            return 0;
        }
        catch (const CLI::ParseError & e) {
            err << error_json(e.get_name() == "RequiredError" && app.get_subcommands().empty() ? "UnknownCommand"
                                                                                               : "UsageError",
                    e.what());
            return 2;
        }

        if (seed_flag)
            globals.seed = *seed_flag;
        else if (const char * env = std::getenv("CE_SEED")) {
            try {
                globals.seed = std::stoull(env);
            }
            catch (const std::exception &) {
                err << error_json("InvalidParams", "CE_SEED is not an unsigned integer");
                return 2;
            }
        }

        string command = app.get_subcommands().front()->get_name();
        Json record{{"command", command}, {"args", replay_args(args)}, {"seed", globals.seed},
                {"version", version_tag}, {"started", now_text()}};
        int code = 0;
        try {
            record["input_digest"] = globals.input.empty() ? string() : digest_hex(read_text_file(globals.input));
            Json result = handler();
            string text;
            if (globals.format == "csv")
                text = json_to_csv(result.is_object() && result.contains("rows") ? result["rows"] : result);
            else
                text = dump_canonical(result);
            if (globals.output.empty())
                out << text;
            else
                write_text_atomic(globals.output, text);
            record["status"] = "ok";
            record["output_digest"] = digest_hex(text);
        }
        catch (const Error & e) {
            err << error_json(error_kind_name(e.kind()), e.what());
            record["status"] = "error";
            record["error"] = {{"kind", string(error_kind_name(e.kind()))}, {"message", e.what()}};
            code = 1;
        }
        catch (const std::exception & e) {
            err << error_json("Internal", e.what());
            record["status"] = "error";
            record["error"] = {{"kind", "Internal"}, {"message", e.what()}};
            code = 1;
        }

        if (! globals.log.empty()) {
            record["finished"] = now_text();
            std::ofstream log(globals.log, std::ios::app);
            if (! log) {
                err << error_json("IoError", "cannot append to log '" + globals.log + "'");
                return code ? code : 1;
            }
            log << record.dump() << "\n";
        }
        return code;
    }
}
