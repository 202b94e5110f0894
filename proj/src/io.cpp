#include <colorenergy/io.hpp>
#include <colorenergy/error.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>
#include <sstream>

using std::int64_t;
using std::string;
using std::to_string;
using std::vector;

namespace colorenergy
{
    auto coloring_to_json(const ColoredGraph & g) -> Json
    {
        return Json{{"n", g.n()}, {"num_colors", g.num_colors()}, {"edges", g.edge_colors()}};
    }

    auto coloring_from_json(const Json & j) -> ColoredGraph
    {
        if (! j.is_object())
            fail(ErrorKind::MalformedInput, "coloring must be a JSON object");
        for (auto key : {"n", "num_colors", "edges"})
            if (! j.contains(key))
                fail(ErrorKind::MalformedInput, string("coloring is missing field '") + key + "'");
        if (! j["n"].is_number_integer() || ! j["num_colors"].is_number_integer() || ! j["edges"].is_array())
            fail(ErrorKind::MalformedInput, "coloring fields have the wrong types");

        int64_t n = j["n"].get<int64_t>();
        if (n < 1 || n > 100000)
            fail(ErrorKind::MalformedInput, "n out of range: " + to_string(n));
        vector<Color> colors;
        colors.reserve(j["edges"].size());
        for (auto & c : j["edges"]) {
            if (! c.is_number_integer())
                fail(ErrorKind::MalformedInput, "edge colors must be integers");
            colors.push_back(c.get<Color>());
        }
        ColoredGraph g(static_cast<int>(n), std::move(colors));
        if (g.num_colors() != j["num_colors"].get<int64_t>())
            fail(ErrorKind::MalformedInput, "num_colors is " + to_string(j["num_colors"].get<int64_t>())
                    + " but the edges use " + to_string(g.num_colors()) + " colors");
        return g;
    }

    auto parse_coloring(const string & text) -> ColoredGraph
    {
        Json j;
        try {
            j = Json::parse(text);
        }
        catch (const Json::parse_error & e) {
            fail(ErrorKind::MalformedInput, string("invalid JSON: ") + e.what());
        }
        return coloring_from_json(j);
    }

    auto read_text_file(const string & path) -> string
    {
        std::ifstream in(path, std::ios::binary);
        if (! in)
            fail(ErrorKind::IoError, "cannot open '" + path + "'");
        std::ostringstream buffer;
        buffer << in.rdbuf();
        return buffer.str();
    }

    auto write_text_atomic(const string & path, const string & text) -> void
    {
        namespace fs = std::filesystem;
        fs::path target(path);
        fs::path temp = target;
        temp += ".tmp";
        {
            std::ofstream out(temp, std::ios::binary | std::ios::trunc);
            if (! out)
                fail(ErrorKind::IoError, "cannot write '" + temp.string() + "'");
            out << text;
            if (! out)
                fail(ErrorKind::IoError, "write to '" + temp.string() + "' failed");
        }
        std::error_code ec;
        fs::rename(temp, target, ec);
        if (ec)
            fail(ErrorKind::IoError, "cannot rename into '" + path + "': " + ec.message());
    }

    auto rational_text(const Rational & value) -> string
    {
        return to_string(value.numerator()) + "/" + to_string(value.denominator());
    }

    auto bigint_json(const BigInt & value) -> Json
    {
        if (value >= std::numeric_limits<int64_t>::min() && value <= std::numeric_limits<int64_t>::max())
            return Json(value.convert_to<int64_t>());
        return Json(value.str());
    }

    auto subgraph_to_json(const EdgeSubgraph & h) -> Json
    {
        Json edges = Json::array();
        for (auto & e : h.edges)
            edges.push_back({e.u, e.v});
        return Json{{"vertices", h.vertices}, {"edges", edges}};
    }

    auto subgraph_from_json(const Json & j) -> EdgeSubgraph
    {
        EdgeSubgraph h;
        try {
            if (j.contains("vertices"))
                for (auto & v : j.at("vertices"))
                    h.add_vertex(v.get<Vertex>());
            if (j.contains("edges"))
                for (auto & e : j.at("edges")) {
                    if (! e.is_array() || e.size() != 2)
                        fail(ErrorKind::MalformedInput, "subgraph edges must be pairs");
                    h.add_edge(make_edge(e[0].get<Vertex>(), e[1].get<Vertex>()));
                }
        }
        catch (const Json::exception & e) {
            fail(ErrorKind::MalformedInput, string("bad subgraph: ") + e.what());
        }
        return h;
    }

    auto tuple_to_json(const PrunedEnergyGraph & pg, TupleId id) -> Json
    {
        return Json(pg.tuple(id));
    }

    auto partition_to_json(const Partition & p) -> Json
    {
        Json classes = Json::array();
        for (int i = 0; i < p.r; ++i) {
            vector<Vertex> primed, double_primed;
            for (Vertex v : p.classes[i])
                (p.side_of[v] == 0 ? primed : double_primed).push_back(v);
            classes.push_back({{"primed", primed}, {"double_primed", double_primed}});
        }
        return Json{{"r", p.r}, {"classes", classes}};
    }

    auto partition_from_json(const Json & j, int n) -> Partition
    {
        vector<int> part_of(n, -1), side_of(n, 0);
        int r = 0;
        try {
            r = j.at("r").get<int>();
            const auto & classes = j.at("classes");
            if (! classes.is_array() || static_cast<int>(classes.size()) != r)
                fail(ErrorKind::MalformedInput, "partition must list r classes");
            for (int i = 0; i < r; ++i)
                for (int side = 0; side < 2; ++side)
                    for (auto & v : classes[i].at(side == 0 ? "primed" : "double_primed")) {
                        auto x = v.get<Vertex>();
                        if (x < 0 || x >= n || part_of[x] != -1)
                            fail(ErrorKind::MalformedInput, "partition vertex " + to_string(x)
                                    + " is out of range or repeated");
                        part_of[x] = i;
                        side_of[x] = side;
                    }
        }
        catch (const Json::exception & e) {
            fail(ErrorKind::MalformedInput, string("bad partition: ") + e.what());
        }
        for (Vertex v = 0; v < n; ++v)
            if (part_of[v] == -1)
                fail(ErrorKind::MalformedInput, "partition misses vertex " + to_string(v));
        return Partition::from_assignment(r, std::move(part_of), std::move(side_of));
    }

    auto pruned_to_json(const PrunedEnergyGraph & pg, bool include_edges) -> Json
    {
        Json out{{"r", pg.r()}, {"seed", pg.seed()}, {"partition", partition_to_json(pg.partition())},
                {"vertex_count", pg.vertex_count()}, {"num_edges", pg.num_edges()}};
        if (include_edges) {
            Json edges = Json::array();
            for (auto [a, b] : pg.edges())
                edges.push_back({pg.tuple(a), pg.tuple(b)});
            out["edges"] = edges;
        }
        return out;
    }

    auto ledger_to_json(const PrunedEnergyGraph & pg, const RevealLedger & ledger) -> Json
    {
        Json steps = Json::array();
        for (size_t i = 0; i < ledger.steps.size(); ++i) {
            auto & s = ledger.steps[i];
            string flags;
            for (auto o : s.per_coordinate)
                flags += outcome_letter(o);
            steps.push_back({{"i", i + 1}, {"designated_endpoint", pg.tuple(s.edge.from)},
                    {"other_endpoint", pg.tuple(s.edge.to)}, {"color", s.color}, {"per_coordinate", flags},
                    {"n", s.n}, {"s", s.s}, {"d", s.d}});
        }
        return Json{{"r", ledger.r}, {"m", ledger.m()}, {"steps", steps}, {"N", ledger.N}, {"S", ledger.S},
                {"D", ledger.D}, {"N_k", ledger.Nk}, {"S_k", ledger.Sk}, {"D_k", ledger.Dk}, {"d", ledger.d},
                {"sav", rational_text(ledger.sav)}, {"initial_vertices", ledger.initial.vertices.size()},
                {"final_vertices", ledger.final_graph.vertices.size()},
                {"initial_repetitions", ledger.initial_repetitions},
                {"final_repetitions", ledger.final_repetitions}};
    }

    auto dump_canonical(const Json & j) -> string
    {
        return j.dump(2) + "\n";
    }
}
