#include "fixtures.hpp"

#include <colorenergy/cli.hpp>
#include <colorenergy/io.hpp>

#include <doctest.h>

#include <filesystem>
#include <sstream>

using namespace colorenergy;

namespace
{
    struct Run
    {
        int code;
        std::string out;
        std::string err;

        auto json() const -> Json { return Json::parse(out); }
    };

    auto run(std::vector<std::string> args) -> Run
    {
        std::ostringstream out, err;
        int code = run_cli(args, out, err);
        return {code, out.str(), err.str()};
    }

    struct TempDir
    {
        std::filesystem::path path;

        TempDir() : path(std::filesystem::temp_directory_path() / ("colorenergy_cli_" + std::to_string(::getpid())))
        {
            std::filesystem::create_directories(path);
        }

        ~TempDir() { std::filesystem::remove_all(path); }

        auto file(const std::string & name, const std::string & text = {}) const -> std::string
        {
            auto p = (path / name).string();
            if (! text.empty())
                write_text_atomic(p, text);
            return p;
        }
    };
}

TEST_SUITE("cli")
{
    TEST_CASE("verify a proper K5")
    {
        TempDir dir;
        auto in = dir.file("k5.json", dump_canonical(coloring_to_json(generate_coloring(5, RoundRobinScheme{}))));
        auto r = run({"verify", "--p", "3", "--q", "3", "--input", in});
        REQUIRE(r.code == 0);
        CHECK(r.json().at("verdict") == true);

        auto m = dir.file("mono.json", dump_canonical(coloring_to_json(fixtures::mono(4))));
        auto v = run({"verify", "--p", "4", "--q", "2", "-i", m});
        REQUIRE(v.code == 0);
        CHECK(v.json().at("verdict") == false);
        CHECK(v.json().at("violator") == Json::array({0, 1, 2, 3}));
    }

    TEST_CASE("energy of the K4 one-factorization")
    {
        TempDir dir;
        auto in = dir.file("k4.json", dump_canonical(coloring_to_json(fixtures::k4_matchings())));
        auto r = run({"energy", "--r", "2", "--input", in, "--materialize"});
        REQUIRE(r.code == 0);
        auto j = r.json();
        CHECK(j.at("paper_edge_statistic") == 12);
        CHECK(j.at("edge_count_exact") == 24);
        CHECK(j.at("holder_bound_float").get<double>() == doctest::Approx(3.0));
        CHECK(j.at("certificate_ok") == true);
    }

    TEST_CASE("gen is deterministic and feeds the other commands")
    {
        auto a = run({"--seed", "9", "gen", "--n", "12", "--scheme", "random", "--colors", "4"});
        auto b = run({"--seed", "9", "gen", "--n", "12", "--scheme", "random", "--colors", "4"});
        auto c = run({"--seed", "10", "gen", "--n", "12", "--scheme", "random", "--colors", "4"});
        REQUIRE(a.code == 0);
        CHECK(a.out == b.out);
        CHECK(a.out != c.out);
        CHECK(coloring_from_json(a.json()).n() == 12);

        TempDir dir;
        auto in = dir.file("g.json", a.out);
        auto p1 = run({"--seed", "3", "prune", "--r", "2", "-i", in});
        auto p2 = run({"--seed", "3", "prune", "--r", "2", "-i", in});
        REQUIRE(p1.code == 0);
        CHECK(p1.out == p2.out);
        CHECK(p1.json().at("properties_ok") == true);
    }

    TEST_CASE("planted witness through the command line")
    {
        TempDir dir;
        auto part = dir.file("part.json");
        auto g = run({"--seed", "5", "gen", "--n", "44", "--plant", "cycle_star:3,2", "--r", "2", "--partition-out", part});
        REQUIRE(g.code == 0);
        auto in = dir.file("planted.json", g.out);
        auto w = run({"--seed", "6", "witness", "--pipeline", "subkt", "--t", "3", "-i", in, "--partition", part});
        REQUIRE(w.code == 0);
        CHECK(w.json().at("status") == "found");
    }

    TEST_CASE("exact and exponents")
    {
        auto x = run({"exact", "--n", "5", "--p", "3", "--q", "3"});
        REQUIRE(x.code == 0);
        CHECK(x.json().at("f_value") == 5);

        auto e = run({"exponents", "--theorem", "theta", "--params", "r=2,a=3,b=2"});
        REQUIRE(e.code == 0);
        auto row = e.json().at("rows").at(0);
        CHECK(row.at("p") == 12);
        CHECK(row.at("q") == 61);
        CHECK(row.at("upper_exponent") == "5/3");

        auto csv = run({"--format", "csv", "exponents", "--theorem", "lll", "--params", "p=3..4,q=3"});
        REQUIRE(csv.code == 0);
        CHECK(std::count(csv.out.begin(), csv.out.end(), '\n') == 3);
    }

    TEST_CASE("errors are reported as json on stderr")
    {
        auto u = run({"frobnicate"});
        CHECK(u.code == 2);
        CHECK(u.out.empty());
        CHECK(Json::parse(u.err).at("error").contains("kind"));

        auto none = run({});
        CHECK(none.code == 2);
        CHECK(Json::parse(none.err).at("error").at("kind") == "UnknownCommand");

        auto missing = run({"verify", "--p", "3", "--q", "3", "-i", "/nonexistent/x.json"});
        CHECK(missing.code == 1);
        CHECK(Json::parse(missing.err).at("error").at("kind") == "IoError");

        auto cap = run({"exact", "--n", "9", "--p", "3", "--q", "3"});
        CHECK(cap.code == 1);
        CHECK(Json::parse(cap.err).at("error").at("kind") == "CapExceeded");
    }

    TEST_CASE("logged runs replay to identical output")
    {
        TempDir dir;
        auto log = dir.file("log.ndjson");
        auto out = dir.file("out.json");
        REQUIRE(run({"--seed", "4", "--log", log, "gen", "--n", "8", "--scheme", "random", "--colors", "3"}).code == 0);
        auto in = dir.file("in.json", run({"--seed", "4", "gen", "--n", "8", "--scheme", "random", "--colors", "3"}).out);
        REQUIRE(run({"--seed", "2", "--log", log, "-o", out, "prune", "--r", "2", "-i", in}).code == 0);
        CHECK(std::filesystem::exists(out));
        run({"--log", log, "exact", "--n", "99", "--p", "3", "--q", "3"});

        auto rep = run({"report", "--records", log, "--replay"});
        REQUIRE(rep.code == 0);
        auto j = rep.json();
        CHECK(j.at("records") == 3);
        CHECK(j.at("mismatches") == 0);
        CHECK(j.at("rows").at(0).at("replay_ok") == true);
        CHECK(j.at("rows").at(1).at("replay_ok") == true);
        CHECK(j.at("rows").at(2).at("status") == "error");
    }

    TEST_CASE("helpers")
    {
        CHECK(digest_hex("") == "cbf29ce484222325");
        Json rows = Json::array({{{"a", 1}, {"b", "x"}}, {{"a", 2}, {"b", "y,z"}}});
        auto csv = json_to_csv(rows);
        CHECK(csv.rfind("a,b\n", 0) == 0);
        CHECK(csv.find("\"y,z\"") != std::string::npos);
    }
}
