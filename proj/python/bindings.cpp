// Thin pybind11 layer. Structured results cross the boundary as JSON text and
// are decoded on the Python side.
#include <colorenergy/cli.hpp>
#include <colorenergy/energy.hpp>
#include <colorenergy/error.hpp>
#include <colorenergy/exact.hpp>
#include <colorenergy/gen.hpp>
#include <colorenergy/io.hpp>
#include <colorenergy/prune.hpp>
#include <colorenergy/witness.hpp>

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

namespace py = pybind11;
using namespace colorenergy;

namespace
{
    auto text(const Json & j) -> std::string
    {
        return j.dump();
    }

    auto scheme_of(const std::string & name, int colors, std::uint64_t seed) -> ColoringScheme
    {
        if (name == "random")
            return RandomScheme{colors, seed};
        if (name == "modular")
            return ModularScheme{colors};
        if (name == "roundrobin")
            return RoundRobinScheme{};
        fail(ErrorKind::InvalidParams, "unknown scheme " + name);
    }
}

PYBIND11_MODULE(_colorenergy, m)
{
    m.doc() = "Colored complete graphs, color energy and low-color clique witnesses";
    m.attr("version") = version_tag;

    // the module attribute keeps the type alive
    static PyObject * error_type = py::exception<Error>(m, "Error").ptr();
    py::register_exception_translator([](std::exception_ptr p) {
        try {
            if (p)
                std::rethrow_exception(p);
        } catch (const Error & e) {
            PyErr_SetString(error_type, (std::string(error_kind_name(e.kind())) + ": " + e.what()).c_str());
        }
    });

    py::class_<ColoredGraph>(m, "ColoredGraph")
        .def(py::init([](int n, std::vector<std::int64_t> labels) { return ColoredGraph::canonical(n, labels); }),
                py::arg("n"), py::arg("labels"))
        .def_property_readonly("n", &ColoredGraph::n)
        .def_property_readonly("num_colors", &ColoredGraph::num_colors)
        .def_property_readonly("edge_colors", &ColoredGraph::edge_colors)
        .def("color", [](const ColoredGraph & g, Vertex a, Vertex b) {
            if (a < 0 || b < 0 || a >= g.n() || b >= g.n() || a == b)
                fail(ErrorKind::VertexOutOfRange, "not an edge of K_n");
            return g.color(a, b);
        })
        .def("class_sizes", &ColoredGraph::class_sizes)
        .def("to_json", [](const ColoredGraph & g) { return text(coloring_to_json(g)); })
        .def("__eq__", [](const ColoredGraph & a, const ColoredGraph & b) { return a == b; })
        .def("__repr__", [](const ColoredGraph & g) {
            return "ColoredGraph(n=" + std::to_string(g.n()) + ", colors=" + std::to_string(g.num_colors()) + ")";
        });

    m.def("coloring_from_json", &parse_coloring, py::arg("text"));
    m.def("generate_coloring", [](int n, const std::string & scheme, int colors, std::uint64_t seed) {
        return generate_coloring(n, scheme_of(scheme, colors, seed));
    }, py::arg("n"), py::arg("scheme") = "random", py::arg("colors") = 2, py::arg("seed") = 0);

    m.def("repetitions_of_subset", [](const ColoredGraph & g, std::vector<Vertex> s) {
        auto rc = repetitions_of_subset(g, s);
        return py::make_tuple(rc.distinct_colors, rc.repetitions);
    });
    m.def("is_pq_coloring", [](const ColoredGraph & g, int p, std::int64_t q, std::uint64_t samples, std::uint64_t seed) {
        auto mode = samples == 0 ? VerifyMode::make_exhaustive() : VerifyMode::make_sampled(samples, seed);
        auto v = is_pq_coloring(g, {p, q}, mode);
        return py::make_tuple(v.holds, v.violator ? py::cast(*v.violator) : py::none());
    }, py::arg("g"), py::arg("p"), py::arg("q"), py::arg("samples") = 0, py::arg("seed") = 0);
    m.def("max_color_degree", &max_color_degree);
    m.def("is_proper", &is_proper);
    m.def("properize", &properize);

    m.def("color_energy", [](const ColoredGraph & g) { return color_energy(g).str(); });
    m.def("holder_lower_bound", [](const ColoredGraph & g, int r) {
        auto b = holder_lower_bound(g, r);
        return text(Json{{"r", b.r}, {"num_colors", b.num_colors}, {"power_sum", b.power_sum.str()},
                {"bound", b.bound}, {"certificate_ok", b.certificate_ok}, {"equality", b.equality}});
    });

    py::class_<PrunedEnergyGraph>(m, "PrunedEnergyGraph")
        .def_property_readonly("r", &PrunedEnergyGraph::r)
        .def_property_readonly("num_edges", &PrunedEnergyGraph::num_edges)
        .def_property_readonly("edges", [](const PrunedEnergyGraph & pg) {
            return std::vector<TupleEdge>(pg.edges().begin(), pg.edges().end());
        })
        .def("tuple", &PrunedEnergyGraph::tuple)
        .def("verify", [](const PrunedEnergyGraph & pg) { return verify_pruned(pg).ok(); })
        .def("to_json", [](const PrunedEnergyGraph & pg, bool edges) { return text(pruned_to_json(pg, edges)); },
                py::arg("include_edges") = false);
    m.def("build_pruned", [](const ColoredGraph & g, int r, std::uint64_t seed) { return build_pruned(g, r, seed); },
            py::arg("g"), py::arg("r"), py::arg("seed") = 0);

    m.def("extract_subKt", [](const PrunedEnergyGraph & pg, int t) { return text(outcome_to_json(extract_subKt(pg, t))); });
    m.def("extract_theta", [](const PrunedEnergyGraph & pg, int a, int b) {
        return text(outcome_to_json(extract_theta(pg, a, b)));
    });
    m.def("greedy_low_color_clique", [](const ColoredGraph & g, int k, int mm) {
        return text(outcome_to_json(greedy_low_color_clique(g, k, mm)));
    });

    m.def("exact_f", [](int n, int p, std::int64_t q) { return text(exact_to_json(exact_f(n, p, q))); });
    m.def("exponent_entry", [](const std::string & theorem, const std::map<std::string, int> & params) {
        return text(exponent_to_json(exponent_entry(theorem, params)));
    });

    m.def("run_cli", [](const std::vector<std::string> & args) {
        std::ostringstream out, err;
        int code = run_cli(args, out, err);
        return py::make_tuple(code, out.str(), err.str());
    });
}
