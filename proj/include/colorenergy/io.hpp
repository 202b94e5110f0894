#ifndef COLORENERGY_IO_HPP
#define COLORENERGY_IO_HPP

#include <colorenergy/colored_graph.hpp>
#include <colorenergy/energy.hpp>
#include <colorenergy/prune.hpp>
#include <colorenergy/reveal.hpp>

#include <json.hpp>

#include <string>

namespace colorenergy
{
    using Json = nlohmann::json;

    /// {"n", "num_colors", "edges"} with edges listed for pairs i<j in lexicographic order.
    auto coloring_to_json(const ColoredGraph & g) -> Json;
    auto coloring_from_json(const Json & j) -> ColoredGraph;
    auto parse_coloring(const std::string & text) -> ColoredGraph;

    auto read_text_file(const std::string & path) -> std::string;

    /// Writes via a temporary file in the same directory and renames it into place.
    auto write_text_atomic(const std::string & path, const std::string & text) -> void;

    auto rational_text(const Rational & value) -> std::string;
    auto bigint_json(const BigInt & value) -> Json;

    auto subgraph_to_json(const EdgeSubgraph & h) -> Json;
    auto subgraph_from_json(const Json & j) -> EdgeSubgraph;

    auto tuple_to_json(const PrunedEnergyGraph & pg, TupleId id) -> Json;
    auto partition_to_json(const Partition & p) -> Json;
    auto partition_from_json(const Json & j, int n) -> Partition;
    auto pruned_to_json(const PrunedEnergyGraph & pg, bool include_edges) -> Json;
    auto ledger_to_json(const PrunedEnergyGraph & pg, const RevealLedger & ledger) -> Json;

    /// Canonical text: sorted keys (nlohmann objects are ordered maps), 2-space indent.
    auto dump_canonical(const Json & j) -> std::string;
}

#endif
