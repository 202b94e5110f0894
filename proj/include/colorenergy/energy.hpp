#ifndef COLORENERGY_ENERGY_HPP
#define COLORENERGY_ENERGY_HPP

#include <colorenergy/colored_graph.hpp>

#include <boost/multiprecision/cpp_int.hpp>
#include <boost/rational.hpp>

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <vector>

namespace colorenergy
{
    using BigInt = boost::multiprecision::cpp_int;
    using Rational = boost::rational<std::int64_t>;

    using Tuple = std::vector<Vertex>;

    enum class EnergyMode
    {
        Materialize,
        Implicit
    };

    struct EnergyCaps
    {
        std::uint64_t max_vertices = std::uint64_t{1} << 24;
        std::uint64_t max_edges = std::uint64_t{1} << 25;
    };

    /// Energy-graph edge between two tuples encoded base n (first coordinate most
    /// significant), stored with a < b.
    struct EnergyEdge
    {
        std::uint64_t a = 0;
        std::uint64_t b = 0;
        Color color = 0;

        auto operator<=>(const EnergyEdge &) const = default;
    };

    /**
     * r-th color energy graph on V^r: tuples x and y are adjacent iff
     * chi(x_i y_i) is one common color for every i. The implicit form keeps
     * only the color classes of the base coloring and answers queries on demand.
     */
    class EnergyGraph
    {
    public:
        EnergyGraph(const ColoredGraph & base, int r, EnergyMode mode, const EnergyCaps & caps);

        auto r() const -> int { return _r; }
        auto base() const -> const ColoredGraph & { return *_base; }
        auto mode() const -> EnergyMode { return _mode; }
        auto vertex_count() const -> std::uint64_t { return _vertex_count; }

        auto encode(std::span<const Vertex> tuple) const -> std::uint64_t;
        auto decode(std::uint64_t code) const -> Tuple;

        /// Common color of the edge between two tuples, if they are adjacent.
        auto adjacent(std::span<const Vertex> x, std::span<const Vertex> y) const -> std::optional<Color>;

        /// Materialized mode only.
        auto edges() const -> std::span<const EnergyEdge>;

        /// Exact number of edges of the given color: 2^{r-1} m_c^r.
        auto edges_of_color(Color c) const -> BigInt;

        /// Exact edge count, 2^{r-1} sum_c m_c^r.
        auto edge_count_exact() const -> BigInt;

        /// sum_c m_c^r, the orientation-fixed count used in the Hölder bound.
        auto paper_edge_statistic() const -> BigInt;

    private:
        std::shared_ptr<const ColoredGraph> _base;
        int _r;
        EnergyMode _mode;
        std::uint64_t _vertex_count;
        std::vector<EnergyEdge> _edges;
    };

    auto build_energy_graph(const ColoredGraph & g, int r, EnergyMode mode, const EnergyCaps & caps = {}) -> EnergyGraph;

    auto power_sum(const ColoredGraph & g, int r) -> BigInt;

    /// Ordered quadruples (v1,v2,v3,v4) with v1v2, v3v4 edges of equal color: 4 sum_c m_c^2.
    auto color_energy(const ColoredGraph & g) -> BigInt;

    struct HolderBound
    {
        int r = 2;
        int num_colors = 0;
        BigInt edges;            // |E|
        BigInt power_sum;        // sum_c m_c^r
        BigInt lhs;              // |C|^{r-1} sum_c m_c^r
        BigInt rhs;              // |E|^r
        Rational root_exponent;  // 1/(r-1)
        double bound = 0.0;      // (|E|^r / sum_c m_c^r)^{1/(r-1)}
        bool certificate_ok = false;
        bool equality = false;
    };

    /// |C| >= (|E|^r / sum m_c^r)^{1/(r-1)}, with the cleared-denominator integer
    /// inequality as the certificate.
    auto holder_lower_bound(const ColoredGraph & g, int r) -> HolderBound;
}

#endif
