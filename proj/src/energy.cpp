#include <colorenergy/energy.hpp>
#include <colorenergy/error.hpp>

#include <algorithm>
#include <cmath>
#include <string>

using std::size_t;
using std::to_string;
using std::uint64_t;
using std::vector;

namespace colorenergy
{
    namespace
    {
        auto checked_power(uint64_t base, int exponent, uint64_t cap) -> std::optional<uint64_t>
        {
            uint64_t result = 1;
            for (int i = 0; i < exponent; ++i) {
                if (base != 0 && result > cap / base)
                    return std::nullopt;
                result *= base;
            }
            return result;
        }
    }

    EnergyGraph::EnergyGraph(const ColoredGraph & base, int r, EnergyMode mode, const EnergyCaps & caps) :
        _base(std::make_shared<const ColoredGraph>(base)),
        _r(r),
        _mode(mode),
        _vertex_count(0)
    {
        if (r < 2)
            fail(ErrorKind::InvalidParams, "energy order r must be at least 2");

        auto vertices = checked_power(static_cast<uint64_t>(base.n()), r, ~uint64_t{0});
        if (! vertices)
            fail(ErrorKind::CapacityExceeded, "n^r overflows 64 bits; use implicit mode");
        _vertex_count = *vertices;
        if (mode == EnergyMode::Implicit)
            return;

        if (_vertex_count > caps.max_vertices)
            fail(ErrorKind::CapacityExceeded, "n^r = " + to_string(_vertex_count) + " tuples exceeds the cap of "
                    + to_string(caps.max_vertices) + "; use implicit mode");
        BigInt edge_total = edge_count_exact();
        if (edge_total > caps.max_edges)
            fail(ErrorKind::CapacityExceeded, "energy edge count " + edge_total.str() + " exceeds the cap of "
                    + to_string(caps.max_edges) + "; use implicit mode");

        _edges.reserve(static_cast<size_t>(edge_total));
        vector<Vertex> x(r), y(r);
        for (Color c = 0; c < base.num_colors(); ++c) {
            auto cls = base.color_class(c);
            auto m = cls.size();
            // oriented choices: coordinate 0 fixed to (u,v), others free in both
            // orientations; every unordered tuple pair appears exactly once.
            vector<size_t> choice(r, 0);
            size_t per_coordinate = 2 * m;
            while (true) {
                for (int i = 0; i < r; ++i) {
                    size_t idx = (i == 0) ? choice[i] : choice[i] / 2;
                    bool flip = (i != 0) && (choice[i] % 2 == 1);
                    const Edge & e = cls[idx];
                    x[i] = flip ? e.v : e.u;
                    y[i] = flip ? e.u : e.v;
                }
                auto a = encode(x), b = encode(y);
                _edges.push_back({std::min(a, b), std::max(a, b), c});

                int k = r - 1;
                while (k >= 0) {
                    size_t limit = (k == 0) ? m : per_coordinate;
                    if (++choice[k] < limit)
                        break;
                    choice[k] = 0;
                    --k;
                }
                if (k < 0)
                    break;
            }
        }
        std::sort(_edges.begin(), _edges.end());
    }

    auto EnergyGraph::encode(std::span<const Vertex> tuple) const -> uint64_t
    {
        if (static_cast<int>(tuple.size()) != _r)
            fail(ErrorKind::InvalidParams, "tuple length must equal r");
        uint64_t code = 0;
        for (Vertex v : tuple) {
            if (v < 0 || v >= _base->n())
                fail(ErrorKind::VertexOutOfRange, "tuple coordinate " + to_string(v) + " out of range");
            code = code * static_cast<uint64_t>(_base->n()) + static_cast<uint64_t>(v);
        }
        return code;
    }

    auto EnergyGraph::decode(uint64_t code) const -> Tuple
    {
        Tuple tuple(_r);
        for (int i = _r - 1; i >= 0; --i) {
            tuple[i] = static_cast<Vertex>(code % static_cast<uint64_t>(_base->n()));
            code /= static_cast<uint64_t>(_base->n());
        }
        return tuple;
    }

    auto EnergyGraph::adjacent(std::span<const Vertex> x, std::span<const Vertex> y) const -> std::optional<Color>
    {
        auto a = encode(x), b = encode(y);
        if (_mode == EnergyMode::Materialize) {
            EnergyEdge probe{std::min(a, b), std::max(a, b), 0};
            auto it = std::lower_bound(_edges.begin(), _edges.end(), probe);
            if (it != _edges.end() && it->a == probe.a && it->b == probe.b)
                return it->color;
            return std::nullopt;
        }

        std::optional<Color> common;
        for (int i = 0; i < _r; ++i) {
            if (x[i] == y[i])
                return std::nullopt;
            Color c = _base->color(x[i], y[i]);
            if (common && *common != c)
                return std::nullopt;
            common = c;
        }
        return common;
    }

    auto EnergyGraph::edges() const -> std::span<const EnergyEdge>
    {
        if (_mode != EnergyMode::Materialize)
            fail(ErrorKind::InvalidParams, "edge list is only available in materialized mode");
        return _edges;
    }

    auto EnergyGraph::edges_of_color(Color c) const -> BigInt
    {
        BigInt m = static_cast<uint64_t>(_base->color_class(c).size());
        BigInt result = 1;
        for (int i = 0; i < _r; ++i)
            result *= m;
        for (int i = 0; i < _r - 1; ++i)
            result *= 2;
        return result;
    }

    auto EnergyGraph::edge_count_exact() const -> BigInt
    {
        BigInt stat = paper_edge_statistic();
        for (int i = 0; i < _r - 1; ++i)
            stat *= 2;
        return stat;
    }

    auto EnergyGraph::paper_edge_statistic() const -> BigInt
    {
        return power_sum(*_base, _r);
    }

    auto build_energy_graph(const ColoredGraph & g, int r, EnergyMode mode, const EnergyCaps & caps) -> EnergyGraph
    {
        return EnergyGraph(g, r, mode, caps);
    }

    auto power_sum(const ColoredGraph & g, int r) -> BigInt
    {
        BigInt total = 0;
        for (auto m : g.class_sizes()) {
            BigInt term = 1;
            for (int i = 0; i < r; ++i)
                term *= m;
            total += term;
        }
        return total;
    }

    auto color_energy(const ColoredGraph & g) -> BigInt
    {
        return 4 * power_sum(g, 2);
    }

    auto holder_lower_bound(const ColoredGraph & g, int r) -> HolderBound
    {
        if (r < 2)
            fail(ErrorKind::InvalidParams, "Hölder bound needs r >= 2");
        HolderBound result;
        result.r = r;
        result.num_colors = g.num_colors();
        result.edges = g.num_edges();
        result.power_sum = power_sum(g, r);
        result.root_exponent = Rational(1, r - 1);

        result.rhs = 1;
        for (int i = 0; i < r; ++i)
            result.rhs *= result.edges;
        result.lhs = result.power_sum;
        for (int i = 0; i < r - 1; ++i)
            result.lhs *= g.num_colors();
        result.certificate_ok = result.lhs >= result.rhs;
        result.equality = result.lhs == result.rhs;

        if (result.power_sum > 0) {
            double ratio = result.rhs.convert_to<double>() / result.power_sum.convert_to<double>();
            result.bound = std::pow(ratio, 1.0 / (r - 1));
        }
        return result;
    }
}
