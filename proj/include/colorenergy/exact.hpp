#ifndef COLORENERGY_EXACT_HPP
#define COLORENERGY_EXACT_HPP

#include <colorenergy/colored_graph.hpp>
#include <colorenergy/energy.hpp>
#include <colorenergy/io.hpp>

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

namespace colorenergy
{
    struct ExactOptions
    {
        int cap_p3 = 7;
        int cap_other = 6;
    };

    struct ExactResult
    {
        int n = 0;
        int p = 0;
        std::int64_t q = 0;
        int f_value = 0;
        ColoredGraph witness_coloring;
        std::uint64_t nodes_explored = 0;
        /// Nodes spent refuting f_value - 1 colors (0 when f_value is 1).
        std::uint64_t refutation_nodes = 0;
    };

    struct ColoringSearch
    {
        std::optional<ColoredGraph> coloring;
        std::uint64_t nodes = 0;
    };

    /**
     * Backtracking over the edges of K_n in lexicographic order. A new color
     * may only be introduced as max-used + 1, and each p-subset is checked as
     * soon as its last pair is colored. An empty result means no (p,q)-coloring
     * with at most k colors exists.
     */
    auto search_coloring(int n, int p, std::int64_t q, int k) -> ColoringSearch;

    /// Iterative deepening on the number of colors. Throws CapExceeded above the caps.
    auto exact_f(int n, int p, std::int64_t q, const ExactOptions & options = {}) -> ExactResult;

    auto exact_to_json(const ExactResult & result) -> Json;
    auto exact_from_json(const Json & j) -> ExactResult;

    /// JSON table of exact values keyed by (n,p,q), witness colorings inline.
    class ExactCache
    {
    public:
        ExactCache() = default;

        static auto load(const std::string & path) -> ExactCache; // missing file gives an empty cache
        auto save(const std::string & path) const -> void;

        auto find(int n, int p, std::int64_t q) const -> const ExactResult *;
        auto get_or_compute(int n, int p, std::int64_t q, const ExactOptions & options = {}) -> const ExactResult &;
        auto size() const -> std::size_t { return _entries.size(); }
        auto to_json() const -> Json;

    private:
        std::map<std::tuple<int, int, std::int64_t>, ExactResult> _entries;
    };

    /// Exponent of the local lemma upper bound: (p - 2) / (C(p,2) - q + 1).
    auto lll_exponent(int p, std::int64_t q) -> Rational;

    struct ExponentEntry
    {
        std::string source;
        std::map<std::string, int> params;
        int p = 0;
        std::int64_t q = 0;
        std::optional<Rational> lower_exponent;
        std::optional<Rational> upper_exponent;
        std::string error; // non-empty when the parameters violate the row's constraints
    };

    /**
     * One row. Row ids and their parameters:
     *   lll(p,q), induction(k,m), ps(k,m), fps(k,m), subkt(t), theta(r,a,b),
     *   cycle(r,k), subktt(r,b,l).
     * Throws ConstraintViolated when the parameters are outside the theorem.
     */
    auto exponent_entry(const std::string & theorem, const std::map<std::string, int> & params) -> ExponentEntry;

    /// Rows for the cartesian product of the given ranges; constraint
    /// violations are reported in the row instead of thrown.
    auto exponent_table(const std::string & theorem, const std::map<std::string, std::vector<int>> & ranges)
        -> std::vector<ExponentEntry>;

    /// "r=2,a=3..5,b=2"
    auto parse_param_ranges(const std::string & text) -> std::map<std::string, std::vector<int>>;

    auto exponent_to_json(const ExponentEntry & entry) -> Json;
}

#endif
