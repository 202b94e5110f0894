#include <colorenergy/exact.hpp>
#include <colorenergy/error.hpp>

#include <algorithm>
#include <filesystem>
#include <functional>
#include <sstream>

using std::int64_t;
using std::string;
using std::to_string;
using std::vector;

namespace colorenergy
{
    namespace
    {
        auto pair_index(int n, int i, int j) -> int
        {
            // pairs (a,b), a<b, in lexicographic order
            return i * n - i * (i + 1) / 2 + (j - i - 1);
        }

        auto for_each_subset(int n, int p, const std::function<void(const vector<int> &)> & visit) -> void
        {
            vector<int> s(p);
            for (int i = 0; i < p; ++i)
                s[i] = i;
            while (true) {
                visit(s);
                int i = p - 1;
                while (i >= 0 && s[i] == n - p + i)
                    --i;
                if (i < 0)
                    return;
                ++s[i];
                for (int j = i + 1; j < p; ++j)
                    s[j] = s[j - 1] + 1;
            }
        }

        class Search
        {
        public:
            Search(int n, int p, int64_t q, int k) : _n(n), _q(q), _k(k)
            {
                _m = static_cast<int>(choose2(n));
                _touching.resize(_m);
                for_each_subset(n, p, [&](const vector<int> & s) {
                    vector<int> edges;
                    for (int a = 0; a < p; ++a)
                        for (int b = a + 1; b < p; ++b)
                            edges.push_back(pair_index(n, s[a], s[b]));
                    std::sort(edges.begin(), edges.end());
                    int id = static_cast<int>(_subsets.size());
                    _subsets.push_back(std::move(edges));
                    for (int e : _subsets.back())
                        _touching[e].push_back(id);
                });
                _colors.assign(_m, -1);
            }

            auto run() -> bool { return extend(0, -1); }
            auto nodes() const -> std::uint64_t { return _nodes; }
            auto colors() const -> const vector<Color> & { return _colors; }

        private:
            auto feasible(int e) const -> bool
            {
                for (int id : _touching[e]) {
                    const auto & edges = _subsets[id];
                    int64_t pending = 0;
                    std::uint64_t seen = 0;
                    int64_t distinct = 0;
                    for (int x : edges) {
                        if (x > e) {
                            ++pending;
                            continue;
                        }
                        std::uint64_t bit = std::uint64_t{1} << _colors[x];
                        if (! (seen & bit)) {
                            seen |= bit;
                            ++distinct;
                        }
                    }
                    if (distinct + pending < _q)
                        return false;
                }
                return true;
            }

            auto extend(int e, int max_used) -> bool
            {
                if (e == _m)
                    return true;
                int top = std::min(max_used + 1, _k - 1);
                for (int c = 0; c <= top; ++c) {
                    ++_nodes;
                    _colors[e] = c;
                    if (feasible(e) && extend(e + 1, std::max(max_used, c)))
                        return true;
                }
                _colors[e] = -1;
                return false;
            }

            int _n;
            int64_t _q;
            int _k;
            int _m = 0;
            vector<vector<int>> _subsets;
            vector<vector<int>> _touching;
            vector<Color> _colors;
            std::uint64_t _nodes = 0;
        };

        auto check_caps(int n, int p, int64_t q, const ExactOptions & options) -> void
        {
            PQParams{p, q}.validate(n);
            int cap = p == 3 ? options.cap_p3 : options.cap_other;
            if (n > cap)
                fail(ErrorKind::CapExceeded, "n = " + to_string(n) + " exceeds the exact-search cap " + to_string(cap)
                        + " for p = " + to_string(p));
        }
    }

    auto search_coloring(int n, int p, int64_t q, int k) -> ColoringSearch
    {
        PQParams{p, q}.validate(n);
        if (k < 1 || k > 64)
            fail(ErrorKind::InvalidColorCount, "color budget must lie in [1, 64]");
        Search search(n, p, q, k);
        ColoringSearch out;
        if (search.run())
            out.coloring = ColoredGraph(n, search.colors());
        out.nodes = search.nodes();
        return out;
    }

    auto exact_f(int n, int p, int64_t q, const ExactOptions & options) -> ExactResult
    {
        check_caps(n, p, q, options);
        ExactResult result;
        result.n = n;
        result.p = p;
        result.q = q;
        for (int k = 1;; ++k) {
            auto found = search_coloring(n, p, q, k);
            result.nodes_explored += found.nodes;
            if (found.coloring) {
                result.f_value = k;
                result.witness_coloring = std::move(*found.coloring);
                return result;
            }
            result.refutation_nodes = found.nodes;
        }
    }

    auto exact_to_json(const ExactResult & result) -> Json
    {
        return Json{{"n", result.n}, {"p", result.p}, {"q", result.q}, {"f_value", result.f_value},
                {"witness_coloring", coloring_to_json(result.witness_coloring)},
                {"nodes_explored", result.nodes_explored}, {"refutation_nodes", result.refutation_nodes}};
    }

    auto exact_from_json(const Json & j) -> ExactResult
    {
        ExactResult result;
        try {
            result.n = j.at("n").get<int>();
            result.p = j.at("p").get<int>();
            result.q = j.at("q").get<int64_t>();
            result.f_value = j.at("f_value").get<int>();
            result.nodes_explored = j.value("nodes_explored", std::uint64_t{0});
            result.refutation_nodes = j.value("refutation_nodes", std::uint64_t{0});
        }
        catch (const Json::exception & e) {
            fail(ErrorKind::MalformedInput, string("bad exact entry: ") + e.what());
        }
        result.witness_coloring = coloring_from_json(j.at("witness_coloring"));
        if (result.witness_coloring.n() != result.n || result.witness_coloring.num_colors() != result.f_value)
            fail(ErrorKind::MalformedInput, "cached witness does not match its (n, f) entry");
        return result;
    }

    auto ExactCache::load(const string & path) -> ExactCache
    {
        ExactCache cache;
        if (! std::filesystem::exists(path))
            return cache;
        Json j;
        try {
            j = Json::parse(read_text_file(path));
        }
        catch (const Json::parse_error & e) {
            fail(ErrorKind::MalformedInput, string("invalid cache JSON: ") + e.what());
        }
        if (! j.contains("entries") || ! j["entries"].is_array())
            fail(ErrorKind::MalformedInput, "cache must hold an 'entries' array");
        for (auto & entry : j["entries"]) {
            auto result = exact_from_json(entry);
            cache._entries[{result.n, result.p, result.q}] = std::move(result);
        }
        return cache;
    }

    auto ExactCache::to_json() const -> Json
    {
        Json entries = Json::array();
        for (auto & [key, result] : _entries)
            entries.push_back(exact_to_json(result));
        return Json{{"entries", entries}};
    }

    auto ExactCache::save(const string & path) const -> void
    {
        write_text_atomic(path, dump_canonical(to_json()));
    }

    auto ExactCache::find(int n, int p, int64_t q) const -> const ExactResult *
    {
        auto it = _entries.find({n, p, q});
        return it == _entries.end() ? nullptr : &it->second;
    }

    auto ExactCache::get_or_compute(int n, int p, int64_t q, const ExactOptions & options) -> const ExactResult &
    {
        auto key = std::make_tuple(n, p, q);
        auto it = _entries.find(key);
        if (it == _entries.end())
            it = _entries.emplace(key, exact_f(n, p, q, options)).first;
        return it->second;
    }

    auto lll_exponent(int p, int64_t q) -> Rational
    {
        if (p < 3 || q < 1 || q > choose2(p))
            fail(ErrorKind::ConstraintViolated, "local lemma bound needs p >= 3 and 1 <= q <= C(p,2)");
        return Rational(p - 2, choose2(p) - q + 1);
    }

    namespace
    {
        auto need(const std::map<string, int> & params, const string & key) -> int
        {
            auto it = params.find(key);
            if (it == params.end())
                fail(ErrorKind::ConstraintViolated, "missing parameter '" + key + "'");
            return it->second;
        }

        auto require(bool ok, const string & message) -> void
        {
            if (! ok)
                fail(ErrorKind::ConstraintViolated, message);
        }

        auto finish_row(ExponentEntry & entry) -> void
        {
            require(entry.p >= 3 && entry.q >= 1 && entry.q <= choose2(entry.p),
                    "q = " + to_string(entry.q) + " is outside [1, C(p,2)] for p = " + to_string(entry.p));
            entry.upper_exponent = lll_exponent(entry.p, entry.q);
        }
    }

    auto exponent_entry(const string & theorem, const std::map<string, int> & params) -> ExponentEntry
    {
        ExponentEntry entry;
        entry.source = theorem;
        entry.params = params;
        if (theorem == "lll") {
            entry.p = need(params, "p");
            entry.q = need(params, "q");
        }
        else if (theorem == "induction" || theorem == "fps" || theorem == "ps") {
            int k = need(params, "k");
            int m = need(params, "m");
            require(m >= 1 && k >= m + 1, "needs m >= 1 and k >= m + 1");
            entry.p = k;
            if (theorem == "induction") {
                entry.q = choose2(k) - static_cast<int64_t>(m) * (k - m) - choose2(m) + m + 1;
                entry.lower_exponent = Rational(1, m);
            }
            else if (theorem == "fps") {
                entry.q = choose2(k) - static_cast<int64_t>(m) * (k - m) + 2;
                entry.lower_exponent = Rational(1, m);
            }
            else {
                entry.q = choose2(k) - static_cast<int64_t>(m) * (k / (m + 1)) + m + 1;
                entry.lower_exponent = Rational(m + 1, m);
            }
        }
        else if (theorem == "subkt") {
            int t = need(params, "t");
            require(t >= 3, "needs t >= 3");
            int64_t s = t + choose2(t);
            entry.p = static_cast<int>(2 * s);
            entry.q = choose2(2 * s) - 2 * choose2(t) + 1;
            entry.lower_exponent = Rational(2 * t - 2, 2 * t - 3);
        }
        else if (theorem == "theta" || theorem == "cycle") {
            int r = need(params, "r");
            int a = theorem == "theta" ? need(params, "a") : need(params, "k");
            int b = theorem == "theta" ? need(params, "b") : 2;
            require(r >= 2 && b >= 2, "needs r >= 2 and b >= 2");
            int l = 2 + b * (a - 1);
            entry.p = r * l;
            entry.q = choose2(r * l) - static_cast<int64_t>(r - 1) * a * b + 1;
            // the lower bound needs a > r; below that only the upper bound is defined
            if (a > r)
                entry.lower_exponent = Rational(r, r - 1) * Rational(a - 1, a);
            else
                require(theorem == "cycle" && a >= 2, "needs a > r");
        }
        else if (theorem == "subktt") {
            int r = need(params, "r");
            int b = need(params, "b");
            int l = need(params, "l");
            require(b >= 3 && l >= 2, "needs b >= 3 and l >= 2");
            require(r >= 2 && r <= 6 && 2 * r < 3 * l, "needs 2 <= r <= 6 and r < 3l/2");
            int s = 3 + b + 3 * (l - 1) * b;
            entry.p = r * s;
            entry.q = choose2(r * s) - 3LL * (r - 1) * b * l + 1;
            entry.lower_exponent = Rational(r, r - 1) * (Rational(1) - Rational(2, 3 * l));
        }
        else
            fail(ErrorKind::UnknownCommand, "unknown theorem id '" + theorem + "'");
        finish_row(entry);
        return entry;
    }

    auto exponent_table(const string & theorem, const std::map<string, vector<int>> & ranges)
        -> vector<ExponentEntry>
    {
        vector<ExponentEntry> rows;
        vector<std::pair<string, vector<int>>> axes(ranges.begin(), ranges.end());
        std::map<string, int> current;
        std::function<void(size_t)> walk = [&](size_t i) {
            if (i == axes.size()) {
                try {
                    rows.push_back(exponent_entry(theorem, current));
                }
                catch (const Error & e) {
                    if (e.kind() != ErrorKind::ConstraintViolated)
                        throw;
                    ExponentEntry bad;
                    bad.source = theorem;
                    bad.params = current;
                    bad.error = e.what();
                    rows.push_back(std::move(bad));
                }
                return;
            }
            for (int v : axes[i].second) {
                current[axes[i].first] = v;
                walk(i + 1);
            }
        };
        walk(0);
        return rows;
    }

    auto parse_param_ranges(const string & text) -> std::map<string, vector<int>>
    {
        std::map<string, vector<int>> out;
        std::stringstream items(text);
        string item;
        while (std::getline(items, item, ',')) {
            if (item.empty())
                continue;
            auto eq = item.find('=');
            if (eq == string::npos || eq == 0)
                fail(ErrorKind::MalformedInput, "parameter '" + item + "' is not key=value");
            string key = item.substr(0, eq);
            string value = item.substr(eq + 1);
            try {
                auto dots = value.find("..");
                int lo = std::stoi(value.substr(0, dots));
                int hi = dots == string::npos ? lo : std::stoi(value.substr(dots + 2));
                if (hi < lo || hi - lo > 1000)
                    fail(ErrorKind::MalformedInput, "bad range '" + value + "'");
                for (int v = lo; v <= hi; ++v)
                    out[key].push_back(v);
            }
            catch (const std::logic_error &) {
                fail(ErrorKind::MalformedInput, "parameter '" + item + "' is not an integer or range");
            }
        }
        return out;
    }

    auto exponent_to_json(const ExponentEntry & entry) -> Json
    {
        Json out{{"source", entry.source}, {"params", entry.params}};
        if (! entry.error.empty()) {
            out["error"] = {{"kind", "ConstraintViolated"}, {"message", entry.error}};
            return out;
        }
        out["p"] = entry.p;
        out["q"] = entry.q;
        out["lower_exponent"] = entry.lower_exponent ? Json(rational_text(*entry.lower_exponent)) : Json(nullptr);
        out["upper_exponent"] = entry.upper_exponent ? Json(rational_text(*entry.upper_exponent)) : Json(nullptr);
        return out;
    }
}
