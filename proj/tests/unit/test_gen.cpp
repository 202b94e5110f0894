#include "fixtures.hpp"
#include "../oracles.hpp"

#include <colorenergy/error.hpp>

#include <doctest.h>

#include <algorithm>
#include <set>

using namespace colorenergy;

namespace
{
    auto cycle(int n) -> SimpleGraph
    {
        std::vector<std::pair<int, int>> e;
        for (int i = 0; i < n; ++i)
            e.emplace_back(i, (i + 1) % n);
        return SimpleGraph(n, e);
    }

    auto complete(int n) -> SimpleGraph
    {
        std::vector<std::pair<int, int>> e;
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j)
                e.emplace_back(i, j);
        return SimpleGraph(n, e);
    }

    // every injective map, checked edge by edge
    auto naive_count(const SimpleGraph & host, const PatternGraph & pattern) -> std::size_t
    {
        int k = pattern.num_vertices();
        std::vector<int> map(k, -1);
        std::vector<bool> used(host.size());
        std::size_t count = 0;
        auto rec = [&](auto & self, int i) -> void {
            if (i == k) {
                for (auto [a, b] : pattern.graph.edges())
                    if (! host.adjacent(map[a], map[b]))
                        return;
                ++count;
                return;
            }
            for (int v = 0; v < host.size(); ++v) {
                if (used[v])
                    continue;
                used[v] = true;
                map[i] = v;
                self(self, i + 1);
                used[v] = false;
            }
        };
        rec(rec, 0);
        return count;
    }

    auto all_maps() -> SearchOptions
    {
        SearchOptions o;
        o.limit = 1'000'000;
        o.distinct_images = false;
        return o;
    }
}

TEST_SUITE("gen")
{
    TEST_CASE("round robin is a proper one-factorization")
    {
        auto g4 = generate_coloring(4, RoundRobinScheme{});
        CHECK(g4.num_colors() == 3);
        for (Color c = 0; c < 3; ++c)
            CHECK(g4.color_class(c).size() == 2);
        for (int n = 2; n <= 11; ++n) {
            auto g = generate_coloring(n, RoundRobinScheme{});
            CHECK(is_proper(g));
            CHECK(g.num_colors() == (n % 2 == 0 ? n - 1 : n));
        }
        CHECK_THROWS_AS(generate_coloring(1, RoundRobinScheme{}), Error);
    }

    TEST_CASE("modular and random schemes")
    {
        auto g = generate_coloring(3, ModularScheme{3});
        CHECK(g.num_colors() == 3);
        CHECK(is_pq_coloring(g, {3, 3}).holds);

        for (std::uint64_t seed = 0; seed < 25; ++seed) {
            auto r = generate_coloring(6, RandomScheme{2, seed});
            CHECK(r.num_colors() <= 2);
            CHECK(! is_pq_coloring(r, {3, 2}).holds);
        }
        CHECK(generate_coloring(8, RandomScheme{5, 9}) == generate_coloring(8, RandomScheme{5, 9}));
        CHECK_THROWS_AS(generate_coloring(4, RandomScheme{0, 1}), Error);
        CHECK_THROWS_AS(generate_coloring(4, ModularScheme{7}), Error);
    }

    TEST_CASE("pattern shapes")
    {
        auto c6 = parse_pattern("ktplus:3");
        CHECK(c6.num_vertices() == 6);
        CHECK(c6.num_edges() == 6);
        int branch = 0;
        for (int v = 0; v < 6; ++v) {
            CHECK(c6.graph.degree(v) == 2);
            if (c6.roles[v] == VertexRole::Branch) {
                ++branch;
                for (int u : c6.graph.neighbours(v))
                    CHECK(c6.roles[u] == VertexRole::Subdivision);
            }
        }
        CHECK(branch == 3);

        auto theta = parse_pattern("theta:3,2");
        CHECK(theta.num_vertices() == 6);
        CHECK(theta.num_edges() == 6);

        auto kab = parse_pattern("kab_l:3,3,2");
        CHECK(kab.num_vertices() == 15);
        CHECK(kab.num_edges() == 18);
        CHECK(kab.path(0, 0).size() == 3);

        auto cs = parse_pattern("cycle_star:3,4");
        CHECK(cs.num_vertices() == 10);
        CHECK(cs.num_edges() == 10);
        CHECK(cs.leaves().size() == 4);

        CHECK(parse_pattern("path:4").num_edges() == 3);
    }

    TEST_CASE("bipartite patterns carry a proper 2-coloring")
    {
        for (auto text : {"ktplus:4", "theta:3,3", "kab_l:3,2,2", "cycle_star:2,3"}) {
            auto p = parse_pattern(text);
            REQUIRE(p.side.size() == static_cast<size_t>(p.num_vertices()));
            for (auto [a, b] : p.graph.edges())
                CHECK(p.side[a] != p.side[b]);
        }
    }

    TEST_CASE("pattern parameter errors")
    {
        CHECK_THROWS_AS(parse_pattern("ktplus:2"), Error);
        CHECK_THROWS_AS(parse_pattern("theta:1,2"), Error);
        CHECK_THROWS_AS(parse_pattern("kab_l:3,2,0"), Error);
        CHECK_THROWS_AS(parse_pattern("hexagon:3"), Error);
        CHECK_THROWS_AS(parse_pattern("theta:3"), Error);
    }

    TEST_CASE("C6 onto itself")
    {
        auto host = cycle(6);
        auto pattern = parse_pattern("theta:3,2");
        auto all = find_subgraph(host, pattern, all_maps());
        CHECK(all.embeddings.size() == 12);
        CHECK(all.complete);
        auto one = find_subgraph(host, pattern);
        CHECK(one.embeddings.size() == 1);
        SearchOptions images;
        images.limit = 100;
        CHECK(find_subgraph(host, pattern, images).embeddings.size() == 1);
    }

    TEST_CASE("paths in K4 and cycles in a star")
    {
        auto k4 = complete(4);
        auto res = find_subgraph(k4, parse_pattern("path:4"), all_maps());
        CHECK(res.embeddings.size() == 24);
        for (auto & e : res.embeddings)
            CHECK(is_embedding(k4, parse_pattern("path:4"), e));

        std::vector<std::pair<int, int>> star;
        for (int i = 1; i <= 5; ++i)
            star.emplace_back(0, i);
        auto none = find_subgraph(SimpleGraph(6, star), parse_pattern("theta:2,2"));
        CHECK(none.embeddings.empty());
        CHECK(none.complete);
        CHECK(! none.budget_exhausted);
    }

    TEST_CASE("matcher agrees with naive enumeration on small hosts")
    {
        std::mt19937_64 rng(77);
        const char * patterns[] = {"path:3", "path:4", "theta:2,2", "theta:3,2", "cycle_star:2,1"};
        for (int trial = 0; trial < 30; ++trial) {
            int n = 5 + static_cast<int>(rng() % 4);
            std::vector<std::pair<int, int>> e;
            for (int i = 0; i < n; ++i)
                for (int j = i + 1; j < n; ++j)
                    if (rng() % 100 < 55)
                        e.emplace_back(i, j);
            SimpleGraph host(n, e);
            for (auto text : patterns) {
                auto pattern = parse_pattern(text);
                auto res = find_subgraph(host, pattern, all_maps());
                CHECK(res.embeddings.size() == naive_count(host, pattern));
                std::set<std::vector<int>> maps;
                for (auto & emb : res.embeddings) {
                    CHECK(is_embedding(host, pattern, emb));
                    maps.insert(emb.map);
                }
                CHECK(maps.size() == res.embeddings.size());
            }
        }
    }

    TEST_CASE("image deduplication")
    {
        auto k4 = complete(4);
        SearchOptions o;
        o.limit = 1000;
        // 3 distinct 4-cycles in K4
        CHECK(find_subgraph(k4, parse_pattern("theta:2,2"), o).embeddings.size() == 3);
    }

    TEST_CASE("budget and filters")
    {
        auto k8 = complete(8);
        SearchOptions o;
        o.limit = 1'000'000;
        o.budget = 50;
        auto res = find_subgraph(k8, parse_pattern("path:6"), o);
        CHECK(res.budget_exhausted);
        CHECK(! res.complete);

        SearchOptions f;
        f.limit = 1000;
        f.distinct_images = false;
        f.allow = [](int pv, int hv) { return pv != 0 || hv == 3; };
        auto filtered = find_subgraph(k8, parse_pattern("path:2"), f);
        CHECK(filtered.embeddings.size() == 7);
        for (auto & e : filtered.embeddings)
            CHECK(e.map[0] == 3);
    }

    TEST_CASE("streaming visitor can stop early")
    {
        int seen = 0;
        SearchOptions o;
        o.limit = 1000;
        o.distinct_images = false;
        for_each_embedding(complete(5), parse_pattern("path:3"), o, [&](const Embedding &) { return ++seen < 4; });
        CHECK(seen == 4);
    }

    TEST_CASE("matching order starts with a highest-degree vertex")
    {
        auto p = parse_pattern("cycle_star:3,4");
        auto order = matching_order(p);
        CHECK(order.size() == static_cast<size_t>(p.num_vertices()));
        CHECK(p.graph.degree(order[0]) == 6);
    }
}
