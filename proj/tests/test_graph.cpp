#include <catch2/catch_amalgamated.hpp>

#include <sstream>

#include "helpers.hpp"

using namespace islabel;
using testutil::path_graph;

TEST_CASE("edge list ingestion normalizes input", "[graph]") {
    SECTION("plain undirected file") {
        std::istringstream in("0 1 1\n1 2 1\n");
        auto lg = load_edge_list(in, false);
        REQUIRE(lg.g.vertex_count() == 3);
        REQUIRE(lg.g.out[1].size() == 2);
        CHECK(lg.g.out[1][0].to == 0);
        CHECK(lg.g.out[1][0].w == 1);
        CHECK(lg.g.out[1][1].to == 2);
        CHECK(lg.g.out[1][1].w == 1);
    }
    SECTION("duplicate edges collapse to the minimum weight") {
        std::istringstream in("0 1 3\n0 1 2\n");
        auto lg = load_edge_list(in, false);
        REQUIRE(lg.g.out[0].size() == 1);
        CHECK(lg.g.out[0][0].w == 2);
        CHECK(lg.g.out[1][0].w == 2);
    }
    SECTION("self-loops introduce the vertex but no edge") {
        std::istringstream in("0 0 1\n");
        auto lg = load_edge_list(in, false);
        REQUIRE(lg.g.vertex_count() == 1);
        CHECK(lg.g.out[0].empty());
    }
    SECTION("comments, blanks, CRLF, default weight") {
        std::istringstream in("# comment\n\n7 9\r\n");
        auto lg = load_edge_list(in, false);
        REQUIRE(lg.g.vertex_count() == 2);
        CHECK(lg.ext_ids == std::vector<std::uint64_t>{7, 9});
        CHECK(lg.g.out[0][0].w == 1);
    }
    SECTION("external ids remap to a dense range") {
        std::istringstream in("100 5 2\n");
        auto lg = load_edge_list(in, false);
        CHECK(lg.ext_ids == std::vector<std::uint64_t>{5, 100});
        CHECK(lg.g.out[0][0].to == 1);
    }
    SECTION("rejects bad lines with line numbers") {
        std::istringstream bad_weight("0 1 0\n");
        CHECK_THROWS_WITH(load_edge_list(bad_weight, false),
                          Catch::Matchers::ContainsSubstring("line 1"));
        std::istringstream bad_token("0 1 1\nx y\n");
        CHECK_THROWS_WITH(load_edge_list(bad_token, false),
                          Catch::Matchers::ContainsSubstring("line 2"));
        std::istringstream negative("-1 2\n");
        CHECK_THROWS(load_edge_list(negative, false));
    }
}

TEST_CASE("ingestion round-trips through save_edge_list", "[graph]") {
    auto g = random_graph(60, 4.0, 7, false, 5);
    std::vector<std::uint64_t> ids(g.vertex_count());
    std::iota(ids.begin(), ids.end(), 10);  // non-identity external ids
    std::ostringstream out;
    save_edge_list(g, ids, out);
    std::istringstream in(out.str());
    auto lg = load_edge_list(in, false);
    CHECK(lg.g == g);
    CHECK(lg.ext_ids == ids);
}

TEST_CASE("undirected graphs stay symmetric", "[graph]") {
    auto g = random_graph(80, 5.0, 3, false, 4);
    for (VertexId u = 0; u < g.vertex_count(); ++u) {
        for (const Arc& a : g.out_arcs(u)) {
            const auto& back = g.out_arcs(a.to);
            auto it = std::find_if(back.begin(), back.end(),
                                   [&](const Arc& b) { return b.to == u; });
            REQUIRE(it != back.end());
            CHECK(it->w == a.w);
        }
    }
}

TEST_CASE("dijkstra oracle basics", "[graph]") {
    auto g = path_graph(3);
    CHECK(dijkstra_oracle_pair(g, 0, 2) == 2);
    CHECK(dijkstra_oracle_pair(g, 1, 1) == 0);

    Graph two(2);  // no edges
    CHECK(is_inf(dijkstra_oracle_pair(two, 0, 1)));
}

TEST_CASE("oracle satisfies metric properties", "[graph]") {
    auto g = random_graph(50, 4.0, 11, false, 6);
    auto d = testutil::all_pairs_oracle(g);
    for (VertexId u = 0; u < g.vertex_count(); ++u) {
        CHECK(d[u][u] == 0);
        for (VertexId v = 0; v < g.vertex_count(); ++v) {
            CHECK(d[u][v] == d[v][u]);
            for (VertexId w = 0; w < g.vertex_count(); ++w) {
                if (is_inf(d[u][w]) || is_inf(d[w][v])) continue;
                CHECK(d[u][v] <= d[u][w] + d[w][v]);
            }
        }
    }
}

TEST_CASE("degree", "[graph]") {
    auto g = path_graph(3);
    CHECK(degree(g, 1) == 2);
    Graph iso(1);
    CHECK(degree(iso, 0) == 0);
    Graph star(6);
    for (VertexId leaf = 1; leaf < 6; ++leaf) star.add_edge(0, leaf, 1);
    CHECK(degree(star, 0) == 5);
    CHECK_THROWS_AS(degree(g, 99), std::out_of_range);
}

TEST_CASE("bidirectional baseline agrees with the oracle", "[graph]") {
    auto g = random_graph(200, 4.0, 17, false, 8);
    auto pairs = random_pairs(g.vertex_count(), 200, 23);
    for (auto [s, t] : pairs)
        CHECK(bidirectional_dijkstra(g, s, t) == dijkstra_oracle_pair(g, s, t));
}

TEST_CASE("distance accumulator overflow is a hard error", "[graph]") {
    CHECK_THROWS_AS(dist_add(kInfDistance - 1, 2), std::overflow_error);
    CHECK(dist_add_sat(kInfDistance - 1, 2) == kInfDistance);
    CHECK(dist_add(kInfDistance, 5) == kInfDistance);
}
