#include <catch2/catch_amalgamated.hpp>

#include "helpers.hpp"

using namespace islabel;

namespace {

Graph directed_path(std::size_t n) {
    Graph g(n, true);
    for (VertexId v = 0; v + 1 < n; ++v) g.add_edge(v, v + 1, 1);
    return g;
}

Graph symmetrized(const Graph& d) {
    Graph g(d.vertex_count(), false);
    for (VertexId u = 0; u < d.vertex_count(); ++u)
        for (const Arc& a : d.out[u]) g.add_edge(u, a.to, a.w);
    return g;
}

}  // namespace

TEST_CASE("directed contraction creates one-way shortcuts only", "[directed]") {
    auto lg = as_level_graph(directed_path(3));
    auto next = contract_level(lg, testutil::make_level(lg, {1}, 1));
    REQUIRE(next.g.out[0].size() == 1);
    CHECK(next.g.out[0][0].to == 2);
    CHECK(next.g.out[0][0].w == 2);
    CHECK(next.g.out[0][0].mid == 1);
    CHECK(next.g.out[2].empty());
    CHECK(dijkstra_oracle_pair(lg.g, 0, 2) == 2);
    CHECK(is_inf(dijkstra_oracle_pair(lg.g, 2, 0)));
}

TEST_CASE("out- and in-labels follow arc direction", "[directed]") {
    Graph g(2, true);
    g.add_edge(0, 1, 1);  // single arc 0 -> 1
    BuildOptions opt;
    opt.directed = true;
    opt.sigma = 1.0;
    auto idx = build_index(g, opt);
    bool out_has = false, in_has = false;
    for (const auto& e : idx.label_of(0))
        if (e.anc == 1) out_has = true;
    for (const auto& e : idx.in_label_of(0))
        if (e.anc == 1) in_has = true;
    if (idx.level_of[0] < idx.k) {
        CHECK(out_has);
        CHECK_FALSE(in_has);
    }
    CHECK(distance(idx, 0, 1) == 1);
    CHECK(is_inf(distance(idx, 1, 0)));
}

TEST_CASE("directed distances equal the directed oracle", "[directed]") {
    SECTION("hand case") {
        BuildOptions opt;
        opt.directed = true;
        auto idx = build_index(directed_path(3), opt);
        CHECK(distance(idx, 0, 2) == 2);
        CHECK(is_inf(distance(idx, 2, 0)));
        CHECK(distance(idx, 1, 1) == 0);
    }
    SECTION("random sweep") {
        for (std::uint64_t seed : {91, 92}) {
            auto g = random_graph(300, 4.0, seed, true, 5);
            BuildOptions opt;
            opt.directed = true;
            auto idx = build_index(g, opt);
            for (auto [s, t] : random_pairs(g.vertex_count(), 300, seed + 5)) {
                CAPTURE(seed, s, t);
                REQUIRE(distance(idx, s, t) == dijkstra_oracle_pair(g, s, t));
            }
        }
    }
}

TEST_CASE("symmetric digraph matches the undirected engine", "[directed]") {
    auto d = random_graph(150, 4.0, 13, true, 4);
    // add every arc's reverse
    Graph sym_d(d.vertex_count(), true);
    for (VertexId u = 0; u < d.vertex_count(); ++u)
        for (const Arc& a : d.out[u]) {
            sym_d.add_edge(u, a.to, a.w);
            sym_d.add_edge(a.to, u, a.w);
        }
    BuildOptions opt;
    opt.directed = true;
    auto didx = build_index(sym_d, opt);
    auto uidx = build_index(symmetrized(d), BuildOptions{});
    for (auto [s, t] : random_pairs(d.vertex_count(), 200, 3))
        CHECK(distance(didx, s, t) == distance(uidx, s, t));
}

TEST_CASE("out-labels on g equal in-labels on the reversed g", "[directed]") {
    auto g = random_graph(120, 3.5, 29, true, 3);
    auto rev = g.reversed();
    BuildOptions opt;
    opt.directed = true;
    auto a = build_index(g, opt);
    auto b = build_index(rev, opt);
    REQUIRE(a.k == b.k);
    for (VertexId v = 0; v < g.vertex_count(); ++v) {
        auto oa = a.label_of(v);
        auto ib = b.in_label_of(v);
        REQUIRE(oa.size() == ib.size());
        for (std::size_t i = 0; i < oa.size(); ++i) {
            CHECK(oa[i].anc == ib[i].anc);
            CHECK(oa[i].d == ib[i].d);
        }
    }
}

TEST_CASE("directed paths are arc-valid", "[directed]") {
    auto g = random_graph(200, 4.0, 37, true, 4);
    BuildOptions opt;
    opt.directed = true;
    auto idx = build_index(g, opt);
    std::size_t checked = 0;
    for (auto [s, t] : random_pairs(g.vertex_count(), 300, 8)) {
        Distance d = dijkstra_oracle_pair(g, s, t);
        if (is_inf(d)) continue;
        auto p = shortest_path(idx, s, t);
        CAPTURE(s, t);
        REQUIRE(testutil::path_is_valid(g, p, d));
        ++checked;
    }
    CHECK(checked > 30);
}

TEST_CASE("reachability falls out as distance < INF", "[directed]") {
    auto g = directed_path(4);
    BuildOptions opt;
    opt.directed = true;
    auto idx = build_index(g, opt);
    CHECK_FALSE(is_inf(distance(idx, 0, 3)));
    CHECK(is_inf(distance(idx, 3, 0)));
}
