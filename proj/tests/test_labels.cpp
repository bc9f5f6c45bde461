#include <catch2/catch_amalgamated.hpp>

#include "helpers.hpp"
#include "paper_fixture.hpp"

using namespace islabel;
using testutil::path_graph;

namespace {

std::map<VertexId, Distance> as_map(std::span<const LabelEntry> lab) {
    std::map<VertexId, Distance> m;
    for (const auto& e : lab) m.emplace(e.anc, e.d);
    return m;
}

std::map<VertexId, Distance> as_map(const LabelVec& lab) {
    std::map<VertexId, Distance> m;
    for (const auto& e : lab) m.emplace(e.anc, e.d);
    return m;
}

}  // namespace

TEST_CASE("label initialization seeds self and snapshot neighbors", "[labels]") {
    auto h = build_hierarchy(path_graph(3), 1.0);  // levels {0,2}, top {1}
    auto labels = initialize_labels(h);
    CHECK(as_map(labels[0]) == std::map<VertexId, Distance>{{0, 0}, {1, 1}});
    CHECK(as_map(labels[1]) == std::map<VertexId, Distance>{{1, 0}});
    CHECK(as_map(labels[2]) == std::map<VertexId, Distance>{{1, 1}, {2, 0}});

    Graph iso(1);
    auto hi = build_hierarchy(iso, 0.95);
    auto li = initialize_labels(hi);
    CHECK(as_map(li[0]) == std::map<VertexId, Distance>{{0, 0}});
}

TEST_CASE("top-down propagation is a no-op when neighbors are all on top", "[labels]") {
    auto h = build_hierarchy(path_graph(3), 1.0);
    auto init = initialize_labels(h);
    auto propagated = init;
    topdown_propagate(propagated, h);
    CHECK(propagated == init);
}

TEST_CASE("worked example labels", "[labels]") {
    SECTION("complete five-level labels") {
        auto h = paperex::full_hierarchy();
        auto store = build_labels(h);
        auto expect = paperex::full_label_table();
        for (const auto& [v, want] : expect) CHECK(as_map(store.label(v)) == want);
    }
    SECTION("one bound is deliberately loose") {
        auto h = paperex::full_hierarchy();
        auto store = build_labels(h);
        const LabelEntry* e = store.find(paperex::H, paperex::E);
        REQUIRE(e != nullptr);
        CHECK(e->d == 4);  // true distance h..e is 3
        CHECK(dijkstra_oracle_pair(paperex::graph(), paperex::H, paperex::E) == 3);
    }
    SECTION("two-level truncation") {
        auto h = paperex::truncated_hierarchy();
        REQUIRE(h.k == 2);
        auto store = build_labels(h);
        for (const auto& [v, want] : paperex::truncated_label_table())
            CHECK(as_map(store.label(v)) == want);
        // top-level vertices keep the self entry only
        for (VertexId v : h.top_verts)
            CHECK(as_map(store.label(v)) == std::map<VertexId, Distance>{{v, 0}});
    }
}

TEST_CASE("propagation agrees with the reference recursion", "[labels]") {
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
        std::size_t n = 10 + static_cast<std::size_t>(seed * 2);  // up to 50
        auto g = random_graph(n, 3.5, seed, false, 4);
        for (double sigma : {1.0, 0.95}) {
            auto h = build_hierarchy(g, sigma);
            auto store = build_labels(h);
            for (VertexId v = 0; v < g.vertex_count(); ++v) {
                auto ref = reference_label(h, v);
                CHECK(as_map(store.label(v)) == as_map(ref));
            }
        }
    }
}

TEST_CASE("label bounds are sound and cover connected pairs", "[labels]") {
    for (std::uint64_t seed : {5, 6, 7}) {
        auto g = random_graph(80, 3.0, seed, false, 5);
        auto h = build_hierarchy(g, 1.0);  // decompose fully
        auto store = build_labels(h);
        auto dist = testutil::all_pairs_oracle(g);

        for (VertexId v = 0; v < g.vertex_count(); ++v)
            for (const auto& e : store.label(v)) CHECK(e.d >= dist[v][e.anc]);

        for (VertexId s = 0; s < g.vertex_count(); ++s) {
            for (VertexId t = 0; t < g.vertex_count(); ++t) {
                if (is_inf(dist[s][t])) continue;
                bool covered = false;
                auto ls = store.label(s);
                auto lt = store.label(t);
                std::size_t i = 0, j = 0;
                while (i < ls.size() && j < lt.size()) {
                    if (ls[i].anc < lt[j].anc) ++i;
                    else if (lt[j].anc < ls[i].anc) ++j;
                    else {
                        if (ls[i].d + lt[j].d == dist[s][t]) covered = true;
                        ++i;
                        ++j;
                    }
                }
                CHECK(covered);
            }
        }
    }
}

TEST_CASE("via chains stay inside the ancestor set with decreasing levels", "[labels]") {
    auto g = random_graph(100, 4.0, 12, false, 3);
    auto h = build_hierarchy(g, 0.95);
    auto store = build_labels(h);
    for (VertexId v = 0; v < g.vertex_count(); ++v) {
        auto lab = store.label(v);
        for (const auto& e : lab) {
            if (e.kind != ViaKind::Through) continue;
            CHECK(store.find(v, e.via) != nullptr);
            CHECK(h.level_of[e.via] < h.level_of[e.anc]);
        }
    }
}

TEST_CASE("label store mutation keeps offsets consistent", "[labels]") {
    std::vector<LabelVec> vecs(3);
    vecs[0] = {LabelEntry{0, 0, ViaKind::Self, kNullVertex}};
    vecs[1] = {LabelEntry{1, 0, ViaKind::Self, kNullVertex},
               LabelEntry{2, 5, ViaKind::Direct, kNullVertex}};
    vecs[2] = {LabelEntry{2, 0, ViaKind::Self, kNullVertex}};
    auto store = LabelStore::from_vectors(std::move(vecs));
    REQUIRE(store.total_entries() == 4);

    store.replace_label(1, {LabelEntry{1, 0, ViaKind::Self, kNullVertex}});
    CHECK(store.total_entries() == 3);
    CHECK(store.label(2).size() == 1);
    CHECK(store.label(2)[0].anc == 2);

    store.append_empty();
    CHECK(store.vertex_count() == 4);
    CHECK(store.label(3).empty());
}
