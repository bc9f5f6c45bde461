#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <optional>
#include <unordered_map>
#include <vector>

#include "islabel/graph.hpp"

namespace islabel {

// Graph at one level of the decomposition. Arc lists live in a full-size id
// space; only ids in `verts` carry arcs.
struct LevelGraph {
    Graph g;
    std::vector<VertexId> verts;  // ascending
    std::uint64_t arcs = 0;

    std::uint64_t size() const { return verts.size() + arcs; }
    bool empty() const { return verts.empty(); }
};

inline LevelGraph as_level_graph(Graph g) {
    LevelGraph lg;
    lg.arcs = g.arc_count();
    lg.verts.resize(g.vertex_count());
    std::iota(lg.verts.begin(), lg.verts.end(), 0);
    lg.g = std::move(g);
    return lg;
}

// An independent set extracted from one level, together with the adjacency
// snapshots of its members in that level's graph. Snapshots are what later
// labeling, path expansion, and updates consult once the level graphs are
// discarded.
struct LevelSet {
    std::uint32_t level = 1;
    std::vector<VertexId> members;                // ascending
    std::vector<std::vector<Arc>> snap_out;       // parallel to members
    std::vector<std::vector<Arc>> snap_in;        // directed only
};

namespace detail {

// Neighbor count ignoring arc direction (for directed graphs the greedy
// order and independence are direction-blind).
inline std::size_t union_degree(const Graph& g, VertexId v) {
    if (!g.directed) return g.out[v].size();
    const auto& a = g.out[v];
    const auto& b = g.in[v];
    std::size_t i = 0, j = 0, n = 0;
    while (i < a.size() && j < b.size()) {
        if (a[i].to < b[j].to) ++i;
        else if (b[j].to < a[i].to) ++j;
        else { ++i; ++j; }
        ++n;
    }
    return n + (a.size() - i) + (b.size() - j);
}

template <typename F>
inline void for_each_union_neighbor(const Graph& g, VertexId v, F&& f) {
    for (const Arc& a : g.out[v]) f(a.to);
    if (g.directed)
        for (const Arc& a : g.in[v]) f(a.to);
}

}  // namespace detail

// Greedy maximal independent set: visit vertices in ascending (degree, id)
// order, admit unless a neighbor was admitted earlier.
inline LevelSet select_independent_set(const LevelGraph& lg, std::uint32_t level = 1) {
    if (lg.empty()) throw std::invalid_argument("select_independent_set: empty graph");
    std::vector<std::pair<std::size_t, VertexId>> order;
    order.reserve(lg.verts.size());
    for (VertexId v : lg.verts) order.emplace_back(detail::union_degree(lg.g, v), v);
    std::sort(order.begin(), order.end());

    std::vector<char> excluded(lg.g.vertex_count(), 0);
    LevelSet ls;
    ls.level = level;
    for (auto [deg, v] : order) {
        (void)deg;
        if (excluded[v]) continue;
        ls.members.push_back(v);
        detail::for_each_union_neighbor(lg.g, v, [&](VertexId u) { excluded[u] = 1; });
    }
    std::sort(ls.members.begin(), ls.members.end());
    ls.snap_out.reserve(ls.members.size());
    for (VertexId v : ls.members) ls.snap_out.push_back(lg.g.out[v]);
    if (lg.g.directed) {
        ls.snap_in.reserve(ls.members.size());
        for (VertexId v : ls.members) ls.snap_in.push_back(lg.g.in[v]);
    }
    return ls;
}

// Removes the level's members and preserves distances among the survivors:
// for a removed v, every (in-neighbor, out-neighbor) pair gains a shortcut of
// the combined weight carrying v as midpoint, min-merged into the induced
// subgraph. Ties keep the incumbent arc (and its midpoint).
inline LevelGraph contract_level(const LevelGraph& prev, const LevelSet& ls) {
    const Graph& g = prev.g;
    std::vector<char> member(g.vertex_count(), 0);
    for (VertexId v : ls.members) member[v] = 1;

    for (std::size_t i = 0; i < ls.members.size(); ++i) {
        detail::for_each_union_neighbor(g, ls.members[i], [&](VertexId u) {
            if (member[u])
                throw std::invalid_argument("contract_level: set is not independent");
        });
    }

    LevelGraph next;
    next.g = Graph(g.vertex_count(), g.directed);
    next.verts.reserve(prev.verts.size() - ls.members.size());
    for (VertexId v : prev.verts)
        if (!member[v]) next.verts.push_back(v);

    // Induced subgraph on the survivors.
    for (VertexId v : next.verts) {
        auto& dst = next.g.out[v];
        for (const Arc& a : g.out[v])
            if (!member[a.to]) dst.push_back(a);
        if (g.directed) {
            auto& din = next.g.in[v];
            for (const Arc& a : g.in[v])
                if (!member[a.to]) din.push_back(a);
        }
    }

    // Shortcut candidates, one winner per ordered pair. Members are processed
    // in ascending id order so an equal-weight candidate created via a
    // lower-id midpoint wins the tie.
    struct Cand {
        Weight w;
        VertexId mid;
    };
    std::unordered_map<std::uint64_t, Cand> cand;
    for (VertexId v : ls.members) {
        for (const Arc& ain : g.in_arcs(v)) {
            for (const Arc& aout : g.out_arcs(v)) {
                VertexId u = ain.to, w = aout.to;
                if (u == w) continue;
                Weight cw = ain.w + aout.w;
                std::uint64_t key = (static_cast<std::uint64_t>(u) << 32) | w;
                auto [it, fresh] = cand.try_emplace(key, Cand{cw, v});
                if (!fresh && cw < it->second.w) it->second = Cand{cw, v};
            }
        }
    }

    std::vector<std::vector<Arc>> extra(g.vertex_count());
    for (const auto& [key, c] : cand) {
        VertexId u = static_cast<VertexId>(key >> 32);
        VertexId w = static_cast<VertexId>(key & 0xFFFFFFFFu);
        extra[u].push_back(Arc{w, c.w, c.mid});
    }
    auto merge_arcs = [](std::vector<Arc>& base, std::vector<Arc>& add) {
        if (add.empty()) return;
        std::sort(add.begin(), add.end(),
                  [](const Arc& a, const Arc& b) { return a.to < b.to; });
        std::vector<Arc> merged;
        merged.reserve(base.size() + add.size());
        std::size_t i = 0, j = 0;
        while (i < base.size() || j < add.size()) {
            if (j == add.size() || (i < base.size() && base[i].to < add[j].to)) {
                merged.push_back(base[i++]);
            } else if (i == base.size() || add[j].to < base[i].to) {
                merged.push_back(add[j++]);
            } else {
                // same target: strictly smaller weight replaces, tie keeps base
                merged.push_back(add[j].w < base[i].w ? add[j] : base[i]);
                ++i;
                ++j;
            }
        }
        base = std::move(merged);
    };
    for (VertexId v : next.verts) merge_arcs(next.g.out[v], extra[v]);
    if (g.directed) {
        std::vector<std::vector<Arc>> extra_in(g.vertex_count());
        for (VertexId u = 0; u < extra.size(); ++u)
            for (const Arc& a : extra[u]) extra_in[a.to].push_back(Arc{u, a.w, a.mid});
        for (VertexId v : next.verts) merge_arcs(next.g.in[v], extra_in[v]);
    }

    next.arcs = 0;
    for (VertexId v : next.verts) next.arcs += next.g.out[v].size();
    return next;
}

// The index-resident decomposition: level numbers, per-member snapshots of
// the level the member was removed from, and the top graph searched at query
// time. Intermediate level graphs are dropped.
struct VertexHierarchy {
    bool directed = false;
    std::uint32_t k = 1;
    std::vector<std::vector<VertexId>> level_members;  // [0] = level 1, ... (levels < k)
    std::vector<std::uint32_t> level_of;               // 1..k, size = id space
    std::vector<std::vector<Arc>> snap_out;            // below-top vertices only
    std::vector<std::vector<Arc>> snap_in;             // directed only
    Graph top;                                         // arcs among level-k vertices
    std::vector<VertexId> top_verts;                   // ascending
    std::uint64_t top_arcs = 0;

    std::size_t vertex_count() const { return level_of.size(); }
};

// Repeatedly extracts an independent set and contracts, until the residual
// stops shrinking by more than (1-sigma), would become empty, or max_k is
// reached. When the set would consume every remaining vertex the previous
// residual is kept as the top graph and its survivors sit at level k.
inline VertexHierarchy build_hierarchy(const Graph& g, double sigma = 0.95,
                                       std::uint32_t max_k = 0,
                                       std::vector<LevelGraph>* trace = nullptr) {
    if (!(sigma > 0.0 && sigma <= 1.0))
        throw std::invalid_argument("sigma must be in (0, 1]");
    VertexHierarchy h;
    h.directed = g.directed;
    h.level_of.assign(g.vertex_count(), 0);
    h.snap_out.resize(g.vertex_count());
    if (g.directed) h.snap_in.resize(g.vertex_count());

    LevelGraph work = as_level_graph(g);
    if (trace) trace->push_back(work);
    std::uint32_t i = 1;
    std::vector<LevelSet> sets;
    while (true) {
        if (work.empty() || (max_k != 0 && i == max_k)) {
            h.k = i;
            break;
        }
        LevelSet ls = select_independent_set(work, i);
        LevelGraph next = contract_level(work, ls);
        if (next.empty()) {
            h.k = i;  // keep the last nonempty residual as the top
            break;
        }
        std::uint64_t prev_size = work.size();
        sets.push_back(std::move(ls));
        work = std::move(next);
        if (trace) trace->push_back(work);
        ++i;
        if (work.size() > sigma * static_cast<double>(prev_size)) {
            h.k = i;
            break;
        }
    }

    for (auto& ls : sets) {
        for (std::size_t j = 0; j < ls.members.size(); ++j) {
            VertexId v = ls.members[j];
            h.level_of[v] = ls.level;
            h.snap_out[v] = std::move(ls.snap_out[j]);
            if (g.directed) h.snap_in[v] = std::move(ls.snap_in[j]);
        }
        h.level_members.push_back(std::move(ls.members));
    }
    for (VertexId v : work.verts) h.level_of[v] = h.k;
    h.top = std::move(work.g);
    if (h.top.vertex_count() == 0) h.top = Graph(g.vertex_count(), g.directed);
    h.top_verts = std::move(work.verts);
    h.top_arcs = work.arcs;
    log_info("hierarchy: k=" + std::to_string(h.k) +
             " top_vertices=" + std::to_string(h.top_verts.size()) +
             " top_arcs=" + std::to_string(h.top_arcs));
    return h;
}

}  // namespace islabel
