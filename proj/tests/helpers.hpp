#pragma once

#include <algorithm>
#include <set>
#include <vector>

#include "islabel/gen.hpp"
#include "islabel/graph.hpp"
#include "islabel/hierarchy.hpp"
#include "islabel/index.hpp"
#include "islabel/query.hpp"

namespace testutil {

using namespace islabel;

inline Graph path_graph(std::size_t n, Weight w = 1) {
    Graph g(n);
    for (VertexId v = 0; v + 1 < n; ++v) g.add_edge(v, v + 1, w);
    return g;
}

// Independent (no internal edges, direction-blind) and maximal (every
// outside vertex has a neighbor inside), checked by brute force.
inline bool is_maximal_independent_set(const Graph& g, const std::vector<VertexId>& verts,
                                       const std::vector<VertexId>& members) {
    std::set<VertexId> in(members.begin(), members.end());
    for (VertexId m : members) {
        for (const Arc& a : g.out_arcs(m))
            if (in.count(a.to)) return false;
        if (g.directed)
            for (const Arc& a : g.in_arcs(m))
                if (in.count(a.to)) return false;
    }
    for (VertexId v : verts) {
        if (in.count(v)) continue;
        bool covered = false;
        for (const Arc& a : g.out_arcs(v))
            if (in.count(a.to)) covered = true;
        if (g.directed)
            for (const Arc& a : g.in_arcs(v))
                if (in.count(a.to)) covered = true;
        if (!covered) return false;
    }
    return true;
}

// Consecutive path vertices must be arcs of g and their weights must sum to
// both the reported length and the true distance.
inline bool path_is_valid(const Graph& g, const PathResult& p, Distance expected) {
    if (p.vertices.empty()) return false;
    if (p.length != expected) return false;
    Distance sum = 0;
    for (std::size_t i = 0; i + 1 < p.vertices.size(); ++i) {
        const auto& arcs = g.out_arcs(p.vertices[i]);
        auto it = std::find_if(arcs.begin(), arcs.end(),
                               [&](const Arc& a) { return a.to == p.vertices[i + 1]; });
        if (it == arcs.end()) return false;
        sum += it->w;
    }
    return sum == p.length;
}

// LevelSet over explicitly chosen members, snapshots copied from the level
// graph (what select_independent_set would record for that member set).
inline LevelSet make_level(const LevelGraph& lg, std::vector<VertexId> members,
                           std::uint32_t level) {
    LevelSet ls;
    ls.level = level;
    std::sort(members.begin(), members.end());
    ls.members = std::move(members);
    for (VertexId v : ls.members) ls.snap_out.push_back(lg.g.out[v]);
    if (lg.g.directed)
        for (VertexId v : ls.members) ls.snap_in.push_back(lg.g.in[v]);
    return ls;
}

// Hierarchy from prescribed per-level member lists; the unlisted survivors
// become the top level.
inline VertexHierarchy hierarchy_from_levels(const Graph& g,
                                             const std::vector<std::vector<VertexId>>& sets) {
    VertexHierarchy h;
    h.directed = g.directed;
    h.level_of.assign(g.vertex_count(), 0);
    h.snap_out.resize(g.vertex_count());
    if (g.directed) h.snap_in.resize(g.vertex_count());
    LevelGraph work = as_level_graph(g);
    std::uint32_t level = 1;
    for (const auto& members : sets) {
        LevelSet ls = make_level(work, members, level);
        work = contract_level(work, ls);
        for (std::size_t j = 0; j < ls.members.size(); ++j) {
            VertexId v = ls.members[j];
            h.level_of[v] = level;
            h.snap_out[v] = std::move(ls.snap_out[j]);
            if (g.directed) h.snap_in[v] = std::move(ls.snap_in[j]);
        }
        h.level_members.push_back(std::move(ls.members));
        ++level;
    }
    h.k = level;
    for (VertexId v : work.verts) h.level_of[v] = h.k;
    h.top = std::move(work.g);
    h.top_verts = std::move(work.verts);
    h.top_arcs = work.arcs;
    return h;
}

inline std::vector<std::vector<Distance>> all_pairs_oracle(const Graph& g) {
    std::vector<std::vector<Distance>> d;
    d.reserve(g.vertex_count());
    for (VertexId v = 0; v < g.vertex_count(); ++v) d.push_back(dijkstra_oracle(g, v));
    return d;
}

}  // namespace testutil
