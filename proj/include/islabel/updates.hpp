#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <unordered_map>
#include <vector>

#include "islabel/index.hpp"

namespace islabel {

struct RebuildPolicy {
    double max_update_fraction = 0.10;  // of the live vertex count
};

inline bool should_rebuild(const UpdateLog& log, const RebuildPolicy& policy,
                           std::size_t live_vertices) {
    if (log.stale) return true;
    double budget = policy.max_update_fraction * static_cast<double>(std::max<std::size_t>(
                                                     live_vertices, 1));
    return static_cast<double>(log.inserted + log.deleted) > budget;
}

struct UpdateDelta {
    std::uint64_t touched_labels = 0;
    bool stale_raised = false;
};

namespace detail {

inline void label_upsert(Index& idx, VertexId v, const LabelEntry& e,
                         std::uint64_t& touched) {
    LabelVec lab(idx.labels.label(v).begin(), idx.labels.label(v).end());
    auto it = std::lower_bound(lab.begin(), lab.end(), e.anc,
                               [](const LabelEntry& x, VertexId a) { return x.anc < a; });
    if (it != lab.end() && it->anc == e.anc) {
        if (e.d >= it->d) return;
        *it = e;
    } else {
        lab.insert(it, e);
    }
    idx.labels.replace_label(v, lab);
    ++touched;
}

inline void sorted_arc_insert(std::vector<Arc>& lst, VertexId to, Weight w, VertexId mid) {
    auto it = std::lower_bound(lst.begin(), lst.end(), to,
                               [](const Arc& a, VertexId t) { return a.to < t; });
    if (it != lst.end() && it->to == to) {
        if (w < it->w) *it = Arc{to, w, mid};
    } else {
        lst.insert(it, Arc{to, w, mid});
    }
}

}  // namespace detail

// Inserts a fresh vertex with its adjacency list. The vertex joins the top
// level; its edges are then replayed through the retained snapshots the same
// way construction would have contracted them: a collapsed-edge candidate
// climbs level by level (gaining the previous vertex as midpoint), becomes a
// real top-graph edge when it reaches level k, and every climbed-through
// vertex gains a direct label entry to u. Finally every label below the top
// picks up (u, bound) as the minimum over its entries into climbed vertices,
// which keeps all distance queries exact on the updated graph.
inline UpdateDelta insert_vertex(Index& idx, std::uint64_t ext_id,
                                 const std::vector<std::pair<std::uint64_t, Weight>>& adj) {
    if (idx.directed)
        throw std::invalid_argument("dynamic updates require an undirected index");
    if (idx.ext_lookup.count(ext_id))
        throw std::invalid_argument("vertex already exists: " + std::to_string(ext_id));

    // Resolve and min-collapse the neighbor list up front.
    std::map<VertexId, Weight> nbrs;
    for (const auto& [ext, w] : adj) {
        if (w == 0) throw std::invalid_argument("weight must be positive");
        VertexId v = idx.resolve_external(ext);
        auto [it, fresh] = nbrs.emplace(v, w);
        if (!fresh) it->second = std::min(it->second, w);
    }

    UpdateDelta delta;
    VertexId u = static_cast<VertexId>(idx.slot_count());
    idx.ext_ids.push_back(ext_id);
    idx.ext_lookup.emplace(ext_id, u);
    idx.level_of.push_back(idx.k);
    idx.snap_out.emplace_back();
    idx.top.out.emplace_back();
    idx.labels.append_empty();
    idx.labels.replace_label(u, {LabelEntry{u, 0, ViaKind::Self, kNullVertex}});
    ++delta.touched_labels;

    struct Cand {
        Weight w;
        VertexId mid;
    };
    // Collapsed-edge candidates bucketed by level; candidates only ever flow
    // to strictly higher levels, so one ascending pass finalizes them.
    std::vector<std::map<VertexId, Cand>> buckets(idx.k);  // [lvl-1], below-k levels
    std::map<VertexId, Cand> top_pending;
    auto offer = [&](VertexId v, Weight w, VertexId mid) {
        auto& slot = idx.level_of[v] == idx.k ? top_pending : buckets[idx.level_of[v] - 1];
        auto [it, fresh] = slot.emplace(v, Cand{w, mid});
        if (!fresh && w < it->second.w) it->second = Cand{w, mid};
    };
    for (const auto& [v, w] : nbrs) offer(v, w, kNullVertex);

    std::unordered_map<VertexId, Weight> reached_below;  // v -> collapsed weight
    for (std::uint32_t lvl = 1; lvl < idx.k; ++lvl) {
        for (const auto& [v, c] : buckets[lvl - 1]) {
            detail::label_upsert(idx, v, LabelEntry{u, c.w, ViaKind::Direct, c.mid},
                                 delta.touched_labels);
            reached_below.emplace(v, c.w);
            for (const Arc& a : idx.snap_out[v]) {
                if (!idx.alive(a.to)) continue;
                offer(a.to, dist_add(c.w, a.w), v);
            }
        }
    }
    for (const auto& [v, c] : top_pending) {
        detail::sorted_arc_insert(idx.top.out[v], u, c.w, c.mid);
        detail::sorted_arc_insert(idx.top.out[u], v, c.w, c.mid);
        idx.top_arcs += 2;
    }

    // Every label that can see a climbed-through vertex y gains u as an
    // ancestor with bound = entry(y) + collapsed(y, u).
    if (!reached_below.empty()) {
        for (VertexId w = 0; w < u; ++w) {
            if (!idx.alive(w) || idx.level_of[w] == idx.k) continue;
            Distance best = kInfDistance;
            VertexId via = kNullVertex;
            for (const LabelEntry& e : idx.labels.label(w)) {
                auto it = reached_below.find(e.anc);
                if (it == reached_below.end() || e.anc == w) continue;
                Distance cand = dist_add(e.d, it->second);
                if (cand < best) {
                    best = cand;
                    via = e.anc;
                }
            }
            if (via != kNullVertex)
                detail::label_upsert(idx, w, LabelEntry{u, best, ViaKind::Through, via},
                                     delta.touched_labels);
        }
    }

    ++idx.log.inserted;
    idx.log.touched_labels += delta.touched_labels;
    return delta;
}

// Deletes a vertex. Entries naming u as an ancestor are removable; if u is
// never a via or midpoint anywhere, every surviving bound is achieved by a
// u-free path and removal keeps queries exact. Otherwise the mandated
// removals still happen but the staleness flag is raised: answers may be
// wrong until a rebuild.
inline UpdateDelta delete_vertex(Index& idx, std::uint64_t ext_id) {
    if (idx.directed)
        throw std::invalid_argument("dynamic updates require an undirected index");
    VertexId u = idx.resolve_external(ext_id);
    UpdateDelta delta;

    bool blocking = false;
    if (idx.level_of[u] < idx.k && !idx.path_capable) {
        blocking = true;  // via references cannot be checked without via data
    } else {
        for (const LabelEntry& e : idx.labels.entries()) {
            if (e.via == u) {
                blocking = true;
                break;
            }
        }
        if (!blocking) {
            for (VertexId v = 0; v < idx.slot_count() && !blocking; ++v) {
                for (const Arc& a : idx.snap_out[v])
                    if (a.mid == u) {
                        blocking = true;
                        break;
                    }
                if (blocking) break;
                for (const Arc& a : idx.top.out[v])
                    if (a.mid == u) {
                        blocking = true;
                        break;
                    }
            }
        }
    }

    // Remove u's ancestor entries from every label.
    for (VertexId w = 0; w < idx.slot_count(); ++w) {
        if (w == u || !idx.alive(w)) continue;
        if (idx.labels.find(w, u) == nullptr) continue;
        LabelVec lab(idx.labels.label(w).begin(), idx.labels.label(w).end());
        lab.erase(std::remove_if(lab.begin(), lab.end(),
                                 [&](const LabelEntry& e) { return e.anc == u; }),
                  lab.end());
        idx.labels.replace_label(w, lab);
        ++delta.touched_labels;
    }
    if (idx.labels.label_size(u) > 0) {
        idx.labels.replace_label(u, {});
        ++delta.touched_labels;
    }

    // Drop u from snapshots and from the top graph.
    for (VertexId v = 0; v < idx.slot_count(); ++v) {
        auto& snap = idx.snap_out[v];
        snap.erase(std::remove_if(snap.begin(), snap.end(),
                                  [&](const Arc& a) { return a.to == u; }),
                   snap.end());
    }
    idx.snap_out[u].clear();
    if (idx.level_of[u] == idx.k) {
        for (const Arc& a : idx.top.out[u]) {
            auto& lst = idx.top.out[a.to];
            auto it = std::remove_if(lst.begin(), lst.end(),
                                     [&](const Arc& b) { return b.to == u; });
            idx.top_arcs -= static_cast<std::uint64_t>(lst.end() - it);
            lst.erase(it, lst.end());
        }
        idx.top_arcs -= idx.top.out[u].size();
        idx.top.out[u].clear();
    }

    idx.ext_lookup.erase(ext_id);
    idx.ext_ids[u] = kTombstone;
    idx.level_of[u] = 0;

    ++idx.log.deleted;
    idx.log.touched_labels += delta.touched_labels;
    if (blocking && !idx.log.stale) {
        idx.log.stale = true;
        delta.stale_raised = true;
    }
    return delta;
}

}  // namespace islabel
