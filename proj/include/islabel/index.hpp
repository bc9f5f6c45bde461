#pragma once

#include <cstdint>
#include <numeric>
#include <optional>
#include <unordered_map>
#include <vector>

#include "islabel/graph.hpp"
#include "islabel/hierarchy.hpp"
#include "islabel/labeling.hpp"

namespace islabel {

inline constexpr std::uint64_t kTombstone = std::numeric_limits<std::uint64_t>::max();

// Update accounting; counters are monotone between rebuilds.
struct UpdateLog {
    std::uint64_t inserted = 0;
    std::uint64_t deleted = 0;
    std::uint64_t touched_labels = 0;
    bool stale = false;
};

struct BuildOptions {
    double sigma = 0.95;
    std::uint32_t max_k = 0;  // 0 = no cap
    bool directed = false;
    bool path_capable = true;
};

// The complete queryable index: level numbers, labels, snapshots for path
// expansion / updates, and the top graph. Immutable under queries; dynamic
// updates mutate it under exclusive access.
struct Index {
    bool directed = false;
    bool path_capable = true;
    std::uint32_t k = 1;
    std::vector<std::uint64_t> ext_ids;             // internal -> external, kTombstone = deleted
    std::vector<std::uint32_t> level_of;            // 1..k (0 = deleted)
    std::vector<std::vector<Arc>> snap_out, snap_in;
    Graph top;                                      // arcs among level-k vertices
    std::uint64_t top_arcs = 0;
    LabelStore labels;                              // out-labels; the labels when undirected
    LabelStore in_labels;                           // directed only
    UpdateLog log;

    std::unordered_map<std::uint64_t, VertexId> ext_lookup;  // derived, not serialized

    std::size_t slot_count() const { return ext_ids.size(); }

    bool alive(VertexId v) const {
        return v < ext_ids.size() && ext_ids[v] != kTombstone;
    }

    bool in_top(VertexId v) const { return alive(v) && level_of[v] == k; }

    void check_vertex(VertexId v) const {
        if (!alive(v)) throw std::out_of_range("invalid vertex id " + std::to_string(v));
    }

    std::span<const LabelEntry> label_of(VertexId v) const { return labels.label(v); }
    std::span<const LabelEntry> in_label_of(VertexId v) const {
        return directed ? in_labels.label(v) : labels.label(v);
    }

    const std::vector<Arc>& snapshot_out(VertexId v) const { return snap_out[v]; }
    const std::vector<Arc>& snapshot_in(VertexId v) const {
        return directed ? snap_in[v] : snap_out[v];
    }

    VertexId resolve_external(std::uint64_t ext) const {
        auto it = ext_lookup.find(ext);
        if (it == ext_lookup.end())
            throw std::out_of_range("unknown vertex id " + std::to_string(ext));
        return it->second;
    }

    void rebuild_ext_lookup() {
        ext_lookup.clear();
        ext_lookup.reserve(ext_ids.size());
        for (VertexId v = 0; v < ext_ids.size(); ++v)
            if (ext_ids[v] != kTombstone) ext_lookup.emplace(ext_ids[v], v);
    }
};

// Labels a finished hierarchy and packs everything queries need.
inline Index assemble_index(VertexHierarchy h, std::vector<std::uint64_t> ext_ids,
                            bool path_capable = true) {
    if (ext_ids.empty() && h.vertex_count() > 0) {
        ext_ids.resize(h.vertex_count());
        std::iota(ext_ids.begin(), ext_ids.end(), 0);
    }
    if (ext_ids.size() != h.vertex_count())
        throw std::invalid_argument("external id map size mismatch");
    Index idx;
    idx.labels = build_labels(h, LabelSide::Out);
    if (h.directed) idx.in_labels = build_labels(h, LabelSide::In);
    idx.directed = h.directed;
    idx.path_capable = path_capable;
    idx.k = h.k;
    idx.ext_ids = std::move(ext_ids);
    idx.level_of = std::move(h.level_of);
    idx.snap_out = std::move(h.snap_out);
    idx.snap_in = std::move(h.snap_in);
    idx.top = std::move(h.top);
    idx.top_arcs = h.top_arcs;
    idx.rebuild_ext_lookup();
    return idx;
}

inline Index build_index(const Graph& g, std::vector<std::uint64_t> ext_ids,
                         const BuildOptions& opt = {}) {
    if (g.directed != opt.directed)
        throw std::invalid_argument("graph/build directedness mismatch");
    return assemble_index(build_hierarchy(g, opt.sigma, opt.max_k), std::move(ext_ids),
                          opt.path_capable);
}

inline Index build_index(const Graph& g, const BuildOptions& opt = {}) {
    return build_index(g, {}, opt);
}

// ---------------------------------------------------------------------------
// Statistics (what the stats/build CLI commands report)
// ---------------------------------------------------------------------------

struct IndexStats {
    std::uint32_t k = 1;
    std::uint64_t vertices = 0;  // alive
    std::uint64_t top_vertices = 0;
    std::uint64_t top_arcs = 0;
    std::uint64_t label_entries = 0;
    std::uint64_t label_bytes = 0;  // serialized size of entry (+via) sections
    std::uint64_t max_label_entries = 0;
    double mean_label_entries = 0.0;
    std::vector<std::uint64_t> level_sizes;  // index 0 = level 1, ..., k-1 = top
};

inline constexpr std::size_t kEntryBytes = 12;  // u32 ancestor + u64 distance
inline constexpr std::size_t kViaBytes = 5;     // u8 kind + u32 via

inline IndexStats index_stats(const Index& idx) {
    IndexStats s;
    s.k = idx.k;
    s.level_sizes.assign(idx.k, 0);
    for (VertexId v = 0; v < idx.slot_count(); ++v) {
        if (!idx.alive(v)) continue;
        ++s.vertices;
        ++s.level_sizes[idx.level_of[v] - 1];
        std::uint64_t n = idx.labels.label_size(v);
        if (idx.directed) n += idx.in_labels.label_size(v);
        s.label_entries += n;
        s.max_label_entries = std::max(s.max_label_entries, n);
    }
    s.top_vertices = s.level_sizes.empty() ? 0 : s.level_sizes.back();
    s.top_arcs = idx.top_arcs;
    s.label_bytes = s.label_entries * (kEntryBytes + (idx.path_capable ? kViaBytes : 0));
    s.mean_label_entries =
        s.vertices == 0 ? 0.0 : static_cast<double>(s.label_entries) / s.vertices;
    return s;
}

}  // namespace islabel
