#pragma once

#include <algorithm>
#include <cstdint>
#include <span>
#include <vector>

#include "islabel/hierarchy.hpp"

namespace islabel {

// How a label entry's bound was achieved, which is what path expansion
// follows. Self: the owner itself. Direct: a hierarchy edge owner->ancestor
// (via = that edge's midpoint, possibly null). Through: the bound routes
// through a lower-level ancestor `via`.
enum class ViaKind : std::uint8_t { Self = 0, Direct = 1, Through = 2 };

struct LabelEntry {
    VertexId anc = 0;
    Distance d = 0;
    ViaKind kind = ViaKind::Self;
    VertexId via = kNullVertex;

    friend bool operator==(const LabelEntry& a, const LabelEntry& b) {
        return a.anc == b.anc && a.d == b.d && a.kind == b.kind && a.via == b.via;
    }
};

using LabelVec = std::vector<LabelEntry>;  // sorted by ancestor id

// Frozen label storage: one offset per vertex into a contiguous entry array,
// so fetching a label touches a single contiguous range.
class LabelStore {
public:
    LabelStore() : off_(1, 0) {}

    static LabelStore from_vectors(std::vector<LabelVec>&& labels) {
        LabelStore s;
        s.off_.resize(labels.size() + 1, 0);
        std::size_t total = 0;
        for (std::size_t v = 0; v < labels.size(); ++v) total += labels[v].size();
        s.entries_.reserve(total);
        for (std::size_t v = 0; v < labels.size(); ++v) {
            s.off_[v + 1] = s.off_[v] + labels[v].size();
            s.entries_.insert(s.entries_.end(), labels[v].begin(), labels[v].end());
        }
        return s;
    }

    std::size_t vertex_count() const { return off_.size() - 1; }
    std::size_t total_entries() const { return entries_.size(); }

    std::span<const LabelEntry> label(VertexId v) const {
        return {entries_.data() + off_[v], entries_.data() + off_[v + 1]};
    }

    std::size_t label_size(VertexId v) const { return off_[v + 1] - off_[v]; }

    const std::vector<std::uint64_t>& offsets() const { return off_; }
    const std::vector<LabelEntry>& entries() const { return entries_; }

    // Entry lookup within one label (entries sorted by ancestor).
    const LabelEntry* find(VertexId v, VertexId anc) const {
        auto sp = label(v);
        auto it = std::lower_bound(sp.begin(), sp.end(), anc,
                                   [](const LabelEntry& e, VertexId a) { return e.anc < a; });
        return (it != sp.end() && it->anc == anc) ? &*it : nullptr;
    }

    // --- mutation used by dynamic updates ---

    void append_empty() { off_.push_back(off_.back()); }

    // Replaces one label wholesale, shifting the tail.
    void replace_label(VertexId v, const LabelVec& lab) {
        auto begin = entries_.begin() + static_cast<std::ptrdiff_t>(off_[v]);
        auto end = entries_.begin() + static_cast<std::ptrdiff_t>(off_[v + 1]);
        std::ptrdiff_t delta =
            static_cast<std::ptrdiff_t>(lab.size()) - (end - begin);
        entries_.erase(begin, end);
        entries_.insert(entries_.begin() + static_cast<std::ptrdiff_t>(off_[v]),
                        lab.begin(), lab.end());
        for (std::size_t i = v + 1; i < off_.size(); ++i)
            off_[i] = static_cast<std::uint64_t>(static_cast<std::ptrdiff_t>(off_[i]) + delta);
    }

    friend bool operator==(const LabelStore& a, const LabelStore& b) {
        return a.off_ == b.off_ && a.entries_ == b.entries_;
    }

private:
    std::vector<std::uint64_t> off_;
    std::vector<LabelEntry> entries_;
};

// Direction selector for directed indexes: Out-labels bound distances
// owner -> ancestor, In-labels bound ancestor -> owner. Undirected graphs
// use Out only.
enum class LabelSide { Out, In };

namespace detail {

inline const std::vector<Arc>& side_snap(const VertexHierarchy& h, VertexId v,
                                         LabelSide side) {
    if (side == LabelSide::In && h.directed) return h.snap_in[v];
    return h.snap_out[v];
}

inline LabelEntry* find_entry(LabelVec& lab, VertexId anc) {
    auto it = std::lower_bound(lab.begin(), lab.end(), anc,
                               [](const LabelEntry& e, VertexId a) { return e.anc < a; });
    return (it != lab.end() && it->anc == anc) ? &*it : nullptr;
}

inline void upsert_min(LabelVec& lab, const LabelEntry& e) {
    auto it = std::lower_bound(lab.begin(), lab.end(), e.anc,
                               [](const LabelEntry& x, VertexId a) { return x.anc < a; });
    if (it != lab.end() && it->anc == e.anc) {
        if (e.d < it->d) *it = e;  // ties keep the incumbent via
    } else {
        lab.insert(it, e);
    }
}

}  // namespace detail

// Seed labels: below-top vertices get a self entry plus one direct entry per
// snapshot neighbor (all of which sit at strictly higher levels); top
// vertices get the self entry only.
inline std::vector<LabelVec> initialize_labels(const VertexHierarchy& h,
                                               LabelSide side = LabelSide::Out) {
    std::vector<LabelVec> labels(h.vertex_count());
    for (const auto& members : h.level_members) {
        for (VertexId v : members) {
            LabelVec& lab = labels[v];
            lab.push_back(LabelEntry{v, 0, ViaKind::Self, kNullVertex});
            for (const Arc& a : detail::side_snap(h, v, side))
                lab.push_back(LabelEntry{a.to, a.w, ViaKind::Direct, a.mid});
            std::sort(lab.begin(), lab.end(),
                      [](const LabelEntry& x, const LabelEntry& y) { return x.anc < y.anc; });
        }
    }
    for (VertexId v : h.top_verts)
        labels[v].push_back(LabelEntry{v, 0, ViaKind::Self, kNullVertex});
    return labels;
}

// Top-down pass, levels k-1 down to 1: every vertex joins the already-final
// labels of its snapshot neighbors, min-merging (ancestor, bound-sum)
// candidates. After the pass each label holds, for every ancestor, the
// minimum total weight over strictly level-increasing chains.
inline void topdown_propagate(std::vector<LabelVec>& labels, const VertexHierarchy& h,
                              LabelSide side = LabelSide::Out) {
    for (std::size_t li = h.level_members.size(); li-- > 0;) {
        for (VertexId v : h.level_members[li]) {
            LabelVec& lab = labels[v];
            const auto& snap = detail::side_snap(h, v, side);
            for (const Arc& pivot_arc : snap) {
                VertexId u = pivot_arc.to;
                const LabelEntry* pe = detail::find_entry(lab, u);
                Distance d_vu = pe->d;
                for (const LabelEntry& ue : labels[u]) {
                    if (ue.anc == u) continue;  // self entry adds nothing new
                    detail::upsert_min(
                        lab, LabelEntry{ue.anc, dist_add(d_vu, ue.d), ViaKind::Through, u});
                }
            }
        }
    }
}

inline LabelStore build_labels(const VertexHierarchy& h, LabelSide side = LabelSide::Out) {
    auto labels = initialize_labels(h, side);
    topdown_propagate(labels, h, side);
    return LabelStore::from_vectors(std::move(labels));
}

// Literal marked-vertex recursion: explore strictly level-increasing edges
// from v, always expanding the marked vertex with the smallest level, and
// relax bounds as entries are discovered. Independent of the top-down pass;
// kept as the agreement oracle for it.
inline LabelVec reference_label(const VertexHierarchy& h, VertexId v,
                                LabelSide side = LabelSide::Out) {
    LabelVec lab{LabelEntry{v, 0, ViaKind::Self, kNullVertex}};
    std::vector<std::pair<std::uint32_t, VertexId>> marked{{h.level_of[v], v}};
    while (!marked.empty()) {
        auto it = std::min_element(marked.begin(), marked.end());
        auto [lvl, u] = *it;
        marked.erase(it);
        if (lvl == h.k) continue;  // top-level arcs never climb
        Distance d_vu = detail::find_entry(lab, u)->d;
        for (const Arc& a : detail::side_snap(h, u, side)) {
            if (h.level_of[a.to] <= lvl) continue;
            LabelEntry* e = detail::find_entry(lab, a.to);
            Distance nd = dist_add(d_vu, a.w);
            if (e == nullptr) {
                detail::upsert_min(lab, LabelEntry{a.to, nd,
                                                   u == v ? ViaKind::Direct : ViaKind::Through,
                                                   u == v ? a.mid : u});
                marked.emplace_back(h.level_of[a.to], a.to);
            } else if (nd < e->d) {
                e->d = nd;
                e->kind = u == v ? ViaKind::Direct : ViaKind::Through;
                e->via = u == v ? a.mid : u;
            }
        }
    }
    return lab;
}

}  // namespace islabel
