#pragma once

#include <algorithm>
#include <cstdint>
#include <queue>
#include <span>
#include <unordered_map>
#include <vector>

#include "islabel/index.hpp"

namespace islabel {

enum class QueryClass { Type1, Type2 };

struct IntersectResult {
    Distance d = kInfDistance;
    VertexId witness = kNullVertex;
};

// Linear merge over two ancestor-sorted labels; minimizes the bound sum over
// common ancestors. Ties keep the smaller witness id (first reached).
inline IntersectResult intersect_labels(std::span<const LabelEntry> a,
                                        std::span<const LabelEntry> b) {
    IntersectResult r;
    std::size_t i = 0, j = 0;
    while (i < a.size() && j < b.size()) {
        if (a[i].anc < b[j].anc) ++i;
        else if (b[j].anc < a[i].anc) ++j;
        else {
            Distance s = dist_add(a[i].d, b[j].d);
            if (s < r.d) {
                r.d = s;
                r.witness = a[i].anc;
            }
            ++i;
            ++j;
        }
    }
    return r;
}

namespace detail {

inline bool label_reaches_top(const Index& idx, std::span<const LabelEntry> lab) {
    for (const LabelEntry& e : lab)
        if (idx.level_of[e.anc] == idx.k) return true;
    return false;
}

}  // namespace detail

// Type 1: both endpoints sit below the top level and at least one side's
// ancestors never reach it (only possible when a whole component dissolved
// below the top); answered by label intersection alone. Everything else is
// Type 2 and runs the seeded bidirectional search.
inline QueryClass classify(const Index& idx, VertexId s, VertexId t) {
    idx.check_vertex(s);
    idx.check_vertex(t);
    if (idx.in_top(s) || idx.in_top(t)) return QueryClass::Type2;
    if (!detail::label_reaches_top(idx, idx.label_of(s)) ||
        !detail::label_reaches_top(idx, idx.in_label_of(t)))
        return QueryClass::Type1;
    return QueryClass::Type2;
}

// Where the best s-t connection was found: via a common label ancestor
// (Witness) or at a top-graph vertex reached by both searches (Vertex).
enum class MeetKind { None, Witness, Vertex };

struct SearchOutcome {
    Distance dist = kInfDistance;
    MeetKind meet_kind = MeetKind::None;
    VertexId meet = kNullVertex;
    // Top-graph search trees; parent kNullVertex marks a label-seeded root.
    std::unordered_map<VertexId, VertexId> parent_f, parent_r;
};

// Bidirectional Dijkstra over the top graph, seeded with the endpoints' top
// ancestors and pruned by mu, the best label-intersection bound. Queues are
// lazy: vertices enter on first finite relaxation and stale pops are
// skipped. Search stops once min(FQ)+min(RQ) can no longer beat mu.
inline SearchOutcome bi_dijkstra(const Index& idx, VertexId s, VertexId t,
                                 bool use_pruning = true, bool want_parents = false) {
    idx.check_vertex(s);
    idx.check_vertex(t);
    SearchOutcome out;
    if (s == t) {
        out.dist = 0;
        out.meet_kind = MeetKind::Witness;
        out.meet = s;
        return out;
    }

    IntersectResult mu0 = intersect_labels(idx.label_of(s), idx.in_label_of(t));
    Distance mu = mu0.d;
    out.meet_kind = mu0.witness == kNullVertex ? MeetKind::None : MeetKind::Witness;
    out.meet = mu0.witness;

    std::unordered_map<VertexId, Distance> df, dr;
    std::unordered_map<VertexId, char> settf, settr;
    using Item = std::pair<Distance, VertexId>;
    std::priority_queue<Item, std::vector<Item>, std::greater<Item>> fq, rq;

    for (const LabelEntry& e : idx.label_of(s)) {
        if (idx.level_of[e.anc] != idx.k) continue;
        df[e.anc] = e.d;
        fq.push({e.d, e.anc});
        if (want_parents) out.parent_f[e.anc] = kNullVertex;
    }
    for (const LabelEntry& e : idx.in_label_of(t)) {
        if (idx.level_of[e.anc] != idx.k) continue;
        dr[e.anc] = e.d;
        rq.push({e.d, e.anc});
        if (want_parents) out.parent_r[e.anc] = kNullVertex;
    }

    auto clean = [](auto& q, auto& dist, auto& settled) {
        while (!q.empty()) {
            auto [d, v] = q.top();
            if (settled.count(v) || d != dist[v]) q.pop();
            else break;
        }
    };
    auto note_meet = [&](Distance cand, VertexId v) {
        if (cand < mu) {
            mu = cand;
            out.meet_kind = MeetKind::Vertex;
            out.meet = v;
        }
    };

    while (true) {
        clean(fq, df, settf);
        clean(rq, dr, settr);
        Distance mf = fq.empty() ? kInfDistance : fq.top().first;
        Distance mr = rq.empty() ? kInfDistance : rq.top().first;
        if (mf == kInfDistance && mr == kInfDistance) break;
        if (use_pruning && dist_add_sat(mf, mr) >= mu) break;
        bool fwd = mf <= mr;
        auto& q = fwd ? fq : rq;
        auto& dist = fwd ? df : dr;
        auto& dist_o = fwd ? dr : df;
        auto& sett = fwd ? settf : settr;
        auto& sett_o = fwd ? settr : settf;
        auto& parent = fwd ? out.parent_f : out.parent_r;

        auto [d, v] = q.top();
        q.pop();
        sett[v] = 1;
        // Settle-time meet check: the opposite tentative distance is the
        // length of a real path, so the sum is a valid upper bound.
        if (auto it = dist_o.find(v); it != dist_o.end())
            note_meet(dist_add(d, it->second), v);

        const auto& arcs = fwd ? idx.top.out_arcs(v) : idx.top.in_arcs(v);
        for (const Arc& a : arcs) {
            Distance nd = dist_add(d, a.w);
            auto it = dist.find(a.to);
            if (it == dist.end() || nd < it->second) {
                dist[a.to] = nd;
                q.push({nd, a.to});
                if (want_parents) parent[a.to] = v;
                if (sett_o.count(a.to)) note_meet(dist_add(nd, dist_o[a.to]), a.to);
            }
        }
    }
    out.dist = mu;
    if (is_inf(mu)) {
        out.meet_kind = MeetKind::None;
        out.meet = kNullVertex;
    }
    return out;
}

// Exact point-to-point distance.
inline Distance distance(const Index& idx, VertexId s, VertexId t) {
    idx.check_vertex(s);
    idx.check_vertex(t);
    if (s == t) return 0;
    if (classify(idx, s, t) == QueryClass::Type1)
        return intersect_labels(idx.label_of(s), idx.in_label_of(t)).d;
    return bi_dijkstra(idx, s, t).dist;
}

// ---------------------------------------------------------------------------
// Path reconstruction
// ---------------------------------------------------------------------------

struct PathResult {
    std::vector<VertexId> vertices;
    Distance length = 0;
};

namespace detail {

// Path expansion walks the recorded witness structure: label entries expand
// through their via ancestor, hierarchy/top arcs split at their midpoint,
// and a null midpoint is an original edge.

inline void append_tail(std::vector<VertexId>& dst, const std::vector<VertexId>& src) {
    dst.insert(dst.end(), src.begin() + 1, src.end());
}

inline const Arc* find_arc(const std::vector<Arc>& arcs, VertexId to) {
    auto it = std::lower_bound(arcs.begin(), arcs.end(), to,
                               [](const Arc& a, VertexId t) { return a.to < t; });
    return (it != arcs.end() && it->to == to) ? &*it : nullptr;
}

std::vector<VertexId> expand_label_path(const Index& idx, VertexId owner, VertexId anc,
                                        LabelSide side);

// Directed sense is x -> y throughout; `mid` is the recorded midpoint.
inline std::vector<VertexId> expand_mid_edge(const Index& idx, VertexId x, VertexId y,
                                             VertexId mid);

// Any recorded structure connecting x to y (directed sense x -> y): a
// snapshot arc at the lower-level endpoint, a top arc, or a label entry.
inline std::vector<VertexId> resolve_pair(const Index& idx, VertexId x, VertexId y) {
    std::uint32_t lx = idx.level_of[x], ly = idx.level_of[y];
    if (ly < lx) {
        if (const Arc* a = find_arc(idx.snapshot_in(y), x)) return expand_mid_edge(idx, x, y, a->mid);
    } else if (lx < ly) {
        if (const Arc* a = find_arc(idx.snapshot_out(x), y)) return expand_mid_edge(idx, x, y, a->mid);
    } else if (lx == idx.k) {
        if (const Arc* a = find_arc(idx.top.out_arcs(x), y)) return expand_mid_edge(idx, x, y, a->mid);
    }
    if (idx.labels.find(x, y) != nullptr) return expand_label_path(idx, x, y, LabelSide::Out);
    if (idx.directed) {
        if (idx.in_labels.find(y, x) != nullptr)
            return expand_label_path(idx, y, x, LabelSide::In);
    } else if (idx.labels.find(y, x) != nullptr) {
        auto p = expand_label_path(idx, y, x, LabelSide::Out);
        std::reverse(p.begin(), p.end());
        return p;
    }
    throw std::runtime_error("path expansion: no recorded connection " + std::to_string(x) +
                             " -> " + std::to_string(y) + " (stale or distance-only index)");
}

inline std::vector<VertexId> expand_mid_edge(const Index& idx, VertexId x, VertexId y,
                                             VertexId mid) {
    if (mid == kNullVertex) return {x, y};
    std::vector<VertexId> p = resolve_pair(idx, x, mid);
    append_tail(p, resolve_pair(idx, mid, y));
    return p;
}

// Out side returns owner -> ... -> anc; In side (directed) anc -> ... -> owner.
inline std::vector<VertexId> expand_label_path(const Index& idx, VertexId owner,
                                               VertexId anc, LabelSide side) {
    const LabelStore& store =
        (side == LabelSide::In && idx.directed) ? idx.in_labels : idx.labels;
    const LabelEntry* e = store.find(owner, anc);
    if (e == nullptr)
        throw std::runtime_error("path expansion: missing label entry");
    bool fwd = !(side == LabelSide::In && idx.directed);
    switch (e->kind) {
        case ViaKind::Self:
            return {owner};
        case ViaKind::Direct: {
            auto p = fwd ? expand_mid_edge(idx, owner, anc, e->via)
                         : expand_mid_edge(idx, anc, owner, e->via);
            return p;
        }
        case ViaKind::Through: {
            // owner ~> via ~> anc (Out) / anc ~> via ~> owner (In)
            if (fwd) {
                auto p = expand_label_path(idx, owner, e->via, side);
                append_tail(p, expand_label_path(idx, e->via, anc, side));
                return p;
            }
            auto p = expand_label_path(idx, e->via, anc, side);
            append_tail(p, expand_label_path(idx, owner, e->via, side));
            return p;
        }
    }
    throw std::logic_error("unreachable");
}

// In-side expansion for undirected indexes: reuse out expansion, reversed,
// so both sides share the convention "In returns anc -> ... -> owner".
inline std::vector<VertexId> expand_side(const Index& idx, VertexId owner, VertexId anc,
                                         LabelSide side) {
    if (side == LabelSide::Out || idx.directed)
        return expand_label_path(idx, owner, anc, side);
    auto p = expand_label_path(idx, owner, anc, LabelSide::Out);
    std::reverse(p.begin(), p.end());
    return p;
}

// Walks a search tree from the meet back to its label-seeded root; returns
// [root, ..., meet] in parent-to-child order.
inline std::vector<VertexId> tree_chain(const std::unordered_map<VertexId, VertexId>& parent,
                                        VertexId meet) {
    std::vector<VertexId> chain{meet};
    auto it = parent.find(meet);
    while (it != parent.end() && it->second != kNullVertex) {
        chain.push_back(it->second);
        it = parent.find(it->second);
    }
    std::reverse(chain.begin(), chain.end());
    return chain;
}

}  // namespace detail

// Exact shortest path, reconstructed by recursive expansion of the witness
// structure. Errors on disconnected pairs.
inline PathResult shortest_path(const Index& idx, VertexId s, VertexId t) {
    idx.check_vertex(s);
    idx.check_vertex(t);
    PathResult r;
    if (s == t) {
        r.vertices = {s};
        r.length = 0;
        return r;
    }
    QueryClass qc = classify(idx, s, t);
    SearchOutcome so;
    if (qc == QueryClass::Type1) {
        IntersectResult ir = intersect_labels(idx.label_of(s), idx.in_label_of(t));
        so.dist = ir.d;
        so.meet_kind = ir.witness == kNullVertex ? MeetKind::None : MeetKind::Witness;
        so.meet = ir.witness;
    } else {
        so = bi_dijkstra(idx, s, t, true, /*want_parents=*/true);
    }
    if (is_inf(so.dist))
        throw std::runtime_error("shortest_path: vertices are not connected");
    r.length = so.dist;

    if (so.meet_kind == MeetKind::Witness) {
        r.vertices = detail::expand_side(idx, s, so.meet, LabelSide::Out);
        detail::append_tail(r.vertices, detail::expand_side(idx, t, so.meet, LabelSide::In));
        return r;
    }

    // Meet inside the top graph: label prefix, forward tree arcs, reverse
    // tree arcs (already in forward direction), label suffix.
    std::vector<VertexId> fchain = detail::tree_chain(so.parent_f, so.meet);
    std::vector<VertexId> rchain = detail::tree_chain(so.parent_r, so.meet);
    std::reverse(rchain.begin(), rchain.end());  // meet ... seed_r

    r.vertices = detail::expand_side(idx, s, fchain.front(), LabelSide::Out);
    for (std::size_t i = 0; i + 1 < fchain.size(); ++i) {
        const Arc* a = detail::find_arc(idx.top.out_arcs(fchain[i]), fchain[i + 1]);
        detail::append_tail(r.vertices,
                            detail::expand_mid_edge(idx, fchain[i], fchain[i + 1], a->mid));
    }
    for (std::size_t i = 0; i + 1 < rchain.size(); ++i) {
        const Arc* a = detail::find_arc(idx.top.out_arcs(rchain[i]), rchain[i + 1]);
        detail::append_tail(r.vertices,
                            detail::expand_mid_edge(idx, rchain[i], rchain[i + 1], a->mid));
    }
    detail::append_tail(r.vertices, detail::expand_side(idx, t, rchain.back(), LabelSide::In));
    return r;
}

}  // namespace islabel
