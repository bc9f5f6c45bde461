#pragma once

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <fstream>
#include <map>
#include <queue>
#include <sstream>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "islabel/common.hpp"

namespace islabel {

// One directed arc record. `mid` is the vertex a shortcut arc passes
// through (kNullVertex for an original edge); the loader always sets it
// to kNullVertex, shortcut creation fills it in.
struct Arc {
    VertexId to = 0;
    Weight w = 1;
    VertexId mid = kNullVertex;

    friend bool operator==(const Arc& a, const Arc& b) {
        return a.to == b.to && a.w == b.w && a.mid == b.mid;
    }
};

// Adjacency-list graph over dense ids [0, n). Undirected graphs store each
// edge as two symmetric arc records and leave `in` empty; directed graphs
// maintain the transposed lists in `in`. Arc lists are sorted by target id
// with at most one arc per target.
struct Graph {
    bool directed = false;
    std::vector<std::vector<Arc>> out;
    std::vector<std::vector<Arc>> in;  // directed only

    Graph() = default;
    explicit Graph(std::size_t n, bool dir = false) : directed(dir), out(n) {
        if (dir) in.resize(n);
    }

    std::size_t vertex_count() const { return out.size(); }

    std::uint64_t arc_count() const {
        std::uint64_t m = 0;
        for (const auto& a : out) m += a.size();
        return m;
    }

    const std::vector<Arc>& out_arcs(VertexId v) const { return out[v]; }
    const std::vector<Arc>& in_arcs(VertexId v) const {
        return directed ? in[v] : out[v];
    }

    void check_vertex(VertexId v) const {
        if (v >= vertex_count())
            throw std::out_of_range("invalid vertex id " + std::to_string(v));
    }

    // Inserts or min-merges one arc; keeps lists sorted. Returns true if the
    // arc was added or its weight lowered.
    bool add_arc(std::vector<Arc>& lst, VertexId to, Weight w, VertexId mid) {
        auto it = std::lower_bound(lst.begin(), lst.end(), to,
                                   [](const Arc& a, VertexId t) { return a.to < t; });
        if (it != lst.end() && it->to == to) {
            if (w < it->w) {
                it->w = w;
                it->mid = mid;
                return true;
            }
            return false;  // ties keep the incumbent
        }
        lst.insert(it, Arc{to, w, mid});
        return true;
    }

    void add_edge(VertexId u, VertexId v, Weight w, VertexId mid = kNullVertex) {
        check_vertex(u);
        check_vertex(v);
        if (u == v) return;  // no self-loops
        if (directed) {
            add_arc(out[u], v, w, mid);
            add_arc(in[v], u, w, mid);
        } else {
            add_arc(out[u], v, w, mid);
            add_arc(out[v], u, w, mid);
        }
    }

    Graph reversed() const {
        if (!directed) return *this;
        Graph r(vertex_count(), true);
        r.out = in;
        r.in = out;
        return r;
    }

    friend bool operator==(const Graph& a, const Graph& b) {
        return a.directed == b.directed && a.out == b.out && a.in == b.in;
    }
};

inline std::size_t degree(const Graph& g, VertexId v) {
    g.check_vertex(v);
    return g.out[v].size();
}

// ---------------------------------------------------------------------------
// Edge-list ingestion
// ---------------------------------------------------------------------------

// External-id bookkeeping: internal ids are dense and assigned in ascending
// external-id order, so equal inputs normalize to equal graphs.
struct LoadedGraph {
    Graph g;
    std::vector<std::uint64_t> ext_ids;  // internal -> external
};

namespace detail {

struct RawEdge {
    std::uint64_t u, v;
    Weight w;
};

inline bool parse_edge_line(const std::string& line, std::size_t lineno, RawEdge& e) {
    std::string s = line;
    if (!s.empty() && s.back() == '\r') s.pop_back();
    std::size_t i = 0;
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    if (i == s.size() || s[i] == '#') return false;  // blank or comment
    std::istringstream iss(s);
    long long u, v, w = 1;
    if (!(iss >> u >> v))
        throw std::runtime_error("parse error at line " + std::to_string(lineno) +
                                 ": expected \"u v [w]\"");
    if (u < 0 || v < 0)
        throw std::runtime_error("parse error at line " + std::to_string(lineno) +
                                 ": negative vertex id");
    if (iss >> w) {
        if (w <= 0)
            throw std::runtime_error("parse error at line " + std::to_string(lineno) +
                                     ": weight must be positive");
    } else {
        w = 1;
    }
    std::string rest;
    if (iss.clear(), iss >> rest)
        throw std::runtime_error("parse error at line " + std::to_string(lineno) +
                                 ": trailing tokens");
    e = RawEdge{static_cast<std::uint64_t>(u), static_cast<std::uint64_t>(v),
                static_cast<Weight>(w)};
    return true;
}

}  // namespace detail

inline LoadedGraph load_edge_list(std::istream& is, bool directed) {
    std::vector<detail::RawEdge> edges;
    std::map<std::uint64_t, VertexId> ids;  // ordered: dense ids follow external order
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(is, line)) {
        ++lineno;
        detail::RawEdge e;
        if (!detail::parse_edge_line(line, lineno, e)) continue;
        ids.emplace(e.u, 0);
        ids.emplace(e.v, 0);
        edges.push_back(e);
    }
    LoadedGraph r;
    r.ext_ids.reserve(ids.size());
    VertexId next = 0;
    for (auto& [ext, internal] : ids) {
        internal = next++;
        r.ext_ids.push_back(ext);
    }
    r.g = Graph(ids.size(), directed);
    for (const auto& e : edges) {
        VertexId u = ids[e.u], v = ids[e.v];
        r.g.add_edge(u, v, e.w);  // drops self-loops, min-merges duplicates
    }
    return r;
}

inline LoadedGraph load_edge_list(const std::string& path, bool directed) {
    std::ifstream f(path);
    if (!f) throw std::runtime_error("cannot open edge list: " + path);
    return load_edge_list(f, directed);
}

// Writes the graph back as an edge list using external ids (one line per
// undirected edge / directed arc). load(save(g)) reproduces g.
inline void save_edge_list(const Graph& g, const std::vector<std::uint64_t>& ext_ids,
                           std::ostream& os) {
    for (VertexId u = 0; u < g.vertex_count(); ++u) {
        bool isolated = g.out[u].empty() && (!g.directed || g.in[u].empty());
        if (isolated) os << ext_ids[u] << ' ' << ext_ids[u] << " 1\n";
        for (const Arc& a : g.out[u]) {
            if (!g.directed && ext_ids[u] > ext_ids[a.to]) continue;
            os << ext_ids[u] << ' ' << ext_ids[a.to] << ' ' << a.w << '\n';
        }
    }
}

// ---------------------------------------------------------------------------
// Reference searches
// ---------------------------------------------------------------------------

// Textbook Dijkstra from s; the oracle every exactness test compares against.
// Stops early once `target` is settled (pass kNullVertex for all targets).
inline std::vector<Distance> dijkstra_oracle(const Graph& g, VertexId s,
                                             VertexId target = kNullVertex) {
    g.check_vertex(s);
    if (target != kNullVertex) g.check_vertex(target);
    std::vector<Distance> dist(g.vertex_count(), kInfDistance);
    using Item = std::pair<Distance, VertexId>;
    std::priority_queue<Item, std::vector<Item>, std::greater<Item>> pq;
    dist[s] = 0;
    pq.push({0, s});
    while (!pq.empty()) {
        auto [d, v] = pq.top();
        pq.pop();
        if (d != dist[v]) continue;  // stale
        if (v == target) break;
        for (const Arc& a : g.out_arcs(v)) {
            Distance nd = dist_add(d, a.w);
            if (nd < dist[a.to]) {
                dist[a.to] = nd;
                pq.push({nd, a.to});
            }
        }
    }
    return dist;
}

inline Distance dijkstra_oracle_pair(const Graph& g, VertexId s, VertexId t) {
    return dijkstra_oracle(g, s, t)[t];
}

// Plain bidirectional Dijkstra over the full graph, used as the in-memory
// baseline for benchmarks. No labels, no hierarchy.
inline Distance bidirectional_dijkstra(const Graph& g, VertexId s, VertexId t) {
    g.check_vertex(s);
    g.check_vertex(t);
    if (s == t) return 0;
    std::unordered_map<VertexId, Distance> df, dr;
    std::unordered_map<VertexId, bool> settf, settr;
    using Item = std::pair<Distance, VertexId>;
    std::priority_queue<Item, std::vector<Item>, std::greater<Item>> fq, rq;
    df[s] = 0;
    dr[t] = 0;
    fq.push({0, s});
    rq.push({0, t});
    Distance mu = kInfDistance;
    auto clean = [](auto& q, auto& dist, auto& settled) {
        while (!q.empty()) {
            auto [d, v] = q.top();
            if (settled.count(v) || d != dist[v]) q.pop();
            else break;
        }
    };
    while (true) {
        clean(fq, df, settf);
        clean(rq, dr, settr);
        Distance mf = fq.empty() ? kInfDistance : fq.top().first;
        Distance mr = rq.empty() ? kInfDistance : rq.top().first;
        if (dist_add_sat(mf, mr) >= mu) break;
        bool fwd = mf <= mr;
        auto& q = fwd ? fq : rq;
        auto& dist = fwd ? df : dr;
        auto& sett = fwd ? settf : settr;
        auto& dist_o = fwd ? dr : df;
        auto [d, v] = q.top();
        q.pop();
        sett[v] = true;
        if (auto it = dist_o.find(v); it != dist_o.end())
            mu = std::min(mu, dist_add(d, it->second));
        const auto& arcs = fwd ? g.out_arcs(v) : g.in_arcs(v);
        for (const Arc& a : arcs) {
            Distance nd = dist_add(d, a.w);
            auto it = dist.find(a.to);
            if (it == dist.end() || nd < it->second) {
                dist[a.to] = nd;
                q.push({nd, a.to});
                if (auto jt = dist_o.find(a.to); jt != dist_o.end())
                    mu = std::min(mu, dist_add(nd, jt->second));
            }
        }
    }
    return mu;
}

}  // namespace islabel
