#pragma once

#include <cstdint>
#include <random>
#include <unordered_set>
#include <vector>

#include "islabel/graph.hpp"

namespace islabel {

// Synthetic graphs for benchmarks and acceptance runs. All generators are
// deterministic for a given seed.

inline std::uint64_t rand_below(std::mt19937_64& rng, std::uint64_t n) {
    return n == 0 ? 0 : rng() % n;
}

// Uniform random graph with n vertices and roughly the target average
// degree (undirected: avg_degree*n/2 distinct edges; directed: avg out-degree).
inline Graph random_graph(std::size_t n, double avg_degree, std::uint64_t seed,
                          bool directed = false, Weight max_weight = 1) {
    Graph g(n, directed);
    if (n < 2) return g;
    std::mt19937_64 rng(seed);
    std::uint64_t target = static_cast<std::uint64_t>(avg_degree * n / (directed ? 1.0 : 2.0));
    std::unordered_set<std::uint64_t> used;
    std::uint64_t attempts = 0, limit = target * 20 + 100;
    while (used.size() < target && attempts++ < limit) {
        VertexId u = static_cast<VertexId>(rand_below(rng, n));
        VertexId v = static_cast<VertexId>(rand_below(rng, n));
        if (u == v) continue;
        std::uint64_t key = directed
                                ? (static_cast<std::uint64_t>(u) << 32) | v
                                : (static_cast<std::uint64_t>(std::min(u, v)) << 32) |
                                      std::max(u, v);
        if (!used.insert(key).second) continue;
        Weight w = max_weight <= 1 ? 1 : 1 + rand_below(rng, max_weight);
        g.add_edge(u, v, w);
    }
    return g;
}

// Preferential attachment: each new vertex attaches `edges_per_vertex` times
// to endpoints sampled proportionally to degree.
inline Graph preferential_attachment_graph(std::size_t n, std::size_t edges_per_vertex,
                                           std::uint64_t seed, Weight max_weight = 1) {
    Graph g(n, false);
    if (n < 2) return g;
    std::mt19937_64 rng(seed);
    std::vector<VertexId> endpoints;  // one entry per arc endpoint
    g.add_edge(0, 1, max_weight <= 1 ? 1 : 1 + rand_below(rng, max_weight));
    endpoints.push_back(0);
    endpoints.push_back(1);
    for (VertexId v = 2; v < n; ++v) {
        std::unordered_set<VertexId> picked;
        for (std::size_t e = 0; e < edges_per_vertex && picked.size() < v; ++e) {
            VertexId u = endpoints[rand_below(rng, endpoints.size())];
            std::size_t guard = 0;
            while ((u == v || picked.count(u)) && guard++ < 32)
                u = endpoints[rand_below(rng, endpoints.size())];
            if (u == v || picked.count(u)) continue;
            picked.insert(u);
            Weight w = max_weight <= 1 ? 1 : 1 + rand_below(rng, max_weight);
            g.add_edge(v, u, w);
            endpoints.push_back(v);
            endpoints.push_back(u);
        }
    }
    return g;
}

inline std::vector<std::pair<VertexId, VertexId>> random_pairs(std::size_t n,
                                                               std::size_t count,
                                                               std::uint64_t seed) {
    std::vector<std::pair<VertexId, VertexId>> pairs;
    if (n == 0) return pairs;
    std::mt19937_64 rng(seed);
    pairs.reserve(count);
    for (std::size_t i = 0; i < count; ++i)
        pairs.emplace_back(static_cast<VertexId>(rand_below(rng, n)),
                           static_cast<VertexId>(rand_below(rng, n)));
    return pairs;
}

}  // namespace islabel
