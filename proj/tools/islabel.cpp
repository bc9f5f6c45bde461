// islabel: build, query, and maintain shortest-distance indexes over large
// sparse graphs. Subcommands: build, query, oracle, stats, bench, update.

#include <algorithm>
#include <chrono>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <numeric>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "islabel/gen.hpp"
#include "islabel/graph.hpp"
#include "islabel/index.hpp"
#include "islabel/io.hpp"
#include "islabel/query.hpp"
#include "islabel/updates.hpp"

namespace {

using namespace islabel;
using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::vector<std::pair<std::uint64_t, std::uint64_t>> read_pairs(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw std::runtime_error("cannot open pairs file: " + path);
    std::vector<std::pair<std::uint64_t, std::uint64_t>> pairs;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(f, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        std::istringstream iss(line);
        long long s, t;
        if (!(iss >> s)) continue;  // blank
        if (!(iss >> t) || s < 0 || t < 0)
            throw std::runtime_error("malformed pair at line " + std::to_string(lineno));
        pairs.emplace_back(static_cast<std::uint64_t>(s), static_cast<std::uint64_t>(t));
    }
    return pairs;
}

struct GenOptions {
    std::string kind;  // "random" | "pa"
    std::uint64_t vertices = 0;
    double avg_degree = 4.0;
    std::uint64_t max_weight = 1;
    std::uint64_t seed = 1;
};

LoadedGraph make_input(const std::string& input, const GenOptions& gen, bool directed) {
    if (!input.empty()) return load_edge_list(input, directed);
    Graph g;
    if (gen.kind == "random") {
        g = random_graph(gen.vertices, gen.avg_degree, gen.seed, directed, gen.max_weight);
    } else if (gen.kind == "pa") {
        if (directed) throw std::runtime_error("preferential-attachment generator is undirected");
        std::size_t per = std::max<std::size_t>(1, static_cast<std::size_t>(gen.avg_degree / 2));
        g = preferential_attachment_graph(gen.vertices, per, gen.seed, gen.max_weight);
    } else {
        throw std::runtime_error("unknown generator: " + gen.kind);
    }
    LoadedGraph lg;
    lg.ext_ids.resize(g.vertex_count());
    std::iota(lg.ext_ids.begin(), lg.ext_ids.end(), 0);
    lg.g = std::move(g);
    return lg;
}

int cmd_build(const std::string& input, const GenOptions& gen, const std::string& output,
              double sigma, std::uint32_t max_k, bool directed, bool no_paths) {
    auto t0 = Clock::now();
    LoadedGraph lg = make_input(input, gen, directed);
    BuildOptions opt;
    opt.sigma = sigma;
    opt.max_k = max_k;
    opt.directed = directed;
    opt.path_capable = !no_paths;
    Index idx = build_index(lg.g, std::move(lg.ext_ids), opt);
    save_index(idx, output);
    IndexStats st = index_stats(idx);
    std::cout << "k=" << st.k << '\n'
              << "vertices=" << st.vertices << '\n'
              << "top_vertices=" << st.top_vertices << '\n'
              << "top_edges=" << st.top_arcs << '\n'
              << "label_entries=" << st.label_entries << '\n'
              << "label_bytes=" << st.label_bytes << '\n'
              << "build_seconds=" << std::fixed << std::setprecision(3) << seconds_since(t0)
              << '\n';
    return 0;
}

int cmd_query(const std::string& index_path, const std::string& pairs_path, bool want_path,
              unsigned threads) {
    Index idx = load_index(index_path);
    if (idx.log.stale)
        std::cerr << "warning: index is stale after deletions; rebuild recommended\n";
    auto pairs = read_pairs(pairs_path);
    std::vector<std::string> out(pairs.size());
    auto worker = [&](unsigned id, unsigned stride) {
        for (std::size_t i = id; i < pairs.size(); i += stride) {
            auto [se, te] = pairs[i];
            VertexId s = idx.resolve_external(se);
            VertexId t = idx.resolve_external(te);
            std::ostringstream line;
            line << se << ' ' << te << ' ';
            if (want_path) {
                Distance d = distance(idx, s, t);
                if (is_inf(d)) {
                    line << "INF";
                } else {
                    PathResult p = shortest_path(idx, s, t);
                    line << p.length << ' ';
                    for (std::size_t j = 0; j < p.vertices.size(); ++j) {
                        if (j) line << ',';
                        line << idx.ext_ids[p.vertices[j]];
                    }
                }
            } else {
                line << dist_to_string(distance(idx, s, t));
            }
            out[i] = line.str();
        }
    };
    threads = std::max(1u, threads);
    if (threads == 1) {
        worker(0, 1);
    } else {
        std::vector<std::thread> pool;
        for (unsigned w = 0; w < threads; ++w) pool.emplace_back(worker, w, threads);
        for (auto& th : pool) th.join();
    }
    for (const auto& line : out) std::cout << line << '\n';
    return 0;
}

int cmd_oracle(const std::string& input, const std::string& pairs_path, bool directed) {
    LoadedGraph lg = load_edge_list(input, directed);
    std::unordered_map<std::uint64_t, VertexId> lookup;
    for (VertexId v = 0; v < lg.ext_ids.size(); ++v) lookup.emplace(lg.ext_ids[v], v);
    for (auto [se, te] : read_pairs(pairs_path)) {
        auto si = lookup.find(se), ti = lookup.find(te);
        if (si == lookup.end() || ti == lookup.end())
            throw std::runtime_error("unknown vertex id in pairs file");
        Distance d = dijkstra_oracle_pair(lg.g, si->second, ti->second);
        std::cout << se << ' ' << te << ' ' << dist_to_string(d) << '\n';
    }
    return 0;
}

int cmd_stats(const std::string& index_path) {
    Index idx = load_index(index_path);
    IndexStats st = index_stats(idx);
    std::cout << "k=" << st.k << '\n'
              << "vertices=" << st.vertices << '\n'
              << "slots=" << idx.slot_count() << '\n'
              << "directed=" << (idx.directed ? 1 : 0) << '\n'
              << "path_capable=" << (idx.path_capable ? 1 : 0) << '\n'
              << "stale=" << (idx.log.stale ? 1 : 0) << '\n'
              << "top_vertices=" << st.top_vertices << '\n'
              << "top_edges=" << st.top_arcs << '\n'
              << "label_entries=" << st.label_entries << '\n'
              << "label_bytes=" << st.label_bytes << '\n'
              << "max_label_entries=" << st.max_label_entries << '\n'
              << "mean_label_entries=" << std::fixed << std::setprecision(2)
              << st.mean_label_entries << '\n'
              << "inserted=" << idx.log.inserted << '\n'
              << "deleted=" << idx.log.deleted << '\n';
    for (std::size_t i = 0; i < st.level_sizes.size(); ++i)
        std::cout << "level_" << (i + 1) << "_size=" << st.level_sizes[i] << '\n';
    auto bytes = serialize_index(idx);
    detail::Header h = detail::parse_and_verify_header(bytes.data(), bytes.size());
    static const char* names[kSectionCount] = {
        "id_map",     "levels",     "meta",      "label_offsets", "label_entries",
        "label_vias", "in_offsets", "in_entries", "in_vias",      "snapshots",
        "top_graph"};
    for (std::size_t i = 0; i < kSectionCount; ++i)
        std::cout << "section_" << names[i] << "_bytes=" << h.sections[i].second << '\n';
    return 0;
}

int cmd_bench(const std::string& index_path, std::uint64_t count, std::uint64_t seed,
              const std::string& baseline_input) {
    Index idx = load_index(index_path);
    std::vector<std::uint64_t> live;
    for (VertexId v = 0; v < idx.slot_count(); ++v)
        if (idx.alive(v)) live.push_back(v);

    std::mt19937_64 rng(seed);
    std::vector<std::pair<VertexId, VertexId>> pairs;
    for (std::uint64_t i = 0; i < count && !live.empty(); ++i)
        pairs.emplace_back(static_cast<VertexId>(live[rand_below(rng, live.size())]),
                           static_cast<VertexId>(live[rand_below(rng, live.size())]));

    double label_us = 0, search_us = 0;
    std::vector<double> totals;
    totals.reserve(pairs.size());
    for (auto [s, t] : pairs) {
        auto t0 = Clock::now();
        QueryClass qc = s == t ? QueryClass::Type1 : classify(idx, s, t);
        auto t1 = Clock::now();
        Distance d;
        if (s == t) d = 0;
        else if (qc == QueryClass::Type1)
            d = intersect_labels(idx.label_of(s), idx.in_label_of(t)).d;
        else
            d = bi_dijkstra(idx, s, t).dist;
        (void)d;
        auto t2 = Clock::now();
        double a = std::chrono::duration<double, std::micro>(t1 - t0).count();
        double b = std::chrono::duration<double, std::micro>(t2 - t1).count();
        label_us += a;
        search_us += b;
        totals.push_back(a + b);
    }
    std::sort(totals.begin(), totals.end());
    double n = static_cast<double>(pairs.size());
    std::cout << std::fixed << std::setprecision(3);
    std::cout << "queries=" << pairs.size() << '\n'
              << "mean_us=" << (pairs.empty() ? 0.0 : (label_us + search_us) / n) << '\n'
              << "median_us=" << (pairs.empty() ? 0.0 : totals[totals.size() / 2]) << '\n'
              << "label_mean_us=" << (pairs.empty() ? 0.0 : label_us / n) << '\n'
              << "search_mean_us=" << (pairs.empty() ? 0.0 : search_us / n) << '\n';
    if (!baseline_input.empty()) {
        LoadedGraph lg = load_edge_list(baseline_input, idx.directed);
        double base_us = 0;
        for (auto [s, t] : pairs) {
            auto t0 = Clock::now();
            (void)bidirectional_dijkstra(lg.g, s, t);
            base_us += std::chrono::duration<double, std::micro>(Clock::now() - t0).count();
        }
        std::cout << "baseline_mean_us=" << (pairs.empty() ? 0.0 : base_us / n) << '\n';
    }
    return 0;
}

std::pair<std::uint64_t, std::vector<std::pair<std::uint64_t, Weight>>> parse_insert_spec(
    const std::string& spec) {
    auto colon = spec.find(':');
    if (colon == std::string::npos)
        throw std::runtime_error("bad --insert spec (expected \"u: v1 w1, v2 w2\")");
    std::uint64_t u = std::stoull(spec.substr(0, colon));
    std::vector<std::pair<std::uint64_t, Weight>> adj;
    std::string rest = spec.substr(colon + 1);
    std::istringstream items(rest);
    std::string item;
    while (std::getline(items, item, ',')) {
        std::istringstream iss(item);
        std::uint64_t v;
        Weight w = 1;
        if (!(iss >> v)) continue;  // allow empty segments / isolated insert
        iss >> w;
        adj.emplace_back(v, w);
    }
    return {u, adj};
}

int cmd_update(const std::string& index_path, const std::vector<std::string>& inserts,
               const std::vector<std::uint64_t>& deletes) {
    Index idx = load_index(index_path);
    std::uint64_t touched = 0;
    for (const auto& spec : inserts) {
        auto [u, adj] = parse_insert_spec(spec);
        touched += insert_vertex(idx, u, adj).touched_labels;
    }
    for (std::uint64_t u : deletes) touched += delete_vertex(idx, u).touched_labels;
    save_index(idx, index_path);
    std::size_t live = 0;
    for (VertexId v = 0; v < idx.slot_count(); ++v)
        if (idx.alive(v)) ++live;
    std::cout << "inserted=" << idx.log.inserted << '\n'
              << "deleted=" << idx.log.deleted << '\n'
              << "touched_labels=" << touched << '\n'
              << "stale=" << (idx.log.stale ? 1 : 0) << '\n'
              << "rebuild_recommended=" << (should_rebuild(idx.log, {}, live) ? 1 : 0)
              << '\n';
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"IS-label shortest-distance index"};
    app.require_subcommand(1);

    // build
    auto* build = app.add_subcommand("build", "build an index from an edge list or generator");
    std::string b_input, b_output;
    GenOptions gen;
    double sigma = 0.95;
    std::uint32_t max_k = 0;
    bool directed = false, no_paths = false;
    build->add_option("--input", b_input, "edge list file (\"u v [w]\" per line)");
    build->add_option("--gen", gen.kind, "synthetic input: random | pa");
    build->add_option("--vertices", gen.vertices, "generator vertex count");
    build->add_option("--avg-degree", gen.avg_degree, "generator average degree");
    build->add_option("--max-weight", gen.max_weight, "generator max edge weight");
    build->add_option("--seed", gen.seed, "generator seed");
    build->add_option("--output", b_output, "index file to write")->required();
    build->add_option("--sigma", sigma, "contraction stop threshold in (0,1]");
    build->add_option("--max-k", max_k, "cap on the number of levels (0 = none)");
    build->add_flag("--directed", directed, "treat input as directed");
    build->add_flag("--no-paths", no_paths, "distance-only index (omit via data)");

    // query
    auto* query = app.add_subcommand("query", "answer distance (or path) queries");
    std::string q_index, q_pairs;
    bool q_path = false;
    unsigned q_threads = 1;
    query->add_option("--index", q_index)->required();
    query->add_option("--pairs", q_pairs, "file with \"s t\" per line")->required();
    query->add_flag("--path", q_path, "also output the shortest path");
    query->add_option("--threads", q_threads, "worker threads (output order preserved)");

    // oracle
    auto* oracle = app.add_subcommand("oracle", "answer the same queries by plain Dijkstra");
    std::string o_input, o_pairs;
    bool o_directed = false;
    oracle->add_option("--input", o_input)->required();
    oracle->add_option("--pairs", o_pairs)->required();
    oracle->add_flag("--directed", o_directed);

    // stats
    auto* stats = app.add_subcommand("stats", "print index statistics");
    std::string s_index;
    stats->add_option("--index", s_index)->required();

    // bench
    auto* bench = app.add_subcommand("bench", "time seeded random queries");
    std::string be_index, be_baseline;
    std::uint64_t be_count = 1000, be_seed = 1;
    bench->add_option("--index", be_index)->required();
    bench->add_option("--count", be_count, "number of random queries");
    bench->add_option("--seed", be_seed);
    bench->add_option("--baseline-input", be_baseline,
                      "edge list; also time plain bidirectional Dijkstra");

    // update
    auto* update = app.add_subcommand("update", "insert/delete vertices, rewrite atomically");
    std::string u_index;
    std::vector<std::string> u_inserts;
    std::vector<std::uint64_t> u_deletes;
    update->add_option("--index", u_index)->required();
    update->add_option("--insert", u_inserts, "\"u: v1 w1, v2 w2, ...\"");
    update->add_option("--delete", u_deletes, "vertex id to delete");

    CLI11_PARSE(app, argc, argv);

    try {
        if (build->parsed()) {
            if (b_input.empty() == gen.kind.empty())
                throw std::runtime_error("build needs exactly one of --input / --gen");
            return cmd_build(b_input, gen, b_output, sigma, max_k, directed, no_paths);
        }
        if (query->parsed()) return cmd_query(q_index, q_pairs, q_path, q_threads);
        if (oracle->parsed()) return cmd_oracle(o_input, o_pairs, o_directed);
        if (stats->parsed()) return cmd_stats(s_index);
        if (bench->parsed()) return cmd_bench(be_index, be_count, be_seed, be_baseline);
        if (update->parsed()) return cmd_update(u_index, u_inserts, u_deletes);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
