#include "regperc/graph.hpp"

#include <algorithm>
#include <queue>
#include <sstream>

#include <nlohmann/json.hpp>

#include "regperc/errors.hpp"
#include "regperc/rng.hpp"

namespace regperc {

bool Graph::adjacent(std::uint32_t u, std::uint32_t v) const {
    auto nb = neighbors(u);
    return std::binary_search(nb.begin(), nb.end(), v);
}

void validate_graph(const Graph& g) {
    if (g.n * g.d % 2 != 0)
        throw Error(ErrorCode::OddProduct, "n*d must be even");
    if (g.offsets.size() != g.n + 1 || g.targets.size() != g.n * g.d)
        throw Error(ErrorCode::BadInput, "adjacency arrays have wrong size");
    for (std::uint32_t v = 0; v < g.n; ++v) {
        auto nb = g.neighbors(v);
        if (nb.size() != g.d)
            throw Error(ErrorCode::BadInput, "vertex degree != d");
        for (std::size_t i = 0; i < nb.size(); ++i) {
            if (nb[i] >= g.n)
                throw Error(ErrorCode::BadInput, "neighbor id out of range");
            if (nb[i] == v)
                throw Error(ErrorCode::BadInput, "self loop");
            if (i > 0 && nb[i] <= nb[i - 1])
                throw Error(ErrorCode::BadInput, "neighbor list not strictly sorted");
            if (!g.adjacent(nb[i], v))
                throw Error(ErrorCode::BadInput, "adjacency not symmetric");
        }
    }
}

namespace {

Graph from_edge_list(std::size_t n, std::size_t d,
                     const std::vector<std::pair<std::uint32_t, std::uint32_t>>& edges) {
    Graph g;
    g.n = n;
    g.d = d;
    g.offsets.assign(n + 1, 0);
    for (auto [a, b] : edges) {
        ++g.offsets[a + 1];
        ++g.offsets[b + 1];
    }
    for (std::size_t v = 0; v < n; ++v) g.offsets[v + 1] += g.offsets[v];
    g.targets.assign(n * d, 0);
    std::vector<std::uint32_t> fill(n, 0);
    for (auto [a, b] : edges) {
        g.targets[g.offsets[a] + fill[a]++] = b;
        g.targets[g.offsets[b] + fill[b]++] = a;
    }
    for (std::uint32_t v = 0; v < n; ++v)
        std::sort(g.targets.begin() + g.offsets[v], g.targets.begin() + g.offsets[v + 1]);
    return g;
}

} // namespace

Graph generate_regular(std::size_t n, std::size_t d, std::uint64_t seed,
                       std::size_t max_restarts) {
    if (n * d % 2 != 0)
        throw Error(ErrorCode::OddProduct, "n*d must be even");
    if (d >= n)
        throw Error(ErrorCode::DegreeTooLarge, "d must be smaller than n");
    if (d < 3)
        throw Error(ErrorCode::BadInput, "d must be at least 3");
    if (max_restarts == 0) max_restarts = 10 * d * d;

    Rng rng(seed);
    std::vector<std::uint32_t> stubs(n * d);
    for (std::size_t v = 0; v < n; ++v)
        for (std::size_t j = 0; j < d; ++j) stubs[v * d + j] = static_cast<std::uint32_t>(v);

    std::vector<std::pair<std::uint32_t, std::uint32_t>> edges(n * d / 2);
    for (std::size_t attempt = 0; attempt < max_restarts; ++attempt) {
        // uniform permutation -> uniform perfect matching of half-edges
        for (std::size_t i = stubs.size() - 1; i > 0; --i)
            std::swap(stubs[i], stubs[rng.next_below(i + 1)]);

        bool simple = true;
        for (std::size_t e = 0; e < edges.size(); ++e) {
            std::uint32_t a = stubs[2 * e], b = stubs[2 * e + 1];
            if (a == b) {
                simple = false;
                break;
            }
            edges[e] = {std::min(a, b), std::max(a, b)};
        }
        if (simple) {
            std::sort(edges.begin(), edges.end());
            simple = std::adjacent_find(edges.begin(), edges.end()) == edges.end();
        }
        if (!simple) continue;

        Graph g = from_edge_list(n, d, edges);
        g.seed = seed;
        g.generator = "pairing";
        g.rejections = attempt;
        return g;
    }
    throw Error(ErrorCode::RejectionLimit,
                "no simple graph after " + std::to_string(max_restarts) +
                    " matchings (parameters outside desk scale)");
}

std::map<int, std::uint64_t> count_cycles(const Graph& g, int k_max) {
    if (k_max > 5)
        throw Error(ErrorCode::KTooLarge, "cycle counting capped at k=5");
    if (k_max < 3)
        throw Error(ErrorCode::BadInput, "k_max must be at least 3");

    std::vector<std::uint64_t> raw(static_cast<std::size_t>(k_max) + 1, 0);
    std::vector<char> on_path(g.n, 0);

    // DFS restricted to vertices > start so each cycle is found at its minimal
    // vertex; each one is still traversed in both directions, hence /2 below.
    struct Frame {
        std::uint32_t v;
        std::size_t next;
    };
    std::vector<Frame> stack;
    for (std::uint32_t s = 0; s < g.n; ++s) {
        on_path[s] = 1;
        stack.clear();
        stack.push_back({s, 0});
        while (!stack.empty()) {
            Frame& fr = stack.back();
            auto nb = g.neighbors(fr.v);
            if (fr.next >= nb.size()) {
                on_path[fr.v] = 0;
                stack.pop_back();
                continue;
            }
            std::uint32_t u = nb[fr.next++];
            std::size_t depth = stack.size(); // edges used if we step to u
            if (u == s && depth >= 3) {
                ++raw[depth];
            } else if (u > s && !on_path[u] && depth < static_cast<std::size_t>(k_max)) {
                on_path[u] = 1;
                stack.push_back({u, 0});
            }
        }
        on_path[s] = 0;
    }

    std::map<int, std::uint64_t> out;
    for (int k = 3; k <= k_max; ++k) out[k] = raw[static_cast<std::size_t>(k)] / 2;
    return out;
}

namespace {

// eccentricity of src, or nullopt when BFS misses a vertex
std::optional<std::size_t> eccentricity(const Graph& g, std::uint32_t src,
                                        std::vector<std::uint32_t>& dist) {
    const std::uint32_t unseen = UINT32_MAX;
    dist.assign(g.n, unseen);
    std::queue<std::uint32_t> q;
    dist[src] = 0;
    q.push(src);
    std::size_t reached = 1;
    std::uint32_t ecc = 0;
    while (!q.empty()) {
        std::uint32_t v = q.front();
        q.pop();
        for (std::uint32_t u : g.neighbors(v)) {
            if (dist[u] == unseen) {
                dist[u] = dist[v] + 1;
                ecc = std::max(ecc, dist[u]);
                ++reached;
                q.push(u);
            }
        }
    }
    if (reached != g.n) return std::nullopt;
    return ecc;
}

} // namespace

std::optional<std::size_t> diameter(const Graph& g) {
    std::vector<std::uint32_t> dist;
    std::size_t diam = 0;
    for (std::uint32_t v = 0; v < g.n; ++v) {
        auto ecc = eccentricity(g, v, dist);
        if (!ecc) return std::nullopt;
        diam = std::max(diam, *ecc);
    }
    return diam;
}

std::size_t component_count(const Graph& g) {
    std::vector<char> seen(g.n, 0);
    std::size_t comps = 0;
    std::queue<std::uint32_t> q;
    for (std::uint32_t s = 0; s < g.n; ++s) {
        if (seen[s]) continue;
        ++comps;
        seen[s] = 1;
        q.push(s);
        while (!q.empty()) {
            std::uint32_t v = q.front();
            q.pop();
            for (std::uint32_t u : g.neighbors(v))
                if (!seen[u]) {
                    seen[u] = 1;
                    q.push(u);
                }
        }
    }
    return comps;
}

GraphStats compute_stats(const Graph& g) {
    GraphStats st;
    st.cycle_counts = count_cycles(g, 5);
    st.diameter = diameter(g);
    st.component_count = component_count(g);
    return st;
}

std::string graph_to_json(const Graph& g) {
    std::vector<std::pair<std::uint32_t, std::uint32_t>> edges;
    edges.reserve(g.n * g.d / 2);
    for (std::uint32_t v = 0; v < g.n; ++v)
        for (std::uint32_t u : g.neighbors(v))
            if (v < u) edges.emplace_back(v, u);
    std::sort(edges.begin(), edges.end());

    std::ostringstream out;
    out << "{\"n\":" << g.n << ",\"d\":" << g.d << ",\"seed\":" << g.seed
        << ",\"edges\":[";
    for (std::size_t i = 0; i < edges.size(); ++i) {
        if (i) out << ',';
        out << '[' << edges[i].first << ',' << edges[i].second << ']';
    }
    out << "]}";
    return out.str();
}

Graph graph_from_json(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorCode::BadInput, std::string("graph json: ") + e.what());
    }
    if (!j.contains("n") || !j.contains("d") || !j.contains("edges"))
        throw Error(ErrorCode::BadInput, "graph json: missing n/d/edges");
    std::size_t n = j["n"].get<std::size_t>();
    std::size_t d = j["d"].get<std::size_t>();
    std::vector<std::pair<std::uint32_t, std::uint32_t>> edges;
    for (const auto& e : j["edges"]) {
        std::uint32_t a = e.at(0).get<std::uint32_t>();
        std::uint32_t b = e.at(1).get<std::uint32_t>();
        if (a >= b)
            throw Error(ErrorCode::BadInput, "graph json: edges must have i<j");
        edges.emplace_back(a, b);
    }
    if (edges.size() != n * d / 2)
        throw Error(ErrorCode::BadInput, "graph json: edge count != n*d/2");
    Graph g = from_edge_list(n, d, edges);
    g.seed = j.value("seed", std::uint64_t{0});
    g.generator = "file";
    g.rejections = 0;
    validate_graph(g);
    return g;
}

} // namespace regperc
