#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace regperc {

// Simple d-regular graph in compressed adjacency form. Neighbor lists are
// sorted ascending so all downstream iteration is deterministic.
struct Graph {
    std::size_t n = 0;
    std::size_t d = 0;
    std::vector<std::uint32_t> offsets; // size n+1, offsets[v]..offsets[v+1]
    std::vector<std::uint32_t> targets; // size n*d

    // provenance
    std::uint64_t seed = 0;
    std::string generator = "pairing";
    std::size_t rejections = 0;

    std::span<const std::uint32_t> neighbors(std::uint32_t v) const {
        return {targets.data() + offsets[v],
                targets.data() + offsets[v + 1]};
    }
    bool adjacent(std::uint32_t u, std::uint32_t v) const;
};

struct GraphStats {
    std::map<int, std::uint64_t> cycle_counts; // k -> count, k in 3..=5
    std::optional<std::size_t> diameter;       // nullopt when disconnected
    std::size_t component_count = 1;
};

// Pairing (configuration) model with whole-matching rejection: draw a uniform
// perfect matching of the n*d half-edges, restart on any loop or multi-edge.
// max_restarts == 0 selects the default 10*d^2 attempts.
Graph generate_regular(std::size_t n, std::size_t d, std::uint64_t seed,
                       std::size_t max_restarts = 0);

// Exact count of simple k-cycles for k in 3..=k_max (each cycle counted once).
std::map<int, std::uint64_t> count_cycles(const Graph& g, int k_max);

// Max BFS eccentricity; nullopt when the graph is disconnected.
std::optional<std::size_t> diameter(const Graph& g);

std::size_t component_count(const Graph& g);

GraphStats compute_stats(const Graph& g);

// File format: {"n":N,"d":D,"seed":S,"edges":[[i,j],...]} with i<j, edges
// sorted lexicographically. save/load round-trips bit-exactly.
std::string graph_to_json(const Graph& g);
Graph graph_from_json(const std::string& text);

// Validity checks used by the generator and the loader (throws on violation).
void validate_graph(const Graph& g);

} // namespace regperc
