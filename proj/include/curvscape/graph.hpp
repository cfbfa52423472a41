#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "curvscape/util.hpp"

namespace curvscape {

using Edge = std::pair<int, int>;  // normalised u < v

// Undirected simple graph with dense vertex ids [0, n).
class Graph {
public:
    Graph() = default;
    Graph(int n, std::vector<Edge> edges);

    int num_vertices() const { return n_; }
    int num_edges() const { return static_cast<int>(edges_.size()); }
    const std::vector<Edge>& edges() const { return edges_; }
    const std::vector<int>& neighbours(int v) const { return adj_[v]; }
    int degree(int v) const { return static_cast<int>(adj_[v].size()); }
    bool has_edge(int u, int v) const;

    // Connected-component id per vertex plus component count.
    std::pair<std::vector<int>, int> components() const;
    bool connected() const;

    // Single-source hop distances; unreachable = -1.
    std::vector<int> bfs_distances(int source) const;

private:
    int n_ = 0;
    std::vector<Edge> edges_;            // sorted, deduplicated
    std::vector<std::vector<int>> adj_;  // sorted neighbour lists
};

struct GraphSet {
    std::vector<Graph> graphs;
    std::vector<std::string> labels;  // optional, empty or one per graph
};

struct PerturbationSpec {
    enum class Mode { add, remove };
    Mode mode = Mode::add;
    double fraction = 0.0;
    std::uint64_t seed = 0;
    bool preserve_connectivity = false;
};

// --- file IO -------------------------------------------------------------

// Parses the ".edges" text format: "u v" per line, '#' comments, optional
// "n <count>" header for isolated-vertex support. Duplicate/(v,u) pairs
// collapse; self-loops are rejected.
Graph load_edge_list(const std::string& text);
std::string to_edge_list(const Graph& g);

Graph load_edge_list_file(const std::string& path);

// A GraphSet on disk is either a directory of ".edges" files (sorted by
// filename) or a JSON-lines file: one {"n":…,"edges":[[u,v],…]} per line.
GraphSet load_graph_set(const std::string& path);
void save_graph_set_jsonl(const GraphSet& gs, const std::string& path);

// --- generators ----------------------------------------------------------

Graph generate_er(int n, double p, std::uint64_t seed);

enum class Graphon { W1, W2, W3, W4 };
Graphon graphon_from_name(const std::string& name);
Graph sample_graphon(Graphon which, int n, std::uint64_t seed);
// Test hook: explicit latent positions instead of uniform draws.
Graph sample_graphon_at(Graphon which, const std::vector<double>& u,
                        std::uint64_t seed);

// Two equal blocks, intra 0.7 / inter 0.05 by default.
Graph generate_community(int n, std::uint64_t seed, double p_intra = 0.7,
                         double p_inter = 0.05);

// k3, k4, c4, c6, path3, star4, rook4x4, shrikhande.
Graph named_graph(const std::string& name);

Graph perturb(const Graph& g, const PerturbationSpec& spec);

// Symmetric hop-distance matrix; unreachable pairs are +infinity.
std::vector<std::vector<double>> shortest_path_matrix(const Graph& g);

}  // namespace curvscape
