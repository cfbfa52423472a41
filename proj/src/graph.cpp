#include "curvscape/graph.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <filesystem>
#include <fstream>
#include <limits>
#include <set>
#include <sstream>

#include <json.hpp>

namespace curvscape {

Graph::Graph(int n, std::vector<Edge> edges) : n_(n) {
    if (n < 0) throw input_error("graph: negative vertex count");
    std::set<Edge> dedup;
    for (auto [u, v] : edges) {
        if (u == v) throw input_error("graph: self-loop at vertex " + std::to_string(u));
        if (u < 0 || v < 0 || u >= n || v >= n)
            throw input_error("graph: edge (" + std::to_string(u) + "," +
                              std::to_string(v) + ") out of range [0," +
                              std::to_string(n) + ")");
        if (u > v) std::swap(u, v);
        dedup.emplace(u, v);
    }
    edges_.assign(dedup.begin(), dedup.end());
    adj_.resize(n);
    for (auto [u, v] : edges_) {
        adj_[u].push_back(v);
        adj_[v].push_back(u);
    }
    for (auto& nb : adj_) std::sort(nb.begin(), nb.end());
}

bool Graph::has_edge(int u, int v) const {
    if (u == v) return false;
    const auto& nb = adj_[u];
    return std::binary_search(nb.begin(), nb.end(), v);
}

std::pair<std::vector<int>, int> Graph::components() const {
    std::vector<int> comp(n_, -1);
    int count = 0;
    for (int s = 0; s < n_; ++s) {
        if (comp[s] != -1) continue;
        comp[s] = count;
        std::deque<int> queue{s};
        while (!queue.empty()) {
            int u = queue.front();
            queue.pop_front();
            for (int w : adj_[u]) {
                if (comp[w] == -1) {
                    comp[w] = count;
                    queue.push_back(w);
                }
            }
        }
        ++count;
    }
    return {std::move(comp), count};
}

bool Graph::connected() const {
    if (n_ <= 1) return true;
    return components().second == 1;
}

std::vector<int> Graph::bfs_distances(int source) const {
    std::vector<int> dist(n_, -1);
    dist[source] = 0;
    std::deque<int> queue{source};
    while (!queue.empty()) {
        int u = queue.front();
        queue.pop_front();
        for (int w : adj_[u]) {
            if (dist[w] == -1) {
                dist[w] = dist[u] + 1;
                queue.push_back(w);
            }
        }
    }
    return dist;
}

// --- file IO -------------------------------------------------------------

Graph load_edge_list(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    int line_no = 0;
    int declared_n = -1;
    int max_id = -1;
    std::vector<Edge> edges;
    while (std::getline(in, line)) {
        ++line_no;
        auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        std::istringstream ls(line);
        std::string first;
        if (!(ls >> first)) continue;  // blank / comment line
        if (first == "n") {
            long long cnt;
            if (!(ls >> cnt) || cnt < 0)
                throw input_error("edge list: malformed header at line " +
                                  std::to_string(line_no));
            declared_n = static_cast<int>(cnt);
            continue;
        }
        long long u, v;
        try {
            u = std::stoll(first);
        } catch (...) {
            throw input_error("edge list: malformed line " + std::to_string(line_no));
        }
        std::string rest;
        if (!(ls >> v) || (ls >> rest) || u < 0 || v < 0)
            throw input_error("edge list: malformed line " + std::to_string(line_no));
        if (u == v)
            throw input_error("edge list: self-loop at line " + std::to_string(line_no));
        max_id = std::max<long long>(max_id, std::max(u, v));
        edges.emplace_back(static_cast<int>(u), static_cast<int>(v));
    }
    int n = declared_n >= 0 ? declared_n : max_id + 1;
    if (max_id >= n)
        throw input_error("edge list: vertex id exceeds declared count");
    return Graph(n, std::move(edges));
}

std::string to_edge_list(const Graph& g) {
    std::ostringstream out;
    out << "n " << g.num_vertices() << "\n";
    for (auto [u, v] : g.edges()) out << u << " " << v << "\n";
    return out.str();
}

Graph load_edge_list_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw input_error("cannot open graph file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return load_edge_list(buf.str());
}

GraphSet load_graph_set(const std::string& path) {
    namespace fs = std::filesystem;
    GraphSet gs;
    if (fs::is_directory(path)) {
        std::vector<fs::path> files;
        for (const auto& entry : fs::directory_iterator(path)) {
            if (entry.path().extension() == ".edges") files.push_back(entry.path());
        }
        std::sort(files.begin(), files.end());
        for (const auto& f : files) {
            gs.graphs.push_back(load_edge_list_file(f.string()));
            gs.labels.push_back(f.stem().string());
        }
    } else {
        std::ifstream in(path);
        if (!in) throw input_error("cannot open graph set: " + path);
        std::string line;
        int line_no = 0;
        while (std::getline(in, line)) {
            ++line_no;
            if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
            nlohmann::json j;
            try {
                j = nlohmann::json::parse(line);
            } catch (const std::exception& e) {
                throw input_error("graph set: bad JSON at line " +
                                  std::to_string(line_no) + ": " + e.what());
            }
            std::vector<Edge> edges;
            for (const auto& e : j.at("edges"))
                edges.emplace_back(e.at(0).get<int>(), e.at(1).get<int>());
            gs.graphs.emplace_back(j.at("n").get<int>(), std::move(edges));
            gs.labels.push_back(j.value("label", std::string{}));
        }
    }
    if (gs.graphs.empty()) throw input_error("graph set is empty: " + path);
    return gs;
}

void save_graph_set_jsonl(const GraphSet& gs, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw input_error("cannot write graph set: " + path);
    for (std::size_t i = 0; i < gs.graphs.size(); ++i) {
        const Graph& g = gs.graphs[i];
        nlohmann::ordered_json j;
        j["n"] = g.num_vertices();
        auto arr = nlohmann::ordered_json::array();
        for (auto [u, v] : g.edges()) arr.push_back({u, v});
        j["edges"] = std::move(arr);
        if (i < gs.labels.size() && !gs.labels[i].empty()) j["label"] = gs.labels[i];
        out << j.dump() << "\n";
    }
}

// --- generators ----------------------------------------------------------

Graph generate_er(int n, double p, std::uint64_t seed) {
    if (n < 1) throw input_error("generate_er: n must be >= 1");
    if (p < 0.0 || p > 1.0) throw input_error("generate_er: p outside [0,1]");
    Rng rng(seed);
    std::vector<Edge> edges;
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v)
            if (rng.next_double() < p) edges.emplace_back(u, v);
    return Graph(n, std::move(edges));
}

Graphon graphon_from_name(const std::string& name) {
    if (name == "W1" || name == "w1") return Graphon::W1;
    if (name == "W2" || name == "w2") return Graphon::W2;
    if (name == "W3" || name == "w3") return Graphon::W3;
    if (name == "W4" || name == "w4") return Graphon::W4;
    throw input_error("unknown graphon: " + name);
}

static double graphon_value(Graphon which, double u, double v) {
    switch (which) {
        case Graphon::W1: return u * v;
        case Graphon::W2: return std::exp(-std::pow(std::max(u, v), 0.75));
        case Graphon::W3:
            return std::exp(-0.5 * (std::min(u, v) + std::sqrt(u) + std::sqrt(v)));
        case Graphon::W4: return std::abs(u - v);
    }
    throw input_error("unknown graphon");
}

Graph sample_graphon_at(Graphon which, const std::vector<double>& u,
                        std::uint64_t seed) {
    const int n = static_cast<int>(u.size());
    if (n < 1) throw input_error("sample_graphon: n must be >= 1");
    Rng rng(seed);
    std::vector<Edge> edges;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (rng.next_double() < graphon_value(which, u[i], u[j]))
                edges.emplace_back(i, j);
    return Graph(n, std::move(edges));
}

Graph sample_graphon(Graphon which, int n, std::uint64_t seed) {
    if (n < 1) throw input_error("sample_graphon: n must be >= 1");
    Rng rng(seed);
    std::vector<double> u(n);
    for (auto& x : u) x = rng.next_double();
    return sample_graphon_at(which, u, rng.fork_seed());
}

Graph generate_community(int n, std::uint64_t seed, double p_intra, double p_inter) {
    if (n < 4 || n % 2 != 0)
        throw input_error("generate_community: n must be even and >= 4");
    Rng rng(seed);
    const int half = n / 2;
    std::vector<Edge> edges;
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v) {
            double p = ((u < half) == (v < half)) ? p_intra : p_inter;
            if (rng.next_double() < p) edges.emplace_back(u, v);
        }
    return Graph(n, std::move(edges));
}

static Graph cycle_graph(int n) {
    std::vector<Edge> edges;
    for (int i = 0; i < n; ++i) edges.emplace_back(i, (i + 1) % n);
    return Graph(n, std::move(edges));
}

static Graph complete_graph(int n) {
    std::vector<Edge> edges;
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v) edges.emplace_back(u, v);
    return Graph(n, std::move(edges));
}

Graph named_graph(const std::string& name) {
    if (name == "k3") return complete_graph(3);
    if (name == "k4") return complete_graph(4);
    if (name == "c4") return cycle_graph(4);
    if (name == "c6") return cycle_graph(6);
    if (name == "path3") return Graph(3, {{0, 1}, {1, 2}});
    if (name == "star4") return Graph(5, {{0, 1}, {0, 2}, {0, 3}, {0, 4}});
    if (name == "rook4x4") {
        // K4 x K4: vertices (a,b), adjacent iff same row or same column.
        std::vector<Edge> edges;
        auto id = [](int a, int b) { return 4 * a + b; };
        for (int a = 0; a < 4; ++a)
            for (int b = 0; b < 4; ++b) {
                for (int b2 = b + 1; b2 < 4; ++b2) edges.emplace_back(id(a, b), id(a, b2));
                for (int a2 = a + 1; a2 < 4; ++a2) edges.emplace_back(id(a, b), id(a2, b));
            }
        return Graph(16, std::move(edges));
    }
    if (name == "shrikhande") {
        // Cayley graph of Z4 x Z4 with connection set {+-(1,0), +-(0,1), +-(1,1)}.
        std::vector<Edge> edges;
        auto id = [](int a, int b) { return 4 * ((a % 4 + 4) % 4) + ((b % 4 + 4) % 4); };
        const int da[3] = {1, 0, 1};
        const int db[3] = {0, 1, 1};
        for (int a = 0; a < 4; ++a)
            for (int b = 0; b < 4; ++b)
                for (int k = 0; k < 3; ++k)
                    edges.emplace_back(id(a, b), id(a + da[k], b + db[k]));
        return Graph(16, std::move(edges));
    }
    throw input_error("unknown named graph: " + name);
}

Graph perturb(const Graph& g, const PerturbationSpec& spec) {
    if (spec.fraction < 0.0 || spec.fraction >= 1.0)
        throw input_error("perturb: fraction outside [0,1)");
    const int request = static_cast<int>(std::llround(spec.fraction * g.num_edges()));
    if (request == 0) return g;
    Rng rng(spec.seed);
    const int n = g.num_vertices();

    if (spec.mode == PerturbationSpec::Mode::add) {
        std::set<Edge> present(g.edges().begin(), g.edges().end());
        std::vector<Edge> candidates;
        for (int u = 0; u < n; ++u)
            for (int v = u + 1; v < n; ++v)
                if (!present.count({u, v})) candidates.emplace_back(u, v);
        if (static_cast<int>(candidates.size()) < request)
            throw compute_error("perturb: not enough non-edges for mode=add");
        // Partial Fisher-Yates: draw `request` distinct candidates.
        std::vector<Edge> edges = g.edges();
        for (int i = 0; i < request; ++i) {
            std::size_t j = i + rng.next_below(candidates.size() - i);
            std::swap(candidates[i], candidates[j]);
            edges.push_back(candidates[i]);
        }
        return Graph(n, std::move(edges));
    }

    // Deletion. With preserve_connectivity, a draw that would split a
    // component is redrawn, capped at 100x the request size.
    std::vector<Edge> remaining = g.edges();
    int removed = 0;
    long long attempts = 0;
    const long long cap = 100LL * request;
    const int base_components = g.components().second;
    while (removed < request) {
        if (remaining.empty() || attempts >= cap)
            throw compute_error("perturb: candidate exhaustion for mode=delete");
        ++attempts;
        std::size_t idx = rng.next_below(remaining.size());
        Edge candidate = remaining[idx];
        if (spec.preserve_connectivity) {
            std::vector<Edge> trial = remaining;
            trial.erase(trial.begin() + static_cast<std::ptrdiff_t>(idx));
            Graph h(n, trial);
            if (h.components().second != base_components) continue;  // bridge, redraw
        }
        remaining.erase(remaining.begin() + static_cast<std::ptrdiff_t>(idx));
        ++removed;
        (void)candidate;
    }
    return Graph(n, std::move(remaining));
}

std::vector<std::vector<double>> shortest_path_matrix(const Graph& g) {
    const int n = g.num_vertices();
    const double inf = std::numeric_limits<double>::infinity();
    std::vector<std::vector<double>> d(n, std::vector<double>(n, inf));
    for (int s = 0; s < n; ++s) {
        auto dist = g.bfs_distances(s);
        for (int t = 0; t < n; ++t)
            if (dist[t] >= 0) d[s][t] = dist[t];
    }
    return d;
}

}  // namespace curvscape
