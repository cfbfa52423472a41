#include "curvscape/persistence.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

namespace curvscape {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();

// Plain union-find with path halving. Roots carry the component birth value.
struct UnionFind {
    std::vector<int> parent;
    explicit UnionFind(int n) : parent(n) {
        std::iota(parent.begin(), parent.end(), 0);
    }
    int find(int x) {
        while (parent[x] != x) {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        return x;
    }
};
}  // namespace

bool PersistencePair::essential() const { return std::isinf(death); }

Filtration build_filtration(const Graph& g, const EdgeFunction& f) {
    if (f.size() != static_cast<std::size_t>(g.num_edges())) {
        std::ostringstream msg;
        msg << "build_filtration: function domain mismatch; missing edges:";
        for (auto [u, v] : g.edges())
            if (!f.count({u, v})) msg << " (" << u << "," << v << ")";
        throw input_error(msg.str());
    }
    Filtration out;
    for (auto [u, v] : g.edges()) {
        auto it = f.find({u, v});
        if (it == f.end())
            throw input_error("build_filtration: missing edge value");
        out.steps.emplace_back(Edge{u, v}, it->second);
    }
    std::sort(out.steps.begin(), out.steps.end(), [](const auto& a, const auto& b) {
        if (a.second != b.second) return a.second < b.second;
        return a.first < b.first;
    });
    for (const auto& [e, val] : out.steps) {
        for (int v : {e.first, e.second}) {
            auto [it, inserted] = out.vertex_entry.emplace(v, val);
            if (!inserted) it->second = std::min(it->second, val);
        }
    }
    return out;
}

PersistenceDiagram persistence_diagram(const Filtration& filt) {
    PersistenceDiagram out;
    int max_vertex = -1;
    for (const auto& [v, _] : filt.vertex_entry) max_vertex = std::max(max_vertex, v);
    UnionFind uf(max_vertex + 1);
    std::vector<double> root_birth(max_vertex + 1, kInf);
    std::vector<bool> entered(max_vertex + 1, false);

    for (const auto& [e, val] : filt.steps) {
        for (int v : {e.first, e.second}) {
            if (!entered[v]) {
                entered[v] = true;
                root_birth[v] = val;
            }
        }
        int ru = uf.find(e.first);
        int rv = uf.find(e.second);
        if (ru == rv) {
            out.dim1.push_back({val, kInf});
            continue;
        }
        // Elder rule: the younger root (larger birth, tie -> larger id) dies.
        int dying = rv, surviving = ru;
        if (root_birth[ru] > root_birth[rv] ||
            (root_birth[ru] == root_birth[rv] && ru > rv)) {
            dying = ru;
            surviving = rv;
        }
        out.dim0.push_back({root_birth[dying], val});
        uf.parent[dying] = surviving;
    }
    for (int v = 0; v <= max_vertex; ++v)
        if (entered[v] && uf.find(v) == v) out.dim0.push_back({root_birth[v], kInf});
    std::sort(out.dim0.begin(), out.dim0.end());
    std::sort(out.dim1.begin(), out.dim1.end());
    return out;
}

std::pair<int, int> betti_oracle(const Graph& g, const EdgeFunction& f, double t) {
    std::vector<Edge> sub;
    for (const auto& [e, val] : f)
        if (val <= t) sub.push_back(e);
    Graph h(g.num_vertices(), sub);
    auto [comp, _] = h.components();
    int vertices = 0;
    std::vector<bool> comp_used(g.num_vertices(), false);
    int b0 = 0;
    for (int v = 0; v < g.num_vertices(); ++v) {
        if (h.degree(v) == 0) continue;
        ++vertices;
        if (!comp_used[comp[v]]) {
            comp_used[comp[v]] = true;
            ++b0;
        }
    }
    int b1 = static_cast<int>(sub.size()) - vertices + b0;
    return {b0, b1};
}

std::pair<int, int> alive_at(const PersistenceDiagram& d, double t) {
    int b0 = 0, b1 = 0;
    for (const auto& p : d.dim0)
        if (p.birth <= t && t < p.death) ++b0;
    for (const auto& p : d.dim1)
        if (p.birth <= t && t < p.death) ++b1;
    return {b0, b1};
}

namespace {

double diagonal_cost(const PersistencePair& p) { return (p.death - p.birth) / 2.0; }

double chebyshev(const PersistencePair& a, const PersistencePair& b) {
    return std::max(std::abs(a.birth - b.birth), std::abs(a.death - b.death));
}

// Kuhn's augmenting-path matching on an adjacency-list bipartite graph.
bool try_augment(int u, const std::vector<std::vector<int>>& adj,
                 std::vector<int>& match_right, std::vector<bool>& visited) {
    for (int w : adj[u]) {
        if (visited[w]) continue;
        visited[w] = true;
        if (match_right[w] == -1 ||
            try_augment(match_right[w], adj, match_right, visited)) {
            match_right[w] = u;
            return true;
        }
    }
    return false;
}

// Feasibility of a perfect matching at threshold c in the diagonal-augmented
// bipartite graph (left = A + diag copies of B, right = B + diag copies of A).
bool matching_feasible(const std::vector<PersistencePair>& A,
                       const std::vector<PersistencePair>& B, double c) {
    const int na = static_cast<int>(A.size());
    const int nb = static_cast<int>(B.size());
    const int total = na + nb;
    std::vector<std::vector<int>> adj(total);
    for (int i = 0; i < na; ++i) {
        for (int j = 0; j < nb; ++j)
            if (chebyshev(A[i], B[j]) <= c) adj[i].push_back(j);
        if (diagonal_cost(A[i]) <= c) adj[i].push_back(nb + i);  // own diagonal copy
    }
    for (int j = 0; j < nb; ++j) {  // left diag copy of B[j]
        if (diagonal_cost(B[j]) <= c) adj[na + j].push_back(j);
        for (int i = 0; i < na; ++i) adj[na + j].push_back(nb + i);  // diag-diag, cost 0
    }
    std::vector<int> match_right(total, -1);
    for (int u = 0; u < total; ++u) {
        std::vector<bool> visited(total, false);
        if (!try_augment(u, adj, match_right, visited)) return false;
    }
    return true;
}

// Bottleneck over finite pairs with diagonal augmentation: binary search over
// candidate costs + matching feasibility.
double bottleneck_finite(std::vector<PersistencePair> A, std::vector<PersistencePair> B) {
    if (A.empty() && B.empty()) return 0.0;
    std::vector<double> candidates{0.0};
    for (const auto& a : A) {
        candidates.push_back(diagonal_cost(a));
        for (const auto& b : B) candidates.push_back(chebyshev(a, b));
    }
    for (const auto& b : B) candidates.push_back(diagonal_cost(b));
    std::sort(candidates.begin(), candidates.end());
    candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());
    int lo = 0, hi = static_cast<int>(candidates.size()) - 1;
    while (lo < hi) {
        int mid = (lo + hi) / 2;
        if (matching_feasible(A, B, candidates[mid]))
            hi = mid;
        else
            lo = mid + 1;
    }
    return candidates[lo];
}

// Essential classes: both sides sorted by birth, matched in order
// (order-preserving matching is bottleneck-optimal on the line).
double bottleneck_essential(std::vector<double> a, std::vector<double> b) {
    if (a.size() != b.size()) return kInf;
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    double worst = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i)
        worst = std::max(worst, std::abs(a[i] - b[i]));
    return worst;
}

}  // namespace

double bottleneck(const PersistenceDiagram& a, const PersistenceDiagram& b, int dim) {
    const auto& pa = dim == 0 ? a.dim0 : a.dim1;
    const auto& pb = dim == 0 ? b.dim0 : b.dim1;
    std::vector<PersistencePair> fa, fb;
    std::vector<double> ea, eb;
    for (const auto& p : pa)
        p.essential() ? (void)ea.push_back(p.birth) : (void)fa.push_back(p);
    for (const auto& p : pb)
        p.essential() ? (void)eb.push_back(p.birth) : (void)fb.push_back(p);
    double essential_part = bottleneck_essential(std::move(ea), std::move(eb));
    if (std::isinf(essential_part)) return kInf;
    return std::max(essential_part, bottleneck_finite(std::move(fa), std::move(fb)));
}

double diagram_bound_upper(const EdgeFunction& f, const EdgeFunction& g) {
    if (f.empty() || g.empty())
        throw input_error("diagram_bound_upper: empty function domain");
    double fmin = kInf, fmax = -kInf, gmin = kInf, gmax = -kInf;
    for (const auto& [e, v] : f) {
        fmin = std::min(fmin, v);
        fmax = std::max(fmax, v);
    }
    for (const auto& [e, v] : g) {
        gmin = std::min(gmin, v);
        gmax = std::max(gmax, v);
    }
    return std::max(std::abs(fmax - gmin), std::abs(gmax - fmin));
}

double diagram_bound_lower(const EdgeFunction& f, const EdgeFunction& g) {
    if (f.empty() || g.empty())
        throw input_error("diagram_bound_lower: empty function domain");
    // inf over maps E_F -> E_G collapses to: for each x, the closest g value.
    double worst = 0.0;
    for (const auto& [e, x] : f) {
        double best = kInf;
        for (const auto& [e2, y] : g) best = std::min(best, std::abs(x - y));
        worst = std::max(worst, best);
    }
    return worst;
}

}  // namespace curvscape
