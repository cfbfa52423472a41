#include "curvscape/curvature.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>

#include <Eigen/Dense>

namespace curvscape {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

double NodeMeasure::total_mass() const {
    double s = 0.0;
    for (const auto& [v, m] : support) s += m;
    return s;
}

CurvatureKind curvature_kind_from_name(const std::string& name) {
    if (name == "frc") return CurvatureKind::frc;
    if (name == "orc") return CurvatureKind::orc;
    if (name == "rec") return CurvatureKind::rec;
    throw input_error("unknown curvature kind: " + name);
}

std::string curvature_kind_name(CurvatureKind kind) {
    switch (kind) {
        case CurvatureKind::frc: return "frc";
        case CurvatureKind::orc: return "orc";
        case CurvatureKind::rec: return "rec";
    }
    return "?";
}

EdgeFunction forman(const Graph& g) {
    EdgeFunction out;
    for (auto [u, v] : g.edges()) {
        const auto& nu = g.neighbours(u);
        const auto& nv = g.neighbours(v);
        std::vector<int> common;
        std::set_intersection(nu.begin(), nu.end(), nv.begin(), nv.end(),
                              std::back_inserter(common));
        out[{u, v}] = 4.0 - g.degree(u) - g.degree(v) + 3.0 * common.size();
    }
    return out;
}

NodeMeasure dirac(int v) { return NodeMeasure{{{v, 1.0}}}; }

NodeMeasure node_measure(const Graph& g, int v, const MeasureConfig& cfg) {
    if (g.degree(v) == 0)
        throw compute_error("node_measure: isolated vertex " + std::to_string(v));
    NodeMeasure out;
    if (cfg.kind == MeasureConfig::Kind::uniform_1hop) {
        const double alpha = cfg.self_mass;
        const double share = (1.0 - alpha) / g.degree(v);
        if (alpha > 0.0) out.support.emplace_back(v, 0.0);  // filled below
        std::map<int, double> mass;
        if (alpha > 0.0) mass[v] = alpha;
        for (int w : g.neighbours(v)) mass[w] += share;
        out.support.assign(mass.begin(), mass.end());
        return out;
    }
    // Random walk: phi_k = k-step simple-random-walk distribution from v,
    // summed for k = 1..m, then renormalised (each phi_k has mass 1, so the
    // normaliser is m).
    const int m = cfg.rw_steps;
    if (m < 1) throw input_error("node_measure: rw_steps must be >= 1");
    std::map<int, double> current{{v, 1.0}};
    std::map<int, double> total;
    for (int k = 0; k < m; ++k) {
        std::map<int, double> next;
        for (const auto& [x, mx] : current) {
            const double share = mx / g.degree(x);
            for (int w : g.neighbours(x)) next[w] += share;
        }
        current = std::move(next);
        for (const auto& [x, mx] : current) total[x] += mx;
    }
    for (auto it = total.begin(); it != total.end();) {
        it->second /= m;
        it = it->second > 0.0 ? std::next(it) : total.erase(it);
    }
    out.support.assign(total.begin(), total.end());
    return out;
}

// Exact transportation problem via successive shortest paths with
// potentials. Supports are small (a few dozen vertices at most), so a dense
// Dijkstra per augmentation is plenty.
double wasserstein1(const NodeMeasure& mu, const NodeMeasure& nu,
                    const std::vector<std::vector<double>>& dist) {
    const int a = static_cast<int>(mu.support.size());
    const int b = static_cast<int>(nu.support.size());
    std::vector<std::vector<double>> cost(a, std::vector<double>(b));
    for (int i = 0; i < a; ++i)
        for (int j = 0; j < b; ++j) {
            double d = dist[mu.support[i].first][nu.support[j].first];
            if (!std::isfinite(d))
                throw compute_error("wasserstein1: disconnected supports");
            cost[i][j] = d;
        }
    std::vector<double> supply(a), demand(b);
    for (int i = 0; i < a; ++i) supply[i] = mu.support[i].second;
    for (int j = 0; j < b; ++j) demand[j] = nu.support[j].second;

    // Node potentials keep reduced costs non-negative (costs are a metric,
    // so the initial all-zero potential works with Dijkstra).
    std::vector<double> pot_a(a, 0.0), pot_b(b, 0.0);
    std::vector<std::vector<double>> flow(a, std::vector<double>(b, 0.0));
    constexpr double eps = 1e-15;
    double total = 0.0;
    while (true) {
        int source = -1;
        for (int i = 0; i < a; ++i)
            if (supply[i] > eps) { source = i; break; }
        if (source == -1) break;

        // Dijkstra on the residual bipartite graph from `source`.
        std::vector<double> da(a, kInf), db(b, kInf);
        std::vector<int> prev_a(a, -1), prev_b(b, -1);  // predecessor indices
        da[source] = 0.0;
        using Item = std::pair<double, int>;  // (dist, node); node < a is left side
        std::priority_queue<Item, std::vector<Item>, std::greater<>> heap;
        heap.emplace(0.0, source);
        while (!heap.empty()) {
            auto [d, node] = heap.top();
            heap.pop();
            if (node < a) {
                if (d > da[node] + eps) continue;
                for (int j = 0; j < b; ++j) {
                    double rc = cost[node][j] - pot_a[node] - pot_b[j];
                    if (da[node] + rc < db[j] - eps) {
                        db[j] = da[node] + rc;
                        prev_b[j] = node;
                        heap.emplace(db[j], a + j);
                    }
                }
            } else {
                int j = node - a;
                if (d > db[j] + eps) continue;
                for (int i = 0; i < a; ++i) {
                    if (flow[i][j] <= eps) continue;  // reverse arc needs flow
                    double rc = -(cost[i][j] - pot_a[i] - pot_b[j]);
                    if (db[j] + rc < da[i] - eps) {
                        da[i] = db[j] + rc;
                        prev_a[i] = j;
                        heap.emplace(da[i], i);
                    }
                }
            }
        }

        int sink = -1;
        double best = kInf;
        for (int j = 0; j < b; ++j)
            if (demand[j] > eps && db[j] < best) { best = db[j]; sink = j; }
        if (sink == -1)
            throw compute_error("wasserstein1: unbalanced measures");

        // Potential update with distances capped at the sink distance keeps
        // every residual reduced cost non-negative for the next round.
        const double cap_dist = db[sink];
        for (int i = 0; i < a; ++i) pot_a[i] -= std::min(da[i], cap_dist);
        for (int j = 0; j < b; ++j) pot_b[j] += std::min(db[j], cap_dist);

        // Bottleneck along the augmenting path.
        double push = std::min(supply[source], demand[sink]);
        for (int j = sink; j != -1;) {
            int i = prev_b[j];
            if (prev_a[i] == -1 || i == source) { j = -1; continue; }
            push = std::min(push, flow[i][prev_a[i]]);
            j = prev_a[i];
        }
        // Apply.
        for (int j = sink; j != -1;) {
            int i = prev_b[j];
            flow[i][j] += push;
            if (prev_a[i] == -1 || i == source) { j = -1; continue; }
            flow[i][prev_a[i]] -= push;
            j = prev_a[i];
        }
        supply[source] -= push;
        demand[sink] -= push;
    }
    for (int i = 0; i < a; ++i)
        for (int j = 0; j < b; ++j) total += flow[i][j] * cost[i][j];
    return total;
}

std::map<Edge, double> ollivier_ricci_pairs(const Graph& g, const MeasureConfig& cfg,
                                            const std::vector<Edge>& pairs) {
    auto dist = shortest_path_matrix(g);
    std::vector<NodeMeasure> measures(g.num_vertices());
    std::vector<bool> have(g.num_vertices(), false);
    auto measure_of = [&](int v) -> const NodeMeasure& {
        if (!have[v]) {
            measures[v] = node_measure(g, v, cfg);
            have[v] = true;
        }
        return measures[v];
    };
    std::map<Edge, double> out;
    for (auto [i, j] : pairs) {
        if (i == j) throw input_error("ollivier_ricci: pair with i == j");
        double d = dist[i][j];
        if (!std::isfinite(d))
            throw compute_error("ollivier_ricci: vertices " + std::to_string(i) +
                                " and " + std::to_string(j) + " are disconnected");
        double w = wasserstein1(measure_of(i), measure_of(j), dist);
        out[{std::min(i, j), std::max(i, j)}] = 1.0 - w / d;
    }
    return out;
}

EdgeFunction ollivier_ricci(const Graph& g, const MeasureConfig& cfg) {
    return ollivier_ricci_pairs(g, cfg, g.edges());
}

ResistanceData resistance_data(const Graph& g) {
    const int n = g.num_vertices();
    ResistanceData out;
    out.R.assign(n, std::vector<double>(n, kInf));
    out.p.assign(n, 0.0);
    for (int i = 0; i < n; ++i) out.R[i][i] = 0.0;

    auto [comp, count] = g.components();
    for (int c = 0; c < count; ++c) {
        std::vector<int> verts;
        for (int v = 0; v < n; ++v)
            if (comp[v] == c) verts.push_back(v);
        const int k = static_cast<int>(verts.size());
        if (k == 1) continue;
        std::vector<int> local(n, -1);
        for (int i = 0; i < k; ++i) local[verts[i]] = i;

        // Grounded Laplacian: drop the row/column of verts[0], factorise.
        Eigen::MatrixXd L = Eigen::MatrixXd::Zero(k - 1, k - 1);
        for (int i = 1; i < k; ++i) L(i - 1, i - 1) = g.degree(verts[i]);
        for (auto [u, v] : g.edges()) {
            if (comp[u] != c) continue;
            int lu = local[u], lv = local[v];
            if (lu > 0 && lv > 0) {
                L(lu - 1, lv - 1) -= 1.0;
                L(lv - 1, lu - 1) -= 1.0;
            }
        }
        Eigen::MatrixXd S = L.ldlt().solve(Eigen::MatrixXd::Identity(k - 1, k - 1));
        auto entry = [&](int li, int lj) -> double {
            if (li == 0 || lj == 0) return 0.0;
            return S(li - 1, lj - 1);
        };
        for (int i = 0; i < k; ++i)
            for (int j = i + 1; j < k; ++j) {
                double r = entry(i, i) + entry(j, j) - 2.0 * entry(i, j);
                out.R[verts[i]][verts[j]] = r;
                out.R[verts[j]][verts[i]] = r;
            }
    }
    for (int i = 0; i < n; ++i) {
        double s = 0.0;
        for (int j : g.neighbours(i)) s += out.R[i][j];
        out.p[i] = 1.0 - 0.5 * s;
    }
    return out;
}

EdgeFunction resistance_curvature(const Graph& g) {
    auto data = resistance_data(g);
    EdgeFunction out;
    for (auto [u, v] : g.edges())
        out[{u, v}] = 2.0 * (data.p[u] + data.p[v]) / data.R[u][v];
    return out;
}

EdgeFunction curvature(const Graph& g, CurvatureKind kind, const MeasureConfig& cfg) {
    switch (kind) {
        case CurvatureKind::frc: return forman(g);
        case CurvatureKind::orc: return ollivier_ricci(g, cfg);
        case CurvatureKind::rec: return resistance_curvature(g);
    }
    throw input_error("unknown curvature kind");
}

}  // namespace curvscape
