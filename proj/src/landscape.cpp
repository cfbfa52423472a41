#include "curvscape/landscape.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace curvscape {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();

void scan_values(const std::vector<PersistencePair>& pairs, double& lo, double& hi) {
    for (const auto& p : pairs) {
        lo = std::min(lo, p.birth);
        hi = std::max(hi, p.birth);
        if (!p.essential()) {
            lo = std::min(lo, p.death);
            hi = std::max(hi, p.death);
        }
    }
}
}  // namespace

LandscapeGrid grid_for(const std::vector<PersistenceDiagram>& diagrams,
                       int resolution, double cap_padding) {
    if (resolution < 2) throw input_error("grid_for: resolution must be >= 2");
    double lo = kInf, hi = -kInf;
    for (const auto& d : diagrams) {
        scan_values(d.dim0, lo, hi);
        scan_values(d.dim1, lo, hi);
    }
    if (!std::isfinite(lo)) {
        lo = 0.0;
        hi = 0.0;
    }
    double pad = cap_padding > 0.0 ? cap_padding : std::max(1.0, hi - lo);
    return LandscapeGrid{lo, hi + pad, resolution};
}

PersistenceLandscape to_landscape(const PersistenceDiagram& d, const LandscapeGrid& grid,
                                  int max_depth) {
    for (const auto* pairs : {&d.dim0, &d.dim1})
        for (const auto& p : *pairs) {
            double death = p.essential() ? grid.hi : p.death;
            if (p.birth < grid.lo - 1e-12 || death > grid.hi + 1e-12)
                throw input_error("to_landscape: grid does not cover the diagram");
        }
    PersistenceLandscape out;
    out.grid = grid;
    for (int dim = 0; dim < 2; ++dim) {
        const auto& pairs = dim == 0 ? d.dim0 : d.dim1;
        if (pairs.empty()) continue;
        const int depth = std::min<int>(max_depth, static_cast<int>(pairs.size()));
        auto& funcs = out.dims[dim];
        funcs.assign(depth, std::vector<double>(grid.resolution, 0.0));
        std::vector<double> tent(pairs.size());
        for (int s = 0; s < grid.resolution; ++s) {
            double t = grid.at(s);
            for (std::size_t i = 0; i < pairs.size(); ++i) {
                double death = pairs[i].essential() ? grid.hi : pairs[i].death;
                tent[i] = std::max(0.0, std::min(t - pairs[i].birth, death - t));
            }
            // k-th largest tent value per depth.
            std::partial_sort(tent.begin(), tent.begin() + depth, tent.end(),
                              std::greater<>());
            for (int k = 0; k < depth; ++k) funcs[k][s] = tent[k];
        }
        // Drop all-zero trailing depths.
        while (!funcs.empty() &&
               std::all_of(funcs.back().begin(), funcs.back().end(),
                           [](double x) { return x == 0.0; }))
            funcs.pop_back();
    }
    return out;
}

PersistenceLandscape resample(const PersistenceLandscape& L, const LandscapeGrid& grid) {
    if (L.grid == grid) return L;
    PersistenceLandscape out;
    out.grid = grid;
    for (int dim = 0; dim < 2; ++dim) {
        for (const auto& f : L.dims[dim]) {
            std::vector<double> g(grid.resolution, 0.0);
            for (int s = 0; s < grid.resolution; ++s) {
                double t = grid.at(s);
                if (t <= L.grid.lo || t >= L.grid.hi) {
                    // Landscapes vanish at and beyond their grid endpoints.
                    double edge = t <= L.grid.lo ? f.front() : f.back();
                    g[s] = (t == L.grid.lo || t == L.grid.hi) ? edge : 0.0;
                    continue;
                }
                double x = (t - L.grid.lo) / L.grid.step();
                int i = std::min<int>(static_cast<int>(x), L.grid.resolution - 2);
                double frac = x - i;
                g[s] = f[i] * (1.0 - frac) + f[i + 1] * frac;
            }
            out.dims[dim].push_back(std::move(g));
        }
    }
    return out;
}

PersistenceLandscape average(const std::vector<PersistenceLandscape>& ls) {
    if (ls.empty()) throw input_error("average: empty landscape list");
    LandscapeGrid grid = ls.front().grid;
    for (const auto& L : ls) {
        grid.lo = std::min(grid.lo, L.grid.lo);
        grid.hi = std::max(grid.hi, L.grid.hi);
        grid.resolution = std::max(grid.resolution, L.grid.resolution);
    }
    PersistenceLandscape out;
    out.grid = grid;
    for (int dim = 0; dim < 2; ++dim) {
        std::size_t depth = 0;
        for (const auto& L : ls) depth = std::max(depth, L.dims[dim].size());
        out.dims[dim].assign(depth, std::vector<double>(grid.resolution, 0.0));
    }
    std::vector<PersistenceLandscape> resampled;
    resampled.reserve(ls.size());
    for (const auto& L : ls) resampled.push_back(resample(L, grid));
    // Sum the per-sample addends in sorted order so the result is exactly
    // invariant under permutations of the input list.
    std::vector<double> addends(ls.size());
    const double inv = 1.0 / static_cast<double>(ls.size());
    for (int dim = 0; dim < 2; ++dim)
        for (std::size_t k = 0; k < out.dims[dim].size(); ++k)
            for (int s = 0; s < grid.resolution; ++s) {
                for (std::size_t i = 0; i < resampled.size(); ++i) {
                    const auto& d = resampled[i].dims[dim];
                    addends[i] = k < d.size() ? d[k][s] : 0.0;
                }
                std::sort(addends.begin(), addends.end());
                double total = 0.0;
                for (double a : addends) total += a;
                out.dims[dim][k][s] = total * inv;
            }
    return out;
}

double landscape_norm(const PersistenceLandscape& L, double p) {
    if (std::isinf(p)) {
        double best = 0.0;
        for (const auto& dim : L.dims)
            for (const auto& f : dim)
                for (double x : f) best = std::max(best, std::abs(x));
        return best;
    }
    if (p < 1.0) throw input_error("landscape_norm: p must be >= 1 or infinity");
    double total = 0.0;
    const double h = L.grid.step();
    for (const auto& dim : L.dims)
        for (const auto& f : dim) {
            // Trapezoidal quadrature of |f|^p on the grid.
            double integral = 0.0;
            for (std::size_t s = 0; s + 1 < f.size(); ++s)
                integral += 0.5 * h *
                            (std::pow(std::abs(f[s]), p) + std::pow(std::abs(f[s + 1]), p));
            total += integral;
        }
    return std::pow(total, 1.0 / p);
}

DistanceMode distance_mode_from_name(const std::string& name) {
    if (name == "norm_of_diff") return DistanceMode::norm_of_diff;
    if (name == "alg2") return DistanceMode::alg2;
    throw input_error("unknown distance mode: " + name);
}

std::string distance_mode_name(DistanceMode mode) {
    return mode == DistanceMode::norm_of_diff ? "norm_of_diff" : "alg2";
}

namespace {
// Common grid: union interval, max resolution.
LandscapeGrid union_grid(const PersistenceLandscape& A, const PersistenceLandscape& B) {
    LandscapeGrid g = A.grid;
    g.lo = std::min(g.lo, B.grid.lo);
    g.hi = std::max(g.hi, B.grid.hi);
    g.resolution = std::max(g.resolution, B.grid.resolution);
    return g;
}

double sup_norm_dim(const PersistenceLandscape& L, int dim) {
    double best = 0.0;
    for (const auto& f : L.dims[dim])
        for (double x : f) best = std::max(best, std::abs(x));
    return best;
}
}  // namespace

double landscape_distance(const PersistenceLandscape& A, const PersistenceLandscape& B,
                          double p, DistanceMode mode) {
    LandscapeGrid grid = union_grid(A, B);
    PersistenceLandscape ra = resample(A, grid);
    PersistenceLandscape rb = resample(B, grid);
    if (mode == DistanceMode::alg2) {
        double acc = 0.0;
        for (int dim = 0; dim < 2; ++dim) {
            double diff = sup_norm_dim(ra, dim) - sup_norm_dim(rb, dim);
            acc += diff * diff;
        }
        return std::sqrt(acc);
    }
    PersistenceLandscape diff;
    diff.grid = grid;
    for (int dim = 0; dim < 2; ++dim) {
        std::size_t depth = std::max(ra.dims[dim].size(), rb.dims[dim].size());
        diff.dims[dim].assign(depth, std::vector<double>(grid.resolution, 0.0));
        for (std::size_t k = 0; k < depth; ++k)
            for (int s = 0; s < grid.resolution; ++s) {
                double a = k < ra.dims[dim].size() ? ra.dims[dim][k][s] : 0.0;
                double b = k < rb.dims[dim].size() ? rb.dims[dim][k][s] : 0.0;
                diff.dims[dim][k][s] = a - b;
            }
    }
    return landscape_norm(diff, p);
}

PersistenceDiagram diagram_for(const Graph& g, const PipelineConfig& cfg) {
    EdgeFunction f = curvature(g, cfg.kind, cfg.measure);
    return persistence_diagram(build_filtration(g, f));
}

std::vector<PersistenceDiagram> diagrams_for_set(const GraphSet& gs,
                                                 const PipelineConfig& cfg) {
    std::vector<PersistenceDiagram> out(gs.graphs.size());
    parallel_for(gs.graphs.size(), cfg.workers,
                 [&](std::size_t i) { out[i] = diagram_for(gs.graphs[i], cfg); });
    return out;
}

DistanceReport set_distance(const GraphSet& A, const GraphSet& B,
                            const PipelineConfig& cfg) {
    if (A.graphs.empty() || B.graphs.empty())
        throw input_error("set_distance: empty graph set");
    auto da = diagrams_for_set(A, cfg);
    auto db = diagrams_for_set(B, cfg);
    std::vector<PersistenceDiagram> all = da;
    all.insert(all.end(), db.begin(), db.end());
    LandscapeGrid grid = grid_for(all, cfg.resolution, cfg.cap_padding);
    std::vector<PersistenceLandscape> la(da.size()), lb(db.size());
    parallel_for(da.size(), cfg.workers,
                 [&](std::size_t i) { la[i] = to_landscape(da[i], grid, cfg.max_depth); });
    parallel_for(db.size(), cfg.workers,
                 [&](std::size_t i) { lb[i] = to_landscape(db[i], grid, cfg.max_depth); });
    DistanceReport report;
    report.config = cfg;
    report.distance = landscape_distance(average(la), average(lb), cfg.p, cfg.mode);
    return report;
}

}  // namespace curvscape
