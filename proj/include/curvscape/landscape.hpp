#pragma once

#include <string>
#include <vector>

#include "curvscape/curvature.hpp"
#include "curvscape/graph.hpp"
#include "curvscape/persistence.hpp"

namespace curvscape {

struct LandscapeGrid {
    double lo = 0.0;
    double hi = 1.0;
    int resolution = 1000;

    double step() const { return (hi - lo) / (resolution - 1); }
    double at(int i) const { return lo + step() * i; }
    bool operator==(const LandscapeGrid&) const = default;
};

// Sampled landscape functions lambda_1 >= lambda_2 >= ... per homology
// dimension (0 and 1), on a shared grid.
struct PersistenceLandscape {
    LandscapeGrid grid;
    std::vector<std::vector<std::vector<double>>> dims;  // [dim][depth][sample]

    PersistenceLandscape() : dims(2) {}
};

inline constexpr int kMaxLandscapeDepth = 64;

// Grid covering every finite diagram value, extended above the maximum by
// cap_padding (<= 0 means the default: max(1, value range)). Essential
// deaths are capped at grid.hi.
LandscapeGrid grid_for(const std::vector<PersistenceDiagram>& diagrams,
                       int resolution = 1000, double cap_padding = 0.0);

PersistenceLandscape to_landscape(const PersistenceDiagram& d, const LandscapeGrid& grid,
                                  int max_depth = kMaxLandscapeDepth);

// Linear interpolation onto another grid.
PersistenceLandscape resample(const PersistenceLandscape& L, const LandscapeGrid& grid);

// Pointwise mean (Algorithm-1 style); inputs resampled to the union grid,
// missing depths padded with zero functions. Fixed summation order.
PersistenceLandscape average(const std::vector<PersistenceLandscape>& ls);

// p-norm over all dimensions and depths; p = +infinity for the sup norm.
double landscape_norm(const PersistenceLandscape& L, double p);

enum class DistanceMode { norm_of_diff, alg2 };
DistanceMode distance_mode_from_name(const std::string& name);
std::string distance_mode_name(DistanceMode mode);

// norm_of_diff: p-norm of A - B. alg2: per-dimension |sup-norm difference|
// assembled into a vector, then its Euclidean norm.
double landscape_distance(const PersistenceLandscape& A, const PersistenceLandscape& B,
                          double p, DistanceMode mode);

// Full-pipeline configuration (curvature -> diagram -> landscape -> distance).
struct PipelineConfig {
    CurvatureKind kind = CurvatureKind::orc;
    MeasureConfig measure;
    int resolution = 1000;
    double cap_padding = 0.0;  // <= 0: auto
    double p = std::numeric_limits<double>::infinity();
    DistanceMode mode = DistanceMode::norm_of_diff;
    int max_depth = kMaxLandscapeDepth;
    int workers = 0;  // 0: CURVSCAPE_WORKERS or 1
};

struct DistanceReport {
    double distance = 0.0;
    PipelineConfig config;
};

PersistenceDiagram diagram_for(const Graph& g, const PipelineConfig& cfg);

// Per-graph diagrams for a whole set, computed in parallel.
std::vector<PersistenceDiagram> diagrams_for_set(const GraphSet& gs,
                                                 const PipelineConfig& cfg);

DistanceReport set_distance(const GraphSet& A, const GraphSet& B,
                            const PipelineConfig& cfg);

}  // namespace curvscape
