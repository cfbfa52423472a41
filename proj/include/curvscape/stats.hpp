#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "curvscape/graph.hpp"
#include "curvscape/landscape.hpp"

namespace curvscape {

struct PermutationTestResult {
    double observed_distance = 0.0;
    std::vector<double> permuted_distances;
    double fraction_higher = 0.0;  // strict '>' count / n_permutations
    int n_permutations = 0;
    std::uint64_t seed = 0;
};

enum class BoundTheorem { forman_add, forman_del, orc, rec_add, rec_del };
std::string bound_theorem_name(BoundTheorem t);

struct BoundCheckReport {
    BoundTheorem theorem;
    int violations = 0;
    int samples = 0;  // number of (trial, edge) bound evaluations
    double worst_margin = std::numeric_limits<double>::infinity();  // bound - observed
    std::map<std::string, double> auxiliaries;
};

struct PerturbationReport {
    std::vector<double> fractions;
    std::vector<double> distances;
    double pearson = 0.0;
    PerturbationSpec::Mode mode = PerturbationSpec::Mode::add;
    std::vector<double> max_relative_curvature_change;  // per level, max |dk|/sigma_k
};

PermutationTestResult permutation_test(const GraphSet& A, const GraphSet& B,
                                       const PipelineConfig& cfg, int n_perm,
                                       std::uint64_t seed);

double pearson(const std::vector<double>& xs, const std::vector<double>& ys);

PerturbationReport perturbation_sweep(const GraphSet& base, PerturbationSpec::Mode mode,
                                      const std::vector<double>& fractions,
                                      const PipelineConfig& cfg, std::uint64_t seed);

enum class DistinguishMethod { raw_hist, bottleneck };
DistinguishMethod distinguish_method_from_name(const std::string& name);

// 1-D Wasserstein distance between two sorted value multisets (exact
// quantile-function integral).
double quantile_wasserstein(std::vector<double> a, std::vector<double> b);

// Fraction of graph pairs whose distance exceeds tol. raw_hist compares
// edge-curvature value multisets; bottleneck compares persistence diagrams
// (max over dims 0 and 1; a flagged infinity counts as distinguished).
double pairwise_distinguish(const GraphSet& gs, DistinguishMethod method,
                            const PipelineConfig& cfg, double tol = 1e-8);

std::vector<int> spectral_cluster(const std::vector<std::vector<double>>& dist, int k,
                                  std::uint64_t seed);

double adjusted_rand_index(const std::vector<int>& a, const std::vector<int>& b);

BoundCheckReport check_forman_bounds(const Graph& g, PerturbationSpec::Mode mode,
                                     int trials, std::uint64_t seed);
BoundCheckReport check_orc_bounds(const Graph& g, const MeasureConfig& cfg, int trials,
                                  std::uint64_t seed);
BoundCheckReport check_resistance_bounds(const Graph& g, PerturbationSpec::Mode mode,
                                         int trials, std::uint64_t seed);

}  // namespace curvscape
