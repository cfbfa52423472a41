#pragma once

#include <map>
#include <string>
#include <vector>

#include "curvscape/graph.hpp"

namespace curvscape {

// Scalar function on the edge set of a graph (filtration function; holds
// curvature values). Keys are normalised u < v.
using EdgeFunction = std::map<Edge, double>;

// Discrete probability measure supported on vertices.
struct NodeMeasure {
    std::vector<std::pair<int, double>> support;  // (vertex, mass>0), sorted by vertex

    double total_mass() const;
};

struct MeasureConfig {
    enum class Kind { uniform_1hop, random_walk };
    Kind kind = Kind::uniform_1hop;
    int rw_steps = 2;        // random-walk horizon m
    double self_mass = 0.0;  // idleness alpha for the uniform measure
};

enum class CurvatureKind { frc, orc, rec };
CurvatureKind curvature_kind_from_name(const std::string& name);
std::string curvature_kind_name(CurvatureKind kind);

// Effective resistances plus node resistance curvatures.
struct ResistanceData {
    std::vector<std::vector<double>> R;  // +infinity across components
    std::vector<double> p;               // p_i = 1 - 1/2 sum_{j~i} R_ij
};

// FRC(i,j) = 4 - d_i - d_j + 3 |N(i) ∩ N(j)|.
EdgeFunction forman(const Graph& g);

NodeMeasure node_measure(const Graph& g, int v, const MeasureConfig& cfg);

// Dirac measure at v.
NodeMeasure dirac(int v);

// Exact 1-Wasserstein cost between two measures under the given vertex
// distance matrix. Solved as min-cost flow on the support-by-support
// bipartite graph.
double wasserstein1(const NodeMeasure& mu, const NodeMeasure& nu,
                    const std::vector<std::vector<double>>& dist);

// ORC(i,j) = 1 - W1(mu_i, mu_j) / d_G(i,j) for the requested pairs
// (defaults to the edge set elsewhere). Pairs may be non-edges.
std::map<Edge, double> ollivier_ricci_pairs(const Graph& g, const MeasureConfig& cfg,
                                            const std::vector<Edge>& pairs);
EdgeFunction ollivier_ricci(const Graph& g, const MeasureConfig& cfg);

// Computed per connected component by grounding one vertex and solving the
// reduced Laplacian; unit edge weights, not inverted.
ResistanceData resistance_data(const Graph& g);

// REC(i,j) = 2 (p_i + p_j) / R_ij.
EdgeFunction resistance_curvature(const Graph& g);

// Dispatch facade over the three curvatures.
EdgeFunction curvature(const Graph& g, CurvatureKind kind, const MeasureConfig& cfg);

}  // namespace curvscape
