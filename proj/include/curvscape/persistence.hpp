#pragma once

#include <map>
#include <utility>
#include <vector>

#include "curvscape/curvature.hpp"
#include "curvscape/graph.hpp"

namespace curvscape {

// Edges sorted ascending by filtration value, ties broken lexicographically
// on (u, v). Vertices enter at the value of their first incident edge.
struct Filtration {
    std::vector<std::pair<Edge, double>> steps;
    std::map<int, double> vertex_entry;  // non-isolated vertices only
};

// (birth, death) pairs; death = +infinity for essential classes.
struct PersistencePair {
    double birth;
    double death;

    bool essential() const;
    bool operator==(const PersistencePair&) const = default;
    auto operator<=>(const PersistencePair&) const = default;
};

struct PersistenceDiagram {
    std::vector<PersistencePair> dim0;
    std::vector<PersistencePair> dim1;  // always essential (graphs have no 2-cells)
};

Filtration build_filtration(const Graph& g, const EdgeFunction& f);

// Union-find sweep in filtration order. Each non-isolated vertex yields one
// dim0 pair; on a merge the younger component (larger birth, tie -> larger
// root id) dies; an edge closing a cycle yields an essential dim1 pair.
PersistenceDiagram persistence_diagram(const Filtration& filt);

// Brute-force Betti numbers of the sublevel subgraph at threshold t
// (test-support oracle; counts only non-isolated vertices).
std::pair<int, int> betti_oracle(const Graph& g, const EdgeFunction& f, double t);

// Alive-class counts at threshold t read off a diagram (birth <= t < death).
std::pair<int, int> alive_at(const PersistenceDiagram& d, double t);

// Exact bottleneck distance in one homology dimension. Essential classes
// match only essential classes at cost |birth - birth'|; a cardinality
// mismatch between essential classes yields +infinity.
double bottleneck(const PersistenceDiagram& a, const PersistenceDiagram& b, int dim);

// Theorem-style envelope bounds on the bottleneck distance from the
// filtration functions alone.
double diagram_bound_upper(const EdgeFunction& f, const EdgeFunction& g);
double diagram_bound_lower(const EdgeFunction& f, const EdgeFunction& g);

}  // namespace curvscape
