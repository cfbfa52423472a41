#pragma once

#include <string>

#include <json.hpp>

#include "curvscape/curvature.hpp"
#include "curvscape/landscape.hpp"
#include "curvscape/persistence.hpp"
#include "curvscape/stats.hpp"

namespace curvscape {

// All serialisers use insertion-ordered JSON and round every double to
// 12 significant digits, so identical runs produce byte-identical output.
using Json = nlohmann::ordered_json;

Json edge_function_json(const EdgeFunction& f);
std::string edge_function_csv(const EdgeFunction& f);

Json diagram_json(const PersistenceDiagram& d);
Json landscape_json(const PersistenceLandscape& L);

Json config_json(const PipelineConfig& cfg);
Json distance_report_json(const DistanceReport& r);
Json permutation_result_json(const PermutationTestResult& r);
Json bound_report_json(const BoundCheckReport& r);
Json perturbation_report_json(const PerturbationReport& r);
std::string perturbation_report_csv(const PerturbationReport& r);

}  // namespace curvscape
