#include "curvscape/serialize.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

namespace curvscape {

namespace {
Json num(double x) {
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    return round12(x);
}

std::string fmt12(double x) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.12g", x);
    return buf;
}
}  // namespace

Json edge_function_json(const EdgeFunction& f) {
    Json arr = Json::array();
    for (const auto& [e, v] : f) arr.push_back({e.first, e.second, num(v)});
    return Json{{"edges", arr}};
}

std::string edge_function_csv(const EdgeFunction& f) {
    std::ostringstream out;
    out << "u,v,value\n";
    for (const auto& [e, v] : f)
        out << e.first << "," << e.second << "," << fmt12(v) << "\n";
    return out.str();
}

Json diagram_json(const PersistenceDiagram& d) {
    auto pairs = [](const std::vector<PersistencePair>& ps) {
        Json arr = Json::array();
        for (const auto& p : ps)
            arr.push_back({num(p.birth), p.essential() ? Json("inf") : num(p.death)});
        return arr;
    };
    return Json{{"dim0", pairs(d.dim0)}, {"dim1", pairs(d.dim1)}};
}

Json landscape_json(const PersistenceLandscape& L) {
    Json dims = Json::array();
    for (int dim = 0; dim < 2; ++dim) {
        Json funcs = Json::array();
        for (const auto& f : L.dims[dim]) {
            Json samples = Json::array();
            for (double x : f) samples.push_back(num(x));
            funcs.push_back(std::move(samples));
        }
        dims.push_back(Json{{"dim", dim}, {"functions", std::move(funcs)}});
    }
    return Json{{"grid", Json{{"lo", num(L.grid.lo)},
                              {"hi", num(L.grid.hi)},
                              {"resolution", L.grid.resolution}}},
                {"dims", std::move(dims)}};
}

Json config_json(const PipelineConfig& cfg) {
    return Json{
        {"kind", curvature_kind_name(cfg.kind)},
        {"measure", cfg.measure.kind == MeasureConfig::Kind::uniform_1hop ? "uniform" : "rw"},
        {"rw_steps", cfg.measure.rw_steps},
        {"self_mass", num(cfg.measure.self_mass)},
        {"resolution", cfg.resolution},
        {"cap_padding", num(cfg.cap_padding)},
        {"p", std::isinf(cfg.p) ? Json("inf") : num(cfg.p)},
        {"mode", distance_mode_name(cfg.mode)},
        {"max_depth", cfg.max_depth},
    };
}

Json distance_report_json(const DistanceReport& r) {
    return Json{{"distance", num(r.distance)}, {"config", config_json(r.config)}};
}

Json permutation_result_json(const PermutationTestResult& r) {
    Json perms = Json::array();
    for (double d : r.permuted_distances) perms.push_back(num(d));
    return Json{{"observed_distance", num(r.observed_distance)},
                {"fraction_higher", num(r.fraction_higher)},
                {"n_permutations", r.n_permutations},
                {"seed", r.seed},
                {"permuted_distances", std::move(perms)}};
}

Json bound_report_json(const BoundCheckReport& r) {
    Json aux = Json::object();
    for (const auto& [k, v] : r.auxiliaries) aux[k] = num(v);
    return Json{{"theorem", bound_theorem_name(r.theorem)},
                {"violations", r.violations},
                {"samples", r.samples},
                {"worst_margin", num(r.worst_margin)},
                {"auxiliaries", std::move(aux)}};
}

Json perturbation_report_json(const PerturbationReport& r) {
    Json fr = Json::array(), di = Json::array(), mx = Json::array();
    for (double x : r.fractions) fr.push_back(num(x));
    for (double x : r.distances) di.push_back(num(x));
    for (double x : r.max_relative_curvature_change) mx.push_back(num(x));
    return Json{{"mode", r.mode == PerturbationSpec::Mode::add ? "add" : "delete"},
                {"fractions", std::move(fr)},
                {"distances", std::move(di)},
                {"pearson", num(r.pearson)},
                {"max_relative_curvature_change", std::move(mx)}};
}

std::string perturbation_report_csv(const PerturbationReport& r) {
    std::ostringstream out;
    out << "fraction,distance,max_rel_curvature_change\n";
    for (std::size_t i = 0; i < r.fractions.size(); ++i)
        out << fmt12(r.fractions[i]) << "," << fmt12(r.distances[i]) << ","
            << fmt12(r.max_relative_curvature_change[i]) << "\n";
    return out.str();
}

}  // namespace curvscape
