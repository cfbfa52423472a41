// curvscape: curvature filtrations for comparing graph distributions.
//
// Subcommands: curvature, diagram, landscape, compare, generate, experiment.
// Exit codes: 0 success, 1 usage error, 2 input/parse error, 3 computation
// error; non-zero exits print one machine-readable line on stderr.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "curvscape/graph.hpp"
#include "curvscape/serialize.hpp"
#include "curvscape/stats.hpp"

namespace fs = std::filesystem;
using namespace curvscape;

namespace {

struct PipelineFlags {
    std::string kind = "orc";
    std::string measure = "uniform";
    int rw_steps = 2;
    double self_mass = 0.0;
    int resolution = 1000;
    double cap_padding = 0.0;
    int max_depth = kMaxLandscapeDepth;
    std::string p = "inf";
    std::string mode = "norm_of_diff";
    std::uint64_t seed = 0;
    int workers = 0;
    std::string format = "json";
    std::string config_file;

    std::map<std::string, CLI::Option*> opts;

    void attach(CLI::App* cmd) {
        opts["kind"] = cmd->add_option("--kind", kind, "Curvature kind: frc|orc|rec");
        opts["measure"] =
            cmd->add_option("--measure", measure, "ORC measure: uniform|rw");
        opts["rw_steps"] = cmd->add_option("--rw-steps", rw_steps, "Random-walk horizon");
        opts["self_mass"] =
            cmd->add_option("--self-mass", self_mass, "Uniform-measure idleness");
        opts["resolution"] =
            cmd->add_option("--resolution", resolution, "Landscape grid samples");
        opts["cap_padding"] = cmd->add_option("--cap-padding", cap_padding,
                                              "Essential-death cap padding (0 = auto)");
        opts["p"] = cmd->add_option("--p", p, "Landscape norm: 1|2|inf");
        opts["max_depth"] = cmd->add_option("--max-depth", max_depth,
                                            "Landscape levels kept per dimension");
        opts["mode"] =
            cmd->add_option("--mode", mode, "Distance mode: norm_of_diff|alg2");
        opts["seed"] = cmd->add_option("--seed", seed, "RNG seed");
        opts["workers"] = cmd->add_option("--workers", workers,
                                          "Worker threads (0: CURVSCAPE_WORKERS or 1)");
        opts["format"] = cmd->add_option("--format", format, "Output format: json|csv");
        cmd->add_option("--config", config_file, "JSON config file (flags override)");
    }

    // Fill unset flags from the JSON config file.
    void apply_config() {
        if (config_file.empty()) return;
        std::ifstream in(config_file);
        if (!in) throw input_error("cannot open config file: " + config_file);
        nlohmann::json j;
        try {
            j = nlohmann::json::parse(in);
        } catch (const std::exception& e) {
            throw input_error(std::string("bad config JSON: ") + e.what());
        }
        auto unset = [&](const char* name) {
            return j.contains(name) && opts.count(name) && opts[name]->count() == 0;
        };
        if (unset("kind")) kind = j["kind"].get<std::string>();
        if (unset("measure")) measure = j["measure"].get<std::string>();
        if (unset("rw_steps")) rw_steps = j["rw_steps"].get<int>();
        if (unset("self_mass")) self_mass = j["self_mass"].get<double>();
        if (unset("resolution")) resolution = j["resolution"].get<int>();
        if (unset("cap_padding")) cap_padding = j["cap_padding"].get<double>();
        if (unset("max_depth")) max_depth = j["max_depth"].get<int>();
        if (unset("p")) p = j["p"].is_string() ? j["p"].get<std::string>()
                                               : std::to_string(j["p"].get<double>());
        if (unset("mode")) mode = j["mode"].get<std::string>();
        if (unset("seed")) seed = j["seed"].get<std::uint64_t>();
        if (unset("workers")) workers = j["workers"].get<int>();
        if (unset("format")) format = j["format"].get<std::string>();
    }

    PipelineConfig build() {
        apply_config();
        PipelineConfig cfg;
        cfg.kind = curvature_kind_from_name(kind);
        if (measure == "uniform")
            cfg.measure.kind = MeasureConfig::Kind::uniform_1hop;
        else if (measure == "rw")
            cfg.measure.kind = MeasureConfig::Kind::random_walk;
        else
            throw input_error("unknown measure: " + measure);
        cfg.measure.rw_steps = rw_steps;
        cfg.measure.self_mass = self_mass;
        cfg.resolution = resolution;
        cfg.cap_padding = cap_padding;
        cfg.max_depth = max_depth;
        if (p == "inf" || p == "sup")
            cfg.p = std::numeric_limits<double>::infinity();
        else
            cfg.p = std::stod(p);
        cfg.mode = distance_mode_from_name(mode);
        cfg.workers = workers;
        return cfg;
    }
};

void write_or_print(const std::string& text, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << text;
        if (!text.empty() && text.back() != '\n') std::cout << "\n";
        return;
    }
    std::ofstream out(out_path);
    if (!out) throw input_error("cannot write output file: " + out_path);
    out << text;
    if (!text.empty() && text.back() != '\n') out << "\n";
}

std::vector<std::string> split_csv(const std::string& s) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ','))
        if (!item.empty()) out.push_back(item);
    return out;
}

std::vector<double> parse_fractions(const std::string& s) {
    std::vector<double> out;
    for (const auto& item : split_csv(s)) out.push_back(std::stod(item));
    return out;
}

GraphSet load_set_or_named(const std::string& path_or_names) {
    // "name1,name2" of named graphs, otherwise a path.
    if (!fs::exists(path_or_names) && path_or_names.find(',') != std::string::npos) {
        GraphSet gs;
        for (const auto& name : split_csv(path_or_names)) {
            gs.graphs.push_back(named_graph(name));
            gs.labels.push_back(name);
        }
        return gs;
    }
    if (fs::exists(path_or_names)) {
        if (!fs::is_directory(path_or_names) &&
            fs::path(path_or_names).extension() == ".edges") {
            GraphSet gs;
            gs.graphs.push_back(load_edge_list_file(path_or_names));
            gs.labels.push_back(fs::path(path_or_names).stem().string());
            return gs;
        }
        return load_graph_set(path_or_names);
    }
    // Last resort: a single named graph.
    GraphSet gs;
    gs.graphs.push_back(named_graph(path_or_names));
    gs.labels.push_back(path_or_names);
    return gs;
}

int run_bounds_experiment(const PipelineConfig& cfg, int trials, int n, double p,
                          std::uint64_t seed, const std::string& out_dir) {
    // A connected ER instance; bump the seed until one comes up.
    Graph g = generate_er(n, p, seed);
    for (std::uint64_t s = seed + 1; !g.connected(); ++s) g = generate_er(n, p, s);

    std::vector<BoundCheckReport> reports;
    reports.push_back(check_forman_bounds(g, PerturbationSpec::Mode::add, trials, seed));
    reports.push_back(check_forman_bounds(g, PerturbationSpec::Mode::remove, trials, seed));
    reports.push_back(check_orc_bounds(g, cfg.measure, trials, seed));
    reports.push_back(check_resistance_bounds(g, PerturbationSpec::Mode::add, trials, seed));
    reports.push_back(
        check_resistance_bounds(g, PerturbationSpec::Mode::remove, trials, seed));

    Json out = Json::array();
    int total_violations = 0;
    for (const auto& r : reports) {
        out.push_back(bound_report_json(r));
        total_violations += r.violations;
    }
    write_or_print(out.dump(2),
                   out_dir.empty() ? "" : (fs::path(out_dir) / "bounds.json").string());
    std::cout << "bounds: " << reports.size() << " theorems, " << total_violations
              << " violations\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"curvature filtrations for graph distribution comparison"};
    app.require_subcommand(1);

    // --- curvature / diagram / landscape: per-graph pipelines ---
    std::string graph_path, out_path;
    PipelineFlags flags;

    auto* cmd_curv = app.add_subcommand("curvature", "Edge curvature table for one graph");
    cmd_curv->add_option("graph", graph_path, "Graph file (.edges)")->required();
    cmd_curv->add_option("--out", out_path, "Output file (default: stdout)");
    flags.attach(cmd_curv);

    auto* cmd_diag = app.add_subcommand("diagram", "Persistence diagram for one graph");
    cmd_diag->add_option("graph", graph_path, "Graph file (.edges)")->required();
    cmd_diag->add_option("--out", out_path, "Output file (default: stdout)");
    PipelineFlags diag_flags;
    diag_flags.attach(cmd_diag);

    auto* cmd_land = app.add_subcommand("landscape", "Persistence landscape for one graph");
    cmd_land->add_option("graph", graph_path, "Graph file (.edges)")->required();
    cmd_land->add_option("--out", out_path, "Output file (default: stdout)");
    PipelineFlags land_flags;
    land_flags.attach(cmd_land);

    // --- compare ---
    std::string set_a, set_b;
    int permutations = 0;
    auto* cmd_cmp = app.add_subcommand("compare", "Distance between two graph sets");
    cmd_cmp->add_option("setA", set_a, "Graph set (dir of .edges or .jsonl)")->required();
    cmd_cmp->add_option("setB", set_b, "Graph set")->required();
    cmd_cmp->add_option("--permutations", permutations, "Permutation-test rounds");
    cmd_cmp->add_option("--out", out_path, "Output file (default: stdout)");
    PipelineFlags cmp_flags;
    cmp_flags.attach(cmd_cmp);

    // --- generate ---
    std::string model = "er", gen_out, graphon_name = "W1", named_name = "k3";
    int gen_n = 20, gen_count = 1, n_min = 9, n_max = 37;
    double gen_p = 0.3;
    std::uint64_t gen_seed = 0;
    auto* cmd_gen = app.add_subcommand("generate", "Write a graph set (.jsonl)");
    cmd_gen->add_option("--model", model, "er|graphon|community|named");
    cmd_gen->add_option("--n", gen_n, "Vertex count (er/community)");
    cmd_gen->add_option("--p", gen_p, "Edge probability (er)");
    cmd_gen->add_option("--which", graphon_name, "Graphon: W1|W2|W3|W4");
    cmd_gen->add_option("--name", named_name, "Named graph");
    cmd_gen->add_option("--n-min", n_min, "Graphon size range low");
    cmd_gen->add_option("--n-max", n_max, "Graphon size range high");
    cmd_gen->add_option("--count", gen_count, "Number of graphs");
    cmd_gen->add_option("--seed", gen_seed, "RNG seed");
    cmd_gen->add_option("--out", gen_out, "Output .jsonl path")->required();

    // --- experiment ---
    std::string exp_name, exp_set, exp_graphs, exp_out, exp_fractions, exp_method = "raw_hist";
    std::string exp_mode = "add", exp_graphons = "W1,W2,W4";
    int exp_trials = 50, exp_n = 12, exp_samples = 10, exp_perms = 200, exp_clusters = 0;
    double exp_p = 0.3;
    auto* cmd_exp =
        app.add_subcommand("experiment", "Harnesses: perturb|distinguish|graphon|bounds");
    cmd_exp->add_option("name", exp_name, "Experiment name")->required();
    cmd_exp->add_option("--set", exp_set, "Input graph set");
    cmd_exp->add_option("--graphs", exp_graphs, "Comma list of named graphs");
    cmd_exp->add_option("--method", exp_method, "distinguish: raw_hist|bottleneck");
    cmd_exp->add_option("--perturb-mode", exp_mode, "perturb: add|delete|both");
    cmd_exp->add_option("--fractions", exp_fractions, "perturb: comma list");
    cmd_exp->add_option("--trials", exp_trials, "bounds: trials per theorem");
    cmd_exp->add_option("--n", exp_n, "bounds: ER size");
    cmd_exp->add_option("--er-p", exp_p, "bounds: ER density");
    cmd_exp->add_option("--graphons", exp_graphons, "graphon: which graphons");
    cmd_exp->add_option("--samples", exp_samples, "graphon: samples per graphon");
    cmd_exp->add_option("--n-min", n_min, "graphon: size range low");
    cmd_exp->add_option("--n-max", n_max, "graphon: size range high");
    cmd_exp->add_option("--permutations", exp_perms, "graphon: permutation rounds");
    cmd_exp->add_option("--clusters", exp_clusters, "graphon: k (default: #graphons)");
    cmd_exp->add_option("--out", exp_out, "Output directory");
    PipelineFlags exp_flags;
    exp_flags.attach(cmd_exp);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        if (cmd_curv->parsed()) {
            PipelineConfig cfg = flags.build();
            EdgeFunction f =
                curvature(load_edge_list_file(graph_path), cfg.kind, cfg.measure);
            write_or_print(flags.format == "csv" ? edge_function_csv(f)
                                                 : edge_function_json(f).dump(2),
                           out_path);
        } else if (cmd_diag->parsed()) {
            PipelineConfig cfg = diag_flags.build();
            auto d = diagram_for(load_edge_list_file(graph_path), cfg);
            write_or_print(diagram_json(d).dump(2), out_path);
        } else if (cmd_land->parsed()) {
            PipelineConfig cfg = land_flags.build();
            auto d = diagram_for(load_edge_list_file(graph_path), cfg);
            auto grid = grid_for({d}, cfg.resolution, cfg.cap_padding);
            write_or_print(landscape_json(to_landscape(d, grid, cfg.max_depth)).dump(2), out_path);
        } else if (cmd_cmp->parsed()) {
            PipelineConfig cfg = cmp_flags.build();
            GraphSet A = load_graph_set(set_a);
            GraphSet B = load_graph_set(set_b);
            Json out = distance_report_json(set_distance(A, B, cfg));
            if (permutations > 0)
                out["permutation_test"] =
                    permutation_result_json(permutation_test(A, B, cfg, permutations,
                                                             cmp_flags.seed));
            write_or_print(out.dump(2), out_path);
        } else if (cmd_gen->parsed()) {
            GraphSet gs;
            Rng rng(gen_seed);
            for (int i = 0; i < gen_count; ++i) {
                std::uint64_t s = rng.fork_seed();
                if (model == "er")
                    gs.graphs.push_back(generate_er(gen_n, gen_p, s));
                else if (model == "community")
                    gs.graphs.push_back(generate_community(gen_n, s));
                else if (model == "graphon") {
                    Rng size_rng(s);
                    int n = n_min + static_cast<int>(size_rng.next_below(n_max - n_min + 1));
                    gs.graphs.push_back(
                        sample_graphon(graphon_from_name(graphon_name), n,
                                       size_rng.fork_seed()));
                } else if (model == "named")
                    gs.graphs.push_back(named_graph(named_name));
                else
                    throw CLI::ValidationError("--model", "unknown model: " + model);
                gs.labels.push_back(model + "_" + std::to_string(i));
            }
            save_graph_set_jsonl(gs, gen_out);
            std::cout << "wrote " << gs.graphs.size() << " graphs to " << gen_out << "\n";
        } else if (cmd_exp->parsed()) {
            PipelineConfig cfg = exp_flags.build();
            if (!exp_out.empty()) fs::create_directories(exp_out);
            if (exp_name == "bounds") {
                return run_bounds_experiment(cfg, exp_trials, exp_n, exp_p, exp_flags.seed,
                                             exp_out);
            } else if (exp_name == "distinguish") {
                GraphSet gs = load_set_or_named(!exp_graphs.empty() ? exp_graphs : exp_set);
                auto method = distinguish_method_from_name(exp_method);
                double rate = pairwise_distinguish(gs, method, cfg);
                Json out{{"method", exp_method},
                         {"kind", curvature_kind_name(cfg.kind)},
                         {"graphs", gs.graphs.size()},
                         {"success_rate", round12(rate)}};
                write_or_print(
                    out.dump(2),
                    exp_out.empty() ? "" : (fs::path(exp_out) / "distinguish.json").string());
                std::cout << "distinguish: success rate " << rate << "\n";
            } else if (exp_name == "perturb") {
                GraphSet gs = load_set_or_named(exp_set);
                std::vector<double> fractions =
                    exp_fractions.empty()
                        ? std::vector<double>{0.0, 0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9}
                        : parse_fractions(exp_fractions);
                std::vector<std::string> modes =
                    exp_mode == "both" ? std::vector<std::string>{"add", "delete"}
                                       : std::vector<std::string>{exp_mode};
                for (const auto& m : modes) {
                    auto mode = m == "add" ? PerturbationSpec::Mode::add
                                           : PerturbationSpec::Mode::remove;
                    auto report =
                        perturbation_sweep(gs, mode, fractions, cfg, exp_flags.seed);
                    write_or_print(perturbation_report_json(report).dump(2),
                                   exp_out.empty()
                                       ? ""
                                       : (fs::path(exp_out) / ("perturb_" + m + ".json"))
                                             .string());
                    if (!exp_out.empty())
                        write_or_print(perturbation_report_csv(report),
                                       (fs::path(exp_out) / ("perturb_" + m + ".csv"))
                                           .string());
                    std::cout << "perturb " << m << ": pearson " << report.pearson << "\n";
                }
            } else if (exp_name == "graphon") {
                auto names = split_csv(exp_graphons);
                if (names.size() < 2)
                    throw input_error("graphon experiment needs >= 2 graphons");
                Rng rng(exp_flags.seed);
                std::vector<GraphSet> sets;
                std::vector<int> truth;
                for (std::size_t w = 0; w < names.size(); ++w) {
                    GraphSet gs;
                    for (int i = 0; i < exp_samples; ++i) {
                        std::uint64_t s = rng.fork_seed();
                        Rng size_rng(s);
                        int n =
                            n_min + static_cast<int>(size_rng.next_below(n_max - n_min + 1));
                        gs.graphs.push_back(sample_graphon(graphon_from_name(names[w]), n,
                                                           size_rng.fork_seed()));
                        truth.push_back(static_cast<int>(w));
                    }
                    sets.push_back(std::move(gs));
                }
                // Permutation test on the first pair of graphons.
                auto test =
                    permutation_test(sets[0], sets[1], cfg, exp_perms, rng.fork_seed());
                // Pairwise landscape distances across all samples, then
                // spectral clustering against the ground truth.
                GraphSet all;
                for (const auto& s : sets)
                    all.graphs.insert(all.graphs.end(), s.graphs.begin(), s.graphs.end());
                auto diagrams = diagrams_for_set(all, cfg);
                LandscapeGrid grid = grid_for(diagrams, cfg.resolution, cfg.cap_padding);
                std::vector<PersistenceLandscape> lands(diagrams.size());
                parallel_for(diagrams.size(), cfg.workers, [&](std::size_t i) {
                    lands[i] = to_landscape(diagrams[i], grid, cfg.max_depth);
                });
                const std::size_t total = lands.size();
                std::vector<std::vector<double>> dist(total,
                                                      std::vector<double>(total, 0.0));
                parallel_for(total, cfg.workers, [&](std::size_t i) {
                    for (std::size_t j = i + 1; j < total; ++j) {
                        double d = landscape_distance(lands[i], lands[j], cfg.p, cfg.mode);
                        dist[i][j] = d;
                    }
                });
                for (std::size_t i = 0; i < total; ++i)
                    for (std::size_t j = 0; j < i; ++j) dist[i][j] = dist[j][i];
                int k = exp_clusters > 0 ? exp_clusters : static_cast<int>(names.size());
                auto labels = spectral_cluster(dist, k, rng.fork_seed());
                double ari = adjusted_rand_index(labels, truth);
                Json out{{"graphons", exp_graphons},
                         {"samples_per_graphon", exp_samples},
                         {"fraction_higher", round12(test.fraction_higher)},
                         {"observed_distance", round12(test.observed_distance)},
                         {"ari", round12(ari)},
                         {"config", config_json(cfg)}};
                write_or_print(
                    out.dump(2),
                    exp_out.empty() ? "" : (fs::path(exp_out) / "graphon.json").string());
                std::cout << "graphon: fraction_higher " << test.fraction_higher << ", ARI "
                          << ari << "\n";
            } else {
                std::cerr << "error: unknown experiment name: " << exp_name << "\n";
                return 1;
            }
        }
    } catch (const input_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const compute_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
