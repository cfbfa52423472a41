#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "curvscape/graph.hpp"
#include "curvscape/stats.hpp"

using namespace curvscape;

namespace {

Graph connected_er(int n, double p, std::uint64_t seed) {
    Graph g = generate_er(n, p, seed);
    while (!g.connected()) g = generate_er(n, p, ++seed);
    return g;
}

PipelineConfig small_cfg(CurvatureKind kind = CurvatureKind::frc) {
    PipelineConfig cfg;
    cfg.kind = kind;
    cfg.resolution = 200;
    return cfg;
}

}  // namespace

TEST_CASE("pearson closed forms") {
    CHECK(pearson({1, 2, 3}, {2, 4, 6}) == doctest::Approx(1.0));
    CHECK(pearson({1, 2, 3}, {-1, -2, -3}) == doctest::Approx(-1.0));
    CHECK_THROWS_AS(pearson({1, 2, 3}, {1, 1, 1}), compute_error);
    CHECK_THROWS_AS(pearson({1, 2}, {1, 2, 3}), input_error);
    CHECK_THROWS_AS(pearson({1}, {1}), input_error);
}

TEST_CASE("adjusted rand index closed forms") {
    CHECK(adjusted_rand_index({0, 0, 1, 1}, {0, 0, 1, 1}) == doctest::Approx(1.0));
    // Invariant under cluster-id relabelling.
    CHECK(adjusted_rand_index({0, 0, 1, 1}, {1, 1, 0, 0}) == doctest::Approx(1.0));
    // All-in-one vs balanced two-cluster on 4 points.
    CHECK(adjusted_rand_index({0, 0, 0, 0}, {0, 0, 1, 1}) == doctest::Approx(0.0));
    CHECK(adjusted_rand_index({0, 1, 2}, {0, 1, 2}) == doctest::Approx(1.0));
    CHECK(adjusted_rand_index({0, 1, 0, 1}, {0, 1, 1, 0}) < 0.0 + 1e-9);
    CHECK_THROWS_AS(adjusted_rand_index({0, 1}, {0, 1, 2}), input_error);
    // Symmetry.
    std::vector<int> a{0, 0, 1, 2, 1}, b{1, 0, 1, 2, 2};
    CHECK(adjusted_rand_index(a, b) == doctest::Approx(adjusted_rand_index(b, a)));
}

TEST_CASE("quantile wasserstein closed forms") {
    CHECK(quantile_wasserstein({1, 2, 3}, {1, 2, 3}) == doctest::Approx(0.0));
    CHECK(quantile_wasserstein({0, 0}, {1, 1}) == doctest::Approx(1.0));
    // Different sizes: quantile functions are compared on [0,1].
    CHECK(quantile_wasserstein({0.0}, {0.0, 1.0}) == doctest::Approx(0.5));
    CHECK(quantile_wasserstein({}, {}) == doctest::Approx(0.0));
    CHECK(std::isinf(quantile_wasserstein({1.0}, {})));
    // Symmetry.
    CHECK(quantile_wasserstein({1, 5}, {2, 2, 9}) ==
          doctest::Approx(quantile_wasserstein({2, 2, 9}, {1, 5})));
}

TEST_CASE("permutation test on identical sets") {
    GraphSet A;
    for (std::uint64_t s = 0; s < 4; ++s) A.graphs.push_back(generate_er(12, 0.4, s));
    auto res = permutation_test(A, A, small_cfg(), 50, 7);
    CHECK(res.observed_distance == doctest::Approx(0.0));
    CHECK(res.fraction_higher >= 0.0);
    CHECK(res.fraction_higher <= 1.0);
    CHECK(res.n_permutations == 50);
    // 0 is minimal, so no permutation is strictly lower; most are higher.
    CHECK(res.fraction_higher > 0.5);
    // Seed-reproducible.
    auto res2 = permutation_test(A, A, small_cfg(), 50, 7);
    CHECK(res.permuted_distances == res2.permuted_distances);
    CHECK_THROWS_AS(permutation_test(A, A, small_cfg(), 0, 7), input_error);
    GraphSet tiny;
    tiny.graphs.push_back(named_graph("k3"));
    CHECK_THROWS_AS(permutation_test(tiny, A, small_cfg(), 10, 7), input_error);
}

TEST_CASE("permutation test separates sparse from dense") {
    GraphSet A, B;
    for (std::uint64_t s = 0; s < 5; ++s) {
        A.graphs.push_back(generate_er(16, 0.2, s));
        B.graphs.push_back(generate_er(16, 0.7, 50 + s));
    }
    auto res = permutation_test(A, B, small_cfg(), 100, 3);
    CHECK(res.observed_distance > 1e-8);
    CHECK(res.fraction_higher < 0.05);
}

TEST_CASE("perturbation sweep harness arithmetic") {
    CHECK(pearson({0.0, 0.1, 0.2, 0.3}, {0.0, 1.0, 2.0, 3.0}) == doctest::Approx(1.0));
    GraphSet base;
    for (std::uint64_t s = 0; s < 3; ++s) base.graphs.push_back(connected_er(12, 0.4, s));
    // A single fraction gives a single distance: correlation undefined.
    CHECK_THROWS_AS(perturbation_sweep(base, PerturbationSpec::Mode::add, {0.0},
                                       small_cfg(), 1),
                    input_error);
    CHECK_THROWS_AS(perturbation_sweep(base, PerturbationSpec::Mode::add, {0.3, 0.1},
                                       small_cfg(), 1),
                    input_error);
    auto report = perturbation_sweep(base, PerturbationSpec::Mode::add,
                                     {0.0, 0.2, 0.4}, small_cfg(), 1);
    REQUIRE(report.distances.size() == 3);
    CHECK(report.distances[0] == doctest::Approx(0.0));
    CHECK(report.distances[2] > 0.0);
    CHECK(report.max_relative_curvature_change.size() == 3);
    CHECK(report.fractions == std::vector<double>{0.0, 0.2, 0.4});
}

TEST_CASE("pairwise distinguish: strongly regular pair") {
    GraphSet gs;
    gs.graphs.push_back(named_graph("rook4x4"));
    gs.graphs.push_back(named_graph("shrikhande"));
    CHECK(pairwise_distinguish(gs, DistinguishMethod::raw_hist, small_cfg()) ==
          doctest::Approx(0.0));
    CHECK(pairwise_distinguish(gs, DistinguishMethod::raw_hist,
                               small_cfg(CurvatureKind::rec)) == doctest::Approx(0.0));
    CHECK(pairwise_distinguish(gs, DistinguishMethod::raw_hist,
                               small_cfg(CurvatureKind::orc)) == doctest::Approx(1.0));
}

TEST_CASE("pairwise distinguish ignores isomorphic duplicates") {
    GraphSet gs;
    gs.graphs.push_back(named_graph("c6"));
    // Same graph, relabelled.
    gs.graphs.push_back(Graph(6, {{5, 4}, {4, 3}, {3, 2}, {2, 1}, {1, 0}, {0, 5}}));
    gs.graphs.push_back(named_graph("k4"));
    for (auto method : {DistinguishMethod::raw_hist, DistinguishMethod::bottleneck}) {
        double rate = pairwise_distinguish(gs, method, small_cfg(CurvatureKind::orc));
        CHECK(rate == doctest::Approx(2.0 / 3.0));  // only the duplicate pair ties
    }
    CHECK(distinguish_method_from_name("bottleneck") == DistinguishMethod::bottleneck);
    CHECK_THROWS_AS(distinguish_method_from_name("nope"), input_error);
}

TEST_CASE("spectral clustering separates clean blocks") {
    // Two blocks of 4 with zero within-block and large cross-block distance.
    const int n = 8;
    std::vector<std::vector<double>> dist(n, std::vector<double>(n, 0.0));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if ((i < 4) != (j < 4)) dist[i][j] = 10.0;
    auto labels = spectral_cluster(dist, 2, 1);
    REQUIRE(labels.size() == n);
    for (int i = 1; i < 4; ++i) CHECK(labels[i] == labels[0]);
    for (int i = 5; i < n; ++i) CHECK(labels[i] == labels[4]);
    CHECK(labels[0] != labels[4]);
    CHECK(adjusted_rand_index(labels, {0, 0, 0, 0, 1, 1, 1, 1}) == doctest::Approx(1.0));
    // Determinism.
    CHECK(spectral_cluster(dist, 2, 1) == labels);
    // k = n: every point its own cluster.
    auto own = spectral_cluster(dist, n, 1);
    std::set<int> uniq(own.begin(), own.end());
    CHECK(uniq.size() == n);
    CHECK_THROWS_AS(spectral_cluster(dist, n + 1, 1), input_error);
}

TEST_CASE("forman bound checker: closed-form perturbation effects") {
    // Path 0-1 plus a fresh neighbour 2 on vertex 1: degree bump without a
    // triangle lowers the edge's curvature by exactly 1.
    Graph before(3, {{0, 1}});
    Graph after(3, {{0, 1}, {1, 2}});
    CHECK(forman(after).at({0, 1}) - forman(before).at({0, 1}) == -1.0);
    // Closing a triangle on a path raises the adjacent edge by +2 (one
    // triangle gained, one degree bump): 4-d_i-d_j+3T.
    Graph path(3, {{0, 1}, {1, 2}});
    Graph tri(3, {{0, 1}, {1, 2}, {0, 2}});
    CHECK(forman(tri).at({0, 1}) - forman(path).at({0, 1}) == 2.0);
}

TEST_CASE("bound checkers report zero violations on ER graphs") {
    Graph g = connected_er(13, 0.35, 17);
    for (auto mode : {PerturbationSpec::Mode::add, PerturbationSpec::Mode::remove}) {
        auto rep = check_forman_bounds(g, mode, 60, 5);
        CHECK(rep.violations == 0);
        CHECK(rep.samples > 0);
        CHECK(rep.worst_margin >= -1e-9);
        auto rrep = check_resistance_bounds(g, mode, 60, 5);
        CHECK(rrep.violations == 0);
        CHECK(rrep.samples > 0);
    }
    MeasureConfig uni;
    auto orep = check_orc_bounds(g, uni, 50, 5);
    CHECK(orep.violations == 0);
    CHECK(orep.samples > 0);
    CHECK(orep.auxiliaries.count("W_max") == 1);
}

TEST_CASE("orc bounds bracket the unperturbed graph (degenerate perturbation)") {
    // With no perturbation W'_max = 0 and both Theorem-style bounds must
    // bracket the plain curvature values.
    MeasureConfig uni;
    for (std::uint64_t s = 0; s < 5; ++s) {
        Graph g = connected_er(12, 0.3, 60 + s);
        auto dist = shortest_path_matrix(g);
        auto orc = ollivier_ricci(g, uni);
        for (auto [i, j] : g.edges()) {
            double ji = wasserstein1(dirac(i), node_measure(g, i, uni), dist);
            double jj = wasserstein1(dirac(j), node_measure(g, j, uni), dist);
            double w = wasserstein1(node_measure(g, i, uni), node_measure(g, j, uni),
                                    dist);
            CHECK(orc.at({i, j}) <= (ji + jj) / dist[i][j] + 1e-9);
            CHECK(orc.at({i, j}) >= 1.0 - (2.0 * 0.0 + w) / dist[i][j] - 1e-9);
        }
    }
}

TEST_CASE("deleting a cycle edge of c4 weakly lowers remaining curvature") {
    Graph c4 = named_graph("c4");
    Graph path(4, {{0, 1}, {1, 2}, {2, 3}});
    auto before = resistance_curvature(c4);
    auto after = resistance_curvature(path);
    for (const auto& [e, v] : after) CHECK(v <= before.at(e) + 1e-9);
}

TEST_CASE("bound theorem names") {
    CHECK(bound_theorem_name(BoundTheorem::forman_add) == "forman_add");
    CHECK(bound_theorem_name(BoundTheorem::rec_del) == "rec_del");
}
