#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "curvscape/graph.hpp"
#include "curvscape/landscape.hpp"

using namespace curvscape;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
const double kSup = kInf;

PersistenceDiagram diagram_with(std::vector<PersistencePair> dim0,
                                std::vector<PersistencePair> dim1 = {}) {
    PersistenceDiagram d;
    d.dim0 = std::move(dim0);
    d.dim1 = std::move(dim1);
    return d;
}

PersistenceDiagram random_diagram(Rng& rng, int points) {
    PersistenceDiagram d;
    for (int i = 0; i < points; ++i) {
        double b = rng.next_double() * 5.0;
        d.dim0.push_back({b, b + rng.next_double() * 3.0});
    }
    return d;
}

}  // namespace

TEST_CASE("grid covers diagrams and caps essentials") {
    auto d = diagram_with({{0.0, 2.0}, {1.0, kInf}});
    LandscapeGrid g = grid_for({d}, 100);
    CHECK(g.lo == doctest::Approx(0.0));
    CHECK(g.hi == doctest::Approx(4.0));  // max finite 2 + padding max(1, range 2)
    LandscapeGrid g2 = grid_for({d}, 100, 0.5);
    CHECK(g2.hi == doctest::Approx(2.5));
    LandscapeGrid empty = grid_for({diagram_with({})}, 100);
    CHECK(empty.lo < empty.hi);
}

TEST_CASE("single tent landscape") {
    auto d = diagram_with({{0.0, 2.0}});
    LandscapeGrid grid{0.0, 2.0, 201};
    PersistenceLandscape L = to_landscape(d, grid);
    REQUIRE(L.dims[0].size() == 1);
    CHECK(L.dims[0][0][0] == doctest::Approx(0.0));
    CHECK(L.dims[0][0][100] == doctest::Approx(1.0));  // peak at t=1
    CHECK(L.dims[0][0][200] == doctest::Approx(0.0));
    CHECK(L.dims[0][0][50] == doctest::Approx(0.5));
    CHECK(L.dims[1].empty());
}

TEST_CASE("duplicate pairs stack landscape levels") {
    auto d = diagram_with({{0.0, 2.0}, {0.0, 2.0}});
    LandscapeGrid grid{0.0, 2.0, 101};
    PersistenceLandscape L = to_landscape(d, grid);
    REQUIRE(L.dims[0].size() == 2);
    CHECK(L.dims[0][0] == L.dims[0][1]);
}

TEST_CASE("empty diagram gives the zero landscape") {
    PersistenceLandscape L = to_landscape(diagram_with({}), {0.0, 1.0, 11});
    CHECK(L.dims[0].empty());
    CHECK(landscape_norm(L, kSup) == 0.0);
}

TEST_CASE("grid must cover the diagram") {
    auto d = diagram_with({{0.0, 5.0}});
    CHECK_THROWS_AS(to_landscape(d, LandscapeGrid{0.0, 2.0, 11}), input_error);
}

TEST_CASE("landscape levels are nested and non-negative") {
    Rng rng(8);
    for (int t = 0; t < 20; ++t) {
        PersistenceDiagram d = random_diagram(rng, 6);
        LandscapeGrid grid = grid_for({d}, 200);
        PersistenceLandscape L = to_landscape(d, grid);
        for (const auto& dim : L.dims)
            for (std::size_t j = 0; j + 1 < dim.size(); ++j)
                for (std::size_t i = 0; i < dim[j].size(); ++i) {
                    CHECK(dim[j][i] >= dim[j + 1][i]);
                    CHECK(dim[j + 1][i] >= 0.0);
                }
    }
}

TEST_CASE("averaging identities") {
    Rng rng(13);
    PersistenceDiagram d = random_diagram(rng, 5);
    LandscapeGrid grid = grid_for({d}, 200);
    PersistenceLandscape L = to_landscape(d, grid);
    PersistenceLandscape zero = to_landscape(diagram_with({}), grid);

    PersistenceLandscape same = average({L, L});
    PersistenceLandscape single = average({L});
    PersistenceLandscape half = average({L, zero});
    for (int k = 0; k < 2; ++k) {
        REQUIRE(same.dims[k].size() == L.dims[k].size());
        for (std::size_t j = 0; j < L.dims[k].size(); ++j)
            for (std::size_t i = 0; i < L.dims[k][j].size(); ++i) {
                CHECK(same.dims[k][j][i] == doctest::Approx(L.dims[k][j][i]));
                CHECK(single.dims[k][j][i] == doctest::Approx(L.dims[k][j][i]));
                CHECK(half.dims[k][j][i] == doctest::Approx(L.dims[k][j][i] / 2));
            }
    }
    CHECK_THROWS_AS(average({}), input_error);
}

TEST_CASE("averaging is permutation-invariant") {
    Rng rng(29);
    std::vector<PersistenceLandscape> ls;
    LandscapeGrid grid{0.0, 10.0, 300};
    for (int i = 0; i < 5; ++i) ls.push_back(to_landscape(random_diagram(rng, 4), grid));
    std::vector<PersistenceLandscape> shuffled = {ls[3], ls[0], ls[4], ls[2], ls[1]};
    PersistenceLandscape a = average(ls), b = average(shuffled);
    for (int k = 0; k < 2; ++k) {
        REQUIRE(a.dims[k].size() == b.dims[k].size());
        for (std::size_t j = 0; j < a.dims[k].size(); ++j)
            CHECK(a.dims[k][j] == b.dims[k][j]);
    }
}

TEST_CASE("norms: closed forms and validation") {
    auto d = diagram_with({{0.0, 2.0}});
    LandscapeGrid grid{0.0, 2.0, 1001};
    PersistenceLandscape L = to_landscape(d, grid);
    CHECK(landscape_norm(L, kSup) == doctest::Approx(1.0));
    CHECK(landscape_norm(L, 1.0) == doctest::Approx(1.0).epsilon(1e-3));
    CHECK(landscape_norm(L, 2.0) ==
          doctest::Approx(std::sqrt(2.0 / 3.0)).epsilon(1e-3));
    CHECK_THROWS_AS(landscape_norm(L, 0.5), input_error);
    PersistenceLandscape Z = to_landscape(diagram_with({}), grid);
    CHECK(landscape_norm(Z, 1.0) == 0.0);
}

TEST_CASE("distance modes: closed forms") {
    auto d = diagram_with({{0.0, 2.0}});
    LandscapeGrid grid{0.0, 2.0, 501};
    PersistenceLandscape A = to_landscape(d, grid);
    PersistenceLandscape Z = to_landscape(diagram_with({}), grid);
    CHECK(landscape_distance(A, A, kSup, DistanceMode::norm_of_diff) ==
          doctest::Approx(0.0));
    CHECK(landscape_distance(A, A, kSup, DistanceMode::alg2) == doctest::Approx(0.0));
    CHECK(landscape_distance(A, Z, kSup, DistanceMode::norm_of_diff) ==
          doctest::Approx(1.0));
    // alg2: dim0 sup-norm difference 1, dim1 difference 0 -> ||(1,0)|| = 1.
    CHECK(landscape_distance(A, Z, kSup, DistanceMode::alg2) == doctest::Approx(1.0));
    CHECK(distance_mode_from_name("alg2") == DistanceMode::alg2);
    CHECK(distance_mode_name(DistanceMode::norm_of_diff) == "norm_of_diff");
    CHECK_THROWS_AS(distance_mode_from_name("bogus"), input_error);
}

TEST_CASE("norm_of_diff distance is a pseudometric") {
    Rng rng(47);
    LandscapeGrid grid{0.0, 10.0, 400};
    for (int t = 0; t < 25; ++t) {
        PersistenceLandscape a = to_landscape(random_diagram(rng, 4), grid);
        PersistenceLandscape b = to_landscape(random_diagram(rng, 4), grid);
        PersistenceLandscape c = to_landscape(random_diagram(rng, 4), grid);
        for (double p : {1.0, 2.0, kSup}) {
            double ab = landscape_distance(a, b, p, DistanceMode::norm_of_diff);
            double ba = landscape_distance(b, a, p, DistanceMode::norm_of_diff);
            CHECK(ab == doctest::Approx(ba).epsilon(1e-12));
            double ac = landscape_distance(a, c, p, DistanceMode::norm_of_diff);
            double cb = landscape_distance(c, b, p, DistanceMode::norm_of_diff);
            CHECK(ab <= ac + cb + 1e-9 * (1.0 + ab));
        }
    }
}

TEST_CASE("diagram-to-landscape is 1-Lipschitz in sup norm under jitter") {
    Rng rng(61);
    for (int t = 0; t < 20; ++t) {
        PersistenceDiagram d = random_diagram(rng, 5);
        double eps = 0.05 + rng.next_double() * 0.1;
        PersistenceDiagram jittered = d;
        Rng jr(1000 + t);
        for (auto& p : jittered.dim0) {
            double db = (jr.next_double() * 2 - 1) * eps;
            double dd = (jr.next_double() * 2 - 1) * eps;
            p.birth += db;
            p.death = std::max(p.birth, p.death + dd);
        }
        LandscapeGrid grid = grid_for({d, jittered}, 4000);
        PersistenceLandscape a = to_landscape(d, grid);
        PersistenceLandscape b = to_landscape(jittered, grid);
        double dist = landscape_distance(a, b, kSup, DistanceMode::norm_of_diff);
        CHECK(dist <= eps + grid.step() + 1e-9);
    }
}

TEST_CASE("finite-p norms converge under grid refinement") {
    Rng rng(73);
    for (int t = 0; t < 10; ++t) {
        PersistenceDiagram d = random_diagram(rng, 5);
        LandscapeGrid coarse = grid_for({d}, 1000);
        LandscapeGrid fine = grid_for({d}, 2000);
        for (double p : {1.0, 2.0}) {
            double a = landscape_norm(to_landscape(d, coarse), p);
            double b = landscape_norm(to_landscape(d, fine), p);
            if (a == 0.0 && b == 0.0) continue;
            CHECK(std::abs(a - b) / std::max(a, b) < 0.005);
        }
    }
}

TEST_CASE("resample agrees on shared support") {
    Rng rng(83);
    PersistenceDiagram d = random_diagram(rng, 4);
    LandscapeGrid grid = grid_for({d}, 500);
    PersistenceLandscape L = to_landscape(d, grid);
    LandscapeGrid wider{grid.lo - 1.0, grid.hi + 1.0, 700};
    PersistenceLandscape W = resample(L, wider);
    // Outside the original support the landscape is zero.
    CHECK(W.dims[0].front().front() == doctest::Approx(0.0));
    CHECK(W.dims[0].front().back() == doctest::Approx(0.0));
    double a = landscape_norm(L, kSup);
    double b = landscape_norm(W, kSup);
    CHECK(b == doctest::Approx(a).epsilon(0.01));
}

TEST_CASE("set distance identities and separation") {
    PipelineConfig cfg;
    cfg.kind = CurvatureKind::orc;
    cfg.resolution = 400;
    GraphSet A;
    for (std::uint64_t s = 0; s < 6; ++s) A.graphs.push_back(generate_er(20, 0.2, s));
    GraphSet shuffled;
    for (int i : {4, 1, 5, 0, 2, 3}) shuffled.graphs.push_back(A.graphs[i]);
    CHECK(set_distance(A, A, cfg).distance == doctest::Approx(0.0));
    CHECK(set_distance(A, shuffled, cfg).distance == doctest::Approx(0.0));

    GraphSet B;
    for (std::uint64_t s = 0; s < 6; ++s)
        B.graphs.push_back(generate_er(20, 0.6, 100 + s));
    CHECK(set_distance(A, B, cfg).distance > 1e-8);
    GraphSet empty;
    CHECK_THROWS_AS(set_distance(A, empty, cfg), input_error);
}

TEST_CASE("pipeline diagram uses the configured curvature") {
    PipelineConfig cfg;
    cfg.kind = CurvatureKind::frc;
    PersistenceDiagram d = diagram_for(named_graph("k3"), cfg);
    REQUIRE(d.dim0.size() == 3);
    CHECK(d.dim0[2].birth == doctest::Approx(3.0));
    CHECK(d.dim1.size() == 1);
}
