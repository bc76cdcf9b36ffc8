#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "subr/mwcs.hpp"

#include "test_util.hpp"

#include <algorithm>
#include <random>

using namespace subr;
using testutil::mat;

namespace {

std::vector<Cell> sorted_cells(Region r) {
    std::sort(r.cells.begin(), r.cells.end());
    return r.cells;
}

}  // namespace

TEST_CASE("pinned 3x4: exact optimum is 96 on the known five cells") {
    Region r = exact_mwcs(testutil::pinned_3x4());
    CHECK(r.score == doctest::Approx(96.0));
    CHECK(sorted_cells(r) == std::vector<Cell>{{0, 2}, {1, 1}, {1, 2}, {1, 3}, {2, 2}});
}

TEST_CASE("pinned 3x4: bottom-left run reaches only 61") {
    Region r = dp_corner_run(testutil::pinned_3x4(), Corner::BottomLeft);
    CHECK(r.score == doctest::Approx(61.0));
    CHECK(sorted_cells(r) == std::vector<Cell>{{0, 2}, {1, 1}, {1, 2}, {2, 2}});
}

TEST_CASE("pinned 3x4: four-corner value confirmed by independent recurrence") {
    Eigen::MatrixXd m = testutil::pinned_3x4();
    testutil::NaiveDpBest naive = testutil::naive_four_corner(m);
    Region lib = dp_max_region(m);
    CHECK(lib.score == doctest::Approx(naive.score));
    // Independent straight-line execution pins the four-corner result at 95,
    // between the bottom-left run (61) and the exact optimum (96).
    CHECK(lib.score == doctest::Approx(95.0));
    CHECK(testutil::naive_corner_run(m, 0).score == doctest::Approx(61.0));
}

TEST_CASE("2x2 worked instance") {
    Eigen::MatrixXd m = mat({{5, -1}, {-2, 3}});
    Region dp = dp_max_region(m);
    CHECK(dp.score == doctest::Approx(7.0));
    CHECK(sorted_cells(dp) == std::vector<Cell>{{0, 0}, {0, 1}, {1, 1}});
    CHECK(exact_mwcs(m).score == doctest::Approx(7.0));
}

TEST_CASE("all-negative matrices return the single best cell") {
    Eigen::MatrixXd m = mat({{-4, -2}, {-7, -1}});
    Region exact = exact_mwcs(m);
    CHECK(exact.score == doctest::Approx(-1.0));
    CHECK(exact.cells.size() == 1);
    CHECK(exact.cells.front() == Cell{1, 1});
    Region dp = dp_max_region(m);
    CHECK(dp.score == doctest::Approx(-1.0));
    CHECK(dp.cells.size() == 1);
}

TEST_CASE("all-positive matrices: any corner returns the whole matrix") {
    std::mt19937_64 rng(11);
    Eigen::MatrixXd m = testutil::random_int_matrix(rng, 3, 4, 1, 9);
    for (Corner corner : kAllCorners) {
        Region r = dp_corner_run(m, corner);
        CHECK(r.cells.size() == 12);
        CHECK(r.score == doctest::Approx(m.sum()));
    }
}

TEST_CASE("1x1 matrix") {
    Eigen::MatrixXd m(1, 1);
    m(0, 0) = -3.5;
    for (Corner corner : kAllCorners) {
        Region r = dp_corner_run(m, corner);
        CHECK(r.score == doctest::Approx(-3.5));
        CHECK(r.cells == std::vector<Cell>{{0, 0}});
    }
}

TEST_CASE("empty matrix is rejected") {
    Eigen::MatrixXd m(0, 0);
    CHECK_THROWS_AS(dp_corner_run(m, Corner::BottomLeft), std::invalid_argument);
    CHECK_THROWS_AS(exact_mwcs(m), std::invalid_argument);
}

TEST_CASE("exact_mwcs refuses matrices over the cell cap") {
    Eigen::MatrixXd m = Eigen::MatrixXd::Ones(5, 5);
    CHECK_THROWS_AS(exact_mwcs(m), std::length_error);
    CHECK(exact_mwcs(m, 25).score == doctest::Approx(25.0));
}

TEST_CASE("dp is sound, floored by the best cell, and matches the reference") {
    std::mt19937_64 rng(42);
    std::uniform_int_distribution<int> rdim(2, 4);
    for (int trial = 0; trial < 300; ++trial) {
        Eigen::MatrixXd m = testutil::random_int_matrix(rng, rdim(rng), rdim(rng), -10, 10);
        Region dp = dp_max_region(m);
        Region exact = exact_mwcs(m);
        CHECK(dp.score <= exact.score + 1e-9);
        CHECK(dp.score >= m.maxCoeff() - 1e-9);
        CHECK(is_connected(dp.cells));
        CHECK(region_sum(m, dp.cells) == doctest::Approx(dp.score));
        CHECK(is_connected(exact.cells));
        CHECK(region_sum(m, exact.cells) == doctest::Approx(exact.score));

        testutil::NaiveDpBest naive = testutil::naive_four_corner(m);
        CHECK(dp.score == doctest::Approx(naive.score));
    }
}

TEST_CASE("dp score is invariant under flips and 180-degree rotation") {
    std::mt19937_64 rng(43);
    std::uniform_int_distribution<int> rdim(1, 5);
    for (int trial = 0; trial < 100; ++trial) {
        Eigen::MatrixXd m = testutil::random_int_matrix(rng, rdim(rng), rdim(rng), -10, 10);
        const double base = dp_max_region(m).score;
        CHECK(dp_max_region(m.rowwise().reverse()).score == doctest::Approx(base));
        CHECK(dp_max_region(m.colwise().reverse()).score == doctest::Approx(base));
        CHECK(dp_max_region(m.reverse()).score == doctest::Approx(base));
    }
}

TEST_CASE("sinks examples") {
    // In the pinned instance's original 1-based labels: (3,3) sinks (2,3)
    // for right+up moves, but does not sink (2,4).
    std::vector<Cell> p1 = {{2, 3}, {3, 3}};
    CHECK(sinks(p1, {3, 3}, Corner::BottomLeft));
    std::vector<Cell> p2 = {{2, 4}, {3, 3}};
    CHECK_FALSE(sinks(p2, {3, 3}, Corner::BottomLeft));
    std::vector<Cell> single = {{5, 5}};
    for (Corner corner : kAllCorners) CHECK(sinks(single, {5, 5}, corner));
    CHECK_THROWS_AS(sinks(p1, {0, 0}, Corner::BottomLeft), std::invalid_argument);
}

TEST_CASE("capturable shapes: rectangles yes, plus and X no") {
    for (int h = 1; h <= 4; ++h) {
        for (int w = 1; w <= 4; ++w) {
            std::vector<Cell> rect;
            for (int r = 0; r < h; ++r)
                for (int c = 0; c < w; ++c) rect.push_back({r, c});
            CHECK(is_dp_capturable(rect));
        }
    }
    std::vector<Cell> plus = {{1, 0}, {1, 1}, {1, 2}, {0, 1}, {2, 1}};
    CHECK_FALSE(is_dp_capturable(plus));

    // The 5-cell X: no cell sinks a set it cannot even reach.
    std::vector<Cell> ex = {{0, 0}, {0, 2}, {1, 1}, {2, 0}, {2, 2}};
    CHECK_FALSE(is_dp_capturable(ex));

    // A block with a single cell on top is still sinkable.
    std::vector<Cell> zig = {{0, 0}, {0, 1}, {1, 1}, {1, 0}, {2, 1}};
    CHECK(is_dp_capturable(zig));

    CHECK_THROWS_AS(is_dp_capturable(std::vector<Cell>{}), std::invalid_argument);
}

TEST_CASE("trst reduction: tiny instances") {
    TrstInstance pair;
    pair.grid_size = 2;
    pair.terminals = {{0, 0}, {0, 1}};
    pair.terminal_weight = 100;
    pair.length_budget = 4;
    Eigen::MatrixXd m = trst_to_mwcs(pair);
    CHECK(m.rows() == 3);
    CHECK(m.cols() == 3);
    CHECK(exact_mwcs(m, 9).score == doctest::Approx(199.0));
    CHECK(steiner_min_length(pair) == 1);

    TrstInstance single;
    single.grid_size = 2;
    single.terminals = {{1, 1}};
    single.terminal_weight = 100;
    single.length_budget = 4;
    CHECK(exact_mwcs(trst_to_mwcs(single), 9).score == doctest::Approx(100.0));
    CHECK(steiner_min_length(single) == 0);
}

TEST_CASE("trst reduction: random 3-terminal instances match the Steiner oracle") {
    std::mt19937_64 rng(1234);
    for (int trial = 0; trial < 10; ++trial) {
        TrstInstance inst;
        inst.grid_size = 3;
        inst.terminal_weight = 100;
        inst.length_budget = 8;
        std::set<std::pair<int, int>> used;
        while (used.size() < 3) used.insert({static_cast<int>(rng() % 3), static_cast<int>(rng() % 3)});
        for (auto [r, c] : used) inst.terminals.push_back({r, c});

        const int lstar = steiner_min_length(inst);
        Region r = exact_mwcs(trst_to_mwcs(inst), 25);
        CHECK(r.score == doctest::Approx(3 * 100.0 - lstar));
    }
}

TEST_CASE("trst rejects bad instances") {
    TrstInstance inst;
    inst.grid_size = 3;
    inst.terminals = {{0, 0}, {5, 0}};
    CHECK_THROWS_AS(trst_to_mwcs(inst), std::invalid_argument);
    inst.terminals = {{0, 0}, {0, 0}};
    CHECK_THROWS_AS(trst_to_mwcs(inst), std::invalid_argument);
    inst.terminals.clear();
    CHECK_THROWS_AS(trst_to_mwcs(inst), std::invalid_argument);
}
