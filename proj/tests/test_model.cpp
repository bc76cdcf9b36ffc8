#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "subr/types.hpp"

#include "test_util.hpp"

#include <random>

using namespace subr;
using testutil::mat;

TEST_CASE("region_sum basic sums") {
    Eigen::MatrixXd m = mat({{5, -1}, {-2, 3}});
    std::vector<Cell> one = {{0, 0}};
    CHECK(region_sum(m, one) == doctest::Approx(5.0));
    std::vector<Cell> all = {{0, 0}, {0, 1}, {1, 0}, {1, 1}};
    CHECK(region_sum(m, all) == doctest::Approx(5.0));
}

TEST_CASE("region_sum on the pinned 3x4 instance") {
    Eigen::MatrixXd m = testutil::pinned_3x4();
    // Optimal cells, scores 40 + 10 + 1 + 35 + 10.
    std::vector<Cell> cells = {{2, 2}, {1, 1}, {1, 2}, {1, 3}, {0, 2}};
    CHECK(region_sum(m, cells) == doctest::Approx(96.0));
}

TEST_CASE("region_sum rejects out-of-bounds cells") {
    Eigen::MatrixXd m = mat({{5, -1}, {-2, 3}});
    std::vector<Cell> bad = {{0, 0}, {2, 0}};
    CHECK_THROWS_AS(region_sum(m, bad), std::out_of_range);
    std::vector<Cell> neg = {{-1, 0}};
    CHECK_THROWS_AS(region_sum(m, neg), std::out_of_range);
}

TEST_CASE("is_connected basics") {
    std::vector<Cell> single = {{0, 0}};
    CHECK(is_connected(single));
    std::vector<Cell> diagonal = {{0, 0}, {1, 1}};
    CHECK_FALSE(is_connected(diagonal));
    // The five-cell optimum of the pinned instance, in its original 1-based
    // labels (3,3),(2,3),(2,2),(2,4),(1,3): a valid connected shape.
    std::vector<Cell> opt = {{3, 3}, {2, 3}, {2, 2}, {2, 4}, {1, 3}};
    CHECK(is_connected(opt));
}

TEST_CASE("is_connected rejects empty input") {
    std::vector<Cell> empty;
    CHECK_THROWS_AS(is_connected(empty), std::invalid_argument);
}

TEST_CASE("is_connected on randomly grown sets") {
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 200; ++trial) {
        // Grow a set by repeatedly attaching a neighbor of a member.
        std::vector<Cell> cells = {{0, 0}};
        std::uniform_int_distribution<int> pick(0, 3);
        for (int step = 0; step < 12; ++step) {
            Cell base = cells[rng() % cells.size()];
            Cell next = base;
            switch (pick(rng)) {
                case 0: next.row++; break;
                case 1: next.row--; break;
                case 2: next.col++; break;
                default: next.col--; break;
            }
            cells.push_back(next);
        }
        CHECK(is_connected(cells));

        // Two grown blobs far apart are never connected.
        std::vector<Cell> split = cells;
        for (Cell c : cells) split.push_back({c.row + 100, c.col + 100});
        CHECK_FALSE(is_connected(split));
    }
}

TEST_CASE("distance metrics") {
    FeatureVector a(3), b(3);
    a << 0, 0, 0;
    b << 3, 4, 0;
    CHECK(distance(Metric::L2, a, b) == doctest::Approx(5.0));
    CHECK(distance(Metric::L1, a, b) == doctest::Approx(7.0));
    FeatureVector c(2);
    CHECK_THROWS_AS(distance(Metric::L2, a, c), std::invalid_argument);
}
