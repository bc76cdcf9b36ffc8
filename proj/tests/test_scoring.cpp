#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "subr/mwcs.hpp"
#include "subr/scoring.hpp"

#include "test_util.hpp"

#include <random>

using namespace subr;
using testutil::mat;

namespace {

QueryTile qt(double bg, FeatureVector f = FeatureVector::Zero(2)) {
    return QueryTile{std::move(f), bg};
}

FeatureVector vec2(double a, double b) {
    FeatureVector v(2);
    v << a, b;
    return v;
}

// rows x cols query with given bg values (row-major) and features.
QueryImage make_query(int rows, int cols, const std::vector<double>& bg,
                      const std::vector<FeatureVector>& feats) {
    QueryImage q;
    q.rows = rows;
    q.cols = cols;
    for (int i = 0; i < rows * cols; ++i) q.tiles.push_back({feats[i], bg[i]});
    return q;
}

TiledImage make_image(std::uint32_t id, int rows, int cols, const std::vector<FeatureVector>& feats) {
    TiledImage img;
    img.image_id = id;
    img.rows = rows;
    img.cols = cols;
    img.tiles = feats;
    img.tile_bg.assign(feats.size(), 0.0);
    return img;
}

}  // namespace

TEST_CASE("tile_score matches the discriminator form") {
    ScoringParams params;  // lambda 1, c 23000
    CHECK(tile_score(qt(0), 0, params) == doctest::Approx(-23000));
    CHECK(tile_score(qt(24000), 500, params) == doctest::Approx(500));
    CHECK(tile_score(qt(24000), 1500, params) == doctest::Approx(-500));
    CHECK_THROWS_AS(tile_score(qt(0), -1, params), std::invalid_argument);
    ScoringParams bad;
    bad.lambda = 0;
    CHECK_THROWS_AS(tile_score(qt(0), 1, bad), std::invalid_argument);
}

TEST_CASE("tile_score is strictly monotone in distance and in bg") {
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> rbg(0, 300000), rd(0, 100000);
    ScoringParams params;
    params.lambda = 1.0;
    for (int trial = 0; trial < 10000; ++trial) {
        double bg = rbg(rng);
        double r1 = rd(rng), r2 = rd(rng);
        if (r1 == r2) continue;
        if (r1 > r2) std::swap(r1, r2);
        CHECK(tile_score(qt(bg), r1, params) > tile_score(qt(bg), r2, params));

        double b1 = rbg(rng), b2 = rbg(rng);
        if (b1 == b2) continue;
        if (b1 > b2) std::swap(b1, b2);
        double r = rd(rng);
        CHECK(tile_score(qt(b1), r, params) < tile_score(qt(b2), r, params));
    }
}

TEST_CASE("bg_distance sums pixels against a black background") {
    GrayImage zero = GrayImage::Zero(32, 32);
    CHECK(bg_distance(zero, 32) == doctest::Approx(0.0));
    GrayImage bright = GrayImage::Constant(32, 32, 255);
    CHECK(bg_distance(bright, 32) == doctest::Approx(261120.0));
    GrayImage one = GrayImage::Zero(32, 32);
    one(5, 7) = 100;
    CHECK(bg_distance(one, 32) == doctest::Approx(100.0));
    GrayImage small = GrayImage::Zero(16, 16);
    CHECK_THROWS_AS(bg_distance(small, 32), std::invalid_argument);
}

TEST_CASE("score_matrix_actual covers exactly the overlap") {
    // 4x4 query over a 4x4 image, shifted one tile both ways: 3x3 overlap.
    std::vector<FeatureVector> qf(16, vec2(0, 0)), tf(16, vec2(0, 0));
    QueryImage q = make_query(4, 4, std::vector<double>(16, 30000.0), qf);
    TiledImage img = make_image(0, 4, 4, tf);
    ScoringParams params;

    ScoreMatrix sm = score_matrix_actual(q, img, {0, 1, 1}, params, Metric::L2);
    CHECK(sm.rows() == 3);
    CHECK(sm.cols() == 3);
    REQUIRE(sm.origin.has_value());
    CHECK(sm.origin->query_row0 == 0);
    CHECK(sm.origin->query_col0 == 0);

    // Identical image at zero offset: r = 0 everywhere, entries bg - c.
    ScoreMatrix perfect = score_matrix_actual(q, img, {0, 0, 0}, params, Metric::L2);
    CHECK(perfect.rows() == 4);
    CHECK((perfect.scores.array() == 30000.0 - 23000.0).all());

    // 2x2 query overlapping one corner tile only.
    QueryImage q2 = make_query(2, 2, std::vector<double>(4, 25000.0), {qf[0], qf[1], qf[2], qf[3]});
    ScoreMatrix corner = score_matrix_actual(q2, img, {0, -1, -1}, params, Metric::L2);
    CHECK(corner.rows() == 1);
    CHECK(corner.cols() == 1);

    CHECK_THROWS_AS(score_matrix_actual(q2, img, {0, -5, 0}, params, Metric::L2),
                    std::invalid_argument);
}

TEST_CASE("score_matrix_uniform substitutes one distance everywhere") {
    QueryImage q = make_query(1, 1, {30000.0}, {vec2(0, 0)});
    ScoringParams params;
    ScoreMatrix sm = score_matrix_uniform(q, 1000.0, params);
    CHECK(sm.rows() == 1);
    CHECK(sm.scores(0, 0) == doctest::Approx(6000.0));
    CHECK_FALSE(sm.origin.has_value());

    QueryImage q2 = make_query(2, 3, {1000, 2000, 3000, 4000, 5000, 6000},
                               std::vector<FeatureVector>(6, vec2(0, 0)));
    ScoreMatrix a = score_matrix_uniform(q2, 10.0, params);
    ScoreMatrix b = score_matrix_uniform(q2, 250.0, params);
    CHECK((a.scores.array() > b.scores.array()).all());

    ScoreMatrix z = score_matrix_uniform(q2, 0.0, params);
    for (int r = 0; r < 2; ++r)
        for (int c = 0; c < 3; ++c)
            CHECK(z.scores(r, c) == doctest::Approx(q2.tile(r, c).bg_distance - params.c));
}

TEST_CASE("tars_threshold_matrix scores each tile at its own distance") {
    QueryImage q = make_query(1, 2, {30000.0, 25000.0}, {vec2(0, 0), vec2(1, 1)});
    ScoringParams params;
    std::vector<double> d = {10.0, 20.0};
    ScoreMatrix sm = tars_threshold_matrix(q, d, params);
    CHECK(sm.scores(0, 0) == doctest::Approx(6990.0));
    CHECK(sm.scores(0, 1) == doctest::Approx(1980.0));

    std::vector<double> zero = {0.0, 0.0};
    ScoreMatrix perfect = tars_threshold_matrix(q, zero, params);
    CHECK(perfect.scores(0, 0) == doctest::Approx(7000.0));
    CHECK(perfect.scores(0, 1) == doctest::Approx(2000.0));

    std::vector<double> wrong = {1.0};
    CHECK_THROWS_AS(tars_threshold_matrix(q, wrong, params), std::invalid_argument);
}

TEST_CASE("upper_bound modes") {
    Eigen::MatrixXd m = mat({{5, -1}, {-2, 3}});
    ScoreMatrix sm{m, std::nullopt};
    CHECK(upper_bound(sm, BoundMode::PositiveSum) == doctest::Approx(8.0));
    CHECK(upper_bound(sm, BoundMode::DpHeuristic) == doctest::Approx(7.0));

    Eigen::MatrixXd neg = mat({{-4, -2}, {-7, -1}});
    CHECK(upper_bound(ScoreMatrix{neg, std::nullopt}, BoundMode::PositiveSum) == doctest::Approx(-1.0));
}

TEST_CASE("positive-sum bound dominates the exact optimum") {
    std::mt19937_64 rng(77);
    std::uniform_int_distribution<int> rdim(1, 4);
    for (int trial = 0; trial < 200; ++trial) {
        Eigen::MatrixXd m = testutil::random_int_matrix(rng, rdim(rng), rdim(rng), -10, 10);
        double bound = upper_bound(ScoreMatrix{m, std::nullopt}, BoundMode::PositiveSum);
        CHECK(bound >= exact_mwcs(m).score - 1e-9);
    }
}

TEST_CASE("uniform matrix at the minimum pair distance dominates the actual matrix") {
    std::mt19937_64 rng(78);
    std::uniform_real_distribution<double> coord(0.0, 1000.0), rbg(20000.0, 30000.0);
    ScoringParams params;
    for (int trial = 0; trial < 200; ++trial) {
        const int qr = 1 + static_cast<int>(rng() % 3);
        const int qc = 1 + static_cast<int>(rng() % 3);
        std::vector<FeatureVector> qf, tf;
        std::vector<double> bg;
        for (int i = 0; i < qr * qc; ++i) {
            qf.push_back(vec2(coord(rng), coord(rng)));
            bg.push_back(rbg(rng));
        }
        const int ir = 2 + static_cast<int>(rng() % 3);
        const int ic = 2 + static_cast<int>(rng() % 3);
        for (int i = 0; i < ir * ic; ++i) tf.push_back(vec2(coord(rng), coord(rng)));
        QueryImage q = make_query(qr, qc, bg, qf);
        TiledImage img = make_image(0, ir, ic, tf);
        Alignment a{0, static_cast<int>(rng() % ir), static_cast<int>(rng() % ic)};

        ScoreMatrix actual = score_matrix_actual(q, img, a, params, Metric::L2);
        // Minimum aligned-pair distance over the overlap.
        double dmin = std::numeric_limits<double>::infinity();
        for (int r = 0; r < actual.rows(); ++r) {
            for (int c = 0; c < actual.cols(); ++c) {
                const QueryTile& tile = q.tile(actual.origin->query_row0 + r, actual.origin->query_col0 + c);
                const FeatureVector& t = img.tile(actual.origin->query_row0 + r + a.drow,
                                                  actual.origin->query_col0 + c + a.dcol);
                dmin = std::min(dmin, distance(Metric::L2, tile.features, t));
            }
        }
        ScoreMatrix uniform = score_matrix_uniform(q, dmin, params);
        for (int r = 0; r < actual.rows(); ++r) {
            for (int c = 0; c < actual.cols(); ++c) {
                CHECK(uniform.scores(actual.origin->query_row0 + r, actual.origin->query_col0 + c) >=
                      actual.scores(r, c) - 1e-9);
            }
        }
    }
}
