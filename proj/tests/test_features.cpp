#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "subr/features.hpp"

#include <random>

using namespace subr;

namespace {

GrayImage rotate90(const GrayImage& src) {
    GrayImage out(src.cols(), src.rows());
    for (Eigen::Index r = 0; r < src.rows(); ++r)
        for (Eigen::Index c = 0; c < src.cols(); ++c) out(c, src.rows() - 1 - r) = src(r, c);
    return out;
}

}  // namespace

TEST_CASE("tile_image grid arithmetic and padding") {
    DescriptorConfig cfg;

    GrayImage a = GrayImage::Constant(64, 96, 10);
    TileGrid ga = tile_image(a, cfg);
    CHECK(ga.rows == 2);
    CHECK(ga.cols == 3);

    GrayImage b = GrayImage::Constant(40, 40, 7);
    TileGrid gb = tile_image(b, cfg);
    CHECK(gb.rows == 2);
    CHECK(gb.cols == 2);
    // Padded area is background zero.
    CHECK(gb.tile(1, 1)(20, 20) == 0);
    CHECK(gb.tile(0, 0)(20, 20) == 7);
    CHECK(gb.tile(1, 0)(7, 0) == 7);   // rows 40..63 exist only up to row 39
    CHECK(gb.tile(1, 0)(8, 0) == 0);

    GrayImage c = GrayImage::Constant(160, 320, 1);
    TileGrid gc = tile_image(c, cfg);
    CHECK(gc.rows == 5);
    CHECK(gc.cols == 10);

    GrayImage empty;
    CHECK_THROWS_AS(tile_image(empty, cfg), std::invalid_argument);
}

TEST_CASE("tile_image reassembles to the source pixels") {
    std::mt19937_64 rng(3);
    GrayImage img(50, 70);
    for (Eigen::Index r = 0; r < img.rows(); ++r)
        for (Eigen::Index c = 0; c < img.cols(); ++c) img(r, c) = static_cast<std::uint8_t>(rng() & 0xff);
    DescriptorConfig cfg;
    TileGrid g = tile_image(img, cfg);
    for (Eigen::Index r = 0; r < img.rows(); ++r) {
        for (Eigen::Index c = 0; c < img.cols(); ++c) {
            const GrayImage& tile = g.tile(static_cast<int>(r) / 32, static_cast<int>(c) / 32);
            REQUIRE(tile(r % 32, c % 32) == img(r, c));
        }
    }
}

TEST_CASE("descriptor of uniform tiles has a single count") {
    DescriptorConfig cfg;
    GrayImage uniform = GrayImage::Constant(32, 32, 100);
    FeatureVector d = csd_descriptor(uniform, cfg);
    CHECK(d.size() == 256);
    CHECK((d.array() != 0.0).count() == 1);
    CHECK(d[100 * 64 / 256] == doctest::Approx(16.0));
    CHECK(d.sum() == doctest::Approx(16.0));

    GrayImage zero = GrayImage::Zero(32, 32);
    FeatureVector dz = csd_descriptor(zero, cfg);
    CHECK(dz[0] == doctest::Approx(16.0));
    CHECK((dz.array() != 0.0).count() == 1);

    GrayImage small = GrayImage::Zero(16, 16);
    CHECK_THROWS_AS(csd_descriptor(small, cfg), std::invalid_argument);
}

TEST_CASE("descriptor is deterministic and 90-degree rotation invariant") {
    std::mt19937_64 rng(9);
    DescriptorConfig cfg;
    for (int trial = 0; trial < 20; ++trial) {
        // Synthetic block pattern: constant 8x8 blocks of random intensity.
        GrayImage tile(32, 32);
        for (int br = 0; br < 4; ++br) {
            for (int bc = 0; bc < 4; ++bc) {
                std::uint8_t v = static_cast<std::uint8_t>(rng() & 0xff);
                for (int y = 0; y < 8; ++y)
                    for (int x = 0; x < 8; ++x) tile(br * 8 + y, bc * 8 + x) = v;
            }
        }
        FeatureVector d1 = csd_descriptor(tile, cfg);
        FeatureVector d2 = csd_descriptor(tile, cfg);
        CHECK(d1 == d2);
        CHECK(d1 == csd_descriptor(rotate90(tile), cfg));

        // Arbitrary (non-block) content: rotation permutes windows and
        // window contents, so presence counts still match.
        GrayImage noisy(32, 32);
        for (Eigen::Index r = 0; r < 32; ++r)
            for (Eigen::Index c = 0; c < 32; ++c) noisy(r, c) = static_cast<std::uint8_t>(rng() & 0xff);
        CHECK(csd_descriptor(noisy, cfg) == csd_descriptor(rotate90(noisy), cfg));
    }
}

TEST_CASE("pca on a line keeps all energy in one axis") {
    std::mt19937_64 rng(21);
    std::uniform_real_distribution<double> t(-5.0, 5.0);
    FeatureVector dir(3), base(3);
    dir << 1, 2, 3;
    base << 4, -1, 0;
    std::vector<FeatureVector> data;
    for (int i = 0; i < 100; ++i) data.push_back(base + t(rng) * dir);

    PcaModel model = pca_fit(data, 1);
    CHECK(energy_retained(model) == doctest::Approx(1.0));
}

TEST_CASE("pca with full dimension is an isometry") {
    std::mt19937_64 rng(22);
    std::normal_distribution<double> g(0.0, 2.0);
    std::vector<FeatureVector> data;
    for (int i = 0; i < 60; ++i) {
        FeatureVector v(4);
        for (int d = 0; d < 4; ++d) v[d] = g(rng);
        data.push_back(v);
    }
    PcaModel model = pca_fit(data, 4);
    CHECK(energy_retained(model) == doctest::Approx(1.0));
    for (int i = 1; i < 60; ++i) {
        double orig = (data[i] - data[i - 1]).norm();
        double proj = (pca_project(model, data[i]) - pca_project(model, data[i - 1])).norm();
        CHECK(proj == doctest::Approx(orig).epsilon(1e-6));
        // Round trip through the full basis.
        FeatureVector back = model.mean + model.components.transpose() * pca_project(model, data[i]);
        CHECK((back - data[i]).norm() == doctest::Approx(0.0).epsilon(1e-6));
    }
}

TEST_CASE("pca projections: mean and component axes") {
    std::mt19937_64 rng(23);
    std::normal_distribution<double> g(0.0, 1.0);
    std::vector<FeatureVector> data;
    for (int i = 0; i < 50; ++i) {
        FeatureVector v(3);
        for (int d = 0; d < 3; ++d) v[d] = g(rng) * (d + 1);
        data.push_back(v);
    }
    PcaModel model = pca_fit(data, 2);
    CHECK(pca_project(model, model.mean).norm() == doctest::Approx(0.0));
    FeatureVector axis = model.mean + model.components.row(0).transpose();
    FeatureVector proj = pca_project(model, axis);
    CHECK(proj[0] == doctest::Approx(1.0));
    CHECK(proj[1] == doctest::Approx(0.0).epsilon(1e-9));

    FeatureVector wrong(7);
    CHECK_THROWS_AS(pca_project(model, wrong), std::invalid_argument);
    CHECK_THROWS_AS(pca_fit(data, 9), std::invalid_argument);
    CHECK_THROWS_AS(pca_fit({data[0]}, 1), std::invalid_argument);
}

TEST_CASE("isotropic cloud splits energy evenly") {
    std::mt19937_64 rng(24);
    std::normal_distribution<double> g(0.0, 1.0);
    std::vector<FeatureVector> data;
    for (int i = 0; i < 10000; ++i) {
        FeatureVector v(4);
        for (int d = 0; d < 4; ++d) v[d] = g(rng);
        data.push_back(v);
    }
    PcaModel model = pca_fit(data, 2);
    CHECK(energy_retained(model) == doctest::Approx(0.5).epsilon(0.05));
    // Matches the eigenvalue-ratio identity by construction.
    CHECK(energy_retained(model) ==
          doctest::Approx(model.eigenvalues.head(2).sum() / model.eigenvalues.sum()));
}

TEST_CASE("reconstruction error equals the discarded eigenvalue mass") {
    std::mt19937_64 rng(25);
    std::normal_distribution<double> g(0.0, 1.0);
    for (int out_dim : {1, 2, 3}) {
        std::vector<FeatureVector> data;
        for (int i = 0; i < 500; ++i) {
            FeatureVector v(5);
            for (int d = 0; d < 5; ++d) v[d] = g(rng) * (d + 0.5);
            data.push_back(v);
        }
        PcaModel model = pca_fit(data, out_dim);
        double total_err = 0.0;
        for (const FeatureVector& v : data) {
            FeatureVector back = model.mean + model.components.transpose() * pca_project(model, v);
            total_err += (v - back).squaredNorm();
        }
        const double avg_err = total_err / static_cast<double>(data.size());
        const double discarded = model.eigenvalues.tail(5 - out_dim).sum();
        CHECK(avg_err == doctest::Approx(discarded).epsilon(1e-6));
    }
}

TEST_CASE("projection is non-expansive") {
    std::mt19937_64 rng(26);
    std::normal_distribution<double> g(0.0, 3.0);
    std::vector<FeatureVector> data;
    for (int i = 0; i < 200; ++i) {
        FeatureVector v(6);
        for (int d = 0; d < 6; ++d) v[d] = g(rng);
        data.push_back(v);
    }
    PcaModel model = pca_fit(data, 3);
    for (int i = 1; i < 200; ++i) {
        double orig = (data[i] - data[i - 1]).norm();
        double proj = (pca_project(model, data[i]) - pca_project(model, data[i - 1])).norm();
        CHECK(proj <= orig + 1e-9);
    }
}

TEST_CASE("degenerate identical input yields zero eigenvalues") {
    std::vector<FeatureVector> data(10, FeatureVector::Constant(3, 2.5));
    PcaModel model = pca_fit(data, 2);
    CHECK(model.eigenvalues.maxCoeff() == doctest::Approx(0.0));
    CHECK(energy_retained(model) == doctest::Approx(1.0));
}
