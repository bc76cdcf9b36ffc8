#include "subr/features.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>

namespace subr {

void DescriptorConfig::validate() const {
    if (tile_size <= 0 || window <= 0 || bins <= 0 || output_dim <= 0) {
        throw ConfigError("descriptor config: all fields must be positive");
    }
    if (tile_size % window != 0) {
        throw ConfigError("descriptor config: tile_size must be a multiple of window");
    }
    if (bins > output_dim) {
        throw ConfigError("descriptor config: bins must not exceed output_dim");
    }
    if (bins > 256) {
        throw ConfigError("descriptor config: at most 256 intensity bins");
    }
}

TileGrid tile_image(const GrayImage& pixels, const DescriptorConfig& cfg) {
    cfg.validate();
    if (pixels.rows() == 0 || pixels.cols() == 0) {
        throw std::invalid_argument("tile_image: empty image");
    }
    const int ts = cfg.tile_size;
    TileGrid grid;
    grid.rows = static_cast<int>((pixels.rows() + ts - 1) / ts);
    grid.cols = static_cast<int>((pixels.cols() + ts - 1) / ts);
    grid.tiles.reserve(static_cast<std::size_t>(grid.rows) * grid.cols);
    for (int r = 0; r < grid.rows; ++r) {
        for (int c = 0; c < grid.cols; ++c) {
            GrayImage tile = GrayImage::Zero(ts, ts);
            const int y0 = r * ts;
            const int x0 = c * ts;
            const int h = std::min<int>(ts, static_cast<int>(pixels.rows()) - y0);
            const int w = std::min<int>(ts, static_cast<int>(pixels.cols()) - x0);
            tile.topLeftCorner(h, w) = pixels.block(y0, x0, h, w);
            grid.tiles.push_back(std::move(tile));
        }
    }
    return grid;
}

FeatureVector csd_descriptor(const GrayImage& tile, const DescriptorConfig& cfg) {
    cfg.validate();
    if (tile.rows() != cfg.tile_size || tile.cols() != cfg.tile_size) {
        throw std::invalid_argument("csd_descriptor: tile size mismatch");
    }
    FeatureVector out = FeatureVector::Zero(cfg.output_dim);
    const int w = cfg.window;
    const int steps = cfg.tile_size / w;
    std::vector<bool> present(static_cast<std::size_t>(cfg.bins));
    for (int br = 0; br < steps; ++br) {
        for (int bc = 0; bc < steps; ++bc) {
            std::fill(present.begin(), present.end(), false);
            for (int y = 0; y < w; ++y) {
                for (int x = 0; x < w; ++x) {
                    int bin = tile(br * w + y, bc * w + x) * cfg.bins / 256;
                    present[static_cast<std::size_t>(bin)] = true;
                }
            }
            for (int b = 0; b < cfg.bins; ++b) {
                if (present[static_cast<std::size_t>(b)]) out[b] += 1.0;
            }
        }
    }
    return out;
}

PcaModel pca_fit(const std::vector<FeatureVector>& vectors, int out_dim) {
    if (vectors.size() < 2) {
        throw std::invalid_argument("pca_fit: need at least two vectors");
    }
    const auto dim = vectors.front().size();
    if (out_dim < 1 || out_dim > dim) {
        throw std::invalid_argument("pca_fit: out_dim must be in [1, input dim]");
    }
    for (const FeatureVector& v : vectors) {
        if (v.size() != dim) throw std::invalid_argument("pca_fit: inconsistent dimensions");
    }

    FeatureVector mean = FeatureVector::Zero(dim);
    for (const FeatureVector& v : vectors) mean += v;
    mean /= static_cast<double>(vectors.size());

    Eigen::MatrixXd cov = Eigen::MatrixXd::Zero(dim, dim);
    for (const FeatureVector& v : vectors) {
        FeatureVector d = v - mean;
        cov.noalias() += d * d.transpose();
    }
    cov /= static_cast<double>(vectors.size());

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(cov);
    if (solver.info() != Eigen::Success) {
        throw std::runtime_error("pca_fit: eigendecomposition failed");
    }

    // Solver returns ascending eigenvalues; flip to non-increasing and clamp
    // the tiny negatives that symmetric solves can produce.
    PcaModel model;
    model.mean = std::move(mean);
    model.eigenvalues = solver.eigenvalues().reverse().cwiseMax(0.0);
    model.components.resize(out_dim, dim);
    for (int k = 0; k < out_dim; ++k) {
        model.components.row(k) = solver.eigenvectors().col(dim - 1 - k).transpose();
    }
    return model;
}

FeatureVector pca_project(const PcaModel& model, const FeatureVector& v) {
    if (v.size() != model.mean.size()) {
        throw std::invalid_argument("pca_project: dimension mismatch");
    }
    return model.components * (v - model.mean);
}

double energy_retained(const PcaModel& model) {
    const double total = model.eigenvalues.sum();
    if (total <= 0.0) return 1.0;  // degenerate data: nothing was discarded
    return model.eigenvalues.head(model.output_dim()).sum() / total;
}

}  // namespace subr
