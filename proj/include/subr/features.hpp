#pragma once

#include "subr/types.hpp"

#include <vector>

namespace subr {

/// Reference tile descriptor settings. The descriptor partitions a tile into
/// window-by-window blocks, quantizes intensities into `bins` levels, and
/// counts for each level the number of blocks containing it; counts live in
/// the first `bins` components of an `output_dim`-dimensional vector.
struct DescriptorConfig {
    int tile_size = 32;
    int bins = 64;
    int window = 8;
    int output_dim = 256;

    void validate() const;
    int positions() const { return (tile_size / window) * (tile_size / window); }
};

/// Splits an image into non-overlapping tiles, padding the right/bottom edges
/// with background (zero) pixels up to a tile multiple. Row-major grid.
struct TileGrid {
    int rows = 0;
    int cols = 0;
    std::vector<GrayImage> tiles;

    const GrayImage& tile(int r, int c) const { return tiles[static_cast<std::size_t>(r) * cols + c]; }
};

TileGrid tile_image(const GrayImage& pixels, const DescriptorConfig& cfg);

/// Block-presence histogram descriptor; deterministic, invariant under 90°
/// tile rotations.
FeatureVector csd_descriptor(const GrayImage& tile, const DescriptorConfig& cfg);

/// Principal component model fitted on tile descriptors.
struct PcaModel {
    FeatureVector mean;          // input dim
    Eigen::MatrixXd components;  // out_dim x in_dim, rows orthonormal
    Eigen::VectorXd eigenvalues; // all input-dim eigenvalues, non-increasing

    int input_dim() const { return static_cast<int>(mean.size()); }
    int output_dim() const { return static_cast<int>(components.rows()); }
};

/// Mean-centered covariance eigendecomposition keeping the top out_dim axes.
PcaModel pca_fit(const std::vector<FeatureVector>& vectors, int out_dim);

/// Coordinates of (v - mean) in the component basis.
FeatureVector pca_project(const PcaModel& model, const FeatureVector& v);

/// Kept eigenvalue mass over total eigenvalue mass, in [0,1].
double energy_retained(const PcaModel& model);

}  // namespace subr
