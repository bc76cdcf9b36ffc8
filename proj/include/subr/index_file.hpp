#pragma once

#include "subr/features.hpp"
#include "subr/index.hpp"
#include "subr/types.hpp"

#include <filesystem>

namespace subr {

/// Everything a query run needs, persisted as one binary file: scoring
/// defaults, the PCA model, the image catalog with per-tile background
/// distances, and the packed tree over reduced vectors.
struct IndexBundle {
    std::uint32_t version = 1;
    Metric metric = Metric::L2;
    int tile_size = 32;
    int raw_dim = 256;
    int reduced_dim = 6;
    double lambda = 1.0;
    double c = 23000.0;
    int leaf_capacity = 64;

    PcaModel pca;
    Database catalog;
    TileIndex tree;
};

/// Little-endian single-file format with an explicit header; rebuilding from
/// identical inputs produces byte-identical files.
void save_index(const std::filesystem::path& path, const IndexBundle& bundle);

IndexBundle load_index(const std::filesystem::path& path);

}  // namespace subr
