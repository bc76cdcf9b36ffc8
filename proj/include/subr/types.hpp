#pragma once

#include <Eigen/Dense>

#include <compare>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace subr {

/// Tile descriptor in feature space (raw 256-dim or PCA-reduced).
using FeatureVector = Eigen::VectorXd;

/// 8-bit grayscale raster, row-major, (row, col) = (y, x).
using GrayImage = Eigen::Matrix<std::uint8_t, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

/// Bad flags / header mismatches; CLI maps this to exit code 1.
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Unreadable or inconsistent data; CLI maps this to exit code 2.
class DataError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

enum class Metric { L2, L1 };

double distance(Metric metric, const FeatureVector& a, const FeatureVector& b);

const char* metric_name(Metric metric);
Metric metric_from_name(const std::string& name);

/// Score-matrix coordinate. Row 0 is the "bottom" row in corner naming;
/// the four DP corner runs make the orientation immaterial to results.
struct Cell {
    int row = 0;
    int col = 0;
    auto operator<=>(const Cell&) const = default;
};

/// Position of one tile inside one database image's tile grid.
struct TileRef {
    std::uint32_t image_id = 0;
    int row = 0;
    int col = 0;
    auto operator<=>(const TileRef&) const = default;
};

/// One translation of the query grid over an image grid: query tile (0,0)
/// sits at image tile (drow, dcol). Offsets may be negative (partial overlap).
struct Alignment {
    std::uint32_t image_id = 0;
    int drow = 0;
    int dcol = 0;
    auto operator<=>(const Alignment&) const = default;
};

/// Discriminator parameters: score(q,t) = bg_distance(q) - lambda*d(q,t) - c.
/// background_level is the intensity of the perfect background tile.
struct ScoringParams {
    double lambda = 1.0;
    double c = 23000.0;
    std::uint8_t background_level = 0;
};

struct QueryTile {
    FeatureVector features;
    double bg_distance = 0.0;  // f(q) = d(q, b), computed on raw pixels
};

struct QueryImage {
    int rows = 0;
    int cols = 0;
    std::vector<QueryTile> tiles;  // row-major

    const QueryTile& tile(int r, int c) const { return tiles[static_cast<std::size_t>(r) * cols + c]; }
    QueryTile& tile(int r, int c) { return tiles[static_cast<std::size_t>(r) * cols + c]; }
    int size() const { return rows * cols; }
};

struct TiledImage {
    std::uint32_t image_id = 0;
    int rows = 0;
    int cols = 0;
    std::vector<FeatureVector> tiles;  // row-major
    std::vector<double> tile_bg;       // per-tile pixel sum, kept in the catalog
    std::string source_path;

    const FeatureVector& tile(int r, int c) const { return tiles[static_cast<std::size_t>(r) * cols + c]; }
    int size() const { return rows * cols; }
};

/// Image catalog. Image ids are indices into `images`.
struct Database {
    std::vector<TiledImage> images;

    const TiledImage& by_id(std::uint32_t id) const;
};

/// Maps score-matrix cell (i,j) back to the tile pair it scores:
/// query tile (query_row0+i, query_col0+j) against image tile
/// (query_row0+i+drow, query_col0+j+dcol).
struct MatrixOrigin {
    Alignment alignment;
    int query_row0 = 0;
    int query_col0 = 0;
};

/// Grid of per-tile-pair scores for one alignment. Virtual matrices
/// (uniform-distance bounds, thresholds) carry no origin.
struct ScoreMatrix {
    Eigen::MatrixXd scores;
    std::optional<MatrixOrigin> origin;

    Eigen::Index rows() const { return scores.rows(); }
    Eigen::Index cols() const { return scores.cols(); }
};

/// Connected set of matrix cells plus its cumulative score.
struct Region {
    std::vector<Cell> cells;  // sorted (row, col)
    double score = 0.0;
};

/// One top-k result: where the query matched and with what subregion.
struct RankedMatch {
    Alignment alignment;
    Region region;
    double score = 0.0;
};

/// Exact sum of the referenced entries; out-of-bounds cells throw.
double region_sum(const Eigen::Ref<const Eigen::MatrixXd>& scores, std::span<const Cell> cells);
double region_sum(const ScoreMatrix& m, std::span<const Cell> cells);

/// True iff the set is 4-connected (horizontal/vertical adjacency only).
/// Empty input throws std::invalid_argument.
bool is_connected(std::span<const Cell> cells);

}  // namespace subr
