#include "subr/scoring.hpp"

#include "subr/mwcs.hpp"

#include <algorithm>
#include <cmath>

namespace subr {

const char* bound_mode_name(BoundMode mode) {
    return mode == BoundMode::DpHeuristic ? "dp" : "safe";
}

BoundMode bound_mode_from_name(const std::string& name) {
    if (name == "dp") return BoundMode::DpHeuristic;
    if (name == "safe") return BoundMode::PositiveSum;
    throw ConfigError("unknown bound mode: " + name + " (expected dp or safe)");
}

double tile_score(const QueryTile& q, double r, const ScoringParams& params) {
    if (r < 0 || !std::isfinite(r)) {
        throw std::invalid_argument("tile_score: distance must be finite and non-negative");
    }
    if (params.lambda <= 0) {
        throw std::invalid_argument("tile_score: lambda must be positive");
    }
    return q.bg_distance - params.lambda * r - params.c;
}

double bg_distance(const GrayImage& tile, int tile_size, std::uint8_t background_level) {
    if (tile.rows() != tile_size || tile.cols() != tile_size) {
        throw std::invalid_argument("bg_distance: tile has wrong dimensions");
    }
    double sum = 0.0;
    for (Eigen::Index r = 0; r < tile.rows(); ++r) {
        for (Eigen::Index c = 0; c < tile.cols(); ++c) {
            sum += std::abs(static_cast<double>(tile(r, c)) - background_level);
        }
    }
    return sum;
}

ScoreMatrix score_matrix_actual(const QueryImage& query, const TiledImage& image,
                                const Alignment& alignment, const ScoringParams& params,
                                Metric metric) {
    // Overlap rectangle in query tile coordinates.
    const int qr0 = std::max(0, -alignment.drow);
    const int qc0 = std::max(0, -alignment.dcol);
    const int qr1 = std::min(query.rows, image.rows - alignment.drow);
    const int qc1 = std::min(query.cols, image.cols - alignment.dcol);
    if (qr0 >= qr1 || qc0 >= qc1) {
        throw std::invalid_argument("score_matrix_actual: empty overlap");
    }

    ScoreMatrix out;
    out.scores.resize(qr1 - qr0, qc1 - qc0);
    for (int qr = qr0; qr < qr1; ++qr) {
        for (int qc = qc0; qc < qc1; ++qc) {
            const QueryTile& q = query.tile(qr, qc);
            const FeatureVector& t = image.tile(qr + alignment.drow, qc + alignment.dcol);
            out.scores(qr - qr0, qc - qc0) = tile_score(q, distance(metric, q.features, t), params);
        }
    }
    out.origin = MatrixOrigin{alignment, qr0, qc0};
    return out;
}

ScoreMatrix score_matrix_uniform(const QueryImage& query, double d, const ScoringParams& params) {
    ScoreMatrix out;
    out.scores.resize(query.rows, query.cols);
    for (int r = 0; r < query.rows; ++r) {
        for (int c = 0; c < query.cols; ++c) {
            out.scores(r, c) = tile_score(query.tile(r, c), d, params);
        }
    }
    return out;
}

ScoreMatrix tars_threshold_matrix(const QueryImage& query, std::span<const double> per_tile_distance,
                                  const ScoringParams& params) {
    if (static_cast<int>(per_tile_distance.size()) != query.size()) {
        throw std::invalid_argument("tars_threshold_matrix: one distance per query tile required");
    }
    ScoreMatrix out;
    out.scores.resize(query.rows, query.cols);
    for (int r = 0; r < query.rows; ++r) {
        for (int c = 0; c < query.cols; ++c) {
            out.scores(r, c) =
                tile_score(query.tile(r, c), per_tile_distance[static_cast<std::size_t>(r) * query.cols + c], params);
        }
    }
    return out;
}

double upper_bound(const Eigen::Ref<const Eigen::MatrixXd>& scores, BoundMode mode) {
    if (scores.size() == 0) {
        throw std::invalid_argument("upper_bound: empty matrix");
    }
    switch (mode) {
        case BoundMode::DpHeuristic:
            return dp_max_region(scores).score;
        case BoundMode::PositiveSum: {
            double pos = scores.cwiseMax(0.0).sum();
            return (scores.maxCoeff() > 0.0) ? pos : scores.maxCoeff();
        }
    }
    throw std::invalid_argument("upper_bound: unknown mode");
}

double upper_bound(const ScoreMatrix& m, BoundMode mode) {
    return upper_bound(m.scores, mode);
}

}  // namespace subr
