#pragma once

#include "subr/types.hpp"

#include <span>

namespace subr {

/// How a threshold/bound matrix is turned into one bounding score.
/// DpHeuristic runs the corner DP on the bound matrix (the faithful
/// strategy); PositiveSum sums the positive entries (falling back to the
/// maximum entry when none are positive), which provably dominates any
/// connected region of the matrix or of an entrywise-dominated sub-rectangle.
enum class BoundMode { DpHeuristic, PositiveSum };

const char* bound_mode_name(BoundMode mode);
BoundMode bound_mode_from_name(const std::string& name);

/// Discriminator score of a query tile against a database tile at feature
/// distance r: bg_distance - lambda*r - c. Strictly decreasing in r.
double tile_score(const QueryTile& q, double r, const ScoringParams& params);

/// f(q) for the default pure-background tile: sum of |pixel - background|
/// over the raw tile, which for a black background is the plain pixel sum.
double bg_distance(const GrayImage& tile, int tile_size, std::uint8_t background_level = 0);

/// Score matrix over exactly the overlapping tile pairs of one alignment,
/// with the origin mapping populated. Throws if the overlap is empty.
ScoreMatrix score_matrix_actual(const QueryImage& query, const TiledImage& image,
                                const Alignment& alignment, const ScoringParams& params,
                                Metric metric);

/// Query-shaped matrix of scores against virtual tiles all at distance d.
ScoreMatrix score_matrix_uniform(const QueryImage& query, double d, const ScoringParams& params);

/// Query-shaped matrix scoring each tile at its own current NN distance;
/// distances are row-major over the query grid.
ScoreMatrix tars_threshold_matrix(const QueryImage& query, std::span<const double> per_tile_distance,
                                  const ScoringParams& params);

/// Bounding score of a matrix under the given mode.
double upper_bound(const ScoreMatrix& m, BoundMode mode);
double upper_bound(const Eigen::Ref<const Eigen::MatrixXd>& scores, BoundMode mode);

}  // namespace subr
