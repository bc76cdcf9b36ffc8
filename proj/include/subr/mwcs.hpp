#pragma once

#include "subr/types.hpp"

#include <Eigen/Dense>

#include <span>
#include <vector>

namespace subr {

/// A DP starting corner with its fixed move pair:
/// BottomLeft scans with (right, up), BottomRight (left, up),
/// TopLeft (right, down), TopRight (left, down). Row 0 is the bottom row.
enum class Corner { BottomLeft, BottomRight, TopLeft, TopRight };

inline constexpr Corner kAllCorners[4] = {Corner::BottomLeft, Corner::BottomRight,
                                          Corner::TopLeft, Corner::TopRight};

const char* corner_name(Corner corner);

/// One corner run of the maximal-subregion recurrence. At each cell the four
/// cases are: the cell alone, cell + predecessor-along-first-move region,
/// cell + predecessor-along-second-move region, or cell + both predecessor
/// regions with the score of their intersection subtracted. Returns the best
/// region ending at any cell of the run.
Region dp_corner_run(const Eigen::Ref<const Eigen::MatrixXd>& scores, Corner corner);

/// Best of the four corner runs. Ties prefer fewer cells, then the
/// lexicographically smallest cell list, then corner order.
Region dp_max_region(const Eigen::Ref<const Eigen::MatrixXd>& scores);

/// Exact maximal weighted connected subregion by exhaustive enumeration of
/// all non-empty 4-connected cell sets. Exponential; refuses matrices with
/// more than `cell_cap` cells.
Region exact_mwcs(const Eigen::Ref<const Eigen::MatrixXd>& scores, int cell_cap = 16);

/// True iff `end` can be reached from every cell of `cells` using only the
/// corner's move pair, stepping through member cells.
bool sinks(std::span<const Cell> cells, Cell end, Corner corner);

/// True iff some member cell sinks the whole shape for some corner; exactly
/// the shapes a corner run can return. Disconnected sets have no sinking
/// cell and report false; only empty input throws.
bool is_dp_capturable(std::span<const Cell> cells);

/// Rectilinear-Steiner-style instance on an m-by-m integer grid: connect all
/// terminals with grid paths of minimum total length.
struct TrstInstance {
    int grid_size = 0;             // m
    std::vector<Cell> terminals;   // distinct points with coordinates in [0, m)
    double terminal_weight = 100;  // w, large against any achievable length
    int length_budget = 0;         // l
};

/// Encodes the instance as a (2m-1)x(2m-1) score matrix: terminals carry w,
/// other grid points 0, edge midpoints -1, and the off-lattice holes a
/// sentinel of -(n*w + l + 1) so no optimal region can use them.
Eigen::MatrixXd trst_to_mwcs(const TrstInstance& inst);

/// Brute-force minimum Steiner length: the smallest connected grid-vertex set
/// containing all terminals, minus one. Independent of the matrix solvers.
int steiner_min_length(const TrstInstance& inst);

}  // namespace subr
