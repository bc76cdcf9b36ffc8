#pragma once

#include "subr/index.hpp"
#include "subr/scoring.hpp"
#include "subr/types.hpp"

#include <optional>
#include <unordered_set>
#include <vector>

namespace subr {

/// One evaluated alignment together with the bound that was in force when it
/// was explored; only collected when SearchStats::collect_audit is set.
struct BoundAuditRecord {
    Alignment alignment;
    double dp_score = 0.0;
    double context_bound = 0.0;
};

/// Counters and timers for one query execution.
struct SearchStats {
    std::uint64_t alignments_evaluated = 0;  // DP runs on actual alignments
    std::uint64_t cursor_entry_pops = 0;     // TARS: entries fetched across cursors
    std::uint64_t cursor_heap_pops = 0;      // TARS: node + entry pops across cursors
    std::uint64_t bq_pops = 0;               // SPARS: candidate-queue pops
    std::uint64_t nn_accesses = 0;           // index objects accessed: TARS entry fetches,
                                             // SPARS BQ pops + leaf entries scored
    std::uint64_t nn_distance_evals = 0;     // distance/mindist evaluations in index machinery
    std::uint64_t rounds = 0;                // TARS rounds completed
    double nn_seconds = 0.0;
    double dp_seconds = 0.0;

    bool collect_audit = false;
    std::vector<double> tars_thresholds;      // threshold after each round
    std::vector<double> spars_popped_bounds;  // bound of each BQ pop, in pop order
    std::vector<BoundAuditRecord> bound_audit;
};

/// Bounded top-k queue: below capacity everything enters; at capacity an
/// entry enters only when its score is at least the minimum, which it evicts.
class ResultQueue {
public:
    explicit ResultQueue(int k);

    void insert(RankedMatch match);

    /// Minimum score in the queue, or -infinity while below capacity.
    double head_score() const;

    bool full() const { return static_cast<int>(items_.size()) >= capacity_; }
    std::size_t size() const { return items_.size(); }

    /// Results by (score desc, image_id asc, drow asc, dcol asc).
    std::vector<RankedMatch> sorted_descending() const;

private:
    int capacity_;
    std::vector<RankedMatch> items_;  // maintained as a heap with the worst entry on top
};

/// Alignments already expanded within one query execution, keyed by
/// (image_id, drow, dcol).
class ExploredSet {
public:
    bool contains(const Alignment& a) const { return keys_.count(key(a)) != 0; }
    /// Returns false when the alignment was already present.
    bool flag(const Alignment& a) { return keys_.insert(key(a)).second; }
    std::size_t size() const { return keys_.size(); }

private:
    static std::uint64_t key(const Alignment& a) {
        return (static_cast<std::uint64_t>(a.image_id) << 32) |
               (static_cast<std::uint64_t>(static_cast<std::uint16_t>(a.drow)) << 16) |
               static_cast<std::uint64_t>(static_cast<std::uint16_t>(a.dcol));
    }
    std::unordered_set<std::uint64_t> keys_;
};

/// All translations with at least one overlapping tile pair:
/// (Q.rows + I.rows - 1) * (Q.cols + I.cols - 1) alignments.
std::vector<Alignment> enumerate_alignments(const QueryImage& query, const TiledImage& image);

/// The alignment that puts query tile q_pos on top of database tile t.
Alignment align_from_pair(Cell q_pos, const TileRef& t);

/// Evaluates one alignment: nothing if already explored, otherwise the DP
/// result over the actual score matrix, with the alignment flagged.
std::optional<RankedMatch> get_max_sub_rg(const LeafEntry& leaf, Cell q_pos, const QueryImage& query,
                                          const Database& db, const ScoringParams& params,
                                          Metric metric, ExploredSet& explored,
                                          SearchStats* stats = nullptr);

/// Exhaustive baseline: DP on every alignment of every image.
std::vector<RankedMatch> linear_search(const QueryImage& query, const Database& db, int k,
                                       const ScoringParams& params, Metric metric,
                                       SearchStats* stats = nullptr);

/// Threshold-style search: one NN cursor per query tile, advanced in rounds;
/// stops once the round threshold falls below the k-th best score.
std::vector<RankedMatch> tars(const QueryImage& query, const TileIndex& index, const Database& db,
                              int k, const ScoringParams& params, BoundMode mode,
                              SearchStats* stats = nullptr);

/// Single-pass best-first search over the index tree with virtual-tile
/// upper bounds; leaf entries defer their non-nearest query tiles.
std::vector<RankedMatch> spars(const QueryImage& query, const TileIndex& index, const Database& db,
                               int k, const ScoringParams& params, BoundMode mode,
                               SearchStats* stats = nullptr);

}  // namespace subr
