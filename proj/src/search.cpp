#include "subr/search.hpp"

#include "subr/mwcs.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <queue>

namespace subr {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();
constexpr double kPosInf = std::numeric_limits<double>::infinity();

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

// Tie order of final results after the score: image, then offsets.
std::tuple<std::uint32_t, int, int> tie_key(const RankedMatch& m) {
    return {m.alignment.image_id, m.alignment.drow, m.alignment.dcol};
}

// "Worse" ordering: lower score first; among equal scores the entry that
// sorts last in the final output is the one to evict.
bool worse(const RankedMatch& a, const RankedMatch& b) {
    if (a.score != b.score) return a.score < b.score;
    return tie_key(a) > tie_key(b);
}

Region timed_dp(const Eigen::Ref<const Eigen::MatrixXd>& scores, SearchStats* stats) {
    if (stats == nullptr) return dp_max_region(scores);
    auto t0 = Clock::now();
    Region r = dp_max_region(scores);
    stats->dp_seconds += seconds_since(t0);
    return r;
}

double timed_bound(const ScoreMatrix& m, BoundMode mode, SearchStats* stats) {
    if (stats == nullptr) return upper_bound(m, mode);
    auto t0 = Clock::now();
    double b = upper_bound(m, mode);
    stats->dp_seconds += seconds_since(t0);
    return b;
}

}  // namespace

ResultQueue::ResultQueue(int k) : capacity_(k) {
    if (k < 1) throw std::invalid_argument("ResultQueue: k must be at least 1");
}

void ResultQueue::insert(RankedMatch match) {
    auto heap_order = [](const RankedMatch& a, const RankedMatch& b) { return worse(b, a); };
    if (!full()) {
        items_.push_back(std::move(match));
        std::push_heap(items_.begin(), items_.end(), heap_order);
        return;
    }
    if (match.score >= items_.front().score) {
        std::pop_heap(items_.begin(), items_.end(), heap_order);
        items_.back() = std::move(match);
        std::push_heap(items_.begin(), items_.end(), heap_order);
    }
}

double ResultQueue::head_score() const {
    if (!full()) return kNegInf;
    return items_.front().score;
}

std::vector<RankedMatch> ResultQueue::sorted_descending() const {
    std::vector<RankedMatch> out = items_;
    std::sort(out.begin(), out.end(), [](const RankedMatch& a, const RankedMatch& b) {
        if (a.score != b.score) return a.score > b.score;
        return tie_key(a) < tie_key(b);
    });
    return out;
}

std::vector<Alignment> enumerate_alignments(const QueryImage& query, const TiledImage& image) {
    std::vector<Alignment> out;
    out.reserve(static_cast<std::size_t>(query.rows + image.rows - 1) *
                static_cast<std::size_t>(query.cols + image.cols - 1));
    for (int drow = -(query.rows - 1); drow <= image.rows - 1; ++drow) {
        for (int dcol = -(query.cols - 1); dcol <= image.cols - 1; ++dcol) {
            out.push_back({image.image_id, drow, dcol});
        }
    }
    return out;
}

Alignment align_from_pair(Cell q_pos, const TileRef& t) {
    return {t.image_id, t.row - q_pos.row, t.col - q_pos.col};
}

std::optional<RankedMatch> get_max_sub_rg(const LeafEntry& leaf, Cell q_pos, const QueryImage& query,
                                          const Database& db, const ScoringParams& params,
                                          Metric metric, ExploredSet& explored, SearchStats* stats) {
    const Alignment alignment = align_from_pair(q_pos, leaf.tile);
    if (explored.contains(alignment)) return std::nullopt;
    GridPos pos = image_grid_lookup(leaf.tile, db);

    ScoreMatrix sm = score_matrix_actual(query, *pos.image, alignment, params, metric);
    Region region = timed_dp(sm.scores, stats);
    explored.flag(alignment);
    if (stats != nullptr) ++stats->alignments_evaluated;
    const double score = region.score;
    return RankedMatch{alignment, std::move(region), score};
}

std::vector<RankedMatch> linear_search(const QueryImage& query, const Database& db, int k,
                                       const ScoringParams& params, Metric metric,
                                       SearchStats* stats) {
    ResultQueue rq(k);
    for (const TiledImage& image : db.images) {
        for (const Alignment& alignment : enumerate_alignments(query, image)) {
            ScoreMatrix sm = score_matrix_actual(query, image, alignment, params, metric);
            Region region = timed_dp(sm.scores, stats);
            if (stats != nullptr) ++stats->alignments_evaluated;
            const double score = region.score;
            rq.insert(RankedMatch{alignment, std::move(region), score});
        }
    }
    return rq.sorted_descending();
}

std::vector<RankedMatch> tars(const QueryImage& query, const TileIndex& index, const Database& db,
                              int k, const ScoringParams& params, BoundMode mode,
                              SearchStats* stats) {
    const int n = query.size();
    std::vector<NnCursor> cursors;
    cursors.reserve(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        cursors.emplace_back(index, query.tiles[static_cast<std::size_t>(i)].features);
    }

    // Exhausted cursors keep their last distance: their unexplored tail is
    // empty, so any stale value still bounds it.
    std::vector<double> last_dist(static_cast<std::size_t>(n), 0.0);
    std::vector<std::optional<std::uint32_t>> fetched(static_cast<std::size_t>(n));

    ResultQueue rq(k);
    ExploredSet explored;
    double threshold = kPosInf;

    while (threshold >= rq.head_score()) {
        auto t0 = Clock::now();
        bool any_live = false;
        for (int i = 0; i < n; ++i) {
            fetched[i] = cursors[i].next();
            if (fetched[i]) {
                any_live = true;
                last_dist[i] = cursors[i].last_distance();
            }
        }
        if (stats != nullptr) stats->nn_seconds += seconds_since(t0);
        if (!any_live) break;

        for (int i = 0; i < n; ++i) {
            if (!fetched[i]) continue;
            const LeafEntry& leaf = index.entries[*fetched[i]];
            Cell q_pos{i / query.cols, i % query.cols};
            if (auto match = get_max_sub_rg(leaf, q_pos, query, db, params, index.metric, explored, stats)) {
                rq.insert(std::move(*match));
            }
        }

        threshold = timed_bound(tars_threshold_matrix(query, last_dist, params), mode, stats);
        if (stats != nullptr) {
            ++stats->rounds;
            if (stats->collect_audit) stats->tars_thresholds.push_back(threshold);
        }
    }

    if (stats != nullptr) {
        for (const NnCursor& c : cursors) {
            stats->cursor_entry_pops += c.entry_pops();
            stats->cursor_heap_pops += c.heap_pops();
            stats->nn_distance_evals += c.distance_evals();
        }
        stats->nn_accesses += stats->cursor_entry_pops;
    }
    return rq.sorted_descending();
}

namespace {

// SPARS candidate: either an index node or a deferred (leaf entry, query
// tile) pairing, ordered by bound then insertion sequence.
struct BqEntity {
    double bound;
    std::uint64_t seq;
    const IndexNode* node;    // set for node entities
    std::uint32_t entry_id;   // set for deferred entities
    int q_index;

    bool deferred() const { return node == nullptr; }
};

struct BqOrder {
    bool operator()(const BqEntity& a, const BqEntity& b) const {
        if (a.bound != b.bound) return a.bound < b.bound;
        return a.seq > b.seq;
    }
};

}  // namespace

std::vector<RankedMatch> spars(const QueryImage& query, const TileIndex& index, const Database& db,
                               int k, const ScoringParams& params, BoundMode mode,
                               SearchStats* stats) {
    const int n = query.size();
    ResultQueue rq(k);
    ExploredSet explored;
    std::priority_queue<BqEntity, std::vector<BqEntity>, BqOrder> bq;
    std::uint64_t seq = 0;

    bq.push({kPosInf, seq++, index.root.get(), 0, -1});

    std::vector<double> dists(static_cast<std::size_t>(n));

    while (!bq.empty()) {
        BqEntity e = bq.top();
        bq.pop();
        if (stats != nullptr) {
            ++stats->bq_pops;
            ++stats->nn_accesses;
            if (stats->collect_audit) stats->spars_popped_bounds.push_back(e.bound);
        }
        if (rq.full() && e.bound < rq.head_score()) break;

        if (e.deferred()) {
            const LeafEntry& leaf = index.entries[e.entry_id];
            Cell q_pos{e.q_index / query.cols, e.q_index % query.cols};
            if (auto match = get_max_sub_rg(leaf, q_pos, query, db, params, index.metric, explored, stats)) {
                if (stats != nullptr && stats->collect_audit) {
                    stats->bound_audit.push_back({match->alignment, match->score, e.bound});
                }
                rq.insert(std::move(*match));
            }
            continue;
        }

        const IndexNode* node = e.node;
        if (!node->is_leaf()) {
            for (const auto& child : node->children) {
                auto t0 = Clock::now();
                double d_min = kPosInf;
                for (int i = 0; i < n; ++i) {
                    d_min = std::min(d_min, mindist(index.metric, query.tiles[static_cast<std::size_t>(i)].features,
                                                    child->lo, child->hi));
                }
                if (stats != nullptr) {
                    stats->nn_distance_evals += static_cast<std::uint64_t>(n);
                    stats->nn_seconds += seconds_since(t0);
                }
                double bound = timed_bound(score_matrix_uniform(query, d_min, params), mode, stats);
                bq.push({bound, seq++, child.get(), 0, -1});
            }
            continue;
        }

        for (std::uint32_t id : node->entries) {
            const LeafEntry& leaf = index.entries[id];
            auto t0 = Clock::now();
            for (int i = 0; i < n; ++i) {
                dists[static_cast<std::size_t>(i)] =
                    distance(index.metric, query.tiles[static_cast<std::size_t>(i)].features, leaf.features);
            }
            if (stats != nullptr) {
                ++stats->nn_accesses;
                stats->nn_distance_evals += static_cast<std::uint64_t>(n);
                stats->nn_seconds += seconds_since(t0);
            }
            const int j = static_cast<int>(std::min_element(dists.begin(), dists.end()) - dists.begin());

            Cell q_pos{j / query.cols, j % query.cols};
            if (auto match = get_max_sub_rg(leaf, q_pos, query, db, params, index.metric, explored, stats)) {
                if (stats != nullptr && stats->collect_audit) {
                    stats->bound_audit.push_back({match->alignment, match->score, e.bound});
                }
                rq.insert(std::move(*match));
            }

            for (int i = 0; i < n; ++i) {
                if (i == j) continue;
                double bound = timed_bound(score_matrix_uniform(query, dists[static_cast<std::size_t>(i)], params),
                                           mode, stats);
                bq.push({bound, seq++, nullptr, id, i});
            }
        }
    }

    return rq.sorted_descending();
}

}  // namespace subr
