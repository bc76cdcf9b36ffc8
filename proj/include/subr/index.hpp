#pragma once

#include "subr/types.hpp"

#include <memory>
#include <optional>
#include <queue>
#include <vector>

namespace subr {

/// Indexed tile: its (reduced) feature vector plus the back-pointer into the
/// owning image's grid.
struct LeafEntry {
    FeatureVector features;
    TileRef tile;
};

/// Tree node. Bottom-level nodes hold entry ids; internal nodes hold children.
struct IndexNode {
    Eigen::VectorXd lo, hi;  // minimum bounding box
    std::vector<std::unique_ptr<IndexNode>> children;
    std::vector<std::uint32_t> entries;
    std::uint32_t node_id = 0;  // creation order, used for deterministic ties

    bool is_leaf() const { return children.empty(); }
};

/// Immutable bulk-loaded index over tile feature vectors.
struct TileIndex {
    std::vector<LeafEntry> entries;
    std::unique_ptr<IndexNode> root;
    int capacity = 64;
    Metric metric = Metric::L2;

    int dim() const { return entries.empty() ? 0 : static_cast<int>(entries.front().features.size()); }
    int depth() const;
    std::size_t node_count() const;
};

/// Sort-Tile-Recursive packing: slices recursively along dimensions in
/// decreasing variance order into runs of `capacity`, then packs upper levels
/// the same way until a single root remains.
TileIndex str_bulk_load(std::vector<LeafEntry> entries, int capacity, Metric metric = Metric::L2);

/// Smallest possible distance between q and any point of the box; a lower
/// bound on the distance from q to every vector in the subtree.
double mindist(Metric metric, const FeatureVector& q, const Eigen::VectorXd& lo,
               const Eigen::VectorXd& hi);

/// Incremental nearest-neighbor cursor: emits entry ids in non-decreasing
/// distance from the query point, each exactly once. Ties resolve by tile
/// reference. Single-owner mutable state; the index itself stays shared.
class NnCursor {
public:
    NnCursor(const TileIndex& index, FeatureVector query);

    /// Next entry id, or nullopt once the index is drained.
    std::optional<std::uint32_t> next();

    /// Distance of the most recently emitted entry.
    double last_distance() const { return last_distance_; }

    std::uint64_t entry_pops() const { return entry_pops_; }
    std::uint64_t heap_pops() const { return heap_pops_; }
    std::uint64_t distance_evals() const { return distance_evals_; }

private:
    struct Item {
        double dist;
        int kind;  // 0 = node (expanded before equal-distance entries), 1 = entry
        std::uint64_t tie;
        const IndexNode* node;
        std::uint32_t entry_id;
    };
    struct ItemOrder {
        bool operator()(const Item& a, const Item& b) const {
            if (a.dist != b.dist) return a.dist > b.dist;
            if (a.kind != b.kind) return a.kind > b.kind;
            return a.tie > b.tie;
        }
    };

    void push_node(const IndexNode* node);

    const TileIndex* index_;
    FeatureVector query_;
    std::priority_queue<Item, std::vector<Item>, ItemOrder> heap_;
    double last_distance_ = 0.0;
    std::uint64_t entry_pops_ = 0;
    std::uint64_t heap_pops_ = 0;
    std::uint64_t distance_evals_ = 0;
};

/// Resolves a tile reference against the catalog; throws DataError when the
/// reference does not land on a live grid position.
struct GridPos {
    const TiledImage* image;
    int row;
    int col;
};

GridPos image_grid_lookup(const TileRef& tile, const Database& catalog);

}  // namespace subr
