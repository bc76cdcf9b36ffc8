#include "subr/index.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace subr {

namespace {

// Order in which STR slices dimensions: decreasing variance, ties by index.
template <typename PointAt>
std::vector<int> variance_order(int dim, std::size_t n, PointAt&& point_at) {
    Eigen::VectorXd mean = Eigen::VectorXd::Zero(dim);
    for (std::size_t i = 0; i < n; ++i) mean += point_at(i);
    mean /= static_cast<double>(n);
    Eigen::VectorXd var = Eigen::VectorXd::Zero(dim);
    for (std::size_t i = 0; i < n; ++i) var += (point_at(i) - mean).cwiseAbs2();

    std::vector<int> order(static_cast<std::size_t>(dim));
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return var[a] > var[b]; });
    return order;
}

// Recursively sorts ids along the slicing dimensions and chops them into
// groups of at most `capacity`, producing ceil(n / capacity) groups.
template <typename PointAt, typename TieLess>
void str_partition(std::vector<std::uint32_t>& ids, std::size_t begin, std::size_t end, int depth,
                   const std::vector<int>& dim_order, int capacity, PointAt&& point_at,
                   TieLess&& tie_less, std::vector<std::vector<std::uint32_t>>& groups) {
    const std::size_t n = end - begin;
    const std::size_t cap = static_cast<std::size_t>(capacity);
    const std::size_t g = (n + cap - 1) / cap;
    if (g <= 1) {
        groups.emplace_back(ids.begin() + begin, ids.begin() + end);
        return;
    }
    const int dims = static_cast<int>(dim_order.size());
    const int d = dim_order[static_cast<std::size_t>(std::min(depth, dims - 1))];
    const int dims_left = std::max(1, dims - depth);

    std::sort(ids.begin() + begin, ids.begin() + end, [&](std::uint32_t a, std::uint32_t b) {
        double pa = point_at(a)[d], pb = point_at(b)[d];
        if (pa != pb) return pa < pb;
        return tie_less(a, b);
    });

    const auto slabs = static_cast<std::size_t>(
        std::ceil(std::pow(static_cast<double>(g), 1.0 / dims_left)));
    const std::size_t slab_size = ((n + slabs * cap - 1) / (slabs * cap)) * cap;
    for (std::size_t s = begin; s < end; s += slab_size) {
        str_partition(ids, s, std::min(end, s + slab_size), depth + 1, dim_order, capacity,
                      point_at, tie_less, groups);
    }
}

void collect_mbr(IndexNode& node, const std::vector<LeafEntry>& entries) {
    bool first = true;
    auto absorb = [&](const Eigen::VectorXd& lo, const Eigen::VectorXd& hi) {
        if (first) {
            node.lo = lo;
            node.hi = hi;
            first = false;
        } else {
            node.lo = node.lo.cwiseMin(lo);
            node.hi = node.hi.cwiseMax(hi);
        }
    };
    for (std::uint32_t id : node.entries) absorb(entries[id].features, entries[id].features);
    for (const auto& child : node.children) absorb(child->lo, child->hi);
}

}  // namespace

int TileIndex::depth() const {
    int d = 0;
    for (const IndexNode* n = root.get(); n != nullptr; n = n->is_leaf() ? nullptr : n->children.front().get()) {
        ++d;
    }
    return d;
}

std::size_t TileIndex::node_count() const {
    std::size_t count = 0;
    std::vector<const IndexNode*> stack{root.get()};
    while (!stack.empty()) {
        const IndexNode* n = stack.back();
        stack.pop_back();
        if (n == nullptr) continue;
        ++count;
        for (const auto& c : n->children) stack.push_back(c.get());
    }
    return count;
}

TileIndex str_bulk_load(std::vector<LeafEntry> entries, int capacity, Metric metric) {
    if (entries.empty()) {
        throw std::invalid_argument("str_bulk_load: no entries");
    }
    if (capacity < 2) {
        throw std::invalid_argument("str_bulk_load: capacity must be at least 2");
    }
    const auto dim = entries.front().features.size();
    for (const LeafEntry& e : entries) {
        if (e.features.size() != dim) {
            throw std::invalid_argument("str_bulk_load: inconsistent dimensions");
        }
    }

    TileIndex index;
    index.entries = std::move(entries);
    index.capacity = capacity;
    index.metric = metric;

    std::uint32_t next_node_id = 0;

    // Bottom level: pack entry ids into leaves.
    std::vector<std::uint32_t> ids(index.entries.size());
    std::iota(ids.begin(), ids.end(), 0);
    auto entry_point = [&](std::uint32_t id) -> const Eigen::VectorXd& { return index.entries[id].features; };
    auto entry_tie = [&](std::uint32_t a, std::uint32_t b) {
        return index.entries[a].tile < index.entries[b].tile;
    };
    std::vector<int> order = variance_order(static_cast<int>(dim), ids.size(),
                                            [&](std::size_t i) -> const Eigen::VectorXd& {
                                                return index.entries[ids[i]].features;
                                            });
    std::vector<std::vector<std::uint32_t>> groups;
    str_partition(ids, 0, ids.size(), 0, order, capacity, entry_point, entry_tie, groups);

    std::vector<std::unique_ptr<IndexNode>> level;
    level.reserve(groups.size());
    for (auto& g : groups) {
        auto node = std::make_unique<IndexNode>();
        node->node_id = next_node_id++;
        node->entries = std::move(g);
        collect_mbr(*node, index.entries);
        level.push_back(std::move(node));
    }

    // Upper levels: pack node centers until a single root remains.
    while (level.size() > 1) {
        std::vector<Eigen::VectorXd> centers(level.size());
        for (std::size_t i = 0; i < level.size(); ++i) centers[i] = (level[i]->lo + level[i]->hi) / 2.0;

        std::vector<std::uint32_t> nids(level.size());
        std::iota(nids.begin(), nids.end(), 0);
        auto node_point = [&](std::uint32_t id) -> const Eigen::VectorXd& { return centers[id]; };
        auto node_tie = [&](std::uint32_t a, std::uint32_t b) {
            return level[a]->node_id < level[b]->node_id;
        };
        order = variance_order(static_cast<int>(dim), nids.size(),
                               [&](std::size_t i) -> const Eigen::VectorXd& { return centers[nids[i]]; });
        groups.clear();
        str_partition(nids, 0, nids.size(), 0, order, capacity, node_point, node_tie, groups);

        std::vector<std::unique_ptr<IndexNode>> parents;
        parents.reserve(groups.size());
        for (auto& g : groups) {
            auto node = std::make_unique<IndexNode>();
            node->node_id = next_node_id++;
            for (std::uint32_t id : g) node->children.push_back(std::move(level[id]));
            collect_mbr(*node, index.entries);
            parents.push_back(std::move(node));
        }
        level = std::move(parents);
    }

    index.root = std::move(level.front());
    return index;
}

double mindist(Metric metric, const FeatureVector& q, const Eigen::VectorXd& lo,
               const Eigen::VectorXd& hi) {
    if (q.size() != lo.size() || q.size() != hi.size()) {
        throw std::invalid_argument("mindist: dimension mismatch");
    }
    Eigen::VectorXd gap = (lo - q).cwiseMax(q - hi).cwiseMax(0.0);
    return metric == Metric::L2 ? gap.norm() : gap.sum();
}

NnCursor::NnCursor(const TileIndex& index, FeatureVector query)
    : index_(&index), query_(std::move(query)) {
    if (index_->root) push_node(index_->root.get());
}

void NnCursor::push_node(const IndexNode* node) {
    ++distance_evals_;
    heap_.push({mindist(index_->metric, query_, node->lo, node->hi), 0, node->node_id, node, 0});
}

std::optional<std::uint32_t> NnCursor::next() {
    while (!heap_.empty()) {
        Item item = heap_.top();
        heap_.pop();
        ++heap_pops_;
        if (item.kind == 1) {
            ++entry_pops_;
            last_distance_ = item.dist;
            return item.entry_id;
        }
        const IndexNode* node = item.node;
        for (const auto& child : node->children) push_node(child.get());
        for (std::uint32_t id : node->entries) {
            const LeafEntry& e = index_->entries[id];
            ++distance_evals_;
            // Entry ties order by tile reference, packed for the heap key.
            std::uint64_t tie = (static_cast<std::uint64_t>(e.tile.image_id) << 32) |
                                (static_cast<std::uint64_t>(static_cast<std::uint16_t>(e.tile.row)) << 16) |
                                static_cast<std::uint64_t>(static_cast<std::uint16_t>(e.tile.col));
            heap_.push({distance(index_->metric, query_, e.features), 1, tie, nullptr, id});
        }
    }
    return std::nullopt;
}

GridPos image_grid_lookup(const TileRef& tile, const Database& catalog) {
    const TiledImage& image = catalog.by_id(tile.image_id);
    if (tile.row < 0 || tile.row >= image.rows || tile.col < 0 || tile.col >= image.cols) {
        throw DataError("image_grid_lookup: tile reference outside image grid");
    }
    return {&image, tile.row, tile.col};
}

}  // namespace subr
