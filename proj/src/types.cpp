#include "subr/types.hpp"

#include <algorithm>
#include <queue>

namespace subr {

double distance(Metric metric, const FeatureVector& a, const FeatureVector& b) {
    if (a.size() != b.size()) {
        throw std::invalid_argument("distance: dimension mismatch");
    }
    switch (metric) {
        case Metric::L2:
            return (a - b).norm();
        case Metric::L1:
            return (a - b).lpNorm<1>();
    }
    throw std::invalid_argument("distance: unknown metric");
}

const char* metric_name(Metric metric) {
    return metric == Metric::L2 ? "l2" : "l1";
}

Metric metric_from_name(const std::string& name) {
    if (name == "l2" || name == "L2") return Metric::L2;
    if (name == "l1" || name == "L1") return Metric::L1;
    throw ConfigError("unknown metric: " + name);
}

const TiledImage& Database::by_id(std::uint32_t id) const {
    if (id >= images.size() || images[id].image_id != id) {
        throw DataError("database: unknown image id " + std::to_string(id));
    }
    return images[id];
}

double region_sum(const Eigen::Ref<const Eigen::MatrixXd>& scores, std::span<const Cell> cells) {
    double sum = 0.0;
    for (const Cell& c : cells) {
        if (c.row < 0 || c.row >= scores.rows() || c.col < 0 || c.col >= scores.cols()) {
            throw std::out_of_range("region_sum: cell outside matrix");
        }
        sum += scores(c.row, c.col);
    }
    return sum;
}

double region_sum(const ScoreMatrix& m, std::span<const Cell> cells) {
    return region_sum(m.scores, cells);
}

bool is_connected(std::span<const Cell> cells) {
    if (cells.empty()) {
        throw std::invalid_argument("is_connected: empty cell set");
    }
    std::vector<Cell> sorted(cells.begin(), cells.end());
    std::sort(sorted.begin(), sorted.end());
    sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());

    auto member = [&](const Cell& c) {
        return std::binary_search(sorted.begin(), sorted.end(), c);
    };

    std::vector<bool> seen(sorted.size(), false);
    std::queue<Cell> frontier;
    frontier.push(sorted.front());
    seen[0] = true;
    std::size_t reached = 1;
    while (!frontier.empty()) {
        Cell c = frontier.front();
        frontier.pop();
        const Cell nbrs[4] = {{c.row - 1, c.col}, {c.row + 1, c.col}, {c.row, c.col - 1}, {c.row, c.col + 1}};
        for (const Cell& n : nbrs) {
            if (!member(n)) continue;
            auto it = std::lower_bound(sorted.begin(), sorted.end(), n);
            auto idx = static_cast<std::size_t>(it - sorted.begin());
            if (!seen[idx]) {
                seen[idx] = true;
                ++reached;
                frontier.push(n);
            }
        }
    }
    return reached == sorted.size();
}

}  // namespace subr
