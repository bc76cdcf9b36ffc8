#include "subr/mwcs.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <limits>

namespace subr {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

// Row/col deltas of the two scan moves per corner (first move, second move).
struct CornerMoves {
    int first_drow, first_dcol;    // "right-like" move
    int second_drow, second_dcol;  // "up-like" move
};

CornerMoves moves_of(Corner corner) {
    switch (corner) {
        case Corner::BottomLeft: return {0, 1, 1, 0};
        case Corner::BottomRight: return {0, -1, 1, 0};
        case Corner::TopLeft: return {0, 1, -1, 0};
        case Corner::TopRight: return {0, -1, -1, 0};
    }
    throw std::invalid_argument("moves_of: unknown corner");
}

// Flat dynamic bitsets over matrix cells, cell index = row*cols + col.
int word_count(int ncells) { return (ncells + 63) / 64; }

// Lexicographic order of the sorted cell lists of two equal-size sets:
// the set containing the lowest differing cell index is the smaller one.
bool bits_lex_less(const std::uint64_t* a, const std::uint64_t* b, int words) {
    for (int w = 0; w < words; ++w) {
        std::uint64_t diff = a[w] ^ b[w];
        if (diff) {
            return (a[w] & (diff & -diff)) != 0;
        }
    }
    return false;
}

// Candidate region for one recurrence case: union of up to two stored
// regions plus the current cell's bit.
struct Candidate {
    double score = kNegInf;
    int count = 0;
    const std::uint64_t* r1 = nullptr;
    const std::uint64_t* r2 = nullptr;
    bool valid = false;
};

std::uint64_t candidate_word(const Candidate& c, int w, int cell_word, std::uint64_t cell_mask) {
    std::uint64_t v = (w == cell_word) ? cell_mask : 0;
    if (c.r1) v |= c.r1[w];
    if (c.r2) v |= c.r2[w];
    return v;
}

// True iff a ranks strictly better than b: higher score, then fewer cells,
// then lexicographically smaller cell list.
bool candidate_better(const Candidate& a, const Candidate& b, int words, int cell_word,
                      std::uint64_t cell_mask) {
    if (!b.valid) return a.valid;
    if (!a.valid) return false;
    if (a.score != b.score) return a.score > b.score;
    if (a.count != b.count) return a.count < b.count;
    for (int w = 0; w < words; ++w) {
        std::uint64_t aw = candidate_word(a, w, cell_word, cell_mask);
        std::uint64_t bw = candidate_word(b, w, cell_word, cell_mask);
        std::uint64_t diff = aw ^ bw;
        if (diff) return (aw & (diff & -diff)) != 0;
    }
    return false;
}

struct RunBest {
    double recurrence_score = kNegInf;
    int count = 0;
    std::vector<std::uint64_t> bits;
    bool valid = false;
};

Region region_from_bits(const std::uint64_t* bits, int words, int cols,
                        const std::vector<double>& flat_scores) {
    Region region;
    double sum = 0.0;
    for (int w = 0; w < words; ++w) {
        std::uint64_t word = bits[w];
        while (word) {
            int bit = std::countr_zero(word);
            word &= word - 1;
            int idx = w * 64 + bit;
            region.cells.push_back({idx / cols, idx % cols});
            sum += flat_scores[idx];
        }
    }
    region.score = sum;
    return region;
}

}  // namespace

const char* corner_name(Corner corner) {
    switch (corner) {
        case Corner::BottomLeft: return "bottom-left";
        case Corner::BottomRight: return "bottom-right";
        case Corner::TopLeft: return "top-left";
        case Corner::TopRight: return "top-right";
    }
    return "?";
}

Region dp_corner_run(const Eigen::Ref<const Eigen::MatrixXd>& scores, Corner corner) {
    const int rows = static_cast<int>(scores.rows());
    const int cols = static_cast<int>(scores.cols());
    if (rows == 0 || cols == 0) {
        throw std::invalid_argument("dp_corner_run: empty matrix");
    }
    const int ncells = rows * cols;
    const int words = word_count(ncells);
    const CornerMoves mv = moves_of(corner);

    std::vector<double> flat(static_cast<std::size_t>(ncells));
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j) flat[static_cast<std::size_t>(i) * cols + j] = scores(i, j);

    // Scan coordinates (a, b) follow the corner's order; map to actual (row, col).
    const int row0 = (mv.second_drow > 0) ? 0 : rows - 1;
    const int col0 = (mv.first_dcol > 0) ? 0 : cols - 1;
    auto row_of = [&](int a) { return row0 + a * mv.second_drow; };
    auto col_of = [&](int b) { return col0 + b * mv.first_dcol; };

    // Only the previous scan row and the current one are live.
    std::vector<std::uint64_t> prev_bits(static_cast<std::size_t>(cols) * words, 0);
    std::vector<std::uint64_t> cur_bits(static_cast<std::size_t>(cols) * words, 0);
    std::vector<double> prev_score(cols, kNegInf), cur_score(cols, kNegInf);
    std::vector<int> prev_count(cols, 0), cur_count(cols, 0);

    RunBest best;
    best.bits.assign(words, 0);

    std::vector<std::uint64_t> scratch(words);

    for (int a = 0; a < rows; ++a) {
        for (int b = 0; b < cols; ++b) {
            const int cell = row_of(a) * cols + col_of(b);
            const double s = flat[cell];
            const int cell_word = cell / 64;
            const std::uint64_t cell_mask = std::uint64_t{1} << (cell % 64);

            const std::uint64_t* first_pred = (b > 0) ? &cur_bits[static_cast<std::size_t>(b - 1) * words] : nullptr;
            const std::uint64_t* second_pred = (a > 0) ? &prev_bits[static_cast<std::size_t>(b) * words] : nullptr;

            Candidate cases[4];
            cases[0] = {s, 1, nullptr, nullptr, true};
            if (first_pred) {
                cases[1] = {s + cur_score[b - 1], cur_count[b - 1] + 1, first_pred, nullptr, true};
            }
            if (second_pred) {
                cases[2] = {s + prev_score[b], prev_count[b] + 1, nullptr, second_pred, true};
            }
            if (first_pred && second_pred) {
                double inter_score = 0.0;
                int inter_count = 0;
                for (int w = 0; w < words; ++w) {
                    std::uint64_t band = first_pred[w] & second_pred[w];
                    inter_count += std::popcount(band);
                    while (band) {
                        int bit = std::countr_zero(band);
                        band &= band - 1;
                        inter_score += flat[static_cast<std::size_t>(w) * 64 + bit];
                    }
                }
                cases[3] = {s + cur_score[b - 1] + prev_score[b] - inter_score,
                            cur_count[b - 1] + prev_count[b] - inter_count + 1, first_pred,
                            second_pred, true};
            }

            int win = 0;
            for (int c = 1; c < 4; ++c) {
                if (candidate_better(cases[c], cases[win], words, cell_word, cell_mask)) win = c;
            }
            const Candidate& winner = cases[win];

            for (int w = 0; w < words; ++w) scratch[w] = candidate_word(winner, w, cell_word, cell_mask);

            bool improves = !best.valid || winner.score > best.recurrence_score ||
                            (winner.score == best.recurrence_score &&
                             (winner.count < best.count ||
                              (winner.count == best.count && bits_lex_less(scratch.data(), best.bits.data(), words))));
            if (improves) {
                best.recurrence_score = winner.score;
                best.count = winner.count;
                best.bits = scratch;
                best.valid = true;
            }

            std::copy(scratch.begin(), scratch.end(), cur_bits.begin() + static_cast<std::size_t>(b) * words);
            cur_score[b] = winner.score;
            cur_count[b] = winner.count;
        }
        std::swap(prev_bits, cur_bits);
        std::swap(prev_score, cur_score);
        std::swap(prev_count, cur_count);
    }

    return region_from_bits(best.bits.data(), words, cols, flat);
}

Region dp_max_region(const Eigen::Ref<const Eigen::MatrixXd>& scores) {
    Region best;
    bool have = false;
    for (Corner corner : kAllCorners) {
        Region r = dp_corner_run(scores, corner);
        bool better = !have || r.score > best.score ||
                      (r.score == best.score &&
                       (r.cells.size() < best.cells.size() ||
                        (r.cells.size() == best.cells.size() &&
                         std::lexicographical_compare(r.cells.begin(), r.cells.end(), best.cells.begin(),
                                                      best.cells.end()))));
        if (better) {
            best = std::move(r);
            have = true;
        }
    }
    return best;
}

Region exact_mwcs(const Eigen::Ref<const Eigen::MatrixXd>& scores, int cell_cap) {
    const int rows = static_cast<int>(scores.rows());
    const int cols = static_cast<int>(scores.cols());
    if (rows == 0 || cols == 0) {
        throw std::invalid_argument("exact_mwcs: empty matrix");
    }
    const int ncells = rows * cols;
    if (ncells > cell_cap) {
        throw std::length_error("exact_mwcs: matrix exceeds cell cap");
    }
    if (ncells > 64) {
        throw std::length_error("exact_mwcs: enumeration limited to 64 cells");
    }

    std::vector<double> flat(static_cast<std::size_t>(ncells));
    std::vector<std::uint64_t> nbr(static_cast<std::size_t>(ncells), 0);
    for (int i = 0; i < rows; ++i) {
        for (int j = 0; j < cols; ++j) {
            int idx = i * cols + j;
            flat[idx] = scores(i, j);
            if (i > 0) nbr[idx] |= std::uint64_t{1} << (idx - cols);
            if (i + 1 < rows) nbr[idx] |= std::uint64_t{1} << (idx + cols);
            if (j > 0) nbr[idx] |= std::uint64_t{1} << (idx - 1);
            if (j + 1 < cols) nbr[idx] |= std::uint64_t{1} << (idx + 1);
        }
    }

    std::uint64_t best_mask = 0;
    double best_score = kNegInf;
    int best_count = 0;

    auto consider = [&](std::uint64_t mask, double sum, int count) {
        if (sum > best_score || (sum == best_score && (count < best_count ||
            (count == best_count && [&] {
                std::uint64_t diff = mask ^ best_mask;
                return diff && (mask & (diff & -diff));
            }())))) {
            best_mask = mask;
            best_score = sum;
            best_count = count;
        }
    };

    // Enumerates every connected set exactly once: sets are grown from their
    // minimum cell, and a branch bans its pivot for the branches after it.
    auto extend = [&](auto&& self, std::uint64_t set, std::uint64_t ext, std::uint64_t forb,
                      double sum, int count) -> void {
        consider(set, sum, count);
        while (ext) {
            std::uint64_t ubit = ext & (~ext + 1);
            ext &= ext - 1;
            int u = std::countr_zero(ubit);
            std::uint64_t next_ext = (ext | nbr[u]) & ~(set | ubit | forb);
            self(self, set | ubit, next_ext, forb, sum + flat[u], count + 1);
            forb |= ubit;
        }
    };

    for (int s = 0; s < ncells; ++s) {
        std::uint64_t sbit = std::uint64_t{1} << s;
        std::uint64_t forb = sbit - 1;  // cells below the start stay out
        extend(extend, sbit, nbr[s] & ~forb, forb, flat[s], 1);
    }

    Region region;
    std::uint64_t mask = best_mask;
    while (mask) {
        int idx = std::countr_zero(mask);
        mask &= mask - 1;
        region.cells.push_back({idx / cols, idx % cols});
        region.score += flat[idx];
    }
    return region;
}

bool sinks(std::span<const Cell> cells, Cell end, Corner corner) {
    std::vector<Cell> sorted(cells.begin(), cells.end());
    std::sort(sorted.begin(), sorted.end());
    sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
    if (!std::binary_search(sorted.begin(), sorted.end(), end)) {
        throw std::invalid_argument("sinks: end cell not in set");
    }

    const CornerMoves mv = moves_of(corner);
    // Walk backwards from the end cell along the inverse moves; end sinks the
    // shape iff the walk covers every member.
    std::vector<bool> seen(sorted.size(), false);
    auto index_of = [&](const Cell& c) -> int {
        auto it = std::lower_bound(sorted.begin(), sorted.end(), c);
        if (it == sorted.end() || *it != c) return -1;
        return static_cast<int>(it - sorted.begin());
    };
    std::vector<int> stack = {index_of(end)};
    seen[stack.back()] = true;
    std::size_t reached = 1;
    while (!stack.empty()) {
        Cell c = sorted[stack.back()];
        stack.pop_back();
        const Cell preds[2] = {{c.row - mv.first_drow, c.col - mv.first_dcol},
                               {c.row - mv.second_drow, c.col - mv.second_dcol}};
        for (const Cell& p : preds) {
            int idx = index_of(p);
            if (idx >= 0 && !seen[idx]) {
                seen[idx] = true;
                ++reached;
                stack.push_back(idx);
            }
        }
    }
    return reached == sorted.size();
}

bool is_dp_capturable(std::span<const Cell> cells) {
    if (cells.empty()) {
        throw std::invalid_argument("is_dp_capturable: empty cell set");
    }
    for (Corner corner : kAllCorners) {
        for (const Cell& end : cells) {
            if (sinks(cells, end, corner)) return true;
        }
    }
    return false;
}

Eigen::MatrixXd trst_to_mwcs(const TrstInstance& inst) {
    const int m = inst.grid_size;
    if (m < 1) throw std::invalid_argument("trst_to_mwcs: grid size must be >= 1");
    if (inst.terminals.empty()) throw std::invalid_argument("trst_to_mwcs: needs at least one terminal");
    std::vector<Cell> terms(inst.terminals.begin(), inst.terminals.end());
    std::sort(terms.begin(), terms.end());
    if (std::adjacent_find(terms.begin(), terms.end()) != terms.end()) {
        throw std::invalid_argument("trst_to_mwcs: duplicate terminal");
    }
    for (const Cell& t : terms) {
        if (t.row < 0 || t.row >= m || t.col < 0 || t.col >= m) {
            throw std::invalid_argument("trst_to_mwcs: terminal off grid");
        }
    }

    const int side = 2 * m - 1;
    const double n = static_cast<double>(terms.size());
    const double hole = -(n * inst.terminal_weight + inst.length_budget + 1);
    Eigen::MatrixXd out(side, side);
    for (int r = 0; r < side; ++r) {
        for (int c = 0; c < side; ++c) {
            const bool row_even = (r % 2 == 0);
            const bool col_even = (c % 2 == 0);
            if (row_even && col_even) {
                Cell grid_point{r / 2, c / 2};
                out(r, c) = std::binary_search(terms.begin(), terms.end(), grid_point)
                                ? inst.terminal_weight
                                : 0.0;
            } else if (row_even || col_even) {
                out(r, c) = -1.0;  // edge midpoint
            } else {
                out(r, c) = hole;
            }
        }
    }
    return out;
}

int steiner_min_length(const TrstInstance& inst) {
    const int m = inst.grid_size;
    const int nverts = m * m;
    if (nverts > 20) {
        throw std::length_error("steiner_min_length: grid too large for brute force");
    }
    std::uint32_t term_mask = 0;
    for (const Cell& t : inst.terminals) {
        if (t.row < 0 || t.row >= m || t.col < 0 || t.col >= m) {
            throw std::invalid_argument("steiner_min_length: terminal off grid");
        }
        term_mask |= std::uint32_t{1} << (t.row * m + t.col);
    }
    if (term_mask == 0) throw std::invalid_argument("steiner_min_length: no terminals");

    std::vector<std::uint32_t> nbr(static_cast<std::size_t>(nverts), 0);
    for (int i = 0; i < m; ++i) {
        for (int j = 0; j < m; ++j) {
            int idx = i * m + j;
            if (i > 0) nbr[idx] |= std::uint32_t{1} << (idx - m);
            if (i + 1 < m) nbr[idx] |= std::uint32_t{1} << (idx + m);
            if (j > 0) nbr[idx] |= std::uint32_t{1} << (idx - 1);
            if (j + 1 < m) nbr[idx] |= std::uint32_t{1} << (idx + 1);
        }
    }
    auto connected = [&](std::uint32_t set) {
        std::uint32_t seed = set & (~set + 1);
        std::uint32_t reach = seed;
        std::uint32_t frontier = seed;
        while (frontier) {
            std::uint32_t next = 0;
            while (frontier) {
                int v = std::countr_zero(frontier);
                frontier &= frontier - 1;
                next |= nbr[v] & set & ~reach;
            }
            reach |= next;
            frontier = next;
        }
        return reach == set;
    };

    const std::uint32_t all = (nverts == 32) ? ~std::uint32_t{0} : ((std::uint32_t{1} << nverts) - 1);
    const std::uint32_t free_mask = all & ~term_mask;
    int best = std::numeric_limits<int>::max();
    // Every vertex set containing the terminals; a set of v vertices spans
    // with v-1 unit edges.
    std::uint32_t sub = free_mask;
    while (true) {
        std::uint32_t set = term_mask | sub;
        int size = std::popcount(set);
        if (size - 1 < best && connected(set)) best = size - 1;
        if (sub == 0) break;
        sub = (sub - 1) & free_mask;
    }
    return best;
}

}  // namespace subr
