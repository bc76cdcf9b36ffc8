#include "subr/eval.hpp"

#include <json.hpp>

#include <algorithm>
#include <fstream>
#include <set>

namespace subr {

std::string result_record_line(const ResultRecord& record) {
    nlohmann::ordered_json j;
    j["type"] = "result";
    j["query_id"] = record.query_id;
    j["rank"] = record.rank;
    j["image_id"] = record.image_id;
    j["image_path"] = record.image_path;
    j["drow"] = record.drow;
    j["dcol"] = record.dcol;
    j["score"] = record.score;
    auto cells = nlohmann::ordered_json::array();
    for (const Cell& c : record.cells) cells.push_back({c.row, c.col});
    j["cells"] = std::move(cells);
    return j.dump();
}

std::vector<ResultRecord> parse_result_records(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open " + path.string());
    std::vector<ResultRecord> out;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        nlohmann::json j;
        try {
            j = nlohmann::json::parse(line);
        } catch (const nlohmann::json::exception& e) {
            throw DataError(path.string() + ":" + std::to_string(line_no) + ": " + e.what());
        }
        if (j.value("type", "") != "result") continue;
        try {
            ResultRecord r;
            r.query_id = j.at("query_id").get<int>();
            r.rank = j.at("rank").get<int>();
            r.image_id = j.at("image_id").get<std::uint32_t>();
            r.image_path = j.value("image_path", "");
            r.drow = j.at("drow").get<int>();
            r.dcol = j.at("dcol").get<int>();
            r.score = j.at("score").get<double>();
            for (const auto& c : j.at("cells")) r.cells.push_back({c.at(0).get<int>(), c.at(1).get<int>()});
            out.push_back(std::move(r));
        } catch (const nlohmann::json::exception& e) {
            throw DataError(path.string() + ":" + std::to_string(line_no) + ": " + e.what());
        }
    }
    return out;
}

namespace {

struct TileRect {
    int row0, col0, row1, col1;  // inclusive tile ranges
};

TileRect placement_tiles(const SpritePlacement& p, int tile_size) {
    return {p.y / tile_size, p.x / tile_size, (p.y + p.h - 1) / tile_size,
            (p.x + p.w - 1) / tile_size};
}

}  // namespace

PrecisionReport eval_precision(const std::vector<ResultRecord>& records, const GroundTruth& gt,
                               int k) {
    if (k < 1) throw std::invalid_argument("eval_precision: k must be at least 1");

    std::map<int, const SynthQuery*> queries;
    for (const SynthQuery& q : gt.queries) queries[q.id] = &q;

    PrecisionReport report;
    std::map<int, int> true_counts;
    std::set<int> seen_queries;

    for (const ResultRecord& r : records) {
        if (r.rank > k) continue;
        auto qit = queries.find(r.query_id);
        if (qit == queries.end()) {
            throw DataError("eval_precision: record references unknown query " +
                            std::to_string(r.query_id));
        }
        const SynthQuery& query = *qit->second;
        seen_queries.insert(r.query_id);
        if (r.image_id >= gt.images.size()) {
            throw DataError("eval_precision: record references unknown image " +
                            std::to_string(r.image_id));
        }
        const SynthImage& image = gt.images[r.image_id];

        // Does the region's tile footprint touch a same-label placement that
        // the ground truth lists as a true match for this query?
        bool is_true = false;
        for (const SpritePlacement& p : image.placements) {
            if (is_true) break;
            bool label_ok = false;
            for (const std::string& label : query.labels) {
                if (p.label == label) label_ok = true;
            }
            if (!label_ok) continue;
            bool listed = false;
            for (const auto& [image_id, label] : query.true_matches) {
                if (image_id == image.id && label == p.label) listed = true;
            }
            if (!listed) continue;
            TileRect rect = placement_tiles(p, gt.tile_size);
            for (const Cell& cell : r.cells) {
                const int tile_row = std::max(r.drow, 0) + cell.row;
                const int tile_col = std::max(r.dcol, 0) + cell.col;
                if (tile_row >= rect.row0 && tile_row <= rect.row1 && tile_col >= rect.col0 &&
                    tile_col <= rect.col1) {
                    is_true = true;
                    break;
                }
            }
        }
        if (is_true) true_counts[r.query_id] += 1;
    }

    if (seen_queries.empty()) {
        throw DataError("eval_precision: no result records at or below the requested k");
    }
    double total = 0.0;
    for (int qid : seen_queries) {
        const double p = static_cast<double>(true_counts[qid]) / k;
        report.per_query[qid] = p;
        total += p;
    }
    report.precision = total / static_cast<double>(seen_queries.size());
    return report;
}

}  // namespace subr
