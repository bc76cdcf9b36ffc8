#pragma once

#include "subr/synthetic.hpp"
#include "subr/types.hpp"

#include <filesystem>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

namespace subr {

/// One line of query output. Region cells are score-matrix coordinates; the
/// matching image tile of cell (i,j) is (max(drow,0)+i, max(dcol,0)+j).
struct ResultRecord {
    int query_id = 0;
    int rank = 0;
    std::uint32_t image_id = 0;
    std::string image_path;
    int drow = 0;
    int dcol = 0;
    double score = 0.0;
    std::vector<Cell> cells;
};

std::string result_record_line(const ResultRecord& record);

/// Reads records of type "result" from line-delimited output; other record
/// types (header, stats) are skipped.
std::vector<ResultRecord> parse_result_records(const std::filesystem::path& path);

struct PrecisionReport {
    double precision = 0.0;                 // mean over queries
    std::map<int, double> per_query;        // query id -> true/k
};

/// Top-k truth rule: a result counts as true when its region's image tiles
/// intersect the tile footprint of a same-label ground-truth placement on the
/// same image, for any of the query's labels.
PrecisionReport eval_precision(const std::vector<ResultRecord>& records, const GroundTruth& gt,
                               int k);

}  // namespace subr
