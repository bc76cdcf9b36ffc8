#pragma once

#include "subr/eval.hpp"
#include "subr/index_file.hpp"
#include "subr/search.hpp"
#include "subr/synthetic.hpp"

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace subr {

/// Flag values as given on the command line; unset fields fall back to the
/// config file, then to built-in defaults (and for query-time lambda/c, to
/// the index header).
struct CliOverrides {
    std::optional<double> lambda;
    std::optional<double> c;
    std::optional<int> tile_size;
    std::optional<int> dim;
    std::optional<int> capacity;
    std::optional<std::string> metric;
    std::optional<std::string> mode;
    std::optional<int> k;
    std::optional<std::uint64_t> seed;
    std::filesystem::path config_path;
};

struct BuildIndexOptions {
    std::filesystem::path image_dir;
    std::filesystem::path out;
    CliOverrides overrides;
};

struct QueryOptions {
    std::filesystem::path index_path;
    std::vector<std::filesystem::path> query_paths;
    std::string algo = "linear";  // linear | tars | spars
    std::filesystem::path out;    // empty: stdout
    CliOverrides overrides;
};

struct GenSyntheticOptions {
    std::filesystem::path out_dir;
    CliOverrides overrides;
};

struct EvalPrecisionOptions {
    std::filesystem::path results_path;
    std::filesystem::path truth_path;
    CliOverrides overrides;
};

struct BenchOptions {
    std::filesystem::path index_path;
    std::vector<std::filesystem::path> query_paths;
    std::vector<std::string> algos = {"linear", "tars", "spars"};
    std::filesystem::path out;  // empty: stdout
    CliOverrides overrides;
};

struct OracleCheckOptions {
    std::string sizes = "2x2,2x3,2x4,3x3,3x4,4x4";
    int trials = 1000;
    CliOverrides overrides;
};

int cmd_build_index(const BuildIndexOptions& opts, std::ostream& log);
int cmd_query(const QueryOptions& opts, std::ostream& log);
int cmd_gen_synthetic(const GenSyntheticOptions& opts, std::ostream& log);
int cmd_eval_precision(const EvalPrecisionOptions& opts, std::ostream& log);
int cmd_bench(const BenchOptions& opts, std::ostream& log);
int cmd_oracle_check(const OracleCheckOptions& opts, std::ostream& log);

/// Tiles, describes and projects a raw grayscale image against the index's
/// descriptor settings and PCA model.
QueryImage query_from_pixels(const IndexBundle& bundle, const GrayImage& pixels);

/// Full argv interface; returns the process exit code
/// (0 ok, 1 usage/config, 2 data error, 3 oracle violation).
int run_cli(int argc, const char* const* argv);

}  // namespace subr
