#include "subr/commands.hpp"

#include "subr/features.hpp"
#include "subr/mwcs.hpp"
#include "subr/pgm.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <chrono>
#include <fstream>
#include <iostream>
#include <random>
#include <set>

namespace subr {

namespace {

using Clock = std::chrono::steady_clock;

// Resolved configuration after defaults < config file < flags.
struct Settings {
    double lambda = 1.0;
    double c = 23000.0;
    int tile_size = 32;
    int dim = 6;
    int capacity = 64;
    Metric metric = Metric::L2;
    BoundMode mode = BoundMode::DpHeuristic;
    int k = 10;
    std::uint64_t seed = 1;

    // Generator knobs, config-file only.
    SynthSpec synth;
};

Settings resolve_settings(const CliOverrides& ov) {
    Settings s;
    if (!ov.config_path.empty()) {
        std::ifstream in(ov.config_path);
        if (!in) throw ConfigError("cannot open config file " + ov.config_path.string());
        nlohmann::json j;
        try {
            in >> j;
        } catch (const nlohmann::json::exception& e) {
            throw ConfigError(ov.config_path.string() + ": " + e.what());
        }
        s.lambda = j.value("lambda", s.lambda);
        s.c = j.value("c", s.c);
        s.tile_size = j.value("tile_size", s.tile_size);
        s.dim = j.value("dim", s.dim);
        s.capacity = j.value("capacity", s.capacity);
        if (j.contains("metric")) s.metric = metric_from_name(j["metric"].get<std::string>());
        if (j.contains("mode")) s.mode = bound_mode_from_name(j["mode"].get<std::string>());
        s.k = j.value("k", s.k);
        s.seed = j.value("seed", s.seed);

        s.synth.images = j.value("images", s.synth.images);
        s.synth.queries = j.value("queries", s.synth.queries);
        s.synth.composition_images = j.value("composition_images", s.synth.composition_images);
        if (j.contains("canvas")) {
            s.synth.canvas_w = j["canvas"].at(0).get<int>();
            s.synth.canvas_h = j["canvas"].at(1).get<int>();
        }
        if (j.contains("sprites")) s.synth.sprites = j["sprites"].get<std::vector<std::string>>();
        if (j.contains("backgrounds")) s.synth.backgrounds = j["backgrounds"].get<std::vector<int>>();
        if (j.contains("occlusions")) s.synth.occlusions = j["occlusions"].get<std::vector<double>>();
    }
    if (ov.lambda) s.lambda = *ov.lambda;
    if (ov.c) s.c = *ov.c;
    if (ov.tile_size) s.tile_size = *ov.tile_size;
    if (ov.dim) s.dim = *ov.dim;
    if (ov.capacity) s.capacity = *ov.capacity;
    if (ov.metric) s.metric = metric_from_name(*ov.metric);
    if (ov.mode) s.mode = bound_mode_from_name(*ov.mode);
    if (ov.k) s.k = *ov.k;
    if (ov.seed) s.seed = *ov.seed;

    if (s.lambda <= 0) throw ConfigError("lambda must be positive");
    if (s.k < 1) throw ConfigError("k must be at least 1");
    if (s.tile_size < 8) throw ConfigError("tile_size must be at least 8");
    if (s.capacity < 2) throw ConfigError("capacity must be at least 2");
    s.synth.seed = s.seed;
    return s;
}

std::ofstream open_out(const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw DataError("cannot write " + path.string());
    return out;
}

DescriptorConfig descriptor_config(int tile_size) {
    DescriptorConfig cfg;
    cfg.tile_size = tile_size;
    cfg.window = std::max(1, tile_size / 4);
    cfg.validate();
    return cfg;
}

}  // namespace

QueryImage query_from_pixels(const IndexBundle& bundle, const GrayImage& pixels) {
    DescriptorConfig dcfg = descriptor_config(bundle.tile_size);
    if (dcfg.output_dim != bundle.raw_dim) {
        throw ConfigError("index raw dimension " + std::to_string(bundle.raw_dim) +
                          " does not match the descriptor (" + std::to_string(dcfg.output_dim) + ")");
    }
    TileGrid grid = tile_image(pixels, dcfg);
    QueryImage query;
    query.rows = grid.rows;
    query.cols = grid.cols;
    for (int r = 0; r < grid.rows; ++r) {
        for (int c = 0; c < grid.cols; ++c) {
            const GrayImage& tile = grid.tile(r, c);
            QueryTile qt;
            qt.bg_distance = bg_distance(tile, dcfg.tile_size);
            qt.features = pca_project(bundle.pca, csd_descriptor(tile, dcfg));
            query.tiles.push_back(std::move(qt));
        }
    }
    return query;
}

int cmd_build_index(const BuildIndexOptions& opts, std::ostream& log) {
    Settings s = resolve_settings(opts.overrides);
    if (opts.out.empty()) throw ConfigError("build-index: --out is required");

    std::vector<std::filesystem::path> files;
    if (!std::filesystem::is_directory(opts.image_dir)) {
        throw DataError("build-index: not a directory: " + opts.image_dir.string());
    }
    for (const auto& entry : std::filesystem::directory_iterator(opts.image_dir)) {
        if (entry.is_regular_file() && entry.path().extension() == ".pgm") {
            files.push_back(entry.path());
        }
    }
    std::sort(files.begin(), files.end());
    if (files.empty()) throw DataError("build-index: no .pgm files in " + opts.image_dir.string());

    DescriptorConfig dcfg = descriptor_config(s.tile_size);
    if (s.dim < 1 || s.dim > dcfg.output_dim) {
        throw ConfigError("dim must be in [1, " + std::to_string(dcfg.output_dim) + "]");
    }

    IndexBundle bundle;
    bundle.metric = s.metric;
    bundle.tile_size = s.tile_size;
    bundle.raw_dim = dcfg.output_dim;
    bundle.reduced_dim = s.dim;
    bundle.lambda = s.lambda;
    bundle.c = s.c;
    bundle.leaf_capacity = s.capacity;

    std::vector<FeatureVector> descriptors;
    std::vector<TileRef> refs;
    int skipped = 0;
    std::uint32_t image_id = 0;
    for (const auto& file : files) {
        GrayImage pixels;
        try {
            pixels = read_pgm(file);
        } catch (const DataError& e) {
            log << "warning: skipping " << file.string() << ": " << e.what() << "\n";
            ++skipped;
            continue;
        }
        TileGrid grid = tile_image(pixels, dcfg);
        TiledImage img;
        img.image_id = image_id;
        img.rows = grid.rows;
        img.cols = grid.cols;
        img.source_path = file.string();
        for (int r = 0; r < grid.rows; ++r) {
            for (int c = 0; c < grid.cols; ++c) {
                const GrayImage& tile = grid.tile(r, c);
                img.tile_bg.push_back(bg_distance(tile, dcfg.tile_size));
                descriptors.push_back(csd_descriptor(tile, dcfg));
                refs.push_back({image_id, r, c});
            }
        }
        img.tiles.clear();  // filled with reduced vectors below
        bundle.catalog.images.push_back(std::move(img));
        ++image_id;
    }
    if (bundle.catalog.images.empty()) {
        throw DataError("build-index: no readable images (skipped " + std::to_string(skipped) + ")");
    }
    if (descriptors.size() < 2) {
        throw DataError("build-index: need at least two tiles to fit the reduction");
    }

    bundle.pca = pca_fit(descriptors, s.dim);

    std::vector<LeafEntry> entries;
    entries.reserve(descriptors.size());
    for (std::size_t i = 0; i < descriptors.size(); ++i) {
        entries.push_back({pca_project(bundle.pca, descriptors[i]), refs[i]});
    }
    for (TiledImage& img : bundle.catalog.images) {
        img.tiles.assign(static_cast<std::size_t>(img.rows) * img.cols, FeatureVector());
    }
    for (const LeafEntry& e : entries) {
        TiledImage& img = bundle.catalog.images[e.tile.image_id];
        img.tiles[static_cast<std::size_t>(e.tile.row) * img.cols + e.tile.col] = e.features;
    }

    bundle.tree = str_bulk_load(std::move(entries), s.capacity, s.metric);
    save_index(opts.out, bundle);

    log << "images: " << bundle.catalog.images.size() << " (skipped " << skipped << ")\n"
        << "tiles: " << bundle.tree.entries.size() << "\n"
        << "reduced dim: " << bundle.reduced_dim
        << " energy retained: " << energy_retained(bundle.pca) << "\n"
        << "tree depth: " << bundle.tree.depth() << " nodes: " << bundle.tree.node_count() << "\n"
        << "index written to " << opts.out.string() << "\n";
    return skipped > 0 ? 0 : 0;
}

namespace {

nlohmann::ordered_json header_record(const std::string& algo, const Settings& s,
                                     const IndexBundle& bundle, const QueryOptions& opts) {
    nlohmann::ordered_json j;
    j["type"] = "header";
    j["algo"] = algo;
    j["mode"] = bound_mode_name(s.mode);
    j["k"] = s.k;
    j["lambda"] = s.lambda;
    j["c"] = s.c;
    j["metric"] = metric_name(bundle.metric);
    j["tile_size"] = bundle.tile_size;
    j["reduced_dim"] = bundle.reduced_dim;
    j["index"] = opts.index_path.string();
    auto queries = nlohmann::ordered_json::array();
    for (const auto& p : opts.query_paths) queries.push_back(p.string());
    j["queries"] = std::move(queries);
    return j;
}

}  // namespace

int cmd_query(const QueryOptions& opts, std::ostream& log) {
    Settings s = resolve_settings(opts.overrides);
    if (opts.query_paths.empty()) throw ConfigError("query: at least one --query is required");
    if (opts.algo != "linear" && opts.algo != "tars" && opts.algo != "spars") {
        throw ConfigError("query: unknown algorithm " + opts.algo);
    }

    IndexBundle bundle = load_index(opts.index_path);
    // The index header supplies scoring defaults; flags/config override.
    if (!opts.overrides.lambda && opts.overrides.config_path.empty()) s.lambda = bundle.lambda;
    if (!opts.overrides.c && opts.overrides.config_path.empty()) s.c = bundle.c;
    if (opts.overrides.metric && metric_from_name(*opts.overrides.metric) != bundle.metric) {
        throw ConfigError("query: metric flag conflicts with the index header");
    }
    if (opts.overrides.tile_size && *opts.overrides.tile_size != bundle.tile_size) {
        throw ConfigError("query: tile-size flag conflicts with the index header");
    }
    if (opts.overrides.dim && *opts.overrides.dim != bundle.reduced_dim) {
        throw ConfigError("query: dim flag conflicts with the index header");
    }

    ScoringParams params;
    params.lambda = s.lambda;
    params.c = s.c;

    std::ofstream file_out;
    std::ostream* out = &log;
    if (!opts.out.empty()) {
        file_out = open_out(opts.out);
        out = &file_out;
    }

    *out << header_record(opts.algo, s, bundle, opts).dump() << "\n";

    for (std::size_t qi = 0; qi < opts.query_paths.size(); ++qi) {
        GrayImage pixels = read_pgm(opts.query_paths[qi]);
        QueryImage query = query_from_pixels(bundle, pixels);

        SearchStats stats;
        auto t0 = Clock::now();
        std::vector<RankedMatch> results;
        if (opts.algo == "linear") {
            results = linear_search(query, bundle.catalog, s.k, params, bundle.metric, &stats);
        } else if (opts.algo == "tars") {
            results = tars(query, bundle.tree, bundle.catalog, s.k, params, s.mode, &stats);
        } else {
            results = spars(query, bundle.tree, bundle.catalog, s.k, params, s.mode, &stats);
        }
        const double elapsed = std::chrono::duration<double>(Clock::now() - t0).count();

        for (std::size_t rank = 0; rank < results.size(); ++rank) {
            const RankedMatch& m = results[rank];
            ResultRecord record;
            record.query_id = static_cast<int>(qi);
            record.rank = static_cast<int>(rank + 1);
            record.image_id = m.alignment.image_id;
            record.image_path = bundle.catalog.by_id(m.alignment.image_id).source_path;
            record.drow = m.alignment.drow;
            record.dcol = m.alignment.dcol;
            record.score = m.score;
            record.cells = m.region.cells;
            *out << result_record_line(record) << "\n";
        }

        nlohmann::ordered_json stats_line;
        stats_line["type"] = "stats";
        stats_line["query_id"] = static_cast<int>(qi);
        stats_line["elapsed_seconds"] = elapsed;
        stats_line["nn_seconds"] = stats.nn_seconds;
        stats_line["dp_seconds"] = stats.dp_seconds;
        stats_line["alignments_evaluated"] = stats.alignments_evaluated;
        stats_line["nn_accesses"] = stats.nn_accesses;
        stats_line["cursor_pops"] = stats.cursor_entry_pops;
        stats_line["bq_pops"] = stats.bq_pops;
        stats_line["distance_evals"] = stats.nn_distance_evals;
        *out << stats_line.dump() << "\n";
    }
    return 0;
}

int cmd_gen_synthetic(const GenSyntheticOptions& opts, std::ostream& log) {
    Settings s = resolve_settings(opts.overrides);
    if (opts.out_dir.empty()) throw ConfigError("gen-synthetic: --out is required");
    GroundTruth gt = gen_synthetic(s.synth, opts.out_dir);
    log << "images: " << gt.images.size() << "\n"
        << "queries: " << gt.queries.size() << "\n"
        << "ground truth: " << (opts.out_dir / "ground_truth.json").string() << "\n";
    return 0;
}

int cmd_eval_precision(const EvalPrecisionOptions& opts, std::ostream& log) {
    Settings s = resolve_settings(opts.overrides);
    GroundTruth gt = load_ground_truth(opts.truth_path);
    std::vector<ResultRecord> records = parse_result_records(opts.results_path);
    PrecisionReport report = eval_precision(records, gt, s.k);
    for (const auto& [qid, p] : report.per_query) {
        log << "query " << qid << ": precision@" << s.k << " = " << p << "\n";
    }
    log << "mean precision@" << s.k << " = " << report.precision << "\n";
    return 0;
}

int cmd_bench(const BenchOptions& opts, std::ostream& log) {
    Settings s = resolve_settings(opts.overrides);
    if (opts.query_paths.empty()) throw ConfigError("bench: at least one --query is required");
    for (const std::string& algo : opts.algos) {
        if (algo != "linear" && algo != "tars" && algo != "spars") {
            throw ConfigError("bench: unknown algorithm " + algo);
        }
    }

    IndexBundle bundle = load_index(opts.index_path);
    ScoringParams params;
    params.lambda = opts.overrides.lambda ? *opts.overrides.lambda : bundle.lambda;
    params.c = opts.overrides.c ? *opts.overrides.c : bundle.c;

    std::ofstream file_out;
    std::ostream* out = &log;
    if (!opts.out.empty()) {
        file_out = open_out(opts.out);
        out = &file_out;
    }

    *out << "query_id,query_tiles,algo,mode,k,wall_seconds,nn_seconds,dp_seconds,nn_share,dp_share,"
            "alignments_evaluated,nn_accesses,cursor_pops,bq_pops,distance_evals\n";

    for (std::size_t qi = 0; qi < opts.query_paths.size(); ++qi) {
        GrayImage pixels = read_pgm(opts.query_paths[qi]);
        QueryImage query = query_from_pixels(bundle, pixels);
        for (const std::string& algo : opts.algos) {
            SearchStats stats;
            auto t0 = Clock::now();
            if (algo == "linear") {
                linear_search(query, bundle.catalog, s.k, params, bundle.metric, &stats);
            } else if (algo == "tars") {
                tars(query, bundle.tree, bundle.catalog, s.k, params, s.mode, &stats);
            } else {
                spars(query, bundle.tree, bundle.catalog, s.k, params, s.mode, &stats);
            }
            const double wall = std::chrono::duration<double>(Clock::now() - t0).count();
            const double denom = wall > 0 ? wall : 1.0;
            *out << qi << ',' << query.size() << ',' << algo << ',' << bound_mode_name(s.mode) << ','
                 << s.k << ',' << wall << ',' << stats.nn_seconds << ',' << stats.dp_seconds << ','
                 << stats.nn_seconds / denom << ',' << stats.dp_seconds / denom << ','
                 << stats.alignments_evaluated << ',' << stats.nn_accesses << ','
                 << stats.cursor_entry_pops << ',' << stats.bq_pops << ','
                 << stats.nn_distance_evals << "\n";
        }
    }
    return 0;
}

namespace {

std::vector<std::pair<int, int>> parse_sizes(const std::string& spec) {
    std::vector<std::pair<int, int>> sizes;
    std::string token;
    std::stringstream ss(spec);
    while (std::getline(ss, token, ',')) {
        const auto x = token.find('x');
        if (x == std::string::npos) throw ConfigError("oracle-check: bad size token " + token);
        sizes.push_back({std::stoi(token.substr(0, x)), std::stoi(token.substr(x + 1))});
    }
    if (sizes.empty()) throw ConfigError("oracle-check: no sizes given");
    return sizes;
}

}  // namespace

int cmd_oracle_check(const OracleCheckOptions& opts, std::ostream& log) {
    Settings s = resolve_settings(opts.overrides);
    const std::vector<std::pair<int, int>> sizes = parse_sizes(opts.sizes);
    for (const auto& [r, c] : sizes) {
        if (r * c > 16) throw ConfigError("oracle-check: exact enumeration capped at 16 cells");
    }

    std::mt19937_64 rng(s.seed);
    std::uniform_int_distribution<int> entry(-10, 10);
    int violations = 0;

    // Heuristic soundness and floor against the exhaustive solver.
    std::uint64_t capturable = 0, attained = 0;
    for (int trial = 0; trial < opts.trials; ++trial) {
        const auto [rows, cols] = sizes[static_cast<std::size_t>(trial) % sizes.size()];
        Eigen::MatrixXd m(rows, cols);
        for (int i = 0; i < rows; ++i)
            for (int j = 0; j < cols; ++j) m(i, j) = entry(rng);

        Region dp = dp_max_region(m);
        Region exact = exact_mwcs(m);
        if (dp.score > exact.score + 1e-9) {
            ++violations;
            log << "VIOLATION: heuristic " << dp.score << " exceeds exact " << exact.score << "\n";
        }
        if (dp.score < m.maxCoeff() - 1e-9) {
            ++violations;
            log << "VIOLATION: heuristic " << dp.score << " below best cell " << m.maxCoeff() << "\n";
        }
        if (is_dp_capturable(exact.cells)) {
            ++capturable;
            if (dp.score >= exact.score - 1e-9) ++attained;
        }
    }
    log << "soundness: " << opts.trials << " matrices, " << violations << " violations\n";
    if (capturable > 0) {
        log << "capturable optima: " << capturable << ", attained by the heuristic: " << attained
            << " (" << (100.0 * static_cast<double>(attained) / static_cast<double>(capturable))
            << "%)\n";
    }

    // Built-in pinned instance.
    Eigen::MatrixXd pinned(3, 4);
    pinned << -1, -1, 10, -1,
              -1, 10, 1, 35,
              -1, -1, 40, -90;
    const double exact_score = exact_mwcs(pinned, 12).score;
    const double bl_score = dp_corner_run(pinned, Corner::BottomLeft).score;
    const double four_score = dp_max_region(pinned).score;
    log << "pinned 3x4: exact " << exact_score << " bottom-left " << bl_score << " four-corner "
        << four_score << "\n";
    if (exact_score != 96.0 || bl_score != 61.0 || four_score != 95.0) {
        ++violations;
        log << "VIOLATION: pinned instance mismatch\n";
    }

    // Steiner reduction equivalence on 3x3 grids.
    int trst_failures = 0;
    for (int trial = 0; trial < 50; ++trial) {
        TrstInstance inst;
        inst.grid_size = 3;
        inst.terminal_weight = 100;
        inst.length_budget = 8;
        const int n = 2 + static_cast<int>(rng() % 2);
        std::set<std::pair<int, int>> used;
        while (static_cast<int>(used.size()) < n) {
            used.insert({static_cast<int>(rng() % 3), static_cast<int>(rng() % 3)});
        }
        for (auto [r, c] : used) inst.terminals.push_back({r, c});

        const int lstar = steiner_min_length(inst);
        const double expected = n * inst.terminal_weight - lstar;
        const double got = exact_mwcs(trst_to_mwcs(inst), 25).score;
        if (std::abs(got - expected) > 1e-9) {
            ++trst_failures;
            log << "VIOLATION: steiner instance expected " << expected << " got " << got << "\n";
        }
    }
    log << "steiner reduction: 50 instances, " << trst_failures << " mismatches\n";
    violations += trst_failures;

    log << (violations == 0 ? "oracle-check: all checks passed\n"
                            : "oracle-check: FAILED\n");
    return violations == 0 ? 0 : 3;
}

int run_cli(int argc, const char* const* argv) {
    CLI::App app{"Top-k connected-subregion search over tiled image databases"};
    app.require_subcommand(1);

    CliOverrides ov;
    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--lambda", ov.lambda, "score slope against feature distance");
        sub->add_option("--c", ov.c, "score offset (background threshold)");
        sub->add_option("--tile-size", ov.tile_size, "tile side in pixels");
        sub->add_option("--dim", ov.dim, "reduced feature dimension");
        sub->add_option("--capacity", ov.capacity, "index node capacity");
        sub->add_option("--metric", ov.metric, "distance metric: l2 or l1");
        sub->add_option("--mode", ov.mode, "bound mode: dp or safe");
        sub->add_option("--k", ov.k, "number of results");
        sub->add_option("--seed", ov.seed, "random seed");
        sub->add_option("--config", ov.config_path, "JSON config file");
    };

    BuildIndexOptions build;
    CLI::App* sub_build = app.add_subcommand("build-index", "tile, describe, reduce and pack images");
    sub_build->add_option("--images", build.image_dir, "directory of .pgm images")->required();
    sub_build->add_option("--out", build.out, "output index file")->required();
    add_common(sub_build);

    QueryOptions query;
    CLI::App* sub_query = app.add_subcommand("query", "top-k subregion search");
    sub_query->add_option("--index", query.index_path, "index file")->required();
    sub_query->add_option("--query", query.query_paths, "query image (repeatable)")->required();
    sub_query->add_option("--algo", query.algo, "linear, tars or spars");
    sub_query->add_option("--out", query.out, "output file (default stdout)");
    add_common(sub_query);

    GenSyntheticOptions gen;
    CLI::App* sub_gen = app.add_subcommand("gen-synthetic", "generate a labeled synthetic corpus");
    sub_gen->add_option("--out", gen.out_dir, "output directory")->required();
    add_common(sub_gen);

    EvalPrecisionOptions eval;
    CLI::App* sub_eval = app.add_subcommand("eval-precision", "top-k precision against ground truth");
    sub_eval->add_option("--results", eval.results_path, "query output file")->required();
    sub_eval->add_option("--truth", eval.truth_path, "ground_truth.json")->required();
    add_common(sub_eval);

    BenchOptions bench;
    CLI::App* sub_bench = app.add_subcommand("bench", "timing and counter table");
    sub_bench->add_option("--index", bench.index_path, "index file")->required();
    sub_bench->add_option("--query", bench.query_paths, "query image (repeatable)")->required();
    sub_bench->add_option("--algo", bench.algos, "algorithms to run");
    sub_bench->add_option("--out", bench.out, "output CSV (default stdout)");
    add_common(sub_bench);

    OracleCheckOptions oracle;
    CLI::App* sub_oracle = app.add_subcommand("oracle-check", "heuristic-vs-exact soundness report");
    sub_oracle->add_option("--sizes", oracle.sizes, "matrix sizes, e.g. 2x2,3x4");
    sub_oracle->add_option("--trials", oracle.trials, "number of random matrices");
    add_common(sub_oracle);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    }

    build.overrides = ov;
    query.overrides = ov;
    gen.overrides = ov;
    eval.overrides = ov;
    bench.overrides = ov;
    oracle.overrides = ov;

    try {
        if (sub_build->parsed()) return cmd_build_index(build, std::cout);
        if (sub_query->parsed()) return cmd_query(query, std::cout);
        if (sub_gen->parsed()) return cmd_gen_synthetic(gen, std::cout);
        if (sub_eval->parsed()) return cmd_eval_precision(eval, std::cout);
        if (sub_bench->parsed()) return cmd_bench(bench, std::cout);
        if (sub_oracle->parsed()) return cmd_oracle_check(oracle, std::cout);
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 1;
    } catch (const DataError& e) {
        std::cerr << "data error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 1;
}

}  // namespace subr
