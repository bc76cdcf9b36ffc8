#pragma once

#include "subr/types.hpp"

#include <filesystem>
#include <string>
#include <vector>

namespace subr {

/// One region-of-interest drawn into a generated image. Occlusion is the
/// measured fraction of the sprite's pixels overwritten by its occluder.
struct SpritePlacement {
    std::string label;
    int x = 0, y = 0, w = 0, h = 0;  // pixel bounding box in the canvas
    double occlusion = 0.0;
};

struct SynthImage {
    int id = 0;
    std::string path;
    int background = 0;
    std::vector<SpritePlacement> placements;
};

struct SynthQuery {
    int id = 0;
    std::string path;
    std::vector<std::string> labels;
    std::vector<std::pair<int, std::string>> true_matches;  // (image id, label)
};

struct GroundTruth {
    int tile_size = 32;
    std::vector<SynthImage> images;
    std::vector<SynthQuery> queries;
};

/// Corpus recipe. Sprite/occlusion/background combinations are assigned on a
/// deterministic grid so every sprite gets clean and occluded placements;
/// positions come from the seeded generator, snapped to 8 pixels.
struct SynthSpec {
    std::uint64_t seed = 1;
    int images = 50;
    int canvas_w = 192;
    int canvas_h = 192;
    std::vector<std::string> sprites = {"disk", "rings", "stripes", "checker", "cross"};
    std::vector<int> backgrounds = {0, 128};
    std::vector<double> occlusions = {0.0, 0.25, 0.5};
    int queries = 10;
    int composition_images = 6;  // extra images carrying the fixed two-sprite pair
};

/// Deterministic sprite raster: nonzero pixels form the shape.
GrayImage sprite_raster(const std::string& name, int size = 64);

/// Writes images/img_NNN.pgm, queries/query_NN.pgm and ground_truth.json
/// under out_dir; returns the ground truth that was written.
GroundTruth gen_synthetic(const SynthSpec& spec, const std::filesystem::path& out_dir);

void save_ground_truth(const std::filesystem::path& path, const GroundTruth& gt);
GroundTruth load_ground_truth(const std::filesystem::path& path);

}  // namespace subr
