#include "subr/synthetic.hpp"

#include "subr/pgm.hpp"

#include <json.hpp>

#include <cmath>
#include <fstream>
#include <random>

namespace subr {

namespace {

using nlohmann::ordered_json;

// Snap a coordinate down to the placement grid (window-aligned shifts keep
// descriptors of shifted content close).
int snap8(int v) { return v - (v % 8); }

void draw_sprite(GrayImage& canvas, const GrayImage& sprite, int x, int y) {
    for (Eigen::Index r = 0; r < sprite.rows(); ++r) {
        for (Eigen::Index c = 0; c < sprite.cols(); ++c) {
            if (sprite(r, c) == 0) continue;
            const Eigen::Index cy = y + r;
            const Eigen::Index cx = x + c;
            if (cy >= 0 && cy < canvas.rows() && cx >= 0 && cx < canvas.cols()) {
                canvas(cy, cx) = sprite(r, c);
            }
        }
    }
}

// Fraction of the sprite's nonzero pixels whose canvas value no longer
// matches what the sprite painted there.
double measure_occlusion(const GrayImage& canvas, const GrayImage& sprite, int x, int y) {
    long total = 0, covered = 0;
    for (Eigen::Index r = 0; r < sprite.rows(); ++r) {
        for (Eigen::Index c = 0; c < sprite.cols(); ++c) {
            if (sprite(r, c) == 0) continue;
            ++total;
            if (canvas(y + r, x + c) != sprite(r, c)) ++covered;
        }
    }
    return total == 0 ? 0.0 : static_cast<double>(covered) / static_cast<double>(total);
}

}  // namespace

GrayImage sprite_raster(const std::string& name, int size) {
    GrayImage img = GrayImage::Zero(size, size);
    const double mid = (size - 1) / 2.0;
    auto radius = [&](int r, int c) {
        const double dy = r - mid, dx = c - mid;
        return std::sqrt(dy * dy + dx * dx);
    };

    if (name == "disk") {
        for (int r = 0; r < size; ++r)
            for (int c = 0; c < size; ++c) {
                double d = radius(r, c);
                if (d < size * 0.45) {
                    img(r, c) = static_cast<std::uint8_t>(240 - 120.0 * d / (size * 0.45));
                }
            }
    } else if (name == "rings") {
        for (int r = 0; r < size; ++r)
            for (int c = 0; c < size; ++c) {
                double d = radius(r, c);
                if (d < size * 0.48) {
                    img(r, c) = (static_cast<int>(d / 6.0) % 2 == 0) ? 215 : 90;
                }
            }
    } else if (name == "stripes") {
        for (int r = 0; r < size; ++r)
            for (int c = 0; c < size; ++c) {
                img(r, c) = ((r + c) / 6 % 2 == 0) ? 200 : 70;
            }
    } else if (name == "checker") {
        for (int r = 0; r < size; ++r)
            for (int c = 0; c < size; ++c) {
                img(r, c) = ((r / 8 + c / 8) % 2 == 0) ? 230 : 120;
            }
    } else if (name == "cross") {
        const int arm = size / 3;
        for (int r = 0; r < size; ++r)
            for (int c = 0; c < size; ++c) {
                bool in_v = c >= arm && c < size - arm;
                bool in_h = r >= arm && r < size - arm;
                if (in_v || in_h) {
                    img(r, c) = static_cast<std::uint8_t>(190 + ((r / 4 + c / 4) % 2) * 40);
                }
            }
    } else {
        throw ConfigError("unknown sprite: " + name);
    }
    return img;
}

GroundTruth gen_synthetic(const SynthSpec& spec, const std::filesystem::path& out_dir) {
    if (spec.sprites.empty() || spec.images < 1) {
        throw ConfigError("gen_synthetic: need at least one sprite and one image");
    }
    const int sprite_size = 64;
    if (sprite_size > spec.canvas_w || sprite_size > spec.canvas_h) {
        throw ConfigError("gen_synthetic: sprite larger than canvas");
    }

    std::filesystem::create_directories(out_dir / "images");
    std::filesystem::create_directories(out_dir / "queries");

    std::mt19937_64 rng(spec.seed);
    const int num_sprites = static_cast<int>(spec.sprites.size());

    std::vector<GrayImage> rasters;
    for (const std::string& name : spec.sprites) rasters.push_back(sprite_raster(name, sprite_size));

    GroundTruth gt;
    std::vector<GrayImage> canvases;

    auto rand_pos = [&](int extent, int canvas_extent) {
        std::uniform_int_distribution<int> d(0, canvas_extent - extent);
        return snap8(d(rng));
    };

    const int total_images = spec.images + spec.composition_images;
    for (int i = 0; i < total_images; ++i) {
        SynthImage info;
        info.id = i;
        const bool composition = i >= spec.images;

        // Deterministic grid over (sprite, occlusion, background) so every
        // sprite sees every condition; compositions stay clean on black.
        const int sprite_idx = i % num_sprites;
        const double occ_target =
            composition ? 0.0 : spec.occlusions[(i / num_sprites) % spec.occlusions.size()];
        info.background = composition
                              ? 0
                              : spec.backgrounds[(i / (num_sprites * static_cast<int>(spec.occlusions.size()))) %
                                                 spec.backgrounds.size()];

        GrayImage canvas = GrayImage::Constant(spec.canvas_h, spec.canvas_w,
                                               static_cast<std::uint8_t>(info.background));

        if (!composition) {
            const int x = rand_pos(sprite_size, spec.canvas_w);
            const int y = rand_pos(sprite_size, spec.canvas_h);
            draw_sprite(canvas, rasters[sprite_idx], x, y);

            SpritePlacement placement{spec.sprites[sprite_idx], x, y, sprite_size, sprite_size, 0.0};
            if (occ_target > 0.0) {
                const int occluder_idx = (sprite_idx + 1 + static_cast<int>(rng() % (num_sprites - 1))) % num_sprites;
                // Slide the occluder in from the right so the bbox overlap
                // approximates the target fraction.
                const int shift = static_cast<int>(sprite_size * (1.0 - occ_target));
                const int ox = std::min(x + shift, spec.canvas_w - sprite_size);
                const int oy = y;
                draw_sprite(canvas, rasters[occluder_idx], ox, oy);
                placement.occlusion = measure_occlusion(canvas, rasters[sprite_idx], x, y);
                info.placements.push_back(placement);
                info.placements.push_back(
                    {spec.sprites[occluder_idx], ox, oy, sprite_size, sprite_size, 0.0});
            } else {
                info.placements.push_back(placement);
            }
        } else {
            // Fixed two-sprite composition: sprites 0 and 1 with an 8px gap.
            const int pair_w = 2 * sprite_size + 8;
            const int x = rand_pos(pair_w, spec.canvas_w);
            const int y = rand_pos(sprite_size, spec.canvas_h);
            draw_sprite(canvas, rasters[0], x, y);
            draw_sprite(canvas, rasters[1], x + sprite_size + 8, y);
            info.placements.push_back({spec.sprites[0], x, y, sprite_size, sprite_size, 0.0});
            info.placements.push_back(
                {spec.sprites[1], x + sprite_size + 8, y, sprite_size, sprite_size, 0.0});
            info.placements.push_back({spec.sprites[0] + "+" + spec.sprites[1], x, y, pair_w,
                                       sprite_size, 0.0});
        }

        char name[32];
        std::snprintf(name, sizeof(name), "images/img_%03d.pgm", i);
        info.path = name;
        write_pgm(out_dir / info.path, canvas);
        canvases.push_back(std::move(canvas));
        gt.images.push_back(std::move(info));
    }

    // Queries: tile-aligned crops of clean black-background placements, plus
    // one crop of the composition when present.
    auto crop_query = [&](const GrayImage& canvas, int x, int y, int w, int h) {
        const int ts = gt.tile_size;
        const int x0 = (x / ts) * ts;
        const int y0 = (y / ts) * ts;
        const int x1 = std::min<int>(((x + w + ts - 1) / ts) * ts, static_cast<int>(canvas.cols()));
        const int y1 = std::min<int>(((y + h + ts - 1) / ts) * ts, static_cast<int>(canvas.rows()));
        return GrayImage(canvas.block(y0, x0, y1 - y0, x1 - x0));
    };

    std::vector<int> clean_black(num_sprites, -1);
    for (const SynthImage& img : gt.images) {
        if (img.id >= spec.images) continue;
        if (img.background != 0 || img.placements.size() != 1) continue;
        const SpritePlacement& p = img.placements.front();
        for (int s = 0; s < num_sprites; ++s) {
            if (p.label == spec.sprites[s] && clean_black[s] < 0) clean_black[s] = img.id;
        }
    }

    for (int qid = 0; qid < spec.queries; ++qid) {
        SynthQuery query;
        query.id = qid;
        const bool composition_query = (qid == spec.queries - 1) && spec.composition_images > 0;
        GrayImage crop;
        if (composition_query) {
            const SynthImage& src = gt.images[static_cast<std::size_t>(spec.images)];
            const SpritePlacement& p = src.placements.back();  // the pair bbox
            crop = crop_query(canvases[static_cast<std::size_t>(src.id)], p.x, p.y, p.w, p.h);
            query.labels.push_back(p.label);
        } else {
            const int s = qid % num_sprites;
            if (clean_black[s] < 0) {
                throw DataError("gen_synthetic: no clean black-background placement for sprite " +
                                spec.sprites[static_cast<std::size_t>(s)]);
            }
            const SynthImage& src = gt.images[static_cast<std::size_t>(clean_black[s])];
            const SpritePlacement& p = src.placements.front();
            crop = crop_query(canvases[static_cast<std::size_t>(src.id)], p.x, p.y, p.w, p.h);
            query.labels.push_back(p.label);
        }

        for (const SynthImage& img : gt.images) {
            for (const SpritePlacement& p : img.placements) {
                for (const std::string& label : query.labels) {
                    if (p.label == label) query.true_matches.push_back({img.id, label});
                }
            }
        }

        char name[32];
        std::snprintf(name, sizeof(name), "queries/query_%02d.pgm", qid);
        query.path = name;
        write_pgm(out_dir / query.path, crop);
        gt.queries.push_back(std::move(query));
    }

    save_ground_truth(out_dir / "ground_truth.json", gt);
    return gt;
}

void save_ground_truth(const std::filesystem::path& path, const GroundTruth& gt) {
    ordered_json j;
    j["tile_size"] = gt.tile_size;
    j["images"] = ordered_json::array();
    for (const SynthImage& img : gt.images) {
        ordered_json ji;
        ji["id"] = img.id;
        ji["path"] = img.path;
        ji["background"] = img.background;
        ji["placements"] = ordered_json::array();
        for (const SpritePlacement& p : img.placements) {
            ji["placements"].push_back({{"label", p.label},
                                        {"x", p.x},
                                        {"y", p.y},
                                        {"w", p.w},
                                        {"h", p.h},
                                        {"occlusion", p.occlusion}});
        }
        j["images"].push_back(std::move(ji));
    }
    j["queries"] = ordered_json::array();
    for (const SynthQuery& q : gt.queries) {
        ordered_json jq;
        jq["id"] = q.id;
        jq["path"] = q.path;
        jq["labels"] = q.labels;
        jq["true_matches"] = ordered_json::array();
        for (const auto& [image_id, label] : q.true_matches) {
            jq["true_matches"].push_back({{"image_id", image_id}, {"label", label}});
        }
        j["queries"].push_back(std::move(jq));
    }

    std::ofstream out(path);
    if (!out) throw DataError("cannot write " + path.string());
    out << j.dump(2) << "\n";
}

GroundTruth load_ground_truth(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open " + path.string());
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw DataError(path.string() + ": " + e.what());
    }

    GroundTruth gt;
    try {
        gt.tile_size = j.at("tile_size").get<int>();
        for (const auto& ji : j.at("images")) {
            SynthImage img;
            img.id = ji.at("id").get<int>();
            img.path = ji.at("path").get<std::string>();
            img.background = ji.value("background", 0);
            for (const auto& jp : ji.at("placements")) {
                SpritePlacement p;
                p.label = jp.at("label").get<std::string>();
                p.x = jp.at("x").get<int>();
                p.y = jp.at("y").get<int>();
                p.w = jp.at("w").get<int>();
                p.h = jp.at("h").get<int>();
                p.occlusion = jp.value("occlusion", 0.0);
                img.placements.push_back(std::move(p));
            }
            gt.images.push_back(std::move(img));
        }
        for (const auto& jq : j.at("queries")) {
            SynthQuery q;
            q.id = jq.at("id").get<int>();
            q.path = jq.at("path").get<std::string>();
            for (const auto& l : jq.at("labels")) q.labels.push_back(l.get<std::string>());
            for (const auto& m : jq.at("true_matches")) {
                q.true_matches.push_back({m.at("image_id").get<int>(), m.at("label").get<std::string>()});
            }
            gt.queries.push_back(std::move(q));
        }
    } catch (const nlohmann::json::exception& e) {
        throw DataError(path.string() + ": " + e.what());
    }
    return gt;
}

}  // namespace subr
