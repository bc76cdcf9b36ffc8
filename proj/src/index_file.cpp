#include "subr/index_file.hpp"

#include <cstring>
#include <fstream>

namespace subr {

namespace {

constexpr char kMagic[8] = {'S', 'U', 'B', 'R', 'S', 'R', 'C', 'H'};

template <typename T>
void put(std::ostream& out, T value) {
    static_assert(std::is_trivially_copyable_v<T>);
    out.write(reinterpret_cast<const char*>(&value), sizeof(T));
}

template <typename T>
T get(std::istream& in) {
    T value{};
    in.read(reinterpret_cast<char*>(&value), sizeof(T));
    if (!in) throw DataError("index file: truncated");
    return value;
}

void put_vector(std::ostream& out, const Eigen::VectorXd& v) {
    out.write(reinterpret_cast<const char*>(v.data()), static_cast<std::streamsize>(v.size() * sizeof(double)));
}

Eigen::VectorXd get_vector(std::istream& in, Eigen::Index n) {
    Eigen::VectorXd v(n);
    in.read(reinterpret_cast<char*>(v.data()), static_cast<std::streamsize>(n * sizeof(double)));
    if (!in) throw DataError("index file: truncated vector");
    return v;
}

void put_string(std::ostream& out, const std::string& s) {
    put<std::uint32_t>(out, static_cast<std::uint32_t>(s.size()));
    out.write(s.data(), static_cast<std::streamsize>(s.size()));
}

std::string get_string(std::istream& in) {
    auto len = get<std::uint32_t>(in);
    std::string s(len, '\0');
    in.read(s.data(), len);
    if (!in) throw DataError("index file: truncated string");
    return s;
}

void put_node(std::ostream& out, const IndexNode& node) {
    put<std::uint32_t>(out, node.node_id);
    put<std::uint8_t>(out, node.is_leaf() ? 1 : 0);
    put_vector(out, node.lo);
    put_vector(out, node.hi);
    if (node.is_leaf()) {
        put<std::uint32_t>(out, static_cast<std::uint32_t>(node.entries.size()));
        for (std::uint32_t id : node.entries) put<std::uint32_t>(out, id);
    } else {
        put<std::uint32_t>(out, static_cast<std::uint32_t>(node.children.size()));
        for (const auto& child : node.children) put_node(out, *child);
    }
}

std::unique_ptr<IndexNode> get_node(std::istream& in, int dim, std::size_t entry_count, int depth) {
    if (depth > 64) throw DataError("index file: tree too deep");
    auto node = std::make_unique<IndexNode>();
    node->node_id = get<std::uint32_t>(in);
    const bool leaf = get<std::uint8_t>(in) != 0;
    node->lo = get_vector(in, dim);
    node->hi = get_vector(in, dim);
    auto count = get<std::uint32_t>(in);
    if (leaf) {
        node->entries.reserve(count);
        for (std::uint32_t i = 0; i < count; ++i) {
            auto id = get<std::uint32_t>(in);
            if (id >= entry_count) throw DataError("index file: entry id out of range");
            node->entries.push_back(id);
        }
    } else {
        for (std::uint32_t i = 0; i < count; ++i) {
            node->children.push_back(get_node(in, dim, entry_count, depth + 1));
        }
    }
    return node;
}

}  // namespace

void save_index(const std::filesystem::path& path, const IndexBundle& bundle) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw DataError("cannot write " + path.string());

    std::uint64_t tile_count = bundle.tree.entries.size();

    out.write(kMagic, sizeof(kMagic));
    put<std::uint32_t>(out, bundle.version);
    put<std::uint32_t>(out, bundle.metric == Metric::L2 ? 0 : 1);
    put<std::uint32_t>(out, static_cast<std::uint32_t>(bundle.tile_size));
    put<std::uint32_t>(out, static_cast<std::uint32_t>(bundle.raw_dim));
    put<std::uint32_t>(out, static_cast<std::uint32_t>(bundle.reduced_dim));
    put<double>(out, bundle.lambda);
    put<double>(out, bundle.c);
    put<std::uint32_t>(out, static_cast<std::uint32_t>(bundle.catalog.images.size()));
    put<std::uint64_t>(out, tile_count);
    put<std::uint32_t>(out, static_cast<std::uint32_t>(bundle.leaf_capacity));

    put_vector(out, bundle.pca.mean);
    put<std::uint32_t>(out, static_cast<std::uint32_t>(bundle.pca.output_dim()));
    for (int r = 0; r < bundle.pca.output_dim(); ++r) {
        put_vector(out, bundle.pca.components.row(r).transpose());
    }
    put_vector(out, bundle.pca.eigenvalues);

    for (const TiledImage& img : bundle.catalog.images) {
        put<std::uint32_t>(out, img.image_id);
        put_string(out, img.source_path);
        put<std::uint32_t>(out, static_cast<std::uint32_t>(img.rows));
        put<std::uint32_t>(out, static_cast<std::uint32_t>(img.cols));
        for (double bg : img.tile_bg) put<double>(out, bg);
    }

    for (const LeafEntry& e : bundle.tree.entries) {
        put<std::uint32_t>(out, e.tile.image_id);
        put<std::int32_t>(out, e.tile.row);
        put<std::int32_t>(out, e.tile.col);
        put_vector(out, e.features);
    }

    put_node(out, *bundle.tree.root);
    if (!out) throw DataError("write failed: " + path.string());
}

IndexBundle load_index(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DataError("cannot open " + path.string());

    char magic[8];
    in.read(magic, sizeof(magic));
    if (!in || std::memcmp(magic, kMagic, sizeof(kMagic)) != 0) {
        throw DataError(path.string() + ": not an index file");
    }

    IndexBundle bundle;
    bundle.version = get<std::uint32_t>(in);
    if (bundle.version != 1) {
        throw DataError(path.string() + ": unsupported index version " + std::to_string(bundle.version));
    }
    bundle.metric = get<std::uint32_t>(in) == 0 ? Metric::L2 : Metric::L1;
    bundle.tile_size = static_cast<int>(get<std::uint32_t>(in));
    bundle.raw_dim = static_cast<int>(get<std::uint32_t>(in));
    bundle.reduced_dim = static_cast<int>(get<std::uint32_t>(in));
    bundle.lambda = get<double>(in);
    bundle.c = get<double>(in);
    const auto image_count = get<std::uint32_t>(in);
    const auto tile_count = get<std::uint64_t>(in);
    bundle.leaf_capacity = static_cast<int>(get<std::uint32_t>(in));

    bundle.pca.mean = get_vector(in, bundle.raw_dim);
    const auto pca_out = get<std::uint32_t>(in);
    bundle.pca.components.resize(pca_out, bundle.raw_dim);
    for (std::uint32_t r = 0; r < pca_out; ++r) {
        bundle.pca.components.row(r) = get_vector(in, bundle.raw_dim).transpose();
    }
    bundle.pca.eigenvalues = get_vector(in, bundle.raw_dim);

    for (std::uint32_t i = 0; i < image_count; ++i) {
        TiledImage img;
        img.image_id = get<std::uint32_t>(in);
        img.source_path = get_string(in);
        img.rows = static_cast<int>(get<std::uint32_t>(in));
        img.cols = static_cast<int>(get<std::uint32_t>(in));
        if (img.rows < 1 || img.cols < 1) throw DataError(path.string() + ": bad image grid");
        const std::size_t tiles = static_cast<std::size_t>(img.rows) * img.cols;
        img.tile_bg.reserve(tiles);
        for (std::size_t t = 0; t < tiles; ++t) img.tile_bg.push_back(get<double>(in));
        img.tiles.assign(tiles, FeatureVector());
        bundle.catalog.images.push_back(std::move(img));
    }

    bundle.tree.metric = bundle.metric;
    bundle.tree.capacity = bundle.leaf_capacity;
    bundle.tree.entries.reserve(tile_count);
    for (std::uint64_t i = 0; i < tile_count; ++i) {
        LeafEntry e;
        e.tile.image_id = get<std::uint32_t>(in);
        e.tile.row = static_cast<int>(get<std::int32_t>(in));
        e.tile.col = static_cast<int>(get<std::int32_t>(in));
        e.features = get_vector(in, bundle.reduced_dim);
        bundle.tree.entries.push_back(std::move(e));
    }

    // The image grids hold the same reduced vectors, rebuilt via back-pointers.
    for (const LeafEntry& e : bundle.tree.entries) {
        if (e.tile.image_id >= bundle.catalog.images.size()) {
            throw DataError(path.string() + ": leaf entry references unknown image");
        }
        TiledImage& img = bundle.catalog.images[e.tile.image_id];
        if (e.tile.row < 0 || e.tile.row >= img.rows || e.tile.col < 0 || e.tile.col >= img.cols) {
            throw DataError(path.string() + ": leaf entry outside image grid");
        }
        img.tiles[static_cast<std::size_t>(e.tile.row) * img.cols + e.tile.col] = e.features;
    }
    for (const TiledImage& img : bundle.catalog.images) {
        for (const FeatureVector& t : img.tiles) {
            if (t.size() == 0) throw DataError(path.string() + ": image grid not fully covered by entries");
        }
    }

    bundle.tree.root = get_node(in, bundle.reduced_dim, bundle.tree.entries.size(), 0);
    return bundle;
}

}  // namespace subr
