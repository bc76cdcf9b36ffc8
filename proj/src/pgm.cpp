#include "subr/pgm.hpp"

#include <fstream>
#include <string>

namespace subr {

namespace {

// Next whitespace-delimited token, skipping '#' comment lines.
std::string next_token(std::istream& in) {
    std::string tok;
    int ch;
    while ((ch = in.get()) != EOF) {
        if (ch == '#') {
            while ((ch = in.get()) != EOF && ch != '\n') {
            }
            continue;
        }
        if (std::isspace(ch)) {
            if (!tok.empty()) return tok;
            continue;
        }
        tok.push_back(static_cast<char>(ch));
    }
    return tok;
}

}  // namespace

GrayImage read_pgm(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw DataError("cannot open " + path.string());
    }
    if (next_token(in) != "P5") {
        throw DataError(path.string() + ": not a binary P5 PGM");
    }
    long width = 0, height = 0, maxval = 0;
    try {
        width = std::stol(next_token(in));
        height = std::stol(next_token(in));
        maxval = std::stol(next_token(in));
    } catch (const std::exception&) {
        throw DataError(path.string() + ": malformed PGM header");
    }
    if (width <= 0 || height <= 0) {
        throw DataError(path.string() + ": bad PGM dimensions");
    }
    if (maxval != 255) {
        throw DataError(path.string() + ": only 8-bit PGM supported");
    }
    GrayImage img(height, width);
    in.read(reinterpret_cast<char*>(img.data()), static_cast<std::streamsize>(width) * height);
    if (in.gcount() != static_cast<std::streamsize>(width) * height) {
        throw DataError(path.string() + ": truncated pixel data");
    }
    return img;
}

void write_pgm(const std::filesystem::path& path, const GrayImage& image) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw DataError("cannot write " + path.string());
    }
    out << "P5\n" << image.cols() << " " << image.rows() << "\n255\n";
    out.write(reinterpret_cast<const char*>(image.data()),
              static_cast<std::streamsize>(image.size()));
    if (!out) {
        throw DataError("write failed: " + path.string());
    }
}

}  // namespace subr
