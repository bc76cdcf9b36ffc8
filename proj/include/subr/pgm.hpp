#pragma once

#include "subr/types.hpp"

#include <filesystem>

namespace subr {

/// Reads a binary "P5" 8-bit grayscale PGM. Throws DataError on anything else.
GrayImage read_pgm(const std::filesystem::path& path);

/// Writes a binary "P5" 8-bit grayscale PGM.
void write_pgm(const std::filesystem::path& path, const GrayImage& image);

}  // namespace subr
