#pragma once

#include <filesystem>
#include <string>

#include "wmark/image.hpp"

namespace wmark {

/// Binary P5 PGM with maxval 255. Header comments are skipped.
PixelBuffer8 load_pgm(const std::filesystem::path& path);
PixelBuffer8 parse_pgm(const std::string& bytes);

/// Writes "P5\n<w> <h>\n255\n" followed by the samples.
void save_pgm(const PixelBuffer8& buf, const std::filesystem::path& path);
std::string encode_pgm(const PixelBuffer8& buf);

}  // namespace wmark
