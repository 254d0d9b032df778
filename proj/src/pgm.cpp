#include "wmark/pgm.hpp"

#include <cctype>
#include <fstream>
#include <iterator>

#include "wmark/error.hpp"

namespace wmark {

namespace {

class HeaderReader {
 public:
  explicit HeaderReader(const std::string& bytes) : bytes_(bytes) {}

  // Next whitespace-delimited token, skipping '#' comments.
  std::string token() {
    for (;;) {
      while (pos_ < bytes_.size() && std::isspace(static_cast<unsigned char>(bytes_[pos_]))) ++pos_;
      if (pos_ < bytes_.size() && bytes_[pos_] == '#') {
        while (pos_ < bytes_.size() && bytes_[pos_] != '\n') ++pos_;
        continue;
      }
      break;
    }
    const std::size_t start = pos_;
    while (pos_ < bytes_.size() && !std::isspace(static_cast<unsigned char>(bytes_[pos_]))) ++pos_;
    if (start == pos_) fail(ErrorKind::Format, "truncated PGM header");
    return bytes_.substr(start, pos_ - start);
  }

  std::size_t number(const char* what) {
    const std::string t = token();
    std::size_t value = 0;
    for (char ch : t) {
      if (!std::isdigit(static_cast<unsigned char>(ch))) fail(ErrorKind::Format, std::string("bad PGM ") + what);
      value = value * 10 + static_cast<std::size_t>(ch - '0');
      if (value > (std::size_t{1} << 32)) fail(ErrorKind::Format, std::string("PGM ") + what + " too large");
    }
    return value;
  }

  // Exactly one whitespace byte separates maxval from the raster.
  std::size_t raster_offset() {
    if (pos_ >= bytes_.size() || !std::isspace(static_cast<unsigned char>(bytes_[pos_]))) {
      fail(ErrorKind::Format, "truncated PGM header");
    }
    return pos_ + 1;
  }

 private:
  const std::string& bytes_;
  std::size_t pos_ = 0;
};

}  // namespace

PixelBuffer8 parse_pgm(const std::string& bytes) {
  HeaderReader reader(bytes);
  const std::string magic = reader.token();
  if (magic != "P5") {
    if (magic.size() == 2 && magic[0] == 'P') fail(ErrorKind::Format, "unsupported format " + magic);
    fail(ErrorKind::Format, "not a PGM file");
  }
  const std::size_t width = reader.number("width");
  const std::size_t height = reader.number("height");
  const std::size_t maxval = reader.number("maxval");
  if (width == 0 || height == 0) fail(ErrorKind::Format, "PGM dimensions must be positive");
  if (maxval != 255) fail(ErrorKind::Format, "unsupported maxval " + std::to_string(maxval) + " (need 255)");
  const std::size_t offset = reader.raster_offset();
  const std::size_t count = width * height;
  if (bytes.size() < offset + count) {
    fail(ErrorKind::Format, "truncated PGM payload: expected " + std::to_string(count) + " samples, found " +
                                std::to_string(bytes.size() > offset ? bytes.size() - offset : 0));
  }
  PixelBuffer8 buf{width, height, {}};
  buf.samples.assign(bytes.begin() + static_cast<std::ptrdiff_t>(offset),
                     bytes.begin() + static_cast<std::ptrdiff_t>(offset + count));
  return buf;
}

PixelBuffer8 load_pgm(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorKind::Io, "cannot open " + path.string());
  const std::string bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  try {
    return parse_pgm(bytes);
  } catch (const Error& e) {
    fail(e.kind(), path.string() + ": " + e.what());
  }
}

std::string encode_pgm(const PixelBuffer8& buf) {
  if (buf.width == 0 || buf.height == 0 || buf.samples.size() != buf.width * buf.height) {
    fail(ErrorKind::Geometry, "malformed 8-bit buffer");
  }
  std::string out = "P5\n" + std::to_string(buf.width) + " " + std::to_string(buf.height) + "\n255\n";
  out.append(buf.samples.begin(), buf.samples.end());
  return out;
}

void save_pgm(const PixelBuffer8& buf, const std::filesystem::path& path) {
  const std::string bytes = encode_pgm(buf);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) fail(ErrorKind::Io, "cannot write " + path.string());
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  if (!out) fail(ErrorKind::Io, "write failed for " + path.string());
}

}  // namespace wmark
