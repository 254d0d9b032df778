#include "wmark/image.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "wmark/error.hpp"

namespace wmark {

namespace {

void check_finite(std::span<const double> values) {
  for (double v : values) {
    if (!std::isfinite(v)) fail(ErrorKind::Internal, "image contains a non-finite pixel");
  }
}

}  // namespace

GrayImage::GrayImage(std::size_t width, std::size_t height, double fill)
    : width_(width), height_(height), pixels_(width * height, fill) {
  if (width == 0 || height == 0) fail(ErrorKind::Geometry, "image dimensions must be positive");
  check_finite(std::span<const double>(&fill, 1));
}

GrayImage::GrayImage(std::size_t width, std::size_t height, std::vector<double> pixels)
    : width_(width), height_(height), pixels_(std::move(pixels)) {
  if (width == 0 || height == 0) fail(ErrorKind::Geometry, "image dimensions must be positive");
  if (pixels_.size() != width * height) {
    fail(ErrorKind::Geometry, "pixel count " + std::to_string(pixels_.size()) + " does not match " +
                                  std::to_string(width) + "x" + std::to_string(height));
  }
  check_finite(pixels_);
}

bool is_power_of_two(std::size_t n) noexcept { return n != 0 && (n & (n - 1)) == 0; }

std::size_t log2_exact(std::size_t n) {
  if (!is_power_of_two(n)) fail(ErrorKind::InvalidArgument, std::to_string(n) + " is not a power of two");
  std::size_t k = 0;
  while ((std::size_t{1} << k) < n) ++k;
  return k;
}

BlockGrid segment_blocks(const GrayImage& img, std::size_t blockSize) {
  if (!is_power_of_two(blockSize)) {
    fail(ErrorKind::InvalidArgument, "block size " + std::to_string(blockSize) + " is not a power of two");
  }
  if (img.width() % blockSize != 0) {
    fail(ErrorKind::Geometry, "width " + std::to_string(img.width()) + " is not divisible by block size " +
                                  std::to_string(blockSize));
  }
  if (img.height() % blockSize != 0) {
    fail(ErrorKind::Geometry, "height " + std::to_string(img.height()) + " is not divisible by block size " +
                                  std::to_string(blockSize));
  }

  BlockGrid grid;
  grid.blockSize = blockSize;
  grid.rows = img.height() / blockSize;
  grid.cols = img.width() / blockSize;
  grid.blocks.reserve(grid.rows * grid.cols);
  for (std::size_t br = 0; br < grid.rows; ++br) {
    for (std::size_t bc = 0; bc < grid.cols; ++bc) {
      Matrix block(blockSize, blockSize);
      for (std::size_t y = 0; y < blockSize; ++y) {
        for (std::size_t x = 0; x < blockSize; ++x) {
          block(y, x) = img.at(bc * blockSize + x, br * blockSize + y);
        }
      }
      grid.blocks.push_back(std::move(block));
    }
  }
  return grid;
}

void write_block(GrayImage& img, const BlockGrid& grid, std::size_t index) {
  const std::size_t b = grid.blockSize;
  const std::size_t br = index / grid.cols;
  const std::size_t bc = index % grid.cols;
  const Matrix& block = grid.blocks.at(index);
  for (std::size_t y = 0; y < b; ++y) {
    for (std::size_t x = 0; x < b; ++x) img.at(bc * b + x, br * b + y) = block(y, x);
  }
}

GrayImage assemble_blocks(const BlockGrid& grid) {
  const std::size_t b = grid.blockSize;
  if (b == 0 || grid.rows == 0 || grid.cols == 0 || grid.blocks.size() != grid.rows * grid.cols) {
    fail(ErrorKind::Geometry, "malformed block grid");
  }
  for (const Matrix& block : grid.blocks) {
    if (block.rows() != b || block.cols() != b) fail(ErrorKind::Geometry, "malformed block grid");
  }
  GrayImage img(grid.cols * b, grid.rows * b);
  for (std::size_t i = 0; i < grid.blocks.size(); ++i) write_block(img, grid, i);
  return img;
}

std::uint8_t quantize_sample(double v) noexcept {
  // std::round is half-away-from-zero.
  const double r = std::round(v);
  return static_cast<std::uint8_t>(std::clamp(r, 0.0, 255.0));
}

PixelBuffer8 quantize_to_8bit(const GrayImage& img) {
  PixelBuffer8 out{img.width(), img.height(), {}};
  out.samples.reserve(img.size());
  for (double v : img.pixels()) out.samples.push_back(quantize_sample(v));
  return out;
}

GrayImage to_gray(const PixelBuffer8& buf) {
  if (buf.samples.size() != buf.width * buf.height) fail(ErrorKind::Geometry, "malformed 8-bit buffer");
  return GrayImage(buf.width, buf.height, std::vector<double>(buf.samples.begin(), buf.samples.end()));
}

GrayImage requantize(const GrayImage& img) { return to_gray(quantize_to_8bit(img)); }

double block_variance(const Matrix& block) {
  if (block.empty()) fail(ErrorKind::InvalidArgument, "variance of an empty block");
  const auto values = block.values();
  const double n = static_cast<double>(values.size());
  double mean = 0.0;
  for (double v : values) mean += v;
  mean /= n;
  double acc = 0.0;
  for (double v : values) acc += (v - mean) * (v - mean);
  return acc / n;
}

}  // namespace wmark
