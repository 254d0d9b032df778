#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace wmark {

/// Dense row-major real matrix. Used for blocks and subbands.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, double fill = 0.0)
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  std::size_t size() const noexcept { return data_.size(); }
  bool empty() const noexcept { return data_.empty(); }

  double& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  double operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  std::span<double> values() noexcept { return data_; }
  std::span<const double> values() const noexcept { return data_; }

  bool operator==(const Matrix&) const = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

/// Real-valued grayscale raster. Nominal range is 0..255 but intermediate
/// values outside it are allowed; every value must be finite.
class GrayImage {
 public:
  GrayImage() = default;
  GrayImage(std::size_t width, std::size_t height, double fill = 0.0);
  GrayImage(std::size_t width, std::size_t height, std::vector<double> pixels);

  std::size_t width() const noexcept { return width_; }
  std::size_t height() const noexcept { return height_; }
  std::size_t size() const noexcept { return pixels_.size(); }

  double& at(std::size_t x, std::size_t y) { return pixels_[y * width_ + x]; }
  double at(std::size_t x, std::size_t y) const { return pixels_[y * width_ + x]; }

  std::span<double> pixels() noexcept { return pixels_; }
  std::span<const double> pixels() const noexcept { return pixels_; }

  bool operator==(const GrayImage&) const = default;

 private:
  std::size_t width_ = 0;
  std::size_t height_ = 0;
  std::vector<double> pixels_;
};

/// 8-bit storage form of an image.
struct PixelBuffer8 {
  std::size_t width = 0;
  std::size_t height = 0;
  std::vector<std::uint8_t> samples;

  bool operator==(const PixelBuffer8&) const = default;
};

/// Non-overlapping square tiling of an image. blocks[r * cols + c] covers
/// rows [r*B, (r+1)*B) and columns [c*B, (c+1)*B).
struct BlockGrid {
  std::size_t blockSize = 0;
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<Matrix> blocks;

  std::size_t count() const noexcept { return blocks.size(); }
};

bool is_power_of_two(std::size_t n) noexcept;

/// log2 of a power of two.
std::size_t log2_exact(std::size_t n);

BlockGrid segment_blocks(const GrayImage& img, std::size_t blockSize);
GrayImage assemble_blocks(const BlockGrid& grid);

/// Copies one block of the grid back into an image in place.
void write_block(GrayImage& img, const BlockGrid& grid, std::size_t index);

/// clamp(round-half-away-from-zero(v), 0, 255)
std::uint8_t quantize_sample(double v) noexcept;
PixelBuffer8 quantize_to_8bit(const GrayImage& img);
GrayImage to_gray(const PixelBuffer8& buf);

/// Round-trips through 8-bit storage.
GrayImage requantize(const GrayImage& img);

/// Population variance (divisor = element count).
double block_variance(const Matrix& block);

}  // namespace wmark
