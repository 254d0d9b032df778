#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "wmark/image.hpp"
#include "wmark/wavelet.hpp"

namespace wmark {

enum class Method { M1, M2 };

std::string_view to_string(Method m) noexcept;
Method parse_method(std::string_view text);

/// All parameters shared by the embedder and the detector.
struct WatermarkKey {
  Method method = Method::M1;
  double alpha = 1.01;          // strength factor, > 1
  std::size_t blockSize = 32;   // power of two
  std::size_t levels = 5;       // <= log2(blockSize)
  std::size_t numBlocks = 0;    // M2 only; ignored for M1
  std::uint64_t seed = 0;       // payload generator seed
  double epsilon = 1e-6;        // |W_original| below this is left out of the vote

  /// Throws InvalidArgument naming the offending field.
  void validate() const;

  static WatermarkKey default_m1(std::uint64_t seed = 0);
  static WatermarkKey default_m2(std::uint64_t seed = 0);

  bool operator==(const WatermarkKey&) const = default;
};

/// Binary payload; every element is 0 or 1.
class BitSequence {
 public:
  BitSequence() = default;
  explicit BitSequence(std::vector<std::uint8_t> bits);

  std::size_t size() const noexcept { return bits_.size(); }
  bool empty() const noexcept { return bits_.empty(); }
  std::uint8_t operator[](std::size_t i) const { return bits_[i]; }
  std::span<const std::uint8_t> bits() const noexcept { return bits_; }

  /// '0'/'1' characters, no separators.
  std::string to_string() const;
  static BitSequence from_string(std::string_view text);

  bool operator==(const BitSequence&) const = default;

 private:
  std::vector<std::uint8_t> bits_;
};

/// Outcome of the per-block majority vote.
struct BlockVote {
  std::size_t usable = 0;  // coefficients with |original| >= epsilon
  std::size_t ones = 0;    // usable ratios strictly above the threshold
  double margin = 0.0;     // ones / usable, or 0 when nothing is usable
  bool undecidable = false;
  std::uint8_t bit = 0;
};

struct DetectionReport {
  BitSequence bits;
  std::vector<std::size_t> blocks;  // row-major block index per bit
  std::vector<double> margins;
  std::vector<bool> undecidable;
  double threshold = 0.0;
};

/// (alpha + 1/alpha) / 2
double threshold(double alpha);

std::size_t capacity(const WatermarkKey& key, std::size_t width, std::size_t height);

/// Row-major indices of the embedding blocks, ascending. M2 keeps the
/// numBlocks blocks of highest variance; equal variances favour the lower index.
std::vector<std::size_t> select_blocks(const GrayImage& img, const WatermarkKey& key);
std::vector<std::size_t> select_blocks(const BlockGrid& grid, const WatermarkKey& key);

GrayImage embed(const GrayImage& img, const BitSequence& bits, const WatermarkKey& key);

/// Majority vote over the compare matrix received/original.
BlockVote vote_block(std::span<const double> originalLL, std::span<const double> receivedLL, double threshold,
                     double epsilon);

DetectionReport detect(const GrayImage& original, const GrayImage& received, const WatermarkKey& key);

/// Most significant bit of successive SplitMix64 outputs.
BitSequence generate_watermark(std::uint64_t seed, std::size_t length);

}  // namespace wmark
