#include "wmark/watermark.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "wmark/error.hpp"
#include "wmark/rng.hpp"

namespace wmark {

std::string_view to_string(Method m) noexcept { return m == Method::M1 ? "M1" : "M2"; }

Method parse_method(std::string_view text) {
  if (text == "M1" || text == "m1") return Method::M1;
  if (text == "M2" || text == "m2") return Method::M2;
  fail(ErrorKind::InvalidArgument, "method must be M1 or M2, got '" + std::string(text) + "'");
}

void WatermarkKey::validate() const {
  if (!(alpha > 1.0) || !std::isfinite(alpha)) fail(ErrorKind::InvalidArgument, "alpha must exceed 1");
  if (!is_power_of_two(blockSize)) {
    fail(ErrorKind::InvalidArgument, "block_size must be a power of two, got " + std::to_string(blockSize));
  }
  const std::size_t maxLevels = log2_exact(blockSize);
  if (levels == 0 || levels > maxLevels) {
    fail(ErrorKind::InvalidArgument, "levels must be in 1..log2(block_size) = 1.." + std::to_string(maxLevels) +
                                         ", got " + std::to_string(levels));
  }
  if (method == Method::M2 && numBlocks == 0) fail(ErrorKind::InvalidArgument, "num_blocks must be positive for M2");
  if (!(epsilon >= 0.0) || !std::isfinite(epsilon)) fail(ErrorKind::InvalidArgument, "epsilon must be nonnegative");
}

WatermarkKey WatermarkKey::default_m1(std::uint64_t seed) {
  return WatermarkKey{Method::M1, 1.01, 32, 5, 0, seed, 1e-6};
}

WatermarkKey WatermarkKey::default_m2(std::uint64_t seed) {
  return WatermarkKey{Method::M2, 1.025, 16, 4, 256, seed, 1e-6};
}

BitSequence::BitSequence(std::vector<std::uint8_t> bits) : bits_(std::move(bits)) {
  for (auto b : bits_) {
    if (b > 1) fail(ErrorKind::InvalidArgument, "bit values must be 0 or 1");
  }
}

std::string BitSequence::to_string() const {
  std::string s;
  s.reserve(bits_.size());
  for (auto b : bits_) s.push_back(b ? '1' : '0');
  return s;
}

BitSequence BitSequence::from_string(std::string_view text) {
  std::vector<std::uint8_t> bits;
  bits.reserve(text.size());
  for (char ch : text) {
    if (ch != '0' && ch != '1') fail(ErrorKind::Format, "payload contains a character other than 0/1");
    bits.push_back(ch == '1' ? 1 : 0);
  }
  return BitSequence(std::move(bits));
}

double threshold(double alpha) {
  if (!(alpha > 1.0)) fail(ErrorKind::InvalidArgument, "alpha must exceed 1");
  return 0.5 * (alpha + 1.0 / alpha);
}

std::size_t capacity(const WatermarkKey& key, std::size_t width, std::size_t height) {
  key.validate();
  const std::size_t b = key.blockSize;
  if (width == 0 || height == 0 || width % b != 0 || height % b != 0) {
    fail(ErrorKind::Geometry, std::to_string(width) + "x" + std::to_string(height) +
                                  " is not divisible by block size " + std::to_string(b));
  }
  const std::size_t total = (width / b) * (height / b);
  if (key.method == Method::M1) return total;
  if (key.numBlocks > total) {
    fail(ErrorKind::Geometry, "num_blocks " + std::to_string(key.numBlocks) + " exceeds the " +
                                  std::to_string(total) + " available blocks");
  }
  return key.numBlocks;
}

std::vector<std::size_t> select_blocks(const BlockGrid& grid, const WatermarkKey& key) {
  std::vector<std::size_t> all(grid.count());
  std::iota(all.begin(), all.end(), std::size_t{0});
  if (key.method == Method::M1) return all;

  if (key.numBlocks > all.size()) {
    fail(ErrorKind::Geometry, "num_blocks " + std::to_string(key.numBlocks) + " exceeds the " +
                                  std::to_string(all.size()) + " available blocks");
  }
  std::vector<double> variance(grid.count());
  for (std::size_t i = 0; i < grid.count(); ++i) variance[i] = block_variance(grid.blocks[i]);

  const auto n = static_cast<std::ptrdiff_t>(key.numBlocks);
  std::partial_sort(all.begin(), all.begin() + n, all.end(), [&](std::size_t a, std::size_t b) {
    if (variance[a] != variance[b]) return variance[a] > variance[b];
    return a < b;
  });
  all.resize(key.numBlocks);
  std::sort(all.begin(), all.end());
  return all;
}

std::vector<std::size_t> select_blocks(const GrayImage& img, const WatermarkKey& key) {
  key.validate();
  return select_blocks(segment_blocks(img, key.blockSize), key);
}

GrayImage embed(const GrayImage& img, const BitSequence& bits, const WatermarkKey& key) {
  const std::size_t cap = capacity(key, img.width(), img.height());
  if (bits.size() != cap) {
    fail(ErrorKind::InvalidArgument, "payload has " + std::to_string(bits.size()) + " bits but capacity is " +
                                         std::to_string(cap));
  }
  BlockGrid grid = segment_blocks(img, key.blockSize);
  const auto selected = select_blocks(grid, key);

  GrayImage out = img;
  for (std::size_t j = 0; j < selected.size(); ++j) {
    const std::size_t idx = selected[j];
    SubbandPyramid pyr = dwt2d(grid.blocks[idx], key.levels);
    // W' = W * alpha for a 1, W / alpha for a 0.
    for (double& w : pyr.ll.values()) w = bits[j] ? w * key.alpha : w / key.alpha;
    grid.blocks[idx] = idwt2d(pyr);
    write_block(out, grid, idx);
  }
  return out;
}

BlockVote vote_block(std::span<const double> originalLL, std::span<const double> receivedLL, double threshold,
                     double epsilon) {
  if (originalLL.size() != receivedLL.size()) fail(ErrorKind::Internal, "lowpass band size mismatch");
  BlockVote v;
  for (std::size_t i = 0; i < originalLL.size(); ++i) {
    if (std::abs(originalLL[i]) < epsilon) continue;
    ++v.usable;
    if (receivedLL[i] / originalLL[i] > threshold) ++v.ones;
  }
  if (v.usable == 0) {
    v.undecidable = true;
    return v;
  }
  v.margin = static_cast<double>(v.ones) / static_cast<double>(v.usable);
  // Exact ties resolve to 0.
  v.bit = (2 * v.ones > v.usable) ? 1 : 0;
  return v;
}

DetectionReport detect(const GrayImage& original, const GrayImage& received, const WatermarkKey& key) {
  if (original.width() != received.width() || original.height() != received.height()) {
    fail(ErrorKind::Geometry, "original is " + std::to_string(original.width()) + "x" +
                                  std::to_string(original.height()) + " but received is " +
                                  std::to_string(received.width()) + "x" + std::to_string(received.height()));
  }
  capacity(key, original.width(), original.height());
  const BlockGrid origGrid = segment_blocks(original, key.blockSize);
  const BlockGrid recvGrid = segment_blocks(received, key.blockSize);

  DetectionReport report;
  report.threshold = threshold(key.alpha);
  report.blocks = select_blocks(origGrid, key);

  std::vector<std::uint8_t> bits;
  bits.reserve(report.blocks.size());
  for (std::size_t idx : report.blocks) {
    const SubbandPyramid po = dwt2d(origGrid.blocks[idx], key.levels);
    const SubbandPyramid pr = dwt2d(recvGrid.blocks[idx], key.levels);
    const BlockVote v = vote_block(po.ll.values(), pr.ll.values(), report.threshold, key.epsilon);
    bits.push_back(v.bit);
    report.margins.push_back(v.margin);
    report.undecidable.push_back(v.undecidable);
  }
  report.bits = BitSequence(std::move(bits));
  return report;
}

BitSequence generate_watermark(std::uint64_t seed, std::size_t length) {
  if (length == 0) fail(ErrorKind::InvalidArgument, "watermark length must be positive");
  SplitMix64 rng(seed);
  std::vector<std::uint8_t> bits(length);
  for (auto& b : bits) b = static_cast<std::uint8_t>(rng.next() >> 63);
  return BitSequence(std::move(bits));
}

}  // namespace wmark
