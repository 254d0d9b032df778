#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>

#include "wmark/image.hpp"

namespace wmark {

// Every attack returns an 8-bit-realizable image (integers in 0..255) of
// the same dimensions as its input.

GrayImage awgn(const GrayImage& img, double sigma, std::uint64_t noiseSeed);

/// window x window box mean with edge-replicate padding.
GrayImage mean_filter(const GrayImage& img, int window);
GrayImage median_filter(const GrayImage& img, int window);

/// One bilinear rotation leg about the image centre into a same-size
/// canvas. Out-of-support samples take the nearest edge pixel. Not quantized.
GrayImage rotate_bilinear(const GrayImage& img, double angleDegrees);

/// Rotate by angle, store, rotate back by -angle, store.
GrayImage rotate_attack(const GrayImage& img, double angleDegrees);

/// Bilinear resample to an arbitrary size with pixel-centre alignment:
/// src = (dst + 0.5) / scale - 0.5, clamped to the source support. Not quantized.
GrayImage resample_bilinear(const GrayImage& img, std::size_t width, std::size_t height);

/// Downscale by factor, store, upscale back to the original size, store.
GrayImage scale_attack(const GrayImage& img, double factor);

/// Standard luminance quantization table in row-major order.
const std::array<int, 64>& jpeg_luma_table();
std::array<int, 64> jpeg_scaled_table(int quality);

/// Baseline-JPEG luminance distortion model: 8x8 DCT, table quantization, inverse.
GrayImage jpeg_attack(const GrayImage& img, int quality);

struct Rect {
  std::size_t x = 0;
  std::size_t y = 0;
  std::size_t w = 0;
  std::size_t h = 0;
};

GrayImage crop_attack(const GrayImage& img, const Rect& rect, int fill);

enum class AttackKind { None, Jpeg, Awgn, MeanFilter, MedianFilter, Rotate, Scale, Crop };

std::string_view to_string(AttackKind kind) noexcept;
AttackKind parse_attack_kind(std::string_view text);

/// Attack plus its parameters; only the fields for `kind` are meaningful.
struct AttackSpec {
  AttackKind kind = AttackKind::None;
  int quality = 75;
  double sigma = 0.0;
  std::uint64_t noiseSeed = 0;
  int window = 3;
  double angleDegrees = 0.0;
  double factor = 1.0;
  Rect rect{};
  int fill = 0;

  /// Throws InvalidArgument with the valid range in the message.
  void validate() const;

  /// Parameters as "name=value" pairs joined by ';', e.g. "quality=30".
  std::string params() const;

  static AttackSpec none() { return {}; }
  static AttackSpec jpeg(int quality);
  static AttackSpec noise(double sigma, std::uint64_t seed);
  static AttackSpec mean(int window);
  static AttackSpec median(int window);
  static AttackSpec rotate(double degrees);
  static AttackSpec scale(double factor);
  static AttackSpec crop(Rect rect, int fill);
};

/// Dispatches on spec.kind. AttackKind::None stores the image as 8-bit.
GrayImage apply_attack(const GrayImage& img, const AttackSpec& spec);

}  // namespace wmark
