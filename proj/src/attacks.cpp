#include "wmark/attacks.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include "wmark/error.hpp"
#include "wmark/format.hpp"
#include "wmark/rng.hpp"

namespace wmark {

namespace {

GrayImage quantized(std::size_t width, std::size_t height, std::vector<double> pixels) {
  for (double& v : pixels) v = quantize_sample(v);
  return GrayImage(width, height, std::move(pixels));
}

void check_window(const GrayImage& img, int window) {
  if (window < 3 || window % 2 == 0) {
    fail(ErrorKind::InvalidArgument, "window must be odd and >= 3, got " + std::to_string(window));
  }
  if (static_cast<std::size_t>(window) > std::min(img.width(), img.height())) {
    fail(ErrorKind::InvalidArgument, "window " + std::to_string(window) + " exceeds the image size");
  }
}

// Gathers the window x window neighbourhood of (x, y) with edge replication.
void gather(const GrayImage& img, std::size_t x, std::size_t y, int radius, std::vector<double>& out) {
  out.clear();
  const auto w = static_cast<std::ptrdiff_t>(img.width());
  const auto h = static_cast<std::ptrdiff_t>(img.height());
  for (std::ptrdiff_t dy = -radius; dy <= radius; ++dy) {
    const auto sy = std::clamp<std::ptrdiff_t>(static_cast<std::ptrdiff_t>(y) + dy, 0, h - 1);
    for (std::ptrdiff_t dx = -radius; dx <= radius; ++dx) {
      const auto sx = std::clamp<std::ptrdiff_t>(static_cast<std::ptrdiff_t>(x) + dx, 0, w - 1);
      out.push_back(img.at(static_cast<std::size_t>(sx), static_cast<std::size_t>(sy)));
    }
  }
}

double sample_bilinear(const GrayImage& img, double sx, double sy) {
  const double maxX = static_cast<double>(img.width() - 1);
  const double maxY = static_cast<double>(img.height() - 1);
  sx = std::clamp(sx, 0.0, maxX);
  sy = std::clamp(sy, 0.0, maxY);
  const auto x0 = static_cast<std::size_t>(std::floor(sx));
  const auto y0 = static_cast<std::size_t>(std::floor(sy));
  const std::size_t x1 = std::min(x0 + 1, img.width() - 1);
  const std::size_t y1 = std::min(y0 + 1, img.height() - 1);
  const double fx = sx - static_cast<double>(x0);
  const double fy = sy - static_cast<double>(y0);
  const double top = img.at(x0, y0) * (1.0 - fx) + img.at(x1, y0) * fx;
  const double bottom = img.at(x0, y1) * (1.0 - fx) + img.at(x1, y1) * fx;
  return top * (1.0 - fy) + bottom * fy;
}

// cos/sin with exact values at multiples of 90 degrees.
void exact_rotation(double degrees, double& c, double& s) {
  const double turns = degrees / 90.0;
  if (turns == std::floor(turns) && std::abs(turns) < 1e15) {
    const auto quarter = static_cast<long long>(turns) % 4;
    static constexpr double kCos[4] = {1, 0, -1, 0};
    static constexpr double kSin[4] = {0, 1, 0, -1};
    const auto q = static_cast<std::size_t>((quarter + 4) % 4);
    c = kCos[q];
    s = kSin[q];
    return;
  }
  const double rad = degrees * std::numbers::pi / 180.0;
  c = std::cos(rad);
  s = std::sin(rad);
}

// Orthonormal 8-point DCT-II basis, basis[u][x].
const std::array<std::array<double, 8>, 8>& dct_basis() {
  static const auto basis = [] {
    std::array<std::array<double, 8>, 8> b{};
    for (int u = 0; u < 8; ++u) {
      const double scale = u == 0 ? std::sqrt(1.0 / 8.0) : std::sqrt(2.0 / 8.0);
      for (int x = 0; x < 8; ++x) b[u][x] = scale * std::cos((2 * x + 1) * u * std::numbers::pi / 16.0);
    }
    return b;
  }();
  return basis;
}

using Block8 = std::array<double, 64>;

Block8 dct8x8(const Block8& in) {
  const auto& c = dct_basis();
  Block8 tmp{};
  Block8 out{};
  for (int y = 0; y < 8; ++y) {
    for (int u = 0; u < 8; ++u) {
      double acc = 0.0;
      for (int x = 0; x < 8; ++x) acc += c[u][x] * in[y * 8 + x];
      tmp[y * 8 + u] = acc;
    }
  }
  for (int v = 0; v < 8; ++v) {
    for (int u = 0; u < 8; ++u) {
      double acc = 0.0;
      for (int y = 0; y < 8; ++y) acc += c[v][y] * tmp[y * 8 + u];
      out[v * 8 + u] = acc;
    }
  }
  return out;
}

Block8 idct8x8(const Block8& in) {
  const auto& c = dct_basis();
  Block8 tmp{};
  Block8 out{};
  for (int v = 0; v < 8; ++v) {
    for (int x = 0; x < 8; ++x) {
      double acc = 0.0;
      for (int u = 0; u < 8; ++u) acc += c[u][x] * in[v * 8 + u];
      tmp[v * 8 + x] = acc;
    }
  }
  for (int y = 0; y < 8; ++y) {
    for (int x = 0; x < 8; ++x) {
      double acc = 0.0;
      for (int v = 0; v < 8; ++v) acc += c[v][y] * tmp[v * 8 + x];
      out[y * 8 + x] = acc;
    }
  }
  return out;
}

}  // namespace

GrayImage awgn(const GrayImage& img, double sigma, std::uint64_t noiseSeed) {
  if (!(sigma >= 0.0) || !std::isfinite(sigma)) {
    fail(ErrorKind::InvalidArgument, "sigma must be a finite value >= 0");
  }
  GaussianStream noise(noiseSeed);
  std::vector<double> out(img.pixels().begin(), img.pixels().end());
  for (double& v : out) v += sigma * noise.next();
  return quantized(img.width(), img.height(), std::move(out));
}

GrayImage mean_filter(const GrayImage& img, int window) {
  check_window(img, window);
  const int radius = window / 2;
  const double count = static_cast<double>(window) * window;
  std::vector<double> out(img.size());
  std::vector<double> hood;
  for (std::size_t y = 0; y < img.height(); ++y) {
    for (std::size_t x = 0; x < img.width(); ++x) {
      gather(img, x, y, radius, hood);
      double sum = 0.0;
      for (double v : hood) sum += v;
      out[y * img.width() + x] = sum / count;
    }
  }
  return quantized(img.width(), img.height(), std::move(out));
}

GrayImage median_filter(const GrayImage& img, int window) {
  check_window(img, window);
  const int radius = window / 2;
  std::vector<double> out(img.size());
  std::vector<double> hood;
  for (std::size_t y = 0; y < img.height(); ++y) {
    for (std::size_t x = 0; x < img.width(); ++x) {
      gather(img, x, y, radius, hood);
      const auto mid = hood.begin() + static_cast<std::ptrdiff_t>(hood.size() / 2);
      std::nth_element(hood.begin(), mid, hood.end());
      out[y * img.width() + x] = *mid;
    }
  }
  return quantized(img.width(), img.height(), std::move(out));
}

GrayImage rotate_bilinear(const GrayImage& img, double angleDegrees) {
  if (!std::isfinite(angleDegrees)) fail(ErrorKind::InvalidArgument, "angle must be finite");
  double c = 1.0;
  double s = 0.0;
  exact_rotation(angleDegrees, c, s);
  const double cx = (static_cast<double>(img.width()) - 1.0) / 2.0;
  const double cy = (static_cast<double>(img.height()) - 1.0) / 2.0;
  std::vector<double> out(img.size());
  for (std::size_t y = 0; y < img.height(); ++y) {
    const double dy = static_cast<double>(y) - cy;
    for (std::size_t x = 0; x < img.width(); ++x) {
      const double dx = static_cast<double>(x) - cx;
      // Inverse mapping: source = R(-angle) * (dst - centre) + centre.
      const double sx = cx + c * dx + s * dy;
      const double sy = cy - s * dx + c * dy;
      out[y * img.width() + x] = sample_bilinear(img, sx, sy);
    }
  }
  return GrayImage(img.width(), img.height(), std::move(out));
}

GrayImage rotate_attack(const GrayImage& img, double angleDegrees) {
  const GrayImage forward = requantize(rotate_bilinear(img, angleDegrees));
  return requantize(rotate_bilinear(forward, -angleDegrees));
}

GrayImage resample_bilinear(const GrayImage& img, std::size_t width, std::size_t height) {
  if (width == 0 || height == 0) fail(ErrorKind::InvalidArgument, "resample target must be at least 1x1");
  const double rx = static_cast<double>(img.width()) / static_cast<double>(width);
  const double ry = static_cast<double>(img.height()) / static_cast<double>(height);
  std::vector<double> out(width * height);
  for (std::size_t y = 0; y < height; ++y) {
    const double sy = (static_cast<double>(y) + 0.5) * ry - 0.5;
    for (std::size_t x = 0; x < width; ++x) {
      const double sx = (static_cast<double>(x) + 0.5) * rx - 0.5;
      out[y * width + x] = sample_bilinear(img, sx, sy);
    }
  }
  return GrayImage(width, height, std::move(out));
}

GrayImage scale_attack(const GrayImage& img, double factor) {
  if (!(factor > 0.0 && factor <= 1.0)) {
    fail(ErrorKind::InvalidArgument, "scale factor must be in (0, 1], got " + format_real(factor));
  }
  const auto w = static_cast<std::size_t>(std::round(factor * static_cast<double>(img.width())));
  const auto h = static_cast<std::size_t>(std::round(factor * static_cast<double>(img.height())));
  if (w == 0 || h == 0) fail(ErrorKind::InvalidArgument, "scale factor " + format_real(factor) + " collapses the image");
  const GrayImage small = requantize(resample_bilinear(img, w, h));
  return requantize(resample_bilinear(small, img.width(), img.height()));
}

const std::array<int, 64>& jpeg_luma_table() {
  static constexpr std::array<int, 64> table = {
      16, 11, 10, 16, 24,  40,  51,  61,   //
      12, 12, 14, 19, 26,  58,  60,  55,   //
      14, 13, 16, 24, 40,  57,  69,  56,   //
      14, 17, 22, 29, 51,  87,  80,  62,   //
      18, 22, 37, 56, 68,  109, 103, 77,   //
      24, 35, 55, 64, 81,  104, 113, 92,   //
      49, 64, 78, 87, 103, 121, 120, 101,  //
      72, 92, 95, 98, 112, 100, 103, 99};
  return table;
}

std::array<int, 64> jpeg_scaled_table(int quality) {
  if (quality < 1 || quality > 100) {
    fail(ErrorKind::InvalidArgument, "quality must be in 1..100, got " + std::to_string(quality));
  }
  const int scale = quality < 50 ? 5000 / quality : 200 - 2 * quality;
  std::array<int, 64> out{};
  const auto& base = jpeg_luma_table();
  for (std::size_t i = 0; i < 64; ++i) out[i] = std::clamp((base[i] * scale + 50) / 100, 1, 255);
  return out;
}

GrayImage jpeg_attack(const GrayImage& img, int quality) {
  const auto table = jpeg_scaled_table(quality);
  if (img.width() % 8 != 0 || img.height() % 8 != 0) {
    fail(ErrorKind::Geometry, "jpeg model needs dimensions divisible by 8, got " + std::to_string(img.width()) +
                                  "x" + std::to_string(img.height()));
  }
  std::vector<double> out(img.size());
  Block8 block{};
  for (std::size_t by = 0; by < img.height(); by += 8) {
    for (std::size_t bx = 0; bx < img.width(); bx += 8) {
      for (std::size_t y = 0; y < 8; ++y) {
        for (std::size_t x = 0; x < 8; ++x) block[y * 8 + x] = img.at(bx + x, by + y) - 128.0;
      }
      Block8 coeffs = dct8x8(block);
      for (std::size_t i = 0; i < 64; ++i) coeffs[i] = std::round(coeffs[i] / table[i]) * table[i];
      const Block8 rec = idct8x8(coeffs);
      for (std::size_t y = 0; y < 8; ++y) {
        for (std::size_t x = 0; x < 8; ++x) out[(by + y) * img.width() + bx + x] = rec[y * 8 + x] + 128.0;
      }
    }
  }
  return quantized(img.width(), img.height(), std::move(out));
}

GrayImage crop_attack(const GrayImage& img, const Rect& rect, int fill) {
  if (fill < 0 || fill > 255) fail(ErrorKind::InvalidArgument, "fill must be in 0..255");
  if (rect.x > img.width() || rect.y > img.height() || rect.w > img.width() - rect.x ||
      rect.h > img.height() - rect.y) {
    fail(ErrorKind::InvalidArgument, "crop rectangle lies outside the " + std::to_string(img.width()) + "x" +
                                         std::to_string(img.height()) + " image");
  }
  GrayImage out = requantize(img);
  for (std::size_t y = rect.y; y < rect.y + rect.h; ++y) {
    for (std::size_t x = rect.x; x < rect.x + rect.w; ++x) out.at(x, y) = fill;
  }
  return out;
}

std::string_view to_string(AttackKind kind) noexcept {
  switch (kind) {
    case AttackKind::None: return "none";
    case AttackKind::Jpeg: return "jpeg";
    case AttackKind::Awgn: return "awgn";
    case AttackKind::MeanFilter: return "mean";
    case AttackKind::MedianFilter: return "median";
    case AttackKind::Rotate: return "rotate";
    case AttackKind::Scale: return "scale";
    case AttackKind::Crop: return "crop";
  }
  return "none";
}

AttackKind parse_attack_kind(std::string_view text) {
  for (auto kind : {AttackKind::None, AttackKind::Jpeg, AttackKind::Awgn, AttackKind::MeanFilter,
                    AttackKind::MedianFilter, AttackKind::Rotate, AttackKind::Scale, AttackKind::Crop}) {
    if (to_string(kind) == text) return kind;
  }
  fail(ErrorKind::InvalidArgument, "unknown attack type '" + std::string(text) +
                                       "' (expected none, jpeg, awgn, mean, median, rotate, scale or crop)");
}

void AttackSpec::validate() const {
  switch (kind) {
    case AttackKind::None: break;
    case AttackKind::Jpeg:
      if (quality < 1 || quality > 100) {
        fail(ErrorKind::InvalidArgument, "quality must be in 1..100, got " + std::to_string(quality));
      }
      break;
    case AttackKind::Awgn:
      if (!(sigma >= 0.0) || !std::isfinite(sigma)) {
        fail(ErrorKind::InvalidArgument, "sigma must be a finite value >= 0, got " + format_real(sigma));
      }
      break;
    case AttackKind::MeanFilter:
    case AttackKind::MedianFilter:
      if (window % 2 == 0) fail(ErrorKind::InvalidArgument, "window must be odd, got " + std::to_string(window));
      if (window < 3) fail(ErrorKind::InvalidArgument, "window must be >= 3, got " + std::to_string(window));
      break;
    case AttackKind::Rotate:
      if (!std::isfinite(angleDegrees)) fail(ErrorKind::InvalidArgument, "angle must be finite");
      break;
    case AttackKind::Scale:
      if (!(factor > 0.0 && factor <= 1.0)) {
        fail(ErrorKind::InvalidArgument, "scale factor must be in (0, 1], got " + format_real(factor));
      }
      break;
    case AttackKind::Crop:
      if (fill < 0 || fill > 255) fail(ErrorKind::InvalidArgument, "fill must be in 0..255, got " + std::to_string(fill));
      break;
  }
}

std::string AttackSpec::params() const {
  switch (kind) {
    case AttackKind::None: return "";
    case AttackKind::Jpeg: return "quality=" + std::to_string(quality);
    case AttackKind::Awgn: return "sigma=" + format_real(sigma) + ";seed=" + std::to_string(noiseSeed);
    case AttackKind::MeanFilter:
    case AttackKind::MedianFilter: return "window=" + std::to_string(window);
    case AttackKind::Rotate: return "angle=" + format_real(angleDegrees);
    case AttackKind::Scale: return "factor=" + format_real(factor);
    case AttackKind::Crop:
      return "x=" + std::to_string(rect.x) + ";y=" + std::to_string(rect.y) + ";w=" + std::to_string(rect.w) +
             ";h=" + std::to_string(rect.h) + ";fill=" + std::to_string(fill);
  }
  return "";
}

AttackSpec AttackSpec::jpeg(int quality) {
  AttackSpec s;
  s.kind = AttackKind::Jpeg;
  s.quality = quality;
  return s;
}

AttackSpec AttackSpec::noise(double sigma, std::uint64_t seed) {
  AttackSpec s;
  s.kind = AttackKind::Awgn;
  s.sigma = sigma;
  s.noiseSeed = seed;
  return s;
}

AttackSpec AttackSpec::mean(int window) {
  AttackSpec s;
  s.kind = AttackKind::MeanFilter;
  s.window = window;
  return s;
}

AttackSpec AttackSpec::median(int window) {
  AttackSpec s;
  s.kind = AttackKind::MedianFilter;
  s.window = window;
  return s;
}

AttackSpec AttackSpec::rotate(double degrees) {
  AttackSpec s;
  s.kind = AttackKind::Rotate;
  s.angleDegrees = degrees;
  return s;
}

AttackSpec AttackSpec::scale(double factor) {
  AttackSpec s;
  s.kind = AttackKind::Scale;
  s.factor = factor;
  return s;
}

AttackSpec AttackSpec::crop(Rect rect, int fill) {
  AttackSpec s;
  s.kind = AttackKind::Crop;
  s.rect = rect;
  s.fill = fill;
  return s;
}

GrayImage apply_attack(const GrayImage& img, const AttackSpec& spec) {
  spec.validate();
  switch (spec.kind) {
    case AttackKind::None: return requantize(img);
    case AttackKind::Jpeg: return jpeg_attack(img, spec.quality);
    case AttackKind::Awgn: return awgn(img, spec.sigma, spec.noiseSeed);
    case AttackKind::MeanFilter: return mean_filter(img, spec.window);
    case AttackKind::MedianFilter: return median_filter(img, spec.window);
    case AttackKind::Rotate: return rotate_attack(img, spec.angleDegrees);
    case AttackKind::Scale: return scale_attack(img, spec.factor);
    case AttackKind::Crop: return crop_attack(img, spec.rect, spec.fill);
  }
  fail(ErrorKind::Internal, "unhandled attack kind");
}

}  // namespace wmark
