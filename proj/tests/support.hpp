#pragma once

// Shared helpers for the unit and acceptance suites: synthetic test images
// and a dense-matrix wavelet oracle built straight from the filter taps.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <random>
#include <string>
#include <vector>

#include "wmark/image.hpp"
#include "wmark/wavelet.hpp"

namespace wmark::testing {

inline Matrix random_matrix(std::mt19937_64& rng, std::size_t rows, std::size_t cols, double lo = -1.0,
                            double hi = 1.0) {
  std::uniform_real_distribution<double> dist(lo, hi);
  Matrix m(rows, cols);
  for (double& v : m.values()) v = dist(rng);
  return m;
}

inline GrayImage random_image(std::mt19937_64& rng, std::size_t width, std::size_t height, double lo = 20.0,
                              double hi = 235.0) {
  std::uniform_real_distribution<double> dist(lo, hi);
  std::vector<double> px(width * height);
  for (double& v : px) v = dist(rng);
  return GrayImage(width, height, std::move(px));
}

/// Natural-looking 8-bit image: a dead-leaves layer (occluding discs with a
/// power-law radius distribution, which gives object edges and a 1/f
/// spectrum) under octaves of bilinearly interpolated value noise down to
/// per-pixel grain. Leaf intensities stay mid-range so block means remain
/// well above the dark range where a 1% LL gain rounds away under 8-bit
/// storage.
inline GrayImage textured_image(std::uint64_t seed, std::size_t width = 512, std::size_t height = 512) {
  std::mt19937_64 rng(seed * 0x9E3779B97F4A7C15ull + 17);
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  std::uniform_real_distribution<double> u01(0.0, 1.0);
  std::vector<double> px(width * height, 128.0);

  const double rMin = 2.0;
  const double rMax = 100.0;
  const auto leaves = static_cast<std::size_t>(8000.0 * static_cast<double>(width * height) / (512.0 * 512.0));
  for (std::size_t i = 0; i < leaves; ++i) {
    // Inverse-CDF sample of p(r) ~ r^-3 on [rMin, rMax].
    const double a = 1.0 / (rMin * rMin);
    const double b = 1.0 / (rMax * rMax);
    const double r = 1.0 / std::sqrt(a - u01(rng) * (a - b));
    const double cx = u01(rng) * static_cast<double>(width);
    const double cy = u01(rng) * static_cast<double>(height);
    const double level = 70.0 + 120.0 * u01(rng);
    const auto x0 = static_cast<std::size_t>(std::max(0.0, cx - r));
    const auto x1 = static_cast<std::size_t>(std::min(static_cast<double>(width) - 1.0, cx + r));
    const auto y0 = static_cast<std::size_t>(std::max(0.0, cy - r));
    const auto y1 = static_cast<std::size_t>(std::min(static_cast<double>(height) - 1.0, cy + r));
    for (std::size_t y = y0; y <= y1; ++y) {
      for (std::size_t x = x0; x <= x1; ++x) {
        const double dx = static_cast<double>(x) + 0.5 - cx;
        const double dy = static_cast<double>(y) + 0.5 - cy;
        if (dx * dx + dy * dy <= r * r) px[y * width + x] = level;
      }
    }
  }

  const std::pair<std::size_t, double> octaves[] = {{16, 24.0}, {8, 24.0}, {4, 24.0}, {2, 24.0}, {1, 24.0}};
  for (const auto& [cell, amp] : octaves) {
    const std::size_t gw = width / cell + 2;
    const std::size_t gh = height / cell + 2;
    std::vector<double> grid(gw * gh);
    for (double& g : grid) g = unit(rng);
    for (std::size_t y = 0; y < height; ++y) {
      const double fy = static_cast<double>(y) / static_cast<double>(cell);
      const auto y0 = static_cast<std::size_t>(fy);
      const double ty = fy - static_cast<double>(y0);
      for (std::size_t x = 0; x < width; ++x) {
        const double fx = static_cast<double>(x) / static_cast<double>(cell);
        const auto x0 = static_cast<std::size_t>(fx);
        const double tx = fx - static_cast<double>(x0);
        const double top = grid[y0 * gw + x0] * (1 - tx) + grid[y0 * gw + x0 + 1] * tx;
        const double bottom = grid[(y0 + 1) * gw + x0] * (1 - tx) + grid[(y0 + 1) * gw + x0 + 1] * tx;
        px[y * width + x] += amp * (top * (1 - ty) + bottom * ty);
      }
    }
  }
  for (double& v : px) v = std::clamp(std::round(v), 10.0, 245.0);
  return GrayImage(width, height, std::move(px));
}

/// Dense one-level periodized analysis matrix: rows 0..n/2-1 lowpass,
/// rows n/2..n-1 highpass. Row k holds sum of h[t] over taps t with
/// (2k - t) mod n == column.
inline Matrix analysis_matrix(const FilterBank& fb, std::size_t n) {
  Matrix a(n, n);
  const auto len = static_cast<long>(n);
  for (std::size_t k = 0; k < n / 2; ++k) {
    for (long t = 0; t < static_cast<long>(FilterBank::kTaps); ++t) {
      long col = (2 * static_cast<long>(k) - t) % len;
      if (col < 0) col += len;
      a(k, static_cast<std::size_t>(col)) += fb.analysisLow[static_cast<std::size_t>(t)];
      a(n / 2 + k, static_cast<std::size_t>(col)) += fb.analysisHigh[static_cast<std::size_t>(t)];
    }
  }
  return a;
}

inline Matrix matmul(const Matrix& a, const Matrix& b) {
  Matrix c(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const double aik = a(i, k);
      for (std::size_t j = 0; j < b.cols(); ++j) c(i, j) += aik * b(k, j);
    }
  }
  return c;
}

inline Matrix transpose(const Matrix& a) {
  Matrix t(a.cols(), a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) t(j, i) = a(i, j);
  }
  return t;
}

/// Product of the lowpass halves of the per-level analysis matrices; the
/// lowpass band of a side-n block X after `levels` levels is P X P^T.
inline Matrix lowpass_projection(const FilterBank& fb, std::size_t n, std::size_t levels) {
  Matrix p(n, n);
  for (std::size_t i = 0; i < n; ++i) p(i, i) = 1.0;
  std::size_t s = n;
  for (std::size_t l = 0; l < levels; ++l, s /= 2) {
    const Matrix a = analysis_matrix(fb, s);
    Matrix low(s / 2, s);
    for (std::size_t i = 0; i < s / 2; ++i) {
      for (std::size_t j = 0; j < s; ++j) low(i, j) = a(i, j);
    }
    p = matmul(low, p);
  }
  return p;
}

inline Matrix oracle_lowpass_band(const Matrix& block, const FilterBank& fb, std::size_t levels) {
  const Matrix p = lowpass_projection(fb, block.rows(), levels);
  return matmul(matmul(p, block), transpose(p));
}

inline double max_abs_diff(std::span<const double> a, std::span<const double> b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

inline double energy(std::span<const double> v) {
  double e = 0.0;
  for (double x : v) e += x * x;
  return e;
}

inline double pyramid_energy(const SubbandPyramid& p) {
  double e = energy(p.ll.values());
  for (const auto& d : p.details) e += energy(d.lh.values()) + energy(d.hl.values()) + energy(d.hh.values());
  return e;
}

/// Fresh scratch directory under the system temp dir.
inline std::filesystem::path scratch_dir(const std::string& name) {
  auto dir = std::filesystem::temp_directory_path() / ("wmark_test_" + name);
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

}  // namespace wmark::testing
