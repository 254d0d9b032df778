#pragma once

#include <array>
#include <cstddef>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "wmark/image.hpp"

namespace wmark {

/// Two-channel orthonormal filter bank with 8 taps per filter.
///
/// The highpass analysis filter is the alternating-sign reversal of the
/// lowpass one, g[n] = (-1)^n h[7 - n]. Synthesis filters are the time
/// reversals of the analysis filters.
struct FilterBank {
  static constexpr std::size_t kTaps = 8;
  using Taps = std::array<double, kTaps>;

  std::string name;
  Taps analysisLow{};
  Taps analysisHigh{};
  Taps synthesisLow{};
  Taps synthesisHigh{};

  /// Builds the full bank from an orthonormal lowpass analysis filter.
  static FilterBank from_lowpass(std::string name, const Taps& lowpass);
};

/// Least-asymmetric Daubechies wavelet with 8 taps ("sym4").
const FilterBank& symlet8();

/// Detail subbands of one decomposition level. Naming is (row filter,
/// column filter): hl is highpass along x and lowpass along y.
struct DetailBands {
  Matrix lh;
  Matrix hl;
  Matrix hh;
};

/// Multi-level 2-D decomposition of a square block. details[0] is the
/// finest level (side blockSize/2), details[levels-1] the coarsest.
struct SubbandPyramid {
  std::size_t blockSize = 0;
  std::size_t levels = 0;
  Matrix ll;
  std::vector<DetailBands> details;
};

struct Dwt1dResult {
  std::vector<double> approx;
  std::vector<double> detail;
};

/// One analysis step with periodic extension, keeping even-indexed outputs:
/// approx[k] = sum_n h[n] x[(2k - n) mod N].
Dwt1dResult dwt1d_step(std::span<const double> signal, const FilterBank& fb);

/// Exact inverse of dwt1d_step.
std::vector<double> idwt1d_step(std::span<const double> approx, std::span<const double> detail,
                                const FilterBank& fb);

SubbandPyramid dwt2d(const Matrix& block, std::size_t levels, const FilterBank& fb = symlet8());
Matrix idwt2d(const SubbandPyramid& pyr, const FilterBank& fb = symlet8());

}  // namespace wmark
