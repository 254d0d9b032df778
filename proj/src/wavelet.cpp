#include "wmark/wavelet.hpp"

#include <string>

#include "wmark/error.hpp"

namespace wmark {

namespace {

constexpr std::ptrdiff_t kTaps = static_cast<std::ptrdiff_t>(FilterBank::kTaps);

std::size_t wrap(std::ptrdiff_t i, std::ptrdiff_t n) {
  const std::ptrdiff_t r = i % n;
  return static_cast<std::size_t>(r < 0 ? r + n : r);
}

// In-place single-level analysis of the top-left side x side square.
void analyze_square(Matrix& m, std::size_t side, const FilterBank& fb) {
  const std::size_t half = side / 2;
  std::vector<double> line(side);

  for (std::size_t r = 0; r < side; ++r) {
    for (std::size_t c = 0; c < side; ++c) line[c] = m(r, c);
    const auto out = dwt1d_step(line, fb);
    for (std::size_t k = 0; k < half; ++k) {
      m(r, k) = out.approx[k];
      m(r, half + k) = out.detail[k];
    }
  }
  for (std::size_t c = 0; c < side; ++c) {
    for (std::size_t r = 0; r < side; ++r) line[r] = m(r, c);
    const auto out = dwt1d_step(line, fb);
    for (std::size_t k = 0; k < half; ++k) {
      m(k, c) = out.approx[k];
      m(half + k, c) = out.detail[k];
    }
  }
}

void synthesize_square(Matrix& m, std::size_t side, const FilterBank& fb) {
  const std::size_t half = side / 2;
  std::vector<double> approx(half);
  std::vector<double> detail(half);

  for (std::size_t c = 0; c < side; ++c) {
    for (std::size_t k = 0; k < half; ++k) {
      approx[k] = m(k, c);
      detail[k] = m(half + k, c);
    }
    const auto line = idwt1d_step(approx, detail, fb);
    for (std::size_t r = 0; r < side; ++r) m(r, c) = line[r];
  }
  for (std::size_t r = 0; r < side; ++r) {
    for (std::size_t k = 0; k < half; ++k) {
      approx[k] = m(r, k);
      detail[k] = m(r, half + k);
    }
    const auto line = idwt1d_step(approx, detail, fb);
    for (std::size_t c = 0; c < side; ++c) m(r, c) = line[c];
  }
}

Matrix copy_region(const Matrix& src, std::size_t r0, std::size_t c0, std::size_t side) {
  Matrix out(side, side);
  for (std::size_t r = 0; r < side; ++r) {
    for (std::size_t c = 0; c < side; ++c) out(r, c) = src(r0 + r, c0 + c);
  }
  return out;
}

void paste_region(Matrix& dst, const Matrix& src, std::size_t r0, std::size_t c0, std::size_t side) {
  if (src.rows() != side || src.cols() != side) fail(ErrorKind::Geometry, "malformed subband pyramid");
  for (std::size_t r = 0; r < side; ++r) {
    for (std::size_t c = 0; c < side; ++c) dst(r0 + r, c0 + c) = src(r, c);
  }
}

}  // namespace

FilterBank FilterBank::from_lowpass(std::string name, const Taps& lowpass) {
  FilterBank fb;
  fb.name = std::move(name);
  fb.analysisLow = lowpass;
  for (std::size_t n = 0; n < kTaps; ++n) {
    const double sign = (n % 2 == 0) ? 1.0 : -1.0;
    fb.analysisHigh[n] = sign * lowpass[kTaps - 1 - n];
  }
  for (std::size_t n = 0; n < kTaps; ++n) {
    fb.synthesisLow[n] = fb.analysisLow[kTaps - 1 - n];
    fb.synthesisHigh[n] = fb.analysisHigh[kTaps - 1 - n];
  }
  return fb;
}

const FilterBank& symlet8() {
  static const FilterBank bank = FilterBank::from_lowpass(
      "sym4", {-0.07576571478950221, -0.029635527646002493, 0.497618667632775, 0.8037387518051321,
               0.29785779560530606, -0.09921954357663353, -0.012603967262031304, 0.032223100604051466});
  return bank;
}

Dwt1dResult dwt1d_step(std::span<const double> signal, const FilterBank& fb) {
  const std::size_t n = signal.size();
  if (n < 2 || n % 2 != 0) {
    fail(ErrorKind::InvalidArgument, "dwt1d_step needs an even length >= 2, got " + std::to_string(n));
  }
  const auto len = static_cast<std::ptrdiff_t>(n);
  Dwt1dResult out{std::vector<double>(n / 2), std::vector<double>(n / 2)};
  for (std::size_t k = 0; k < n / 2; ++k) {
    double a = 0.0;
    double d = 0.0;
    for (std::ptrdiff_t t = 0; t < kTaps; ++t) {
      const double x = signal[wrap(2 * static_cast<std::ptrdiff_t>(k) - t, len)];
      a += fb.analysisLow[t] * x;
      d += fb.analysisHigh[t] * x;
    }
    out.approx[k] = a;
    out.detail[k] = d;
  }
  return out;
}

std::vector<double> idwt1d_step(std::span<const double> approx, std::span<const double> detail,
                                const FilterBank& fb) {
  if (approx.size() != detail.size()) {
    fail(ErrorKind::InvalidArgument, "idwt1d_step: approx length " + std::to_string(approx.size()) +
                                         " != detail length " + std::to_string(detail.size()));
  }
  if (approx.empty()) fail(ErrorKind::InvalidArgument, "idwt1d_step: empty input");
  const auto len = static_cast<std::ptrdiff_t>(2 * approx.size());
  std::vector<double> out(2 * approx.size(), 0.0);
  for (std::size_t k = 0; k < approx.size(); ++k) {
    const std::ptrdiff_t origin = 2 * static_cast<std::ptrdiff_t>(k) - (kTaps - 1);
    for (std::ptrdiff_t t = 0; t < kTaps; ++t) {
      out[wrap(origin + t, len)] += approx[k] * fb.synthesisLow[t] + detail[k] * fb.synthesisHigh[t];
    }
  }
  return out;
}

SubbandPyramid dwt2d(const Matrix& block, std::size_t levels, const FilterBank& fb) {
  const std::size_t side = block.rows();
  if (side != block.cols() || !is_power_of_two(side)) {
    fail(ErrorKind::Geometry, "dwt2d needs a square power-of-two block, got " + std::to_string(block.rows()) +
                                  "x" + std::to_string(block.cols()));
  }
  const std::size_t maxLevels = log2_exact(side);
  if (levels == 0 || levels > maxLevels) {
    fail(ErrorKind::InvalidArgument, "levels " + std::to_string(levels) + " outside 1.." +
                                         std::to_string(maxLevels) + " for side " + std::to_string(side));
  }

  Matrix work = block;
  SubbandPyramid pyr;
  pyr.blockSize = side;
  pyr.levels = levels;
  std::size_t s = side;
  for (std::size_t level = 0; level < levels; ++level, s /= 2) {
    analyze_square(work, s, fb);
    const std::size_t h = s / 2;
    pyr.details.push_back(DetailBands{copy_region(work, h, 0, h), copy_region(work, 0, h, h),
                                      copy_region(work, h, h, h)});
  }
  pyr.ll = copy_region(work, 0, 0, s);
  return pyr;
}

Matrix idwt2d(const SubbandPyramid& pyr, const FilterBank& fb) {
  const std::size_t side = pyr.blockSize;
  if (!is_power_of_two(side) || pyr.levels == 0 || pyr.levels > log2_exact(side) ||
      pyr.details.size() != pyr.levels) {
    fail(ErrorKind::Geometry, "malformed subband pyramid");
  }
  Matrix work(side, side);
  std::size_t s = side >> pyr.levels;
  paste_region(work, pyr.ll, 0, 0, s);
  for (std::size_t level = pyr.levels; level-- > 0;) {
    const DetailBands& d = pyr.details[level];
    paste_region(work, d.lh, s, 0, s);
    paste_region(work, d.hl, 0, s, s);
    paste_region(work, d.hh, s, s, s);
    s *= 2;
    synthesize_square(work, s, fb);
  }
  return work;
}

}  // namespace wmark
