#include "wmark/metrics.hpp"

#include <cmath>
#include <limits>

#include "wmark/error.hpp"
#include "wmark/format.hpp"

namespace wmark {

namespace {

void check_lengths(const BitSequence& a, const BitSequence& b) {
  if (a.size() != b.size()) {
    fail(ErrorKind::InvalidArgument, "bit sequences differ in length (" + std::to_string(a.size()) + " vs " +
                                         std::to_string(b.size()) + ")");
  }
  if (a.empty()) fail(ErrorKind::InvalidArgument, "bit sequences are empty");
}

}  // namespace

double ber(const BitSequence& reference, const BitSequence& detected) {
  check_lengths(reference, detected);
  std::size_t errors = 0;
  for (std::size_t i = 0; i < reference.size(); ++i) errors += reference[i] != detected[i];
  return 100.0 * static_cast<double>(errors) / static_cast<double>(reference.size());
}

double psnr(const PixelBuffer8& a, const PixelBuffer8& b) {
  if (a.width != b.width || a.height != b.height || a.samples.size() != b.samples.size()) {
    fail(ErrorKind::Geometry, "psnr needs equal dimensions");
  }
  if (a.samples.empty()) fail(ErrorKind::Geometry, "psnr of empty images");
  double sse = 0.0;
  for (std::size_t i = 0; i < a.samples.size(); ++i) {
    const double d = static_cast<double>(a.samples[i]) - static_cast<double>(b.samples[i]);
    sse += d * d;
  }
  if (sse == 0.0) return std::numeric_limits<double>::infinity();
  const double mse = sse / static_cast<double>(a.samples.size());
  return 10.0 * std::log10(255.0 * 255.0 / mse);
}

double corr_coeff(const BitSequence& reference, const BitSequence& detected) {
  check_lengths(reference, detected);
  double dot = 0.0;
  double energyRef = 0.0;
  double energyDet = 0.0;
  for (std::size_t i = 0; i < reference.size(); ++i) {
    const double w = reference[i] ? 1.0 : -1.0;
    const double v = detected[i] ? 1.0 : -1.0;
    dot += w * v;
    energyRef += w * w;
    energyDet += v * v;
  }
  return dot / std::sqrt(energyRef * energyDet);
}

std::string format_psnr(double db, int decimals) {
  if (std::isinf(db) && db > 0) return "inf";
  return format_fixed(db, decimals);
}

}  // namespace wmark
