#pragma once

#include <string>

#include "wmark/image.hpp"
#include "wmark/watermark.hpp"

namespace wmark {

/// Percentage of differing positions.
double ber(const BitSequence& reference, const BitSequence& detected);

/// 10 log10(255^2 / MSE). Identical inputs give +infinity.
double psnr(const PixelBuffer8& a, const PixelBuffer8& b);

/// Normalized correlation of the sequences mapped 0 -> -1, 1 -> +1.
double corr_coeff(const BitSequence& reference, const BitSequence& detected);

/// PSNR for reports: "inf" for identical images, otherwise fixed-point.
std::string format_psnr(double db, int decimals = 4);

struct MetricsReport {
  double berPercent = 0.0;
  double psnrDb = 0.0;
  double corrCoeff = 0.0;
};

}  // namespace wmark
