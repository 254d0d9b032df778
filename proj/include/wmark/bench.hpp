#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "wmark/attacks.hpp"
#include "wmark/image.hpp"
#include "wmark/watermark.hpp"

namespace wmark {

enum class Suite { None, Jpeg, Noise, Rotation, Scaling, Filter, Crop, All };

Suite parse_suite(std::string_view name);
std::string_view to_string(Suite suite) noexcept;

/// One column of a suite's grid. For AWGN the noise seed is filled in per run.
struct BenchCell {
  std::string label;  // e.g. "jpeg:quality=30", "awgn:sigma=10"
  AttackSpec attack;
};

/// Grid for a suite on a width x height image:
///   jpeg      quality 10..90 step 10
///   noise     sigma 5..30 step 5
///   rotation  +-0.5, +-1, +-5, 10, 30 degrees
///   scaling   factor 0.9..0.5 step 0.1
///   filter    mean and median, windows 3, 5, 7
///   crop      top-left rectangles covering 1/16 and 1/4 of the area
std::vector<BenchCell> suite_cells(Suite suite, std::size_t width, std::size_t height);

struct BenchImage {
  std::string name;
  PixelBuffer8 pixels;
  std::string error;  // non-empty when the image could not be loaded
};

/// *.pgm files of a directory sorted by file name. Unreadable files are
/// returned with their error set.
std::vector<BenchImage> load_bench_images(const std::filesystem::path& dir);

struct BenchConfig {
  std::vector<WatermarkKey> keys;  // one per method
  Suite suite = Suite::All;
  int runs = 5;
  int workers = 1;
  bool timing = false;           // record wall_ms; 0 otherwise so output stays reproducible
  std::uint64_t noiseSeed = 0;   // AWGN seed of run r is noiseSeed + r
};

struct BenchRow {
  std::string image;
  std::string method;
  std::string cell;
  std::string attackKind;
  std::string attackParams;
  int run = 0;
  double berPercent = 0.0;
  double psnrDb = 0.0;  // watermarked vs original
  double corrCoeff = 0.0;
  std::int64_t wallMs = 0;
  std::string error;
};

/// Runs the grid. Rows are ordered image, key, cell, run regardless of workers.
/// The payload of run r is generate_watermark(key.seed + r, capacity).
std::vector<BenchRow> run_bench(const std::vector<BenchImage>& images, const BenchConfig& config);

/// Columns: image,method,attack_kind,attack_params,run,ber_percent,psnr_db,corr_coeff,wall_ms,error
std::string bench_csv(const std::vector<BenchRow>& rows);

/// One line per (image, method): mean watermarked PSNR and the mean BER of every cell.
std::string bench_summary_csv(const std::vector<BenchRow>& rows);

}  // namespace wmark
