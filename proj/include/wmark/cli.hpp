#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <ostream>
#include <string>

#include "wmark/attacks.hpp"
#include "wmark/watermark.hpp"

namespace wmark::cli {

enum ExitCode : int { kOk = 0, kUsage = 1, kData = 2, kInternal = 3 };

/// Maps an exception from a command onto its exit code.
int exit_code_for(const std::exception& e) noexcept;

struct CommonOptions {
  bool force = false;
  bool quiet = false;
};

struct GenKeyOptions {
  std::string method = "M1";
  std::optional<double> alpha;
  std::optional<std::size_t> blockSize;
  std::optional<std::size_t> levels;
  std::optional<std::size_t> numBlocks;
  std::uint64_t seed = 0;
  double epsilon = 1e-6;
  std::optional<std::string> geometry;  // "WxH"
  std::filesystem::path output;
};

/// Fills unset fields from the method defaults (M1: 1.01, 32x32; M2: 1.025,
/// 16x16, 256 blocks; levels = log2(block size)).
WatermarkKey resolve_key(const GenKeyOptions& opts);

void gen_key(const GenKeyOptions& opts, const CommonOptions& common, std::ostream& out);

struct EmbedOptions {
  std::filesystem::path key;
  std::filesystem::path input;
  std::filesystem::path output;
  std::optional<std::filesystem::path> bits;
  std::optional<std::filesystem::path> payloadOut;  // defaults to <output>.bits
};

void embed(const EmbedOptions& opts, const CommonOptions& common, std::ostream& out);

struct AttackOptions {
  AttackSpec spec;
  std::filesystem::path input;
  std::filesystem::path output;
};

void attack(const AttackOptions& opts, const CommonOptions& common, std::ostream& out);

struct DetectOptions {
  std::filesystem::path key;
  std::filesystem::path original;
  std::filesystem::path received;
  std::optional<std::filesystem::path> expected;
  std::filesystem::path report;
};

void detect(const DetectOptions& opts, const CommonOptions& common, std::ostream& out);

struct BenchOptions {
  std::filesystem::path images;
  std::string suite = "all";
  std::filesystem::path output;
  std::optional<std::filesystem::path> summary;  // defaults to <output stem>.summary.csv
  std::optional<std::filesystem::path> keyM1;
  std::optional<std::filesystem::path> keyM2;
  int runs = 5;
  int workers = 1;
  bool timing = false;
  std::uint64_t noiseSeed = 0;
};

void bench(const BenchOptions& opts, const CommonOptions& common, std::ostream& out);

/// Parses "x,y,w,h".
Rect parse_rect(const std::string& text);

}  // namespace wmark::cli
