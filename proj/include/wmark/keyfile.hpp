#pragma once

#include <filesystem>
#include <optional>
#include <string>

#include "wmark/watermark.hpp"

namespace wmark {

inline constexpr int kKeySchemaVersion = 1;
inline constexpr int kReportSchemaVersion = 1;

/// Key document: a flat JSON object with exactly the fields
/// schema_version, method, alpha, block_size, levels, num_blocks, seed, epsilon.
std::string serialize_key(const WatermarkKey& key);
WatermarkKey parse_key(const std::string& text);
WatermarkKey load_key(const std::filesystem::path& path);
void save_key(const WatermarkKey& key, const std::filesystem::path& path);

/// Payload sidecar: '0'/'1' characters followed by one newline.
std::string serialize_payload(const BitSequence& bits);
BitSequence parse_payload(const std::string& text);
BitSequence load_payload(const std::filesystem::path& path);
void save_payload(const BitSequence& bits, const std::filesystem::path& path);

struct ReportExtras {
  std::optional<double> psnrDb;  // received vs original
  std::optional<double> berPercent;
  std::optional<double> corrCoeff;
};

/// Detection report as JSON. Infinite PSNR is written as the string "inf".
std::string serialize_report(const DetectionReport& report, const WatermarkKey& key, const ReportExtras& extras);

std::string read_text_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, const std::string& text);

}  // namespace wmark
