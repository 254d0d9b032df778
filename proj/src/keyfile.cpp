#include "wmark/keyfile.hpp"

#include <cmath>
#include <fstream>
#include <iterator>
#include <set>

#include "json.hpp"
#include "wmark/error.hpp"

namespace wmark {

namespace {

using Json = nlohmann::ordered_json;

const std::set<std::string>& key_fields() {
  static const std::set<std::string> fields = {"schema_version", "method", "alpha",  "block_size",
                                               "levels",         "num_blocks", "seed", "epsilon"};
  return fields;
}

const Json& require(const Json& doc, const char* name) {
  const auto it = doc.find(name);
  if (it == doc.end()) fail(ErrorKind::Format, std::string("key file is missing field '") + name + "'");
  return *it;
}

std::uint64_t require_unsigned(const Json& doc, const char* name) {
  const Json& v = require(doc, name);
  if (!v.is_number_unsigned()) {
    fail(ErrorKind::Format, std::string("key field '") + name + "' must be a nonnegative integer");
  }
  return v.get<std::uint64_t>();
}

double require_real(const Json& doc, const char* name) {
  const Json& v = require(doc, name);
  if (!v.is_number()) fail(ErrorKind::Format, std::string("key field '") + name + "' must be a number");
  return v.get<double>();
}

}  // namespace

std::string serialize_key(const WatermarkKey& key) {
  key.validate();
  Json doc;
  doc["schema_version"] = kKeySchemaVersion;
  doc["method"] = std::string(to_string(key.method));
  doc["alpha"] = key.alpha;
  doc["block_size"] = key.blockSize;
  doc["levels"] = key.levels;
  doc["num_blocks"] = key.numBlocks;
  doc["seed"] = key.seed;
  doc["epsilon"] = key.epsilon;
  return doc.dump(2) + "\n";
}

WatermarkKey parse_key(const std::string& text) {
  Json doc;
  try {
    doc = Json::parse(text);
  } catch (const Json::parse_error& e) {
    fail(ErrorKind::Format, std::string("key file is not valid JSON: ") + e.what());
  }
  if (!doc.is_object()) fail(ErrorKind::Format, "key file must hold a JSON object");
  for (const auto& [name, value] : doc.items()) {
    if (!key_fields().contains(name)) fail(ErrorKind::Format, "key file has unknown field '" + name + "'");
  }
  const auto version = require_unsigned(doc, "schema_version");
  if (version != kKeySchemaVersion) {
    fail(ErrorKind::Format, "unsupported key schema_version " + std::to_string(version));
  }
  const Json& method = require(doc, "method");
  if (!method.is_string()) fail(ErrorKind::Format, "key field 'method' must be a string");

  WatermarkKey key;
  key.method = parse_method(method.get<std::string>());
  key.alpha = require_real(doc, "alpha");
  key.blockSize = require_unsigned(doc, "block_size");
  key.levels = require_unsigned(doc, "levels");
  key.numBlocks = require_unsigned(doc, "num_blocks");
  key.seed = require_unsigned(doc, "seed");
  key.epsilon = require_real(doc, "epsilon");
  key.validate();
  return key;
}

WatermarkKey load_key(const std::filesystem::path& path) {
  try {
    return parse_key(read_text_file(path));
  } catch (const Error& e) {
    fail(e.kind(), path.string() + ": " + e.what());
  }
}

void save_key(const WatermarkKey& key, const std::filesystem::path& path) { write_text_file(path, serialize_key(key)); }

std::string serialize_payload(const BitSequence& bits) { return bits.to_string() + "\n"; }

BitSequence parse_payload(const std::string& text) {
  std::string_view body = text;
  if (!body.empty() && body.back() == '\n') body.remove_suffix(1);
  if (!body.empty() && body.back() == '\r') body.remove_suffix(1);
  if (body.empty()) fail(ErrorKind::Format, "payload file is empty");
  return BitSequence::from_string(body);
}

BitSequence load_payload(const std::filesystem::path& path) {
  try {
    return parse_payload(read_text_file(path));
  } catch (const Error& e) {
    fail(e.kind(), path.string() + ": " + e.what());
  }
}

void save_payload(const BitSequence& bits, const std::filesystem::path& path) {
  write_text_file(path, serialize_payload(bits));
}

std::string serialize_report(const DetectionReport& report, const WatermarkKey& key, const ReportExtras& extras) {
  Json doc;
  doc["schema_version"] = kReportSchemaVersion;
  doc["method"] = std::string(to_string(key.method));
  doc["threshold"] = report.threshold;
  doc["bits"] = report.bits.to_string();
  doc["blocks"] = report.blocks;
  doc["margins"] = report.margins;
  Json flags = Json::array();
  for (bool f : report.undecidable) flags.push_back(f);
  doc["undecidable"] = flags;
  if (extras.psnrDb) {
    if (std::isinf(*extras.psnrDb)) {
      doc["psnr_db"] = "inf";
    } else {
      doc["psnr_db"] = *extras.psnrDb;
    }
  }
  if (extras.berPercent) doc["ber_percent"] = *extras.berPercent;
  if (extras.corrCoeff) doc["corr_coeff"] = *extras.corrCoeff;
  return doc.dump(2) + "\n";
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorKind::Io, "cannot open " + path.string());
  return std::string((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
}

void write_text_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) fail(ErrorKind::Io, "cannot write " + path.string());
  out << text;
  if (!out) fail(ErrorKind::Io, "write failed for " + path.string());
}

}  // namespace wmark
