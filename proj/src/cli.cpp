#include "wmark/cli.hpp"

#include <charconv>
#include <sstream>

#include "wmark/bench.hpp"
#include "wmark/error.hpp"
#include "wmark/format.hpp"
#include "wmark/keyfile.hpp"
#include "wmark/metrics.hpp"
#include "wmark/pgm.hpp"

namespace wmark::cli {

namespace {

void check_writable(const std::filesystem::path& path, const CommonOptions& common) {
  if (!common.force && std::filesystem::exists(path)) {
    fail(ErrorKind::InvalidArgument, path.string() + " exists; pass --force to overwrite");
  }
}

std::pair<std::size_t, std::size_t> parse_geometry(const std::string& text) {
  const auto x = text.find_first_of("xX");
  std::size_t w = 0;
  std::size_t h = 0;
  bool ok = x != std::string::npos;
  if (ok) {
    const auto r1 = std::from_chars(text.data(), text.data() + x, w);
    const auto r2 = std::from_chars(text.data() + x + 1, text.data() + text.size(), h);
    ok = r1.ec == std::errc{} && r1.ptr == text.data() + x && r2.ec == std::errc{} &&
         r2.ptr == text.data() + text.size() && w > 0 && h > 0;
  }
  if (!ok) fail(ErrorKind::InvalidArgument, "geometry must look like 512x512, got '" + text + "'");
  return {w, h};
}

}  // namespace

int exit_code_for(const std::exception& e) noexcept {
  if (const auto* err = dynamic_cast<const Error*>(&e)) {
    switch (err->kind()) {
      case ErrorKind::InvalidArgument: return kUsage;
      case ErrorKind::Geometry:
      case ErrorKind::Format:
      case ErrorKind::Io: return kData;
      case ErrorKind::Internal: return kInternal;
    }
  }
  return kInternal;
}

Rect parse_rect(const std::string& text) {
  std::size_t v[4] = {};
  const char* p = text.data();
  const char* end = text.data() + text.size();
  for (int i = 0; i < 4; ++i) {
    const auto r = std::from_chars(p, end, v[i]);
    if (r.ec != std::errc{}) fail(ErrorKind::InvalidArgument, "rectangle must be x,y,w,h, got '" + text + "'");
    p = r.ptr;
    if (i < 3) {
      if (p == end || *p != ',') fail(ErrorKind::InvalidArgument, "rectangle must be x,y,w,h, got '" + text + "'");
      ++p;
    }
  }
  if (p != end) fail(ErrorKind::InvalidArgument, "rectangle must be x,y,w,h, got '" + text + "'");
  return Rect{v[0], v[1], v[2], v[3]};
}

WatermarkKey resolve_key(const GenKeyOptions& opts) {
  const Method method = parse_method(opts.method);
  WatermarkKey key = method == Method::M1 ? WatermarkKey::default_m1(opts.seed) : WatermarkKey::default_m2(opts.seed);
  if (opts.alpha) key.alpha = *opts.alpha;
  if (opts.blockSize) {
    key.blockSize = *opts.blockSize;
    if (is_power_of_two(key.blockSize)) key.levels = log2_exact(key.blockSize);
  }
  if (opts.levels) key.levels = *opts.levels;
  if (opts.numBlocks) key.numBlocks = *opts.numBlocks;
  if (method == Method::M1) key.numBlocks = 0;
  key.epsilon = opts.epsilon;
  key.validate();
  return key;
}

void gen_key(const GenKeyOptions& opts, const CommonOptions& common, std::ostream& out) {
  const WatermarkKey key = resolve_key(opts);
  std::optional<std::size_t> cap;
  if (opts.geometry) {
    const auto [w, h] = parse_geometry(*opts.geometry);
    cap = capacity(key, w, h);
  }
  check_writable(opts.output, common);
  save_key(key, opts.output);
  if (cap && !common.quiet) out << "capacity: " << *cap << " bits for " << *opts.geometry << "\n";
  if (!common.quiet) out << "wrote key " << opts.output.string() << "\n";
}

void embed(const EmbedOptions& opts, const CommonOptions& common, std::ostream& out) {
  const WatermarkKey key = load_key(opts.key);
  const PixelBuffer8 input = load_pgm(opts.input);
  const GrayImage host = to_gray(input);
  const std::size_t cap = capacity(key, host.width(), host.height());

  const BitSequence bits = opts.bits ? load_payload(*opts.bits) : generate_watermark(key.seed, cap);
  if (bits.size() != cap) {
    fail(ErrorKind::InvalidArgument, "payload has " + std::to_string(bits.size()) + " bits but capacity is " +
                                         std::to_string(cap));
  }
  const std::filesystem::path sidecar =
      opts.payloadOut ? *opts.payloadOut : std::filesystem::path(opts.output.string() + ".bits");
  check_writable(opts.output, common);
  check_writable(sidecar, common);

  const PixelBuffer8 marked = quantize_to_8bit(wmark::embed(host, bits, key));
  save_pgm(marked, opts.output);
  save_payload(bits, sidecar);
  if (!common.quiet) {
    out << "embedded " << bits.size() << " bits (" << to_string(key.method) << ")\n";
    out << "psnr_db: " << format_psnr(psnr(input, marked)) << "\n";
    out << "payload: " << sidecar.string() << "\n";
  }
}

void attack(const AttackOptions& opts, const CommonOptions& common, std::ostream& out) {
  opts.spec.validate();
  const GrayImage img = to_gray(load_pgm(opts.input));
  const GrayImage attacked = apply_attack(img, opts.spec);
  check_writable(opts.output, common);
  save_pgm(quantize_to_8bit(attacked), opts.output);
  if (!common.quiet) out << "attack: " << to_string(opts.spec.kind) << " " << opts.spec.params() << "\n";
}

void detect(const DetectOptions& opts, const CommonOptions& common, std::ostream& out) {
  const WatermarkKey key = load_key(opts.key);
  const PixelBuffer8 original = load_pgm(opts.original);
  const PixelBuffer8 received = load_pgm(opts.received);
  if (original.width != received.width || original.height != received.height) {
    fail(ErrorKind::Geometry, "original is " + std::to_string(original.width) + "x" + std::to_string(original.height) +
                                  " but received is " + std::to_string(received.width) + "x" +
                                  std::to_string(received.height));
  }
  std::optional<BitSequence> expected;
  if (opts.expected) expected = load_payload(*opts.expected);

  const DetectionReport report = wmark::detect(to_gray(original), to_gray(received), key);
  ReportExtras extras;
  extras.psnrDb = psnr(original, received);
  if (expected) {
    extras.berPercent = ber(*expected, report.bits);
    extras.corrCoeff = corr_coeff(*expected, report.bits);
  }
  check_writable(opts.report, common);
  write_text_file(opts.report, serialize_report(report, key, extras));
  if (!common.quiet) {
    out << "detected " << report.bits.size() << " bits\n";
    if (extras.berPercent) out << "ber_percent: " << format_fixed(*extras.berPercent, 6) << "\n";
    if (extras.corrCoeff) out << "corr_coeff: " << format_fixed(*extras.corrCoeff, 6) << "\n";
  }
}

void bench(const BenchOptions& opts, const CommonOptions& common, std::ostream& out) {
  BenchConfig config;
  config.suite = parse_suite(opts.suite);
  config.runs = opts.runs;
  config.workers = opts.workers;
  config.timing = opts.timing;
  config.noiseSeed = opts.noiseSeed;
  config.keys.push_back(opts.keyM1 ? load_key(*opts.keyM1) : WatermarkKey::default_m1());
  config.keys.push_back(opts.keyM2 ? load_key(*opts.keyM2) : WatermarkKey::default_m2());
  if (opts.runs < 1) fail(ErrorKind::InvalidArgument, "runs must be >= 1");
  if (opts.workers < 1) fail(ErrorKind::InvalidArgument, "workers must be >= 1");

  std::filesystem::path summary = opts.summary ? *opts.summary : opts.output;
  if (!opts.summary) summary.replace_extension(".summary.csv");
  check_writable(opts.output, common);
  check_writable(summary, common);

  const auto images = load_bench_images(opts.images);
  const auto rows = run_bench(images, config);
  write_text_file(opts.output, bench_csv(rows));
  write_text_file(summary, bench_summary_csv(rows));
  if (!common.quiet) {
    std::size_t failed = 0;
    for (const auto& r : rows) failed += !r.error.empty();
    out << "images: " << images.size() << ", rows: " << rows.size() << ", failed rows: " << failed << "\n";
    out << "wrote " << opts.output.string() << " and " << summary.string() << "\n";
  }
}

}  // namespace wmark::cli
