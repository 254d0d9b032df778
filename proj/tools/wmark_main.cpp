// Command-line front end: gen-key, embed, attack, detect, bench.

#include <iostream>

#include "CLI11.hpp"
#include "wmark/cli.hpp"
#include "wmark/error.hpp"

namespace cli = wmark::cli;

int main(int argc, char** argv) {
  CLI::App app{"Block-based wavelet-domain image watermarking toolkit"};
  app.require_subcommand(1);

  cli::CommonOptions common;
  app.add_flag("--force", common.force, "Overwrite existing output files");
  app.add_flag("--quiet", common.quiet, "Suppress informational output");

  cli::GenKeyOptions gk;
  auto* genKey = app.add_subcommand("gen-key", "Write a watermark key file");
  genKey->add_option("--method", gk.method, "M1 (all blocks) or M2 (top-variance blocks)")->capture_default_str();
  genKey->add_option("--alpha", gk.alpha, "Strength factor (> 1); default 1.01 for M1, 1.025 for M2");
  genKey->add_option("--block-size", gk.blockSize, "Block side in pixels; default 32 for M1, 16 for M2");
  genKey->add_option("--levels", gk.levels, "Decomposition levels; default log2(block size)");
  genKey->add_option("--num-blocks", gk.numBlocks, "Embedding blocks for M2; default 256");
  genKey->add_option("--seed", gk.seed, "Payload generator seed")->capture_default_str();
  genKey->add_option("--epsilon", gk.epsilon, "Zero-coefficient guard")->capture_default_str();
  genKey->add_option("--geometry", gk.geometry, "Print the capacity for an image of this size, e.g. 512x512");
  genKey->add_option("-o,--output", gk.output, "Key file to write")->required();

  cli::EmbedOptions em;
  auto* embed = app.add_subcommand("embed", "Embed a payload into a PGM image");
  embed->add_option("--key", em.key, "Key file")->required();
  embed->add_option("-i,--input", em.input, "Host image (P5 PGM)")->required();
  embed->add_option("-o,--output", em.output, "Watermarked image to write")->required();
  embed->add_option("--bits", em.bits, "Payload file; generated from the key seed when omitted");
  embed->add_option("--payload-out", em.payloadOut, "Payload sidecar path; default <output>.bits");

  cli::AttackOptions at;
  std::string attackType;
  std::string rect;
  auto* attack = app.add_subcommand("attack", "Apply an attack to a PGM image");
  attack->add_option("--type", attackType, "jpeg, awgn, mean, median, rotate, scale, crop or none")->required();
  attack->add_option("--quality", at.spec.quality, "JPEG quality 1..100")->capture_default_str();
  attack->add_option("--sigma", at.spec.sigma, "Noise standard deviation (>= 0)");
  attack->add_option("--noise-seed", at.spec.noiseSeed, "Noise seed")->capture_default_str();
  attack->add_option("--window", at.spec.window, "Odd filter window >= 3")->capture_default_str();
  attack->add_option("--angle", at.spec.angleDegrees, "Rotation angle in degrees");
  attack->add_option("--factor", at.spec.factor, "Scale factor in (0, 1]");
  attack->add_option("--rect", rect, "Crop rectangle x,y,w,h");
  attack->add_option("--fill", at.spec.fill, "Crop fill value 0..255")->capture_default_str();
  attack->add_option("-i,--input", at.input, "Input image")->required();
  attack->add_option("-o,--output", at.output, "Attacked image to write")->required();

  cli::DetectOptions de;
  auto* detect = app.add_subcommand("detect", "Recover the payload (needs the original image)");
  detect->add_option("--key", de.key, "Key file")->required();
  detect->add_option("--original", de.original, "Original host image")->required();
  detect->add_option("--received", de.received, "Possibly attacked watermarked image")->required();
  detect->add_option("--expected", de.expected, "Embedded payload, enables BER and correlation");
  detect->add_option("--report", de.report, "Report file to write")->required();

  cli::BenchOptions be;
  auto* bench = app.add_subcommand("bench", "Run an attack grid over a directory of PGM images");
  bench->add_option("--images", be.images, "Directory of P5 PGM images")->required();
  bench->add_option("--suite", be.suite, "none, jpeg, noise, rotation, scaling, filter, crop or all")
      ->capture_default_str();
  bench->add_option("-o,--output", be.output, "Per-run CSV to write")->required();
  bench->add_option("--summary", be.summary, "Summary CSV; default <output>.summary.csv");
  bench->add_option("--key-m1", be.keyM1, "M1 key file; defaults are used when omitted");
  bench->add_option("--key-m2", be.keyM2, "M2 key file; defaults are used when omitted");
  bench->add_option("--runs", be.runs, "Runs per cell")->capture_default_str();
  bench->add_option("--workers", be.workers, "Worker threads")->capture_default_str();
  bench->add_option("--noise-seed", be.noiseSeed, "Base AWGN seed")->capture_default_str();
  bench->add_flag("--timing", be.timing, "Record wall_ms (makes output run-dependent)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? cli::kOk : cli::kUsage;
  }

  try {
    if (*genKey) cli::gen_key(gk, common, std::cout);
    if (*embed) cli::embed(em, common, std::cout);
    if (*attack) {
      at.spec.kind = wmark::parse_attack_kind(attackType);
      if (!rect.empty()) at.spec.rect = cli::parse_rect(rect);
      cli::attack(at, common, std::cout);
    }
    if (*detect) cli::detect(de, common, std::cout);
    if (*bench) cli::bench(be, common, std::cout);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return cli::exit_code_for(e);
  }
  return cli::kOk;
}
