#include <algorithm>
#include <cmath>
#include <random>

#include "doctest.h"
#include "support.hpp"
#include "wmark/attacks.hpp"
#include "wmark/error.hpp"
#include "wmark/metrics.hpp"
#include "wmark/watermark.hpp"

using namespace wmark;

namespace {

bool is_8bit(const GrayImage& img) {
  return std::all_of(img.pixels().begin(), img.pixels().end(),
                     [](double v) { return v >= 0 && v <= 255 && v == std::round(v); });
}

GrayImage impulse_field() {
  GrayImage img(9, 9, 0.0);
  img.at(4, 4) = 255.0;
  return img;
}

}  // namespace

TEST_CASE("awgn") {
  std::mt19937_64 rng(31);
  const GrayImage img = testing::random_image(rng, 32, 32);
  CHECK(awgn(img, 0.0, 5) == requantize(img));
  CHECK(awgn(img, 7.0, 5) == awgn(img, 7.0, 5));
  CHECK(awgn(img, 7.0, 5) != awgn(img, 7.0, 6));
  CHECK_THROWS_AS(awgn(img, -1.0, 5), Error);

  const GrayImage flat(512, 512, 128.0);
  const GrayImage noisy = awgn(flat, 10.0, 77);
  double mean = 0.0;
  for (double v : noisy.pixels()) mean += v;
  mean /= static_cast<double>(noisy.size());
  double var = 0.0;
  for (double v : noisy.pixels()) var += (v - mean) * (v - mean);
  const double sd = std::sqrt(var / static_cast<double>(noisy.size() - 1));
  CHECK(sd >= 9.7);
  CHECK(sd <= 10.3);
  CHECK(std::abs(mean - 128.0) < 0.1);
}

TEST_CASE("mean_filter") {
  const GrayImage flat(16, 16, 77.0);
  CHECK(mean_filter(flat, 5) == flat);

  const GrayImage out = mean_filter(impulse_field(), 3);
  for (std::size_t y = 0; y < 9; ++y) {
    for (std::size_t x = 0; x < 9; ++x) {
      const bool near = x >= 3 && x <= 5 && y >= 3 && y <= 5;
      CHECK(out.at(x, y) == (near ? 28.0 : 0.0));
    }
  }

  GrayImage edge(8, 8, 0.0);
  for (std::size_t y = 0; y < 8; ++y) {
    for (std::size_t x = 4; x < 8; ++x) edge.at(x, y) = 255.0;
  }
  const GrayImage blurred = mean_filter(edge, 3);
  for (std::size_t y = 0; y < 8; ++y) {
    CHECK(blurred.at(2, y) == 0.0);
    CHECK(blurred.at(3, y) == 85.0);
    CHECK(blurred.at(4, y) == 170.0);
    CHECK(blurred.at(5, y) == 255.0);
  }

  CHECK_THROWS_AS(mean_filter(flat, 4), Error);
  CHECK_THROWS_AS(mean_filter(flat, 1), Error);
  CHECK_THROWS_AS(mean_filter(GrayImage(4, 4), 5), Error);
}

TEST_CASE("median_filter") {
  const GrayImage flat(16, 16, 77.0);
  CHECK(median_filter(flat, 3) == flat);
  const GrayImage cleaned = median_filter(impulse_field(), 3);
  for (double v : cleaned.pixels()) CHECK(v == 0.0);
  CHECK_THROWS_WITH_AS(median_filter(flat, 4), "window must be odd and >= 3, got 4", Error);
}

TEST_CASE("median_filter on salt-and-pepper noise matches a brute-force order statistic") {
  std::mt19937_64 rng(32);
  for (int trial = 0; trial < 5; ++trial) {
    GrayImage img(32, 32, 128.0);
    std::vector<bool> hit(img.size(), false);
    for (std::size_t i = 0; i < img.size(); ++i) {
      if (rng() % 10 == 0) {
        img.pixels()[i] = rng() % 2 ? 255.0 : 0.0;
        hit[i] = true;
      }
    }
    const GrayImage out = median_filter(img, 3);
    for (int y = 0; y < 32; ++y) {
      for (int x = 0; x < 32; ++x) {
        std::vector<double> hood;
        int corrupted = 0;
        for (int dy = -1; dy <= 1; ++dy) {
          for (int dx = -1; dx <= 1; ++dx) {
            const int sx = std::clamp(x + dx, 0, 31);
            const int sy = std::clamp(y + dy, 0, 31);
            hood.push_back(img.at(sx, sy));
            corrupted += hit[static_cast<std::size_t>(sy * 32 + sx)];
          }
        }
        std::sort(hood.begin(), hood.end());
        CHECK(out.at(x, y) == hood[4]);
        if (corrupted < 5) CHECK(out.at(x, y) == 128.0);
      }
    }
  }
}

TEST_CASE("rotate_attack") {
  std::mt19937_64 rng(33);
  const GrayImage img = testing::random_image(rng, 40, 40, 0.0, 255.5);
  CHECK(rotate_attack(img, 0.0) == requantize(img));
  const GrayImage flat(33, 47, 91.0);
  CHECK(rotate_attack(flat, 5.0) == flat);
  CHECK(rotate_attack(flat, -30.0) == flat);

  // A quarter turn maps the integer grid onto itself.
  for (std::size_t n : {8u, 9u, 64u}) {
    const GrayImage sq = requantize(testing::random_image(rng, n, n, 0.0, 255.0));
    const GrayImage turned = rotate_bilinear(sq, 90.0);
    for (std::size_t y = 0; y < n; ++y) {
      for (std::size_t x = 0; x < n; ++x) CHECK(turned.at(x, y) == sq.at(y, n - 1 - x));
    }
    CHECK(rotate_attack(sq, 90.0) == sq);
  }
}

TEST_CASE("rotate_attack residual is interpolation only") {
  // Smooth host: bilinear error stays small, so a tiny angle is nearly lossless.
  std::vector<double> px(128 * 128);
  for (std::size_t y = 0; y < 128; ++y) {
    for (std::size_t x = 0; x < 128; ++x) {
      px[y * 128 + x] = std::round(128.0 + 60.0 * std::sin(x / 9.0) + 40.0 * std::cos(y / 7.0));
    }
  }
  const GrayImage img(128, 128, std::move(px));
  const double small = psnr(quantize_to_8bit(img), quantize_to_8bit(rotate_attack(img, 0.5)));
  const double large = psnr(quantize_to_8bit(img), quantize_to_8bit(rotate_attack(img, 30.0)));
  CHECK(small > 30.0);
  CHECK(small > large);
}

TEST_CASE("scale_attack") {
  std::mt19937_64 rng(35);
  const GrayImage img = testing::random_image(rng, 64, 48, -10.0, 270.0);
  CHECK(scale_attack(img, 1.0) == requantize(img));
  const GrayImage flat(64, 48, 200.0);
  for (double f : {0.9, 0.75, 0.5, 0.3}) CHECK(scale_attack(flat, f) == flat);

  GrayImage checker(512, 512);
  for (std::size_t y = 0; y < 512; ++y) {
    for (std::size_t x = 0; x < 512; ++x) checker.at(x, y) = (x + y) % 2 ? 255.0 : 0.0;
  }
  const GrayImage back = scale_attack(checker, 0.5);
  for (std::size_t y = 2; y < 510; ++y) {
    for (std::size_t x = 2; x < 510; ++x) CHECK(std::abs(back.at(x, y) - 127.5) <= 1.5);
  }

  CHECK_THROWS_AS(scale_attack(img, 0.0), Error);
  CHECK_THROWS_AS(scale_attack(img, 1.2), Error);
  CHECK_THROWS_AS(scale_attack(img, 0.001), Error);
}

TEST_CASE("resample_bilinear uses pixel-centre alignment") {
  // 2x downsample averages each 2x2 cell.
  GrayImage img(4, 2, std::vector<double>{0, 10, 20, 30, 40, 50, 60, 70});
  const GrayImage half = resample_bilinear(img, 2, 1);
  CHECK(half.at(0, 0) == doctest::Approx(25.0));
  CHECK(half.at(1, 0) == doctest::Approx(45.0));
}

TEST_CASE("jpeg quantization table scaling") {
  CHECK(jpeg_scaled_table(50) == jpeg_luma_table());
  const auto q10 = jpeg_scaled_table(10);
  CHECK(q10[0] == 80);    // (16*500+50)/100
  CHECK(q10[63] == 255);  // clamped
  const auto q25 = jpeg_scaled_table(25);
  CHECK(q25[0] == 32);
  const auto q90 = jpeg_scaled_table(90);
  CHECK(q90[0] == 3);     // (16*20+50)/100
  for (int v : jpeg_scaled_table(100)) CHECK(v == 1);
  CHECK_THROWS_AS(jpeg_scaled_table(0), Error);
  CHECK_THROWS_AS(jpeg_scaled_table(101), Error);
}

TEST_CASE("jpeg_attack") {
  for (int q : {1, 10, 50, 90, 100}) CHECK(jpeg_attack(GrayImage(16, 16, 128.0), q) == GrayImage(16, 16, 128.0));
  // DC of a constant block is 8 * (v - 128); 8 * 2 / 16 = 1 and 8 * 8 / 16 = 4 are integral.
  CHECK(jpeg_attack(GrayImage(16, 16, 130.0), 50) == GrayImage(16, 16, 130.0));
  CHECK(jpeg_attack(GrayImage(16, 16, 136.0), 50) == GrayImage(16, 16, 136.0));

  const GrayImage tex = testing::textured_image(36, 128, 128);
  const auto ref = quantize_to_8bit(tex);
  const double p10 = psnr(ref, quantize_to_8bit(jpeg_attack(tex, 10)));
  const double p50 = psnr(ref, quantize_to_8bit(jpeg_attack(tex, 50)));
  const double p90 = psnr(ref, quantize_to_8bit(jpeg_attack(tex, 90)));
  CHECK(p90 > p50);
  CHECK(p50 > p10);

  CHECK_THROWS_AS(jpeg_attack(tex, 0), Error);
  CHECK_THROWS_AS(jpeg_attack(GrayImage(12, 16), 50), Error);
}

TEST_CASE("crop_attack") {
  std::mt19937_64 rng(37);
  const GrayImage img = testing::random_image(rng, 32, 32);
  CHECK(crop_attack(img, Rect{5, 5, 0, 0}, 0) == requantize(img));
  CHECK(crop_attack(img, Rect{0, 0, 32, 32}, 0) == GrayImage(32, 32, 0.0));
  const GrayImage part = crop_attack(img, Rect{4, 8, 10, 3}, 200);
  CHECK(part.at(4, 8) == 200.0);
  CHECK(part.at(13, 10) == 200.0);
  CHECK(part.at(14, 10) == std::round(img.at(14, 10)));
  CHECK_THROWS_AS(crop_attack(img, Rect{30, 0, 3, 1}, 0), Error);
  CHECK_THROWS_AS(crop_attack(img, Rect{0, 0, 1, 1}, 256), Error);
}

TEST_CASE("crop errors stay within the blocks the rectangle touches") {
  const GrayImage host = testing::textured_image(38);
  for (const WatermarkKey& key : {WatermarkKey::default_m1(1), WatermarkKey::default_m2(1)}) {
    const BitSequence bits = generate_watermark(key.seed, capacity(key, 512, 512));
    const GrayImage marked = requantize(embed(host, bits, key));
    const Rect rect{100, 60, 256, 256};  // a quarter of the area
    const DetectionReport r = detect(host, crop_attack(marked, rect, 0), key);

    const std::size_t b = key.blockSize;
    const std::size_t cols = 512 / b;
    std::size_t touched = 0;
    std::size_t wrongOutside = 0;
    for (std::size_t j = 0; j < r.blocks.size(); ++j) {
      const std::size_t bx = (r.blocks[j] % cols) * b;
      const std::size_t by = (r.blocks[j] / cols) * b;
      const bool hits = bx < rect.x + rect.w && rect.x < bx + b && by < rect.y + rect.h && rect.y < by + b;
      touched += hits;
      if (!hits && r.bits[j] != bits[j]) ++wrongOutside;
    }
    CHECK(wrongOutside == 0);
    CHECK(ber(bits, r.bits) <= 100.0 * static_cast<double>(touched) / static_cast<double>(r.blocks.size()));
  }
}

TEST_CASE("every attack returns a same-size 8-bit image and is deterministic") {
  const GrayImage img = testing::textured_image(39, 64, 64);
  GrayImage offgrid = img;
  for (double& v : offgrid.pixels()) v += 0.37;
  const AttackSpec specs[] = {AttackSpec::none(),         AttackSpec::jpeg(30),       AttackSpec::noise(12, 3),
                              AttackSpec::mean(5),        AttackSpec::median(7),      AttackSpec::rotate(-5),
                              AttackSpec::scale(0.6),     AttackSpec::crop({1, 2, 10, 10}, 7)};
  for (const auto& spec : specs) {
    const GrayImage out = apply_attack(offgrid, spec);
    CHECK(out.width() == 64);
    CHECK(out.height() == 64);
    CHECK(is_8bit(out));
    CHECK(apply_attack(offgrid, spec) == out);
  }
  CHECK(apply_attack(offgrid, AttackSpec::noise(0, 3)) == requantize(offgrid));
  CHECK(apply_attack(offgrid, AttackSpec::rotate(0)) == requantize(offgrid));
  CHECK(apply_attack(offgrid, AttackSpec::scale(1)) == requantize(offgrid));
}

TEST_CASE("AttackSpec validation and rendering") {
  CHECK_THROWS_WITH_AS(AttackSpec::median(4).validate(), "window must be odd, got 4", Error);
  CHECK_THROWS_AS(AttackSpec::jpeg(0).validate(), Error);
  CHECK_THROWS_AS(AttackSpec::noise(-2, 0).validate(), Error);
  CHECK_THROWS_AS(AttackSpec::scale(1.5).validate(), Error);
  CHECK(AttackSpec::jpeg(30).params() == "quality=30");
  CHECK(AttackSpec::noise(10, 7).params() == "sigma=10;seed=7");
  CHECK(AttackSpec::rotate(-0.5).params() == "angle=-0.5");
  CHECK(parse_attack_kind("median") == AttackKind::MedianFilter);
  CHECK_THROWS_AS(parse_attack_kind("blur"), Error);
}
