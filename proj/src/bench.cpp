#include "wmark/bench.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <map>
#include <thread>

#include "wmark/error.hpp"
#include "wmark/format.hpp"
#include "wmark/metrics.hpp"
#include "wmark/pgm.hpp"

namespace wmark {

namespace {

constexpr Suite kAllSuites[] = {Suite::None,    Suite::Jpeg,   Suite::Noise, Suite::Rotation,
                                Suite::Scaling, Suite::Filter, Suite::Crop};

std::string csv_field(const std::string& text) {
  if (text.find_first_of(",\"\n") == std::string::npos) return text;
  std::string out = "\"";
  for (char ch : text) {
    if (ch == '"') out.push_back('"');
    out.push_back(ch == '\n' ? ' ' : ch);
  }
  out.push_back('"');
  return out;
}

BenchRow error_row(const std::string& image, const std::string& method, const std::string& message) {
  BenchRow row;
  row.image = image;
  row.method = method;
  row.cell = "-";
  row.attackKind = "-";
  row.attackParams = "-";
  row.error = message;
  return row;
}

struct Task {
  std::size_t image = 0;
  std::size_t key = 0;
  int run = 0;
  std::vector<BenchRow> rows;
  std::string error;
};

void run_task(Task& task, const BenchImage& image, const WatermarkKey& key, const std::vector<BenchCell>& cells,
              const BenchConfig& config) {
  const std::string method(to_string(key.method));
  try {
    const GrayImage original = to_gray(image.pixels);
    const std::size_t cap = capacity(key, original.width(), original.height());
    const BitSequence payload = generate_watermark(key.seed + static_cast<std::uint64_t>(task.run), cap);
    const GrayImage marked = requantize(embed(original, payload, key));
    const double markedPsnr = psnr(image.pixels, quantize_to_8bit(marked));

    for (const BenchCell& cell : cells) {
      BenchRow row;
      row.image = image.name;
      row.method = method;
      row.cell = cell.label;
      row.run = task.run;
      row.psnrDb = markedPsnr;
      AttackSpec spec = cell.attack;
      if (spec.kind == AttackKind::Awgn) spec.noiseSeed = config.noiseSeed + static_cast<std::uint64_t>(task.run);
      row.attackKind = std::string(to_string(spec.kind));
      row.attackParams = spec.params();
      try {
        const auto start = std::chrono::steady_clock::now();
        const GrayImage received = apply_attack(marked, spec);
        const DetectionReport report = detect(original, received, key);
        const auto stop = std::chrono::steady_clock::now();
        row.berPercent = ber(payload, report.bits);
        row.corrCoeff = corr_coeff(payload, report.bits);
        if (config.timing) {
          row.wallMs = std::chrono::duration_cast<std::chrono::milliseconds>(stop - start).count();
        }
      } catch (const std::exception& e) {
        row.error = e.what();
      }
      task.rows.push_back(std::move(row));
    }
  } catch (const std::exception& e) {
    task.error = e.what();
  }
}

}  // namespace

Suite parse_suite(std::string_view name) {
  for (Suite s : kAllSuites) {
    if (to_string(s) == name) return s;
  }
  if (name == "all") return Suite::All;
  fail(ErrorKind::InvalidArgument, "unknown suite '" + std::string(name) +
                                       "' (expected none, jpeg, noise, rotation, scaling, filter, crop or all)");
}

std::string_view to_string(Suite suite) noexcept {
  switch (suite) {
    case Suite::None: return "none";
    case Suite::Jpeg: return "jpeg";
    case Suite::Noise: return "noise";
    case Suite::Rotation: return "rotation";
    case Suite::Scaling: return "scaling";
    case Suite::Filter: return "filter";
    case Suite::Crop: return "crop";
    case Suite::All: return "all";
  }
  return "all";
}

std::vector<BenchCell> suite_cells(Suite suite, std::size_t width, std::size_t height) {
  std::vector<BenchCell> cells;
  auto add = [&](const AttackSpec& spec) {
    std::string params = spec.params();
    if (spec.kind == AttackKind::Awgn) params = "sigma=" + format_real(spec.sigma);
    std::string label(to_string(spec.kind));
    if (!params.empty()) label += ":" + params;
    cells.push_back(BenchCell{std::move(label), spec});
  };

  switch (suite) {
    case Suite::None: add(AttackSpec::none()); break;
    case Suite::Jpeg:
      for (int q = 10; q <= 90; q += 10) add(AttackSpec::jpeg(q));
      break;
    case Suite::Noise:
      for (int s = 5; s <= 30; s += 5) add(AttackSpec::noise(s, 0));
      break;
    case Suite::Rotation:
      for (double a : {0.5, -0.5, 1.0, -1.0, 5.0, -5.0, 10.0, 30.0}) add(AttackSpec::rotate(a));
      break;
    case Suite::Scaling:
      for (double f : {0.9, 0.8, 0.7, 0.6, 0.5}) add(AttackSpec::scale(f));
      break;
    case Suite::Filter:
      for (int w : {3, 5, 7}) add(AttackSpec::mean(w));
      for (int w : {3, 5, 7}) add(AttackSpec::median(w));
      break;
    case Suite::Crop:
      add(AttackSpec::crop(Rect{0, 0, width / 4, height / 4}, 0));
      add(AttackSpec::crop(Rect{0, 0, width / 2, height / 2}, 0));
      break;
    case Suite::All:
      for (Suite s : kAllSuites) {
        auto more = suite_cells(s, width, height);
        cells.insert(cells.end(), more.begin(), more.end());
      }
      break;
  }
  return cells;
}

std::vector<BenchImage> load_bench_images(const std::filesystem::path& dir) {
  std::error_code ec;
  if (!std::filesystem::is_directory(dir, ec)) fail(ErrorKind::Io, "not a directory: " + dir.string());
  std::vector<std::filesystem::path> paths;
  for (const auto& entry : std::filesystem::directory_iterator(dir)) {
    if (entry.is_regular_file() && entry.path().extension() == ".pgm") paths.push_back(entry.path());
  }
  std::sort(paths.begin(), paths.end());
  std::vector<BenchImage> images;
  for (const auto& p : paths) {
    BenchImage img;
    img.name = p.stem().string();
    try {
      img.pixels = load_pgm(p);
    } catch (const std::exception& e) {
      img.error = e.what();
    }
    images.push_back(std::move(img));
  }
  return images;
}

std::vector<BenchRow> run_bench(const std::vector<BenchImage>& images, const BenchConfig& config) {
  if (config.runs < 1) fail(ErrorKind::InvalidArgument, "runs must be >= 1");
  if (config.keys.empty()) fail(ErrorKind::InvalidArgument, "bench needs at least one key");
  for (const auto& key : config.keys) key.validate();

  std::vector<std::vector<BenchCell>> cells(images.size());
  std::vector<Task> tasks;
  for (std::size_t i = 0; i < images.size(); ++i) {
    if (!images[i].error.empty()) continue;
    cells[i] = suite_cells(config.suite, images[i].pixels.width, images[i].pixels.height);
    for (std::size_t k = 0; k < config.keys.size(); ++k) {
      for (int r = 0; r < config.runs; ++r) tasks.push_back(Task{i, k, r, {}, {}});
    }
  }

  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t t = next++; t < tasks.size(); t = next++) {
      Task& task = tasks[t];
      run_task(task, images[task.image], config.keys[task.key], cells[task.image], config);
    }
  };
  const auto workers = static_cast<std::size_t>(std::max(1, config.workers));
  {
    std::vector<std::jthread> pool;
    for (std::size_t w = 1; w < workers; ++w) pool.emplace_back(worker);
    worker();
  }

  // Reorder into image, key, cell, run.
  std::vector<BenchRow> rows;
  std::size_t t = 0;
  for (std::size_t i = 0; i < images.size(); ++i) {
    if (!images[i].error.empty()) {
      for (const auto& key : config.keys) rows.push_back(error_row(images[i].name, std::string(to_string(key.method)), images[i].error));
      continue;
    }
    for (std::size_t k = 0; k < config.keys.size(); ++k) {
      const std::size_t first = t;
      t += static_cast<std::size_t>(config.runs);
      const std::string method(to_string(config.keys[k].method));
      if (!tasks[first].error.empty()) {
        rows.push_back(error_row(images[i].name, method, tasks[first].error));
        continue;
      }
      for (std::size_t c = 0; c < cells[i].size(); ++c) {
        for (std::size_t r = first; r < t; ++r) rows.push_back(tasks[r].rows.at(c));
      }
    }
  }
  return rows;
}

std::string bench_csv(const std::vector<BenchRow>& rows) {
  std::string out = "image,method,attack_kind,attack_params,run,ber_percent,psnr_db,corr_coeff,wall_ms,error\n";
  for (const auto& r : rows) {
    const bool ok = r.error.empty();
    out += csv_field(r.image) + "," + r.method + "," + r.attackKind + "," + csv_field(r.attackParams) + "," +
           std::to_string(r.run) + "," + (ok ? format_fixed(r.berPercent, 6) : "") + "," +
           (ok ? format_psnr(r.psnrDb) : "") + "," + (ok ? format_fixed(r.corrCoeff, 6) : "") + "," +
           std::to_string(r.wallMs) + "," + csv_field(r.error) + "\n";
  }
  return out;
}

std::string bench_summary_csv(const std::vector<BenchRow>& rows) {
  // Column order is first appearance; line order is first appearance of (image, method).
  std::vector<std::string> columns;
  std::vector<std::pair<std::string, std::string>> lines;
  struct Acc {
    double sum = 0.0;
    int n = 0;
  };
  std::map<std::pair<std::size_t, std::string>, Acc> ber;
  std::map<std::size_t, Acc> psnrAcc;
  std::map<std::size_t, std::map<int, double>> psnrByRun;

  for (const auto& r : rows) {
    auto key = std::make_pair(r.image, r.method);
    auto it = std::find(lines.begin(), lines.end(), key);
    const auto line = static_cast<std::size_t>(it - lines.begin());
    if (it == lines.end()) lines.push_back(key);
    if (r.cell == "-") continue;
    if (std::find(columns.begin(), columns.end(), r.cell) == columns.end()) columns.push_back(r.cell);
    if (!r.error.empty()) continue;
    Acc& a = ber[{line, r.cell}];
    a.sum += r.berPercent;
    ++a.n;
    psnrByRun[line][r.run] = r.psnrDb;
  }
  for (const auto& [line, runs] : psnrByRun) {
    for (const auto& [run, db] : runs) {
      psnrAcc[line].sum += db;
      ++psnrAcc[line].n;
    }
  }

  std::string out = "image,method,psnr_db";
  for (const auto& c : columns) out += "," + csv_field(c);
  out += "\n";
  for (std::size_t l = 0; l < lines.size(); ++l) {
    out += csv_field(lines[l].first) + "," + lines[l].second + ",";
    const auto p = psnrAcc.find(l);
    out += p == psnrAcc.end() ? "error" : format_psnr(p->second.sum / p->second.n);
    for (const auto& c : columns) {
      const auto it = ber.find({l, c});
      out += ",";
      out += it == ber.end() ? "error" : format_fixed(it->second.sum / it->second.n, 6);
    }
    out += "\n";
  }
  return out;
}

}  // namespace wmark
