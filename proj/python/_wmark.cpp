// Python bindings. Images cross the boundary as 2-D numpy arrays indexed
// [row, column]; payloads as strings of '0'/'1'.

#include <pybind11/numpy.h>
#include <pybind11/operators.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include <cstring>

#include "wmark/attacks.hpp"
#include "wmark/error.hpp"
#include "wmark/metrics.hpp"
#include "wmark/pgm.hpp"
#include "wmark/watermark.hpp"
#include "wmark/wavelet.hpp"

namespace py = pybind11;
using namespace wmark;

namespace {

using FloatArray = py::array_t<double, py::array::c_style | py::array::forcecast>;
using ByteArray = py::array_t<std::uint8_t, py::array::c_style | py::array::forcecast>;

void require_2d(const py::buffer_info& info) {
  if (info.ndim != 2) throw py::value_error("expected a 2-D array, got " + std::to_string(info.ndim) + " dimensions");
}

GrayImage to_image(const FloatArray& a) {
  const auto info = a.request();
  require_2d(info);
  const auto h = static_cast<std::size_t>(info.shape[0]);
  const auto w = static_cast<std::size_t>(info.shape[1]);
  const auto* p = static_cast<const double*>(info.ptr);
  return GrayImage(w, h, std::vector<double>(p, p + w * h));
}

py::array_t<double> from_image(const GrayImage& img) {
  py::array_t<double> out({img.height(), img.width()});
  std::memcpy(out.mutable_data(), img.pixels().data(), img.pixels().size() * sizeof(double));
  return out;
}

Matrix to_matrix(const FloatArray& a) {
  const auto info = a.request();
  require_2d(info);
  Matrix m(static_cast<std::size_t>(info.shape[0]), static_cast<std::size_t>(info.shape[1]));
  std::memcpy(m.values().data(), info.ptr, m.values().size() * sizeof(double));
  return m;
}

py::array_t<double> from_matrix(const Matrix& m) {
  py::array_t<double> out({m.rows(), m.cols()});
  std::memcpy(out.mutable_data(), m.values().data(), m.values().size() * sizeof(double));
  return out;
}

PixelBuffer8 to_buffer(const ByteArray& a) {
  const auto info = a.request();
  require_2d(info);
  PixelBuffer8 buf;
  buf.height = static_cast<std::size_t>(info.shape[0]);
  buf.width = static_cast<std::size_t>(info.shape[1]);
  const auto* p = static_cast<const std::uint8_t*>(info.ptr);
  buf.samples.assign(p, p + buf.width * buf.height);
  return buf;
}

py::array_t<std::uint8_t> from_buffer(const PixelBuffer8& buf) {
  py::array_t<std::uint8_t> out({buf.height, buf.width});
  std::memcpy(out.mutable_data(), buf.samples.data(), buf.samples.size());
  return out;
}

}  // namespace

PYBIND11_MODULE(_wmark, m) {
  m.doc() = "Block-based wavelet-domain image watermarking";

  static py::exception<Error> wmarkError(m, "WmarkError", PyExc_ValueError);
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      if (e.kind() == ErrorKind::Io) {
        PyErr_SetString(PyExc_OSError, e.what());
      } else {
        wmarkError(e.what());
      }
    }
  });

  py::enum_<Method>(m, "Method").value("M1", Method::M1).value("M2", Method::M2);

  py::class_<WatermarkKey>(m, "WatermarkKey")
      .def(py::init<>())
      .def_readwrite("method", &WatermarkKey::method)
      .def_readwrite("alpha", &WatermarkKey::alpha)
      .def_readwrite("block_size", &WatermarkKey::blockSize)
      .def_readwrite("levels", &WatermarkKey::levels)
      .def_readwrite("num_blocks", &WatermarkKey::numBlocks)
      .def_readwrite("seed", &WatermarkKey::seed)
      .def_readwrite("epsilon", &WatermarkKey::epsilon)
      .def("validate", &WatermarkKey::validate)
      .def_static("default_m1", &WatermarkKey::default_m1, py::arg("seed") = 0)
      .def_static("default_m2", &WatermarkKey::default_m2, py::arg("seed") = 0)
      .def(py::self == py::self)
      .def("__repr__", [](const WatermarkKey& k) {
        return "WatermarkKey(method=" + std::string(to_string(k.method)) + ", alpha=" + std::to_string(k.alpha) +
               ", block_size=" + std::to_string(k.blockSize) + ", levels=" + std::to_string(k.levels) +
               ", num_blocks=" + std::to_string(k.numBlocks) + ", seed=" + std::to_string(k.seed) + ")";
      });

  m.def("threshold", &threshold, py::arg("alpha"));
  m.def("capacity", &capacity, py::arg("key"), py::arg("width"), py::arg("height"));
  m.def("generate_watermark",
        [](std::uint64_t seed, std::size_t length) { return generate_watermark(seed, length).to_string(); },
        py::arg("seed"), py::arg("length"));
  m.def(
      "select_blocks", [](const FloatArray& img, const WatermarkKey& key) { return select_blocks(to_image(img), key); },
      py::arg("image"), py::arg("key"));
  m.def(
      "embed",
      [](const FloatArray& img, const std::string& bits, const WatermarkKey& key) {
        return from_image(embed(to_image(img), BitSequence::from_string(bits), key));
      },
      py::arg("image"), py::arg("bits"), py::arg("key"),
      "Watermarked image, unquantized. Round with quantize() before storing.");
  m.def(
      "detect",
      [](const FloatArray& original, const FloatArray& received, const WatermarkKey& key) {
        const DetectionReport r = detect(to_image(original), to_image(received), key);
        py::dict out;
        out["bits"] = r.bits.to_string();
        out["blocks"] = r.blocks;
        out["margins"] = r.margins;
        out["undecidable"] = r.undecidable;
        out["threshold"] = r.threshold;
        return out;
      },
      py::arg("original"), py::arg("received"), py::arg("key"));

  m.def(
      "quantize", [](const FloatArray& img) { return from_buffer(quantize_to_8bit(to_image(img))); },
      py::arg("image"), "Round and clamp to uint8.");

  m.def(
      "dwt2d",
      [](const FloatArray& block, std::size_t levels) {
        const SubbandPyramid p = dwt2d(to_matrix(block), levels);
        py::list details;
        for (const DetailBands& d : p.details) details.append(py::make_tuple(from_matrix(d.lh), from_matrix(d.hl), from_matrix(d.hh)));
        return py::make_tuple(from_matrix(p.ll), details);
      },
      py::arg("block"), py::arg("levels"), "Returns (ll, [(lh, hl, hh), ...]) with the finest level first.");
  m.def(
      "idwt2d",
      [](const FloatArray& ll, const std::vector<std::tuple<FloatArray, FloatArray, FloatArray>>& details) {
        SubbandPyramid p;
        p.ll = to_matrix(ll);
        p.levels = details.size();
        for (const auto& [lh, hl, hh] : details) p.details.push_back({to_matrix(lh), to_matrix(hl), to_matrix(hh)});
        p.blockSize = details.empty() ? p.ll.rows() : 2 * p.details.front().lh.rows();
        return from_matrix(idwt2d(p));
      },
      py::arg("ll"), py::arg("details"));

  auto attacks = m.def_submodule("attacks", "Attack simulator; every result holds integers in 0..255");
  attacks.def(
      "jpeg", [](const FloatArray& img, int quality) { return from_image(jpeg_attack(to_image(img), quality)); },
      py::arg("image"), py::arg("quality"));
  attacks.def(
      "awgn",
      [](const FloatArray& img, double sigma, std::uint64_t seed) { return from_image(awgn(to_image(img), sigma, seed)); },
      py::arg("image"), py::arg("sigma"), py::arg("seed"));
  attacks.def(
      "mean", [](const FloatArray& img, int window) { return from_image(mean_filter(to_image(img), window)); },
      py::arg("image"), py::arg("window"));
  attacks.def(
      "median", [](const FloatArray& img, int window) { return from_image(median_filter(to_image(img), window)); },
      py::arg("image"), py::arg("window"));
  attacks.def(
      "rotate", [](const FloatArray& img, double degrees) { return from_image(rotate_attack(to_image(img), degrees)); },
      py::arg("image"), py::arg("degrees"));
  attacks.def(
      "scale", [](const FloatArray& img, double factor) { return from_image(scale_attack(to_image(img), factor)); },
      py::arg("image"), py::arg("factor"));
  attacks.def(
      "crop",
      [](const FloatArray& img, std::size_t x, std::size_t y, std::size_t w, std::size_t h, int fill) {
        return from_image(crop_attack(to_image(img), Rect{x, y, w, h}, fill));
      },
      py::arg("image"), py::arg("x"), py::arg("y"), py::arg("w"), py::arg("h"), py::arg("fill") = 0);

  m.def(
      "ber",
      [](const std::string& a, const std::string& b) {
        return ber(BitSequence::from_string(a), BitSequence::from_string(b));
      },
      py::arg("reference"), py::arg("detected"));
  m.def(
      "corr_coeff",
      [](const std::string& a, const std::string& b) {
        return corr_coeff(BitSequence::from_string(a), BitSequence::from_string(b));
      },
      py::arg("reference"), py::arg("detected"));
  m.def(
      "psnr", [](const ByteArray& a, const ByteArray& b) { return psnr(to_buffer(a), to_buffer(b)); }, py::arg("a"),
      py::arg("b"));

  m.def(
      "load_pgm", [](const std::filesystem::path& path) { return from_buffer(load_pgm(path)); }, py::arg("path"));
  m.def(
      "save_pgm", [](const ByteArray& img, const std::filesystem::path& path) { save_pgm(to_buffer(img), path); },
      py::arg("image"), py::arg("path"));
}
