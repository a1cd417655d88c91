#pragma once

#include <cstddef>
#include <filesystem>
#include <string>
#include <vector>

namespace ilap {

/// Grayscale image, row-major, intensities nominally in [0, 255].
struct Image {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<double> data;

  Image() = default;
  Image(std::size_t r, std::size_t c, double fill = 0.0) : rows(r), cols(c), data(r * c, fill) {}

  std::size_t size() const noexcept { return data.size(); }
  double& at(std::size_t i, std::size_t j) { return data[i * cols + j]; }
  double at(std::size_t i, std::size_t j) const { return data[i * cols + j]; }

  void clamp();
  bool operator==(const Image&) const = default;
};

/// Reads P2 or P5. Values are rescaled to [0,255] when maxval differs.
Image read_pgm(const std::filesystem::path& path);
Image parse_pgm(const std::string& bytes, const std::string& source = "<memory>");

/// Writes maxval 255, values rounded and clamped.
void write_pgm(const std::filesystem::path& path, const Image& img, bool binary = true);
std::string format_pgm(const Image& img, bool binary = true);

/// 20 log10(255 / rms). Returns +infinity for identical images.
double psnr(const Image& f, const Image& f_star);

}  // namespace ilap
