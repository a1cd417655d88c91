#include "ilap/image.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <limits>
#include <sstream>

#include "ilap/error.hpp"
#include "ilap/io.hpp"

namespace ilap {

void Image::clamp() {
  for (double& v : data) v = std::clamp(v, 0.0, 255.0);
}

namespace {

struct Cursor {
  const std::string& s;
  const std::string& source;
  std::size_t pos = 0;

  void skip_space() {
    while (pos < s.size()) {
      if (s[pos] == '#') {
        while (pos < s.size() && s[pos] != '\n') ++pos;
      } else if (std::isspace(static_cast<unsigned char>(s[pos]))) {
        ++pos;
      } else {
        break;
      }
    }
  }

  long number(const char* what) {
    skip_space();
    std::size_t start = pos;
    while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
    if (start == pos) fail(ErrorKind::Parse, source + ": expected " + what);
    if (pos - start > 9) fail(ErrorKind::Parse, source + ": " + what + " too large");
    return std::stol(s.substr(start, pos - start));
  }
};

}  // namespace

Image parse_pgm(const std::string& bytes, const std::string& source) {
  if (bytes.size() < 2 || bytes[0] != 'P' || (bytes[1] != '2' && bytes[1] != '5'))
    fail(ErrorKind::Parse, source + ": not a P2/P5 PGM file");
  const bool binary = bytes[1] == '5';
  Cursor cur{bytes, source, 2};
  const long cols = cur.number("width");
  const long rows = cur.number("height");
  const long maxval = cur.number("maxval");
  if (cols <= 0 || rows <= 0) fail(ErrorKind::Parse, source + ": empty image");
  if (maxval <= 0 || maxval > 65535) fail(ErrorKind::Parse, source + ": bad maxval");
  Image img(static_cast<std::size_t>(rows), static_cast<std::size_t>(cols));
  const double scale = maxval == 255 ? 1.0 : 255.0 / static_cast<double>(maxval);
  if (binary) {
    if (cur.pos >= bytes.size() || !std::isspace(static_cast<unsigned char>(bytes[cur.pos])))
      fail(ErrorKind::Parse, source + ": missing separator before raster");
    ++cur.pos;
    const std::size_t bpp = maxval < 256 ? 1 : 2;
    if (bytes.size() - cur.pos < img.size() * bpp)
      fail(ErrorKind::Parse, source + ": truncated raster");
    for (std::size_t k = 0; k < img.size(); ++k) {
      unsigned v = static_cast<unsigned char>(bytes[cur.pos + k * bpp]);
      if (bpp == 2) v = (v << 8) | static_cast<unsigned char>(bytes[cur.pos + k * bpp + 1]);
      if (v > static_cast<unsigned>(maxval)) fail(ErrorKind::Parse, source + ": sample exceeds maxval");
      img.data[k] = v * scale;
    }
  } else {
    for (std::size_t k = 0; k < img.size(); ++k) {
      const long v = cur.number("sample");
      if (v > maxval) fail(ErrorKind::Parse, source + ": sample exceeds maxval");
      img.data[k] = static_cast<double>(v) * scale;
    }
  }
  return img;
}

Image read_pgm(const std::filesystem::path& path) {
  return parse_pgm(io::read_file(path), path.string());
}

std::string format_pgm(const Image& img, bool binary) {
  std::ostringstream out;
  out << (binary ? "P5" : "P2") << '\n' << img.cols << ' ' << img.rows << "\n255\n";
  for (std::size_t k = 0; k < img.size(); ++k) {
    const int v = static_cast<int>(std::lround(std::clamp(img.data[k], 0.0, 255.0)));
    if (binary) {
      out.put(static_cast<char>(static_cast<unsigned char>(v)));
    } else {
      out << v << ((k + 1) % img.cols == 0 ? '\n' : ' ');
    }
  }
  return out.str();
}

void write_pgm(const std::filesystem::path& path, const Image& img, bool binary) {
  io::write_file(path, format_pgm(img, binary));
}

double psnr(const Image& f, const Image& f_star) {
  if (f.rows != f_star.rows || f.cols != f_star.cols)
    fail(ErrorKind::DimensionMismatch, "psnr: image sizes differ");
  if (f.size() == 0) fail(ErrorKind::InvalidParameter, "psnr: empty image");
  double sq = 0.0;
  for (std::size_t k = 0; k < f.size(); ++k) {
    const double d = f.data[k] - f_star.data[k];
    sq += d * d;
  }
  if (sq == 0.0) return std::numeric_limits<double>::infinity();
  const double rms = std::sqrt(sq / static_cast<double>(f.size()));
  return 20.0 * std::log10(255.0 / rms);
}

}  // namespace ilap
