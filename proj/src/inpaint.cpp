#include "ilap/inpaint.hpp"

#include <algorithm>
#include <fstream>
#include <random>

#include "ilap/error.hpp"
#include "ilap/io.hpp"
#include "ilap/parallel.hpp"

namespace ilap {

std::string to_string(Method m) {
  switch (m) {
    case Method::GL: return "gl";
    case Method::WNLL: return "wnll";
    case Method::IL: return "il";
  }
  return "?";
}

Method parse_method(const std::string& name) {
  if (name == "gl") return Method::GL;
  if (name == "wnll") return Method::WNLL;
  if (name == "il") return Method::IL;
  fail(ErrorKind::InvalidParameter, "unknown method '" + name + "' (expected gl, wnll or il)");
}

std::vector<double> solve_with(Method method, const WeightGraph& graph,
                               const LabelAssignment& labels, const SolverConfig& cfg) {
  switch (method) {
    case Method::GL: return gl_solve(graph, labels, cfg).u;
    case Method::WNLL: return wnll_solve(graph, labels, cfg).u;
    case Method::IL: return il_solve(graph, labels, cfg).u;
  }
  return {};
}

SampleMask::SampleMask(std::size_t rows, std::size_t cols,
                       std::vector<std::pair<std::size_t, std::size_t>> pixels)
    : rows_(rows), cols_(cols), pixels_(std::move(pixels)), known_(rows * cols, false) {
  require(rows > 0 && cols > 0, "mask: empty image");
  require(!pixels_.empty(), "mask: no sampled pixels");
  std::sort(pixels_.begin(), pixels_.end());
  pixels_.erase(std::unique(pixels_.begin(), pixels_.end()), pixels_.end());
  for (const auto& [i, j] : pixels_) {
    require(i < rows && j < cols, "mask: pixel (" + std::to_string(i) + "," + std::to_string(j) +
                                      ") outside the image");
    known_[i * cols + j] = true;
  }
}

SampleMask SampleMask::random(std::size_t rows, std::size_t cols, double density, std::uint64_t seed) {
  require(density > 0.0 && density <= 1.0, "mask density must be in (0, 1]");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<std::pair<std::size_t, std::size_t>> px;
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j)
      if (density == 1.0 || unit(rng) < density) px.emplace_back(i, j);
  if (px.empty()) {
    std::uniform_int_distribution<std::size_t> pick(0, rows * cols - 1);
    const std::size_t k = pick(rng);
    px.emplace_back(k / cols, k % cols);
  }
  return SampleMask(rows, cols, std::move(px));
}

SampleMask SampleMask::from_csv(const std::filesystem::path& path, std::size_t rows, std::size_t cols) {
  std::ifstream in(path);
  if (!in) fail(ErrorKind::Io, "cannot open " + path.string());
  const auto data = io::read_numeric_rows(in, 2, path.string());
  std::vector<std::pair<std::size_t, std::size_t>> px;
  for (const auto& r : data) {
    if (r[0] < 0 || r[1] < 0 || r[0] != static_cast<double>(static_cast<long>(r[0])) ||
        r[1] != static_cast<double>(static_cast<long>(r[1])))
      fail(ErrorKind::Parse, path.string() + ": pixel coordinates must be nonnegative integers");
    px.emplace_back(static_cast<std::size_t>(r[0]), static_cast<std::size_t>(r[1]));
  }
  return SampleMask(rows, cols, std::move(px));
}

SampleMask SampleMask::full(std::size_t rows, std::size_t cols) {
  std::vector<std::pair<std::size_t, std::size_t>> px;
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) px.emplace_back(i, j);
  return SampleMask(rows, cols, std::move(px));
}

bool SampleMask::contains(std::size_t i, std::size_t j) const { return known_[i * cols_ + j]; }

std::size_t reflect_index(long index, std::size_t m) {
  if (m == 1) return 0;
  const long period = 2 * (static_cast<long>(m) - 1);
  long t = index % period;
  if (t < 0) t += period;
  return static_cast<std::size_t>(t < static_cast<long>(m) ? t : period - t);
}

PatchSet extract_patches(const Image& img, std::size_t patch_rows, std::size_t patch_cols) {
  require(img.rows > 0 && img.cols > 0, "extract_patches: empty image");
  require(patch_rows % 2 == 1 && patch_cols % 2 == 1, "patch sizes must be odd");
  const long hr = static_cast<long>(patch_rows / 2), hc = static_cast<long>(patch_cols / 2);
  require(hr <= static_cast<long>(img.rows) && hc <= static_cast<long>(img.cols),
          "patch " + std::to_string(patch_rows) + "x" + std::to_string(patch_cols) +
              " too large for a " + std::to_string(img.rows) + "x" + std::to_string(img.cols) +
              " image");
  const std::size_t len = patch_rows * patch_cols;
  const std::size_t n = img.rows * img.cols;
  std::vector<double> coords(n * len);
  std::vector<std::size_t> col_map(img.cols * patch_cols);
  for (std::size_t j = 0; j < img.cols; ++j)
    for (std::size_t b = 0; b < patch_cols; ++b)
      col_map[j * patch_cols + b] = reflect_index(static_cast<long>(j) + static_cast<long>(b) - hc, img.cols);
  parallel_for(img.rows, [&](std::size_t i) {
    for (std::size_t a = 0; a < patch_rows; ++a) {
      const std::size_t r = reflect_index(static_cast<long>(i) + static_cast<long>(a) - hr, img.rows);
      const double* src = img.data.data() + r * img.cols;
      for (std::size_t j = 0; j < img.cols; ++j) {
        double* dst = coords.data() + (i * img.cols + j) * len + a * patch_cols;
        const std::size_t* cm = col_map.data() + j * patch_cols;
        for (std::size_t b = 0; b < patch_cols; ++b) dst[b] = src[cm[b]];
      }
    }
  });
  return {patch_rows, patch_cols, PointCloud(len, std::move(coords))};
}

void InpaintConfig::validate() const {
  require(patch_rows % 2 == 1 && patch_cols % 2 == 1, "patch sizes must be odd");
  require(k >= 1, "k must be positive");
  require(k_sigma >= 1 && k_sigma <= k, "k_sigma must be in [1, k]");
  require(outer_iters >= 1, "outer_iters must be positive");
  solver.validate();
}

namespace {

LabelAssignment mask_labels(const Image& values, const SampleMask& mask) {
  std::vector<std::pair<Index, double>> labels;
  labels.reserve(mask.size());
  for (const auto& [i, j] : mask.pixels())
    labels.emplace_back(static_cast<Index>(i * values.cols + j), values.at(i, j));
  return LabelAssignment(values.size(), std::move(labels));
}

struct RoundOutput {
  std::vector<double> u;
  double objective = 0.0;
  LinearStats linear;
};

RoundOutput solve_round(const Image& weights_from, const Image& label_source,
                        const SampleMask& mask, const InpaintConfig& cfg) {
  const auto patches = extract_patches(weights_from, cfg.patch_rows, cfg.patch_cols);
  const std::size_t k = std::min(cfg.k, patches.patches.size() - 1);
  const std::size_t ks = std::min(cfg.k_sigma, k);
  const auto graph = self_tuning_weights(patches.patches, k, ks, {.coincident_limit = true});
  const auto labels = mask_labels(label_source, mask);
  RoundOutput out;
  switch (cfg.method) {
    case Method::GL: {
      auto r = gl_solve(graph, labels, cfg.solver);
      out.linear.add(r.linear);
      out.u = std::move(r.u);
      break;
    }
    case Method::WNLL: {
      auto r = wnll_solve(graph, labels, cfg.solver);
      out.linear.add(r.linear);
      out.u = std::move(r.u);
      break;
    }
    case Method::IL: {
      auto r = il_solve(graph, labels, cfg.solver);
      out.linear = r.diagnostics.linear;
      out.objective = r.diagnostics.final_objective;
      out.u = std::move(r.u);
      break;
    }
  }
  return out;
}

void write_back(Image& img, const std::vector<double>& u, const Image& known, const SampleMask& mask) {
  for (std::size_t k = 0; k < img.size(); ++k) img.data[k] = u[k];
  img.clamp();
  for (const auto& [i, j] : mask.pixels()) img.at(i, j) = known.at(i, j);
}

void check_sizes(const Image& img, const SampleMask& mask) {
  if (img.rows != mask.rows() || img.cols != mask.cols())
    fail(ErrorKind::DimensionMismatch, "mask size does not match the image");
}

}  // namespace

InpaintResult inpaint(const Image& known, const SampleMask& mask, const InpaintConfig& cfg) {
  cfg.validate();
  check_sizes(known, mask);
  InpaintResult result;
  result.image = known;
  if (mask.size() == known.size()) return result;

  std::mt19937_64 rng(cfg.seed);
  std::uniform_real_distribution<double> fill(0.0, 255.0);
  for (std::size_t i = 0; i < known.rows; ++i)
    for (std::size_t j = 0; j < known.cols; ++j)
      result.image.at(i, j) = mask.contains(i, j) ? known.at(i, j) : fill(rng);

  for (std::size_t round = 0; round < cfg.outer_iters; ++round) {
    RoundOutput out;
    try {
      out = solve_round(result.image, known, mask, cfg);
    } catch (const Error& e) {
      throw Error(e.kind(), "inpaint round " + std::to_string(round + 1) + ": " + e.what());
    }
    write_back(result.image, out.u, known, mask);
    result.objective.push_back(out.objective);
    result.linear.solves += out.linear.solves;
    result.linear.total_iterations += out.linear.total_iterations;
    result.linear.worst_relative_residual =
        std::max(result.linear.worst_relative_residual, out.linear.worst_relative_residual);
    result.linear.all_converged = result.linear.all_converged && out.linear.all_converged;
  }
  return result;
}

InpaintResult oracle_weight_inpaint(const Image& clear, const SampleMask& mask,
                                    const InpaintConfig& cfg) {
  cfg.validate();
  check_sizes(clear, mask);
  InpaintResult result;
  result.image = clear;
  if (mask.size() == clear.size()) return result;
  auto out = solve_round(clear, clear, mask, cfg);
  write_back(result.image, out.u, clear, mask);
  result.objective.push_back(out.objective);
  result.linear = out.linear;
  return result;
}

}  // namespace ilap
