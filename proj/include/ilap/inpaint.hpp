#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <string>
#include <utility>
#include <vector>

#include "ilap/graph.hpp"
#include "ilap/image.hpp"
#include "ilap/labels.hpp"
#include "ilap/point_cloud.hpp"
#include "ilap/solver.hpp"

namespace ilap {

enum class Method { GL, WNLL, IL };

std::string to_string(Method m);
Method parse_method(const std::string& name);

/// Runs the chosen solver and returns u.
std::vector<double> solve_with(Method method, const WeightGraph& graph,
                               const LabelAssignment& labels, const SolverConfig& cfg);

/// Known pixel coordinates, sorted and unique.
class SampleMask {
 public:
  SampleMask(std::size_t rows, std::size_t cols, std::vector<std::pair<std::size_t, std::size_t>> pixels);

  /// Each pixel kept independently with probability `density`; at least one
  /// pixel is always kept.
  static SampleMask random(std::size_t rows, std::size_t cols, double density, std::uint64_t seed);
  static SampleMask from_csv(const std::filesystem::path& path, std::size_t rows, std::size_t cols);
  static SampleMask full(std::size_t rows, std::size_t cols);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  std::size_t size() const noexcept { return pixels_.size(); }
  const std::vector<std::pair<std::size_t, std::size_t>>& pixels() const noexcept { return pixels_; }
  bool contains(std::size_t i, std::size_t j) const;

 private:
  std::size_t rows_, cols_;
  std::vector<std::pair<std::size_t, std::size_t>> pixels_;
  std::vector<bool> known_;
};

/// Mirror index map: -t -> t, (m-1)+t -> (m-1)-t, periodic beyond that.
std::size_t reflect_index(long index, std::size_t m);

struct PatchSet {
  std::size_t patch_rows = 0;
  std::size_t patch_cols = 0;
  PointCloud patches;  // one row per pixel, row-major pixel order
};

/// Odd patch sizes; a patch whose half-width exceeds the image size is rejected.
PatchSet extract_patches(const Image& img, std::size_t patch_rows, std::size_t patch_cols);

struct InpaintConfig {
  Method method = Method::IL;
  std::size_t patch_rows = 11;
  std::size_t patch_cols = 11;
  std::size_t k = 50;
  std::size_t k_sigma = 20;
  std::size_t outer_iters = 8;
  std::uint64_t seed = 0;
  SolverConfig solver;

  void validate() const;
};

struct InpaintResult {
  Image image;
  std::vector<double> objective;  // solver objective per round (IL only, else empty entries)
  LinearStats linear;
};

/// Blind pipeline: random fill, then outer_iters rounds of patch graph + solve.
InpaintResult inpaint(const Image& known, const SampleMask& mask, const InpaintConfig& cfg);

/// One solve with weights from the patches of `clear`.
InpaintResult oracle_weight_inpaint(const Image& clear, const SampleMask& mask,
                                    const InpaintConfig& cfg);

}  // namespace ilap
