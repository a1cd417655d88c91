#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

namespace ilap {

struct Triplet {
  std::size_t row;
  std::size_t col;
  double value;
};

/// Square sparse matrix in compressed-row form.
class CsrMatrix {
 public:
  CsrMatrix() = default;

  /// Duplicate (row, col) entries are summed.
  static CsrMatrix from_triplets(std::size_t n, std::vector<Triplet> triplets);

  std::size_t size() const noexcept { return n_; }
  std::size_t nnz() const noexcept { return cols_.size(); }

  /// y = A x
  void apply(std::span<const double> x, std::span<double> y) const;
  std::vector<double> apply(std::span<const double> x) const;

  double coeff(std::size_t i, std::size_t j) const;

  /// max |a_ij - a_ji| relative to max |a_ij|.
  double asymmetry() const;

 private:
  std::size_t n_ = 0;
  std::vector<std::size_t> row_ptr_;
  std::vector<std::size_t> cols_;
  std::vector<double> vals_;
};

struct SolveOptions {
  double tol = 1e-10;          // relative residual |Ax - b| / |b|
  std::size_t max_iter = 0;    // 0 means 10 n
  bool record_residuals = false;
};

struct SolveReport {
  std::size_t iterations = 0;
  double relative_residual = 0.0;
  bool converged = false;
  /// Residual-norm estimate after each iteration (when requested).
  std::vector<double> residual_history;
};

/// MINRES for a symmetric operator. `guess`, when given, is the starting
/// iterate. Non-convergence is reported, not thrown.
SolveReport solve_symmetric(const CsrMatrix& a, std::span<const double> b, std::span<double> x,
                            const SolveOptions& options = {},
                            std::optional<std::span<const double>> guess = std::nullopt);

double dot(std::span<const double> a, std::span<const double> b) noexcept;
double norm2(std::span<const double> a) noexcept;

}  // namespace ilap
