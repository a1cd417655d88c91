#include "ilap/linalg.hpp"

#include <algorithm>
#include <cmath>

#include "ilap/error.hpp"

namespace ilap {

CsrMatrix CsrMatrix::from_triplets(std::size_t n, std::vector<Triplet> triplets) {
  for (const auto& t : triplets)
    require(t.row < n && t.col < n, "triplet index out of range");
  std::sort(triplets.begin(), triplets.end(), [](const Triplet& a, const Triplet& b) {
    return a.row != b.row ? a.row < b.row : a.col < b.col;
  });
  CsrMatrix m;
  m.n_ = n;
  m.row_ptr_.assign(n + 1, 0);
  m.cols_.reserve(triplets.size());
  m.vals_.reserve(triplets.size());
  for (std::size_t e = 0; e < triplets.size(); ++e) {
    if (e > 0 && triplets[e].row == triplets[e - 1].row && triplets[e].col == triplets[e - 1].col) {
      m.vals_.back() += triplets[e].value;
      continue;
    }
    m.cols_.push_back(triplets[e].col);
    m.vals_.push_back(triplets[e].value);
    ++m.row_ptr_[triplets[e].row + 1];
  }
  for (std::size_t i = 0; i < n; ++i) m.row_ptr_[i + 1] += m.row_ptr_[i];
  return m;
}

void CsrMatrix::apply(std::span<const double> x, std::span<double> y) const {
  for (std::size_t i = 0; i < n_; ++i) {
    double s = 0.0;
    for (std::size_t e = row_ptr_[i]; e < row_ptr_[i + 1]; ++e) s += vals_[e] * x[cols_[e]];
    y[i] = s;
  }
}

std::vector<double> CsrMatrix::apply(std::span<const double> x) const {
  std::vector<double> y(n_);
  apply(x, y);
  return y;
}

double CsrMatrix::coeff(std::size_t i, std::size_t j) const {
  for (std::size_t e = row_ptr_[i]; e < row_ptr_[i + 1]; ++e)
    if (cols_[e] == j) return vals_[e];
  return 0.0;
}

double CsrMatrix::asymmetry() const {
  double scale = 0.0, worst = 0.0;
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t e = row_ptr_[i]; e < row_ptr_[i + 1]; ++e) {
      scale = std::max(scale, std::abs(vals_[e]));
      worst = std::max(worst, std::abs(vals_[e] - coeff(cols_[e], i)));
    }
  return scale == 0.0 ? 0.0 : worst / scale;
}

double dot(std::span<const double> a, std::span<const double> b) noexcept {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

double norm2(std::span<const double> a) noexcept { return std::sqrt(dot(a, a)); }

namespace {

// Unpreconditioned MINRES (Paige & Saunders) on A dx = r0, accumulated into x.
// Returns the recurrence estimate of |r0 - A dx| after the last step.
double minres_pass(const CsrMatrix& a, std::span<const double> r0, std::span<double> x,
                   double target, std::size_t budget, std::size_t& used,
                   std::vector<double>* history) {
  const std::size_t n = a.size();
  std::vector<double> v_prev(n, 0.0), v(r0.begin(), r0.end()), v_next(n);
  std::vector<double> w_prev(n, 0.0), w_prev2(n, 0.0), w(n);
  double beta = norm2(v);
  if (beta == 0.0) return 0.0;
  for (auto& e : v) e /= beta;

  double phi_bar = beta;
  double c = -1.0, s = 0.0;
  double dbar = 0.0, eps_next = 0.0;
  double residual = beta;
  for (std::size_t k = 0; k < budget; ++k) {
    // Lanczos: A v_k = beta_k v_{k-1} + alpha_k v_k + beta_{k+1} v_{k+1}
    a.apply(v, v_next);
    const double alpha = dot(v, v_next);
    for (std::size_t i = 0; i < n; ++i) v_next[i] -= alpha * v[i] + beta * v_prev[i];
    const double beta_next = norm2(v_next);

    // Previous Givens rotation applied to the new column of T_k.
    const double delta = c * dbar + s * alpha;
    const double gbar = s * dbar - c * alpha;
    const double epsilon = eps_next;
    eps_next = s * beta_next;
    dbar = -c * beta_next;

    const double gamma = std::max(std::hypot(gbar, beta_next), 1e-300);
    c = gbar / gamma;
    s = beta_next / gamma;
    const double tau = c * phi_bar;
    phi_bar = s * phi_bar;

    for (std::size_t i = 0; i < n; ++i) {
      w[i] = (v[i] - epsilon * w_prev2[i] - delta * w_prev[i]) / gamma;
      x[i] += tau * w[i];
    }
    std::swap(w_prev2, w_prev);
    std::swap(w_prev, w);

    residual = std::abs(phi_bar);
    ++used;
    if (history) history->push_back(residual);
    if (residual <= target || beta_next == 0.0) break;

    std::swap(v_prev, v);
    std::swap(v, v_next);
    for (auto& e : v) e /= beta_next;
    beta = beta_next;
  }
  return residual;
}

}  // namespace

SolveReport solve_symmetric(const CsrMatrix& a, std::span<const double> b, std::span<double> x,
                            const SolveOptions& options, std::optional<std::span<const double>> guess) {
  const std::size_t n = a.size();
  require(b.size() == n && x.size() == n, "solve_symmetric: dimension mismatch");
  require(options.tol > 0.0, "solve_symmetric: tolerance must be positive");
  SolveReport report;
  const double bnorm = norm2(b);
  if (bnorm == 0.0) {
    std::fill(x.begin(), x.end(), 0.0);
    report.converged = true;
    return report;
  }
  if (guess) {
    require(guess->size() == n, "solve_symmetric: guess dimension mismatch");
    std::copy(guess->begin(), guess->end(), x.begin());
  } else {
    std::fill(x.begin(), x.end(), 0.0);
  }
  const std::size_t max_iter = options.max_iter == 0 ? 10 * n : options.max_iter;
  const double target = options.tol * bnorm;

  std::vector<double> r(n);
  auto true_residual = [&] {
    a.apply(x, r);
    for (std::size_t i = 0; i < n; ++i) r[i] = b[i] - r[i];
    return norm2(r);
  };
  double rnorm = true_residual();
  // Restart from the true residual when the recurrence estimate drifts below it.
  while (rnorm > target && report.iterations < max_iter) {
    const std::size_t before = report.iterations;
    minres_pass(a, r, x, target, max_iter - report.iterations, report.iterations,
                options.record_residuals ? &report.residual_history : nullptr);
    const double updated = true_residual();
    if (report.iterations == before || updated >= rnorm) {
      rnorm = std::min(rnorm, updated);
      break;
    }
    rnorm = updated;
  }
  report.relative_residual = rnorm / bnorm;
  report.converged = rnorm <= target;
  return report;
}

}  // namespace ilap
