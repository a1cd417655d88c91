#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "ilap/graph.hpp"
#include "ilap/labels.hpp"
#include "ilap/linalg.hpp"

namespace ilap {

/// Which rows the max in the objective ranges over.
enum class MaxScope { AllNodes, UnlabeledOnly };

struct SolverConfig {
  double alpha = 0.0;
  double rel_obj_tol = 1e-6;
  std::size_t max_outer_iter = 500;
  double choose_c_eps = 1e-4;
  std::size_t choose_c_max_iter = 1000;
  /// Skip the adaptive choice and use nu_i = fixed_c.
  std::optional<double> fixed_c;
  /// When set, stopping also requires max |D_ij - sqrt(w_ij)(u_i - u_j)| <= primal_tol.
  std::optional<double> primal_tol;
  MaxScope max_scope = MaxScope::AllNodes;
  SolveOptions linear;
  /// Seeds the Krylov starting guess of the first u-update.
  std::uint64_t seed = 0;

  void validate() const;
};

/// sum_j w_ij (u_i - u_j)^2 for every row i.
std::vector<double> row_energies(std::span<const double> u, const WeightGraph& graph);

/// f(u) = max_i sum_j w_ij (u_i - u_j)^2 + alpha sum_i sum_j w_ij (u_i - u_j)^2.
double objective(std::span<const double> u, const WeightGraph& graph, double alpha);

/// Same, with the max restricted to unlabeled rows when scope says so.
double objective(std::span<const double> u, const WeightGraph& graph, double alpha,
                 const LabelAssignment& labels, MaxScope scope);

/// max_i sum_j w_ij (u_i - u_j)^2, the sup norm of the squared non-local gradient.
double nonlocal_inf_metric(std::span<const double> u, const WeightGraph& graph);

/// Edge-aligned non-local gradient sqrt(w_ij) (u_i - u_j).
std::vector<double> nonlocal_gradient(std::span<const double> u, const WeightGraph& graph);

/// Split Bregman iterates. d, q and s are aligned with graph.values().
struct BregmanState {
  std::vector<double> u;
  std::vector<double> d;
  std::vector<double> q;
  std::vector<double> nu;
  double c = 1.0;
  std::vector<double> history;

  /// Zero D and q, nu = 1, u pinned to the labels and seeded uniform values
  /// in the label range elsewhere (the Krylov starting guess).
  static BregmanState initial(const WeightGraph& graph, const LabelAssignment& labels,
                              std::uint64_t seed = 0);
};

/// Linear system of the u-update for fixed penalties nu. For each unlabeled i
///
///   sum_j (nu_i w_ij + nu_j w_ji)(u_i - u_j) = sum_j (nu_i sqrt(w_ij) s_ij - nu_j sqrt(w_ji) s_ji)
///
/// with labeled u_j moved to the right-hand side. Assembled once, reused for
/// every right-hand side.
class UpdateSystem {
 public:
  /// Throws Disconnected if some unlabeled node cannot reach a label.
  UpdateSystem(const WeightGraph& graph, const LabelAssignment& labels, std::span<const double> nu);

  /// Solves with s = D + q (edge-aligned, empty for zero) and writes the
  /// unlabeled entries of u. The current u is the starting guess.
  SolveReport solve(std::span<const double> s, std::vector<double>& u,
                    const SolveOptions& options) const;

  const CsrMatrix& matrix() const noexcept { return matrix_; }
  std::vector<double> rhs(std::span<const double> s) const;

 private:
  const WeightGraph& graph_;
  const LabelAssignment& labels_;
  std::vector<double> nu_;
  std::vector<Index> unknown_of_;  // node -> unknown index, -1 for labels
  CsrMatrix matrix_;
  std::vector<double> label_rhs_;
};

/// One u-update with the state's nu, D and q.
SolveReport update_u(BregmanState& state, const WeightGraph& graph, const LabelAssignment& labels,
                     const SolverConfig& cfg);

/// Exact D-update: minimizes
///   max_i |D_i|^2 + sum_i a_i |D_i - C_i|^2
/// with a_i = alpha + nu_i and C_ij = nu_i / a_i (sqrt(w_ij)(u_i - u_j) - q_ij).
void update_D(BregmanState& state, const WeightGraph& graph, const LabelAssignment& labels,
              const SolverConfig& cfg);

/// D-subproblem objective phi(D) for the state's u, q, nu.
double d_subproblem_objective(std::span<const double> d, const BregmanState& state,
                              const WeightGraph& graph, const LabelAssignment& labels,
                              const SolverConfig& cfg);

struct ChooseCResult {
  double c = 1.0;
  double ratio = 0.0;          // |D1 - T1|^2 / |T1|^2 at the returned c
  std::size_t iterations = 0;  // fixed-point updates performed
  bool degenerate = false;     // |T1| = 0, loop skipped
};

/// Adaptive penalty: fixed point of c <- 4 c |D1 - T1|^2 / |T1|^2 until the
/// ratio is within eps of 1/4. `u1` is the first u-update.
ChooseCResult choose_c(const WeightGraph& graph, const LabelAssignment& labels,
                       std::span<const double> u1, const SolverConfig& cfg);

/// Convenience overload computing u1 itself.
ChooseCResult choose_c(const WeightGraph& graph, const LabelAssignment& labels,
                       const SolverConfig& cfg);

struct LinearStats {
  std::size_t solves = 0;
  std::size_t total_iterations = 0;
  double worst_relative_residual = 0.0;
  bool all_converged = true;

  void add(const SolveReport& r);
};

struct IlDiagnostics {
  std::vector<double> history;  // f(u^k), k = 1, 2, ...
  double c_star = 0.0;
  ChooseCResult choose;
  std::size_t iterations = 0;
  bool stopped_by_tolerance = false;
  double final_objective = 0.0;  // f of the returned u
  double primal_residual = 0.0;  // max |D_ij - sqrt(w_ij)(u_i - u_j)|
  LinearStats linear;
};

struct IlResult {
  std::vector<double> u;
  IlDiagnostics diagnostics;
};

/// Split Bregman solve of min_u f(u) with u fixed on the labels. The last
/// iterate is projected onto [min label, max label] before it is returned.
IlResult il_solve(const WeightGraph& graph, const LabelAssignment& labels, const SolverConfig& cfg);

struct BaselineResult {
  std::vector<double> u;
  SolveReport linear;
};

/// Graph Laplacian: one u-update with nu = 1 and D = q = 0.
BaselineResult gl_solve(const WeightGraph& graph, const LabelAssignment& labels,
                        const SolverConfig& cfg = {});

/// Weighted non-local Laplacian: one u-update with nu = |P|/|S| on labels,
/// 1 elsewhere.
BaselineResult wnll_solve(const WeightGraph& graph, const LabelAssignment& labels,
                          const SolverConfig& cfg = {});

}  // namespace ilap
