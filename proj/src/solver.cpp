#include "ilap/solver.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <random>
#include <string>

#include "ilap/error.hpp"
#include "ilap/threshold.hpp"

namespace ilap {

void SolverConfig::validate() const {
  require(alpha >= 0.0 && std::isfinite(alpha), "alpha must be nonnegative");
  require(rel_obj_tol > 0.0, "rel_obj_tol must be positive");
  require(choose_c_eps > 0.0, "choose_c eps must be positive");
  require(max_outer_iter >= 1, "max_outer_iter must be at least 1");
  require(linear.tol > 0.0, "linear tolerance must be positive");
  if (fixed_c) require(*fixed_c > 0.0, "fixed c must be positive");
  if (primal_tol) require(*primal_tol > 0.0, "primal tolerance must be positive");
}

std::vector<double> row_energies(std::span<const double> u, const WeightGraph& graph) {
  require(u.size() == graph.size(), "value vector length differs from the node count");
  std::vector<double> rows(graph.size(), 0.0);
  const auto& cols = graph.cols();
  const auto& vals = graph.values();
  for (std::size_t i = 0; i < graph.size(); ++i) {
    double s = 0.0;
    for (std::size_t e = graph.row_begin(i); e < graph.row_end(i); ++e) {
      const double diff = u[i] - u[cols[e]];
      s += vals[e] * diff * diff;
    }
    rows[i] = s;
  }
  return rows;
}

double objective(std::span<const double> u, const WeightGraph& graph, double alpha) {
  const auto rows = row_energies(u, graph);
  double peak = 0.0, total = 0.0;
  for (double r : rows) {
    peak = std::max(peak, r);
    total += r;
  }
  return peak + alpha * total;
}

double objective(std::span<const double> u, const WeightGraph& graph, double alpha,
                 const LabelAssignment& labels, MaxScope scope) {
  if (scope == MaxScope::AllNodes) return objective(u, graph, alpha);
  const auto rows = row_energies(u, graph);
  double peak = 0.0, total = 0.0;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (!labels.is_labeled(i)) peak = std::max(peak, rows[i]);
    total += rows[i];
  }
  return peak + alpha * total;
}

double nonlocal_inf_metric(std::span<const double> u, const WeightGraph& graph) {
  return objective(u, graph, 0.0);
}

std::vector<double> nonlocal_gradient(std::span<const double> u, const WeightGraph& graph) {
  std::vector<double> t(graph.nnz());
  const auto& cols = graph.cols();
  const auto& vals = graph.values();
  for (std::size_t i = 0; i < graph.size(); ++i)
    for (std::size_t e = graph.row_begin(i); e < graph.row_end(i); ++e)
      t[e] = std::sqrt(vals[e]) * (u[i] - u[cols[e]]);
  return t;
}

namespace {

std::vector<double> starting_values(const LabelAssignment& labels, std::uint64_t seed) {
  std::vector<double> u(labels.node_count(), 0.0);
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> dist(labels.min_value(), labels.max_value());
  for (Index i : labels.unlabeled()) u[i] = labels.min_value() < labels.max_value() ? dist(rng) : labels.min_value();
  labels.pin(u);
  return u;
}

void check_problem(const WeightGraph& graph, const LabelAssignment& labels) {
  require(graph.size() == labels.node_count(),
          "graph has " + std::to_string(graph.size()) + " nodes but labels cover " +
              std::to_string(labels.node_count()));
}

// Exact D minimizer for the given u, q (empty means zero) and nu.
void solve_d(const WeightGraph& graph, const LabelAssignment& labels, std::span<const double> u,
             std::span<const double> q, std::span<const double> nu, double alpha, MaxScope scope,
             std::vector<double>& d) {
  const std::size_t n = graph.size();
  d = nonlocal_gradient(u, graph);  // becomes C, then D
  std::vector<double> norms(n), weights(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double shrink = nu[i] / (alpha + nu[i]);
    double s = 0.0;
    for (std::size_t e = graph.row_begin(i); e < graph.row_end(i); ++e) {
      d[e] = shrink * (d[e] - (q.empty() ? 0.0 : q[e]));
      s += d[e] * d[e];
    }
    norms[i] = std::sqrt(s);
    weights[i] = alpha + nu[i];
  }

  std::vector<double> radius(n);
  if (scope == MaxScope::AllNodes) {
    radius = threshold_subproblem(weights, norms);
  } else {
    // Labeled rows are outside the max and keep D_i = C_i.
    std::vector<double> a, c;
    for (Index i : labels.unlabeled()) {
      a.push_back(weights[i]);
      c.push_back(norms[i]);
    }
    const auto x = threshold_subproblem(a, c);
    radius = norms;
    for (std::size_t r = 0; r < x.size(); ++r) radius[labels.unlabeled()[r]] = x[r];
  }
  for (std::size_t i = 0; i < n; ++i) {
    const double scale = norms[i] > 0.0 ? radius[i] / norms[i] : 0.0;
    for (std::size_t e = graph.row_begin(i); e < graph.row_end(i); ++e) d[e] *= scale;
  }
}

double sq_distance(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += (a[i] - b[i]) * (a[i] - b[i]);
  return s;
}

}  // namespace

BregmanState BregmanState::initial(const WeightGraph& graph, const LabelAssignment& labels,
                                   std::uint64_t seed) {
  check_problem(graph, labels);
  BregmanState st;
  st.u = starting_values(labels, seed);
  st.d.assign(graph.nnz(), 0.0);
  st.q.assign(graph.nnz(), 0.0);
  st.nu.assign(graph.size(), 1.0);
  return st;
}

UpdateSystem::UpdateSystem(const WeightGraph& graph, const LabelAssignment& labels,
                           std::span<const double> nu)
    : graph_(graph), labels_(labels), nu_(nu.begin(), nu.end()) {
  check_problem(graph, labels);
  require(nu_.size() == graph.size(), "penalty vector length differs from the node count");
  for (double v : nu_) require(v > 0.0 && std::isfinite(v), "penalties nu_i must be positive");

  const std::size_t n = graph.size();
  unknown_of_.assign(n, -1);
  Index next = 0;
  for (Index i : labels.unlabeled()) unknown_of_[i] = next++;

  // Every unlabeled node must reach a label through positive weights.
  std::vector<std::vector<Index>> adj(n);
  const auto& cols = graph.cols();
  const auto& vals = graph.values();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t e = graph.row_begin(i); e < graph.row_end(i); ++e)
      if (vals[e] > 0.0) {
        adj[i].push_back(cols[e]);
        adj[cols[e]].push_back(static_cast<Index>(i));
      }
  std::vector<bool> seen(n, false);
  std::deque<Index> queue;
  for (Index i : labels.labeled()) {
    seen[i] = true;
    queue.push_back(i);
  }
  while (!queue.empty()) {
    const Index i = queue.front();
    queue.pop_front();
    for (Index j : adj[i])
      if (!seen[j]) {
        seen[j] = true;
        queue.push_back(j);
      }
  }
  std::size_t stranded = 0;
  Index first_stranded = -1;
  for (Index i : labels.unlabeled())
    if (!seen[i]) {
      if (stranded++ == 0) first_stranded = i;
    }
  if (stranded > 0)
    fail(ErrorKind::Disconnected, std::to_string(stranded) +
                                      " unlabeled node(s) are not connected to any label (first: " +
                                      std::to_string(first_stranded) + "); the u-update is singular");

  std::vector<Triplet> trip;
  trip.reserve(4 * graph.nnz());
  label_rhs_.assign(labels.unlabeled_count(), 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    const Index ui = unknown_of_[i];
    for (std::size_t e = graph.row_begin(i); e < graph.row_end(i); ++e) {
      const Index j = cols[e];
      const Index uj = unknown_of_[j];
      const double coef = nu_[i] * vals[e];
      if (coef == 0.0) continue;
      if (ui >= 0) trip.push_back({static_cast<std::size_t>(ui), static_cast<std::size_t>(ui), coef});
      if (uj >= 0) trip.push_back({static_cast<std::size_t>(uj), static_cast<std::size_t>(uj), coef});
      if (ui >= 0 && uj >= 0) {
        trip.push_back({static_cast<std::size_t>(ui), static_cast<std::size_t>(uj), -coef});
        trip.push_back({static_cast<std::size_t>(uj), static_cast<std::size_t>(ui), -coef});
      } else if (ui >= 0) {
        label_rhs_[ui] += coef * labels.value(j);
      } else if (uj >= 0) {
        label_rhs_[uj] += coef * labels.value(i);
      }
    }
  }
  matrix_ = CsrMatrix::from_triplets(labels.unlabeled_count(), std::move(trip));
}

std::vector<double> UpdateSystem::rhs(std::span<const double> s) const {
  std::vector<double> b = label_rhs_;
  if (s.empty()) return b;
  require(s.size() == graph_.nnz(), "split variable length differs from the edge count");
  const auto& cols = graph_.cols();
  const auto& vals = graph_.values();
  for (std::size_t i = 0; i < graph_.size(); ++i) {
    const Index ui = unknown_of_[i];
    for (std::size_t e = graph_.row_begin(i); e < graph_.row_end(i); ++e) {
      const double term = nu_[i] * std::sqrt(vals[e]) * s[e];
      if (term == 0.0) continue;
      if (ui >= 0) b[ui] += term;
      const Index uj = unknown_of_[cols[e]];
      if (uj >= 0) b[uj] -= term;
    }
  }
  return b;
}

SolveReport UpdateSystem::solve(std::span<const double> s, std::vector<double>& u,
                                const SolveOptions& options) const {
  require(u.size() == graph_.size(), "value vector length differs from the node count");
  const auto b = rhs(s);
  const auto& free = labels_.unlabeled();
  std::vector<double> guess(free.size()), x(free.size());
  for (std::size_t r = 0; r < free.size(); ++r) guess[r] = u[free[r]];
  auto report = solve_symmetric(matrix_, b, x, options, std::span<const double>(guess));
  for (std::size_t r = 0; r < free.size(); ++r) u[free[r]] = x[r];
  labels_.pin(u);
  return report;
}

SolveReport update_u(BregmanState& state, const WeightGraph& graph, const LabelAssignment& labels,
                     const SolverConfig& cfg) {
  const UpdateSystem system(graph, labels, state.nu);
  std::vector<double> s(state.d.size());
  for (std::size_t e = 0; e < s.size(); ++e) s[e] = state.d[e] + state.q[e];
  return system.solve(s, state.u, cfg.linear);
}

void update_D(BregmanState& state, const WeightGraph& graph, const LabelAssignment& labels,
              const SolverConfig& cfg) {
  solve_d(graph, labels, state.u, state.q, state.nu, cfg.alpha, cfg.max_scope, state.d);
}

double d_subproblem_objective(std::span<const double> d, const BregmanState& state,
                              const WeightGraph& graph, const LabelAssignment& labels,
                              const SolverConfig& cfg) {
  const auto t = nonlocal_gradient(state.u, graph);
  double peak = 0.0, total = 0.0;
  for (std::size_t i = 0; i < graph.size(); ++i) {
    double norm2 = 0.0, fit = 0.0;
    for (std::size_t e = graph.row_begin(i); e < graph.row_end(i); ++e) {
      norm2 += d[e] * d[e];
      const double r = d[e] - t[e] + state.q[e];
      fit += r * r;
    }
    if (cfg.max_scope == MaxScope::AllNodes || !labels.is_labeled(i)) peak = std::max(peak, norm2);
    total += cfg.alpha * norm2 + state.nu[i] * fit;
  }
  return peak + total;
}

ChooseCResult choose_c(const WeightGraph& graph, const LabelAssignment& labels,
                       std::span<const double> u1, const SolverConfig& cfg) {
  const auto t1 = nonlocal_gradient(u1, graph);
  double t_norm2 = 0.0;
  for (double v : t1) t_norm2 += v * v;

  ChooseCResult out;
  out.c = cfg.alpha > 0.0 ? cfg.alpha : 1.0;
  if (t_norm2 == 0.0) {
    out.degenerate = true;
    return out;
  }
  std::vector<double> nu(graph.size()), d;
  auto ratio_at = [&](double c) {
    std::fill(nu.begin(), nu.end(), c);
    solve_d(graph, labels, u1, {}, nu, cfg.alpha, cfg.max_scope, d);
    return sq_distance(d, t1) / t_norm2;
  };
  out.ratio = ratio_at(out.c);
  while (std::abs(out.ratio - 0.25) > cfg.choose_c_eps) {
    if (out.iterations >= cfg.choose_c_max_iter)
      fail(ErrorKind::NonConvergence, "choose_c did not reach the target ratio within " +
                                          std::to_string(cfg.choose_c_max_iter) + " updates");
    out.c = 4.0 * out.c * out.ratio;
    out.ratio = ratio_at(out.c);
    ++out.iterations;
  }
  return out;
}

ChooseCResult choose_c(const WeightGraph& graph, const LabelAssignment& labels,
                       const SolverConfig& cfg) {
  cfg.validate();
  const auto first = gl_solve(graph, labels, cfg);
  return choose_c(graph, labels, first.u, cfg);
}

void LinearStats::add(const SolveReport& r) {
  ++solves;
  total_iterations += r.iterations;
  worst_relative_residual = std::max(worst_relative_residual, r.relative_residual);
  all_converged = all_converged && r.converged;
}

IlResult il_solve(const WeightGraph& graph, const LabelAssignment& labels, const SolverConfig& cfg) {
  cfg.validate();
  check_problem(graph, labels);
  IlResult result;
  auto& diag = result.diagnostics;

  BregmanState state = BregmanState::initial(graph, labels, cfg.seed);

  // First u-update with D = q = 0; uniform nu makes it independent of c.
  {
    const UpdateSystem first(graph, labels, state.nu);
    diag.linear.add(first.solve({}, state.u, cfg.linear));
  }
  state.history.push_back(objective(state.u, graph, cfg.alpha, labels, cfg.max_scope));

  if (cfg.fixed_c) {
    diag.choose.c = *cfg.fixed_c;
  } else {
    diag.choose = choose_c(graph, labels, state.u, cfg);
  }
  state.c = diag.choose.c;
  diag.c_star = state.c;
  std::fill(state.nu.begin(), state.nu.end(), state.c);
  update_D(state, graph, labels, cfg);

  const UpdateSystem system(graph, labels, state.nu);
  std::vector<double> s(graph.nnz());
  std::size_t k = 1;
  bool stop = state.history.back() == 0.0;
  while (!stop && k < cfg.max_outer_iter) {
    for (std::size_t e = 0; e < s.size(); ++e) s[e] = state.d[e] + state.q[e];
    diag.linear.add(system.solve(s, state.u, cfg.linear));
    update_D(state, graph, labels, cfg);
    const auto t = nonlocal_gradient(state.u, graph);
    double primal = 0.0;
    for (std::size_t e = 0; e < s.size(); ++e) {
      const double r = state.d[e] - t[e];
      state.q[e] += r;
      primal = std::max(primal, std::abs(r));
    }
    ++k;

    const double prev = state.history.back();
    const double cur = objective(state.u, graph, cfg.alpha, labels, cfg.max_scope);
    state.history.push_back(cur);
    const bool flat = cur == 0.0 || std::abs(prev - cur) <= cfg.rel_obj_tol * prev;
    const bool feasible = !cfg.primal_tol || primal <= *cfg.primal_tol;
    if (flat && feasible) {
      stop = true;
      diag.stopped_by_tolerance = true;
    }
  }
  if (state.history.back() == 0.0) diag.stopped_by_tolerance = true;

  const auto t = nonlocal_gradient(state.u, graph);
  for (std::size_t e = 0; e < t.size(); ++e)
    diag.primal_residual = std::max(diag.primal_residual, std::abs(state.d[e] - t[e]));
  diag.iterations = k;
  // Projecting onto the label range is 1-Lipschitz and fixes the labels, so
  // no row energy grows; it removes the small overshoot of an inexact iterate.
  for (double& v : state.u) v = std::clamp(v, labels.min_value(), labels.max_value());
  diag.final_objective = objective(state.u, graph, cfg.alpha, labels, cfg.max_scope);
  diag.history = std::move(state.history);
  result.u = std::move(state.u);
  return result;
}

namespace {

BaselineResult one_update(const WeightGraph& graph, const LabelAssignment& labels,
                          const SolverConfig& cfg, std::span<const double> nu) {
  const UpdateSystem system(graph, labels, nu);
  BaselineResult out;
  out.u = starting_values(labels, cfg.seed);
  out.linear = system.solve({}, out.u, cfg.linear);
  return out;
}

}  // namespace

BaselineResult gl_solve(const WeightGraph& graph, const LabelAssignment& labels,
                        const SolverConfig& cfg) {
  check_problem(graph, labels);
  const std::vector<double> nu(graph.size(), 1.0);
  return one_update(graph, labels, cfg, nu);
}

BaselineResult wnll_solve(const WeightGraph& graph, const LabelAssignment& labels,
                          const SolverConfig& cfg) {
  check_problem(graph, labels);
  std::vector<double> nu(graph.size(), 1.0);
  const double boost =
      static_cast<double>(labels.node_count()) / static_cast<double>(labels.labeled_count());
  for (Index i : labels.labeled()) nu[i] = boost;
  return one_update(graph, labels, cfg, nu);
}

}  // namespace ilap
