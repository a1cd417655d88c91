#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "ilap/kernel.hpp"
#include "ilap/point_cloud.hpp"
#include "ilap/solver.hpp"

namespace ilap::gamma {

/// (int over R^k of eta(|z|) |z_1|^p dz)^(1/p) for a compactly supported kernel.
double sigma_eta(const KernelSpec& kernel, double p, int dim);

/// Surface integral of |theta_1|^p over the unit sphere in R^k.
double angular_moment(double p, int dim);

struct EnergyOptions {
  double p = 2.0;
  int dim = 1;  // intrinsic dimension used in eta_s(t) = s^-dim eta(t / s)
};

/// E(u) = (1/s) max_x ((1/N) sum_y eta_s(|x - y|) |u(x) - u(y)|^p)^(1/p), all pairs.
double discrete_energy(std::span<const double> u, const PointCloud& points, const KernelSpec& kernel,
                       double s, const EnergyOptions& options);

/// Constrained form: +infinity unless u equals every given label value.
double discrete_energy(std::span<const double> u, const PointCloud& points, const KernelSpec& kernel,
                       double s, const EnergyOptions& options, const LabelAssignment& labels);

enum class Domain { Interval, Circle, Square };

std::string to_string(Domain d);
Domain parse_domain(const std::string& name);

/// Domain with two label points carrying g0 and g1 and a closed-form minimizer
/// of the continuum energy.
///   Interval [0,1]: labels at 0, 1; minimizer affine.
///   Circle (unit, in R^2): labels at angles 0 and pi; minimizer linear in
///     geodesic distance from the first label.
///   Square [0,1]^2: labels at (0,0), (1,1); g affine in x + y, which is one
///     minimizer (not unique in this case).
struct ContinuumProblem {
  Domain domain = Domain::Interval;
  double g0 = 0.0;
  double g1 = 1.0;

  int intrinsic_dim() const;
  std::size_t ambient_dim() const;
  double volume() const;
  /// Lipschitz constant of the continuum minimizer (its minimal energy).
  double min_energy() const;
  PointCloud label_points() const;
  std::vector<double> label_values() const;
  double minimizer(std::span<const double> x) const;
  void sample(std::size_t n, std::mt19937_64& rng, PointCloud& out) const;
};

/// delta_n for intrinsic dimension d.
double delta_rate(double n, int dim);

/// DeltaLog: s = scale * delta_n * ln n. Power: s = scale * n^(-exponent).
/// RootLog: s = scale * 2 (ln n / n)^(1/d), which fails the delta_n / s_n -> 0
/// check in every dimension and is kept only for comparison.
enum class ScheduleRule { DeltaLog, Power, RootLog };

struct BandwidthSchedule {
  std::vector<std::size_t> ns;
  ScheduleRule rule = ScheduleRule::DeltaLog;
  double scale = 0.5;
  double exponent = 0.25;

  double bandwidth(std::size_t n, int dim) const;
  /// Throws unless s_n -> 0 and delta_n / s_n -> 0 for this rule and dimension.
  void check(int dim) const;
};

struct StudyConfig {
  ContinuumProblem problem;
  BandwidthSchedule schedule;
  KernelSpec kernel = KernelSpec::tent(1.0);
  double p = 2.0;
  std::size_t trials = 3;
  std::uint64_t seed = 1;
  SolverConfig solver;

  void validate() const;
};

struct StudyRow {
  std::size_t n = 0;
  std::size_t trial = 0;
  double s = 0.0;
  double energy = 0.0;            // E_n of the discrete minimizer
  double energy_continuum = 0.0;  // E_n of the continuum minimizer on the sample
  double target = 0.0;
  double rel_error = 0.0;
  double sup_dist = 0.0;
  std::size_t iterations = 0;
  bool disconnected = false;
};

struct StudySummary {
  std::size_t n = 0;
  double s = 0.0;
  std::size_t trials = 0;  // connected trials averaged
  double energy = 0.0;
  double energy_continuum = 0.0;
  double rel_error = 0.0;
  double sup_dist = 0.0;
};

struct StudyResult {
  double target = 0.0;
  std::vector<StudyRow> rows;
  std::vector<StudySummary> summary;
};

/// One sample: n uniform points followed by the label points.
StudyRow run_trial(const StudyConfig& cfg, std::size_t n, std::size_t trial);

StudyResult convergence_study(const StudyConfig& cfg);

std::string format_rows_csv(const StudyResult& r);
std::string format_summary_csv(const StudyResult& r);

/// Spearman rank correlation with average ranks for ties.
double spearman(std::span<const double> x, std::span<const double> y);

}  // namespace ilap::gamma
