#include "ilap/gamma.hpp"

#include <algorithm>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <sstream>

#include "ilap/error.hpp"
#include "ilap/graph.hpp"
#include "ilap/labels.hpp"

namespace ilap::gamma {

double angular_moment(double p, int dim) {
  require(dim >= 1, "dimension must be positive");
  const double k = dim;
  return 2.0 * std::pow(std::numbers::pi, (k - 1.0) / 2.0) * std::tgamma((p + 1.0) / 2.0) /
         std::tgamma((k + p) / 2.0);
}

double sigma_eta(const KernelSpec& kernel, double p, int dim) {
  kernel.validate();
  require(p > 1.0, "sigma_eta: p must exceed 1");
  require(dim >= 1, "sigma_eta: dimension must be positive");
  if (!kernel.compact())
    fail(ErrorKind::InvalidParameter,
         "sigma_eta needs a compactly supported kernel; use the tent kernel");
  // Integrate piecewise between the kernel's kinks.
  std::vector<double> breaks{0.0};
  if (kernel.family == KernelFamily::Tabulated)
    for (const auto& [t, v] : kernel.table)
      if (t > breaks.back()) breaks.push_back(t);
  const double radius = kernel.support_radius();
  if (radius > breaks.back()) breaks.push_back(radius);
  const double power = dim - 1.0 + p;
  auto integrand = [&](double r) { return kernel(r) * std::pow(r, power); };
  double radial = 0.0;
  for (std::size_t b = 0; b + 1 < breaks.size(); ++b)
    radial += boost::math::quadrature::gauss_kronrod<double, 31>::integrate(
        integrand, breaks[b], breaks[b + 1], 15, 1e-12);
  return std::pow(angular_moment(p, dim) * radial, 1.0 / p);
}

double discrete_energy(std::span<const double> u, const PointCloud& points, const KernelSpec& kernel,
                       double s, const EnergyOptions& options) {
  require(u.size() == points.size(), "discrete_energy: value count differs from point count");
  require(s > 0.0, "discrete_energy: bandwidth must be positive");
  require(options.p >= 1.0, "discrete_energy: p must be at least 1");
  const std::size_t n = points.size();
  if (n == 0) return 0.0;
  const double reach = kernel.support_radius() * s;
  const double reach2 = reach * reach;
  const double scale = std::pow(s, -options.dim);
  double best = 0.0;
  for (std::size_t x = 0; x < n; ++x) {
    double sum = 0.0;
    for (std::size_t y = 0; y < n; ++y) {
      if (y == x || u[x] == u[y]) continue;
      const double d2 = squared_distance(points.point(x), points.point(y));
      if (d2 >= reach2) continue;
      const double w = scale * kernel(std::sqrt(d2) / s);
      if (w > 0.0) sum += w * std::pow(std::abs(u[x] - u[y]), options.p);
    }
    best = std::max(best, sum);
  }
  return std::pow(best / static_cast<double>(n), 1.0 / options.p) / s;
}

double discrete_energy(std::span<const double> u, const PointCloud& points, const KernelSpec& kernel,
                       double s, const EnergyOptions& options, const LabelAssignment& labels) {
  require(labels.node_count() == u.size(), "discrete_energy: label count differs from value count");
  for (Index i : labels.labeled())
    if (u[i] != labels.value(i)) return std::numeric_limits<double>::infinity();
  return discrete_energy(u, points, kernel, s, options);
}

std::string to_string(Domain d) {
  switch (d) {
    case Domain::Interval: return "1d";
    case Domain::Circle: return "circle";
    case Domain::Square: return "square";
  }
  return "?";
}

Domain parse_domain(const std::string& name) {
  if (name == "1d" || name == "interval") return Domain::Interval;
  if (name == "circle") return Domain::Circle;
  if (name == "square" || name == "2d") return Domain::Square;
  fail(ErrorKind::InvalidParameter, "unknown problem '" + name + "' (expected 1d, circle or square)");
}

int ContinuumProblem::intrinsic_dim() const { return domain == Domain::Square ? 2 : 1; }

std::size_t ContinuumProblem::ambient_dim() const { return domain == Domain::Interval ? 1 : 2; }

double ContinuumProblem::volume() const {
  return domain == Domain::Circle ? 2.0 * std::numbers::pi : 1.0;
}

double ContinuumProblem::min_energy() const {
  const double rise = std::abs(g1 - g0);
  switch (domain) {
    case Domain::Interval: return rise;
    case Domain::Circle: return rise / std::numbers::pi;
    case Domain::Square: return rise / std::numbers::sqrt2;
  }
  return 0.0;
}

PointCloud ContinuumProblem::label_points() const {
  switch (domain) {
    case Domain::Interval: return PointCloud(1, {0.0, 1.0});
    case Domain::Circle: return PointCloud(2, {1.0, 0.0, -1.0, 0.0});
    case Domain::Square: return PointCloud(2, {0.0, 0.0, 1.0, 1.0});
  }
  return {};
}

std::vector<double> ContinuumProblem::label_values() const { return {g0, g1}; }

double ContinuumProblem::minimizer(std::span<const double> x) const {
  switch (domain) {
    case Domain::Interval: return g0 + (g1 - g0) * x[0];
    case Domain::Circle:
      return g0 + (g1 - g0) * std::abs(std::atan2(x[1], x[0])) / std::numbers::pi;
    case Domain::Square: return g0 + (g1 - g0) * (x[0] + x[1]) / 2.0;
  }
  return 0.0;
}

void ContinuumProblem::sample(std::size_t n, std::mt19937_64& rng, PointCloud& out) const {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  out = PointCloud(ambient_dim(), {});
  for (std::size_t i = 0; i < n; ++i) {
    switch (domain) {
      case Domain::Interval: {
        const double x = unit(rng);
        out.push_back(std::span<const double>(&x, 1));
        break;
      }
      case Domain::Circle: {
        const double t = 2.0 * std::numbers::pi * unit(rng);
        const double p[2] = {std::cos(t), std::sin(t)};
        out.push_back(p);
        break;
      }
      case Domain::Square: {
        const double p[2] = {unit(rng), unit(rng)};
        out.push_back(p);
        break;
      }
    }
  }
}

double delta_rate(double n, int dim) {
  require(n > std::exp(1.0), "delta_rate: n must exceed e");
  require(dim >= 1, "delta_rate: dimension must be positive");
  const double ln = std::log(n);
  if (dim == 1) return std::sqrt(std::log(ln) / n);
  if (dim == 2) return std::pow(ln, 0.75) / std::sqrt(n);
  return std::pow(ln / n, 1.0 / dim);
}

double BandwidthSchedule::bandwidth(std::size_t n, int dim) const {
  const double nn = static_cast<double>(n);
  switch (rule) {
    case ScheduleRule::DeltaLog: return scale * delta_rate(nn, dim) * std::log(nn);
    case ScheduleRule::Power: return scale * std::pow(nn, -exponent);
    case ScheduleRule::RootLog: return scale * 2.0 * std::pow(std::log(nn) / nn, 1.0 / dim);
  }
  return 0.0;
}

void BandwidthSchedule::check(int dim) const {
  require(!ns.empty(), "schedule: no sample sizes");
  for (std::size_t n : ns) require(n >= 16, "schedule: sample sizes must be at least 16");
  require(scale > 0.0, "schedule: scale must be positive");
  switch (rule) {
    case ScheduleRule::DeltaLog:
      // delta_n / s_n = 1 / (scale ln n) and delta_n ln n -> 0 in every dimension.
      return;
    case ScheduleRule::Power: {
      require(exponent > 0.0, "schedule: exponent must be positive so that s_n -> 0");
      const double limit = dim <= 2 ? 0.5 : 1.0 / dim;
      if (exponent >= limit)
        fail(ErrorKind::InvalidParameter,
             "schedule: n^-" + std::to_string(exponent) + " shrinks too fast, delta_n / s_n does not vanish");
      return;
    }
    case ScheduleRule::RootLog:
      fail(ErrorKind::InvalidParameter,
           "schedule: 2 (ln n / n)^(1/d) does not keep delta_n / s_n -> 0");
  }
}

void StudyConfig::validate() const {
  require(trials >= 1, "study: trials must be at least 1");
  require(p > 1.0, "study: p must exceed 1");
  kernel.validate();
  require(kernel.compact(), "study: kernel must be compactly supported");
  schedule.check(problem.intrinsic_dim());
  solver.validate();
  require(solver.alpha == 0.0, "study: the energy comparison needs alpha = 0");
}

StudyRow run_trial(const StudyConfig& cfg, std::size_t n, std::size_t trial) {
  const int dim = cfg.problem.intrinsic_dim();
  std::seed_seq seq{static_cast<std::uint64_t>(cfg.seed), static_cast<std::uint64_t>(n),
                    static_cast<std::uint64_t>(trial)};
  std::mt19937_64 rng(seq);
  PointCloud points;
  cfg.problem.sample(n, rng, points);
  const auto label_pts = cfg.problem.label_points();
  const auto label_vals = cfg.problem.label_values();
  std::vector<std::pair<Index, double>> label_list;
  for (std::size_t k = 0; k < label_pts.size(); ++k) {
    label_list.emplace_back(static_cast<Index>(points.size()), label_vals[k]);
    points.push_back(label_pts.point(k));
  }
  const LabelAssignment labels(points.size(), std::move(label_list));

  StudyRow row;
  row.n = n;
  row.trial = trial;
  row.s = cfg.schedule.bandwidth(n, dim);
  row.target = sigma_eta(cfg.kernel, cfg.p, dim) * std::pow(cfg.problem.volume(), -1.0 / cfg.p) *
               cfg.problem.min_energy();

  const double s = row.s;
  const double scale = std::pow(s, -dim);
  const KernelSpec& kernel = cfg.kernel;
  const auto graph = radius_graph(points, kernel.support_radius() * s,
                                  [&](double t) { return scale * kernel(t / s); });

  std::vector<double> cont(points.size());
  for (std::size_t i = 0; i < points.size(); ++i) cont[i] = cfg.problem.minimizer(points.point(i));
  const EnergyOptions eopt{cfg.p, dim};
  row.energy_continuum = discrete_energy(cont, points, kernel, s, eopt);

  try {
    auto result = il_solve(graph, labels, cfg.solver);
    row.energy = discrete_energy(result.u, points, kernel, s, eopt, labels);
    row.iterations = result.diagnostics.iterations;
    for (std::size_t i = 0; i < points.size(); ++i)
      row.sup_dist = std::max(row.sup_dist, std::abs(result.u[i] - cont[i]));
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::Disconnected) throw;
    row.disconnected = true;
    row.energy = row.sup_dist = std::numeric_limits<double>::quiet_NaN();
  }
  row.rel_error = row.target > 0.0 ? std::abs(row.energy - row.target) / row.target
                                   : std::abs(row.energy - row.target);
  return row;
}

StudyResult convergence_study(const StudyConfig& cfg) {
  cfg.validate();
  StudyResult out;
  for (std::size_t n : cfg.schedule.ns) {
    StudySummary sum;
    sum.n = n;
    for (std::size_t t = 0; t < cfg.trials; ++t) {
      auto row = run_trial(cfg, n, t);
      out.target = row.target;
      sum.s = row.s;
      if (!row.disconnected) {
        ++sum.trials;
        sum.energy += row.energy;
        sum.energy_continuum += row.energy_continuum;
        sum.rel_error += row.rel_error;
        sum.sup_dist += row.sup_dist;
      }
      out.rows.push_back(row);
    }
    if (sum.trials > 0) {
      const double k = static_cast<double>(sum.trials);
      sum.energy /= k;
      sum.energy_continuum /= k;
      sum.rel_error /= k;
      sum.sup_dist /= k;
    } else {
      sum.energy = sum.energy_continuum = sum.rel_error = sum.sup_dist =
          std::numeric_limits<double>::quiet_NaN();
    }
    out.summary.push_back(sum);
  }
  return out;
}

std::string format_rows_csv(const StudyResult& r) {
  std::ostringstream out;
  out.precision(10);
  out << "n,trial,s_n,energy,energy_continuum,target,rel_error,sup_dist,iterations,disconnected\n";
  for (const auto& row : r.rows)
    out << row.n << ',' << row.trial << ',' << row.s << ',' << row.energy << ','
        << row.energy_continuum << ',' << row.target << ',' << row.rel_error << ',' << row.sup_dist
        << ',' << row.iterations << ',' << (row.disconnected ? 1 : 0) << '\n';
  return out.str();
}

std::string format_summary_csv(const StudyResult& r) {
  std::ostringstream out;
  out.precision(10);
  out << "n,s_n,trials,energy,energy_continuum,target,rel_error,sup_dist\n";
  for (const auto& s : r.summary)
    out << s.n << ',' << s.s << ',' << s.trials << ',' << s.energy << ',' << s.energy_continuum
        << ',' << r.target << ',' << s.rel_error << ',' << s.sup_dist << '\n';
  return out.str();
}

namespace {

std::vector<double> ranks(std::span<const double> v) {
  std::vector<std::size_t> idx(v.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return v[a] < v[b]; });
  std::vector<double> r(v.size());
  for (std::size_t a = 0; a < idx.size();) {
    std::size_t b = a;
    while (b + 1 < idx.size() && v[idx[b + 1]] == v[idx[a]]) ++b;
    const double avg = (static_cast<double>(a) + static_cast<double>(b)) / 2.0 + 1.0;
    for (std::size_t k = a; k <= b; ++k) r[idx[k]] = avg;
    a = b + 1;
  }
  return r;
}

}  // namespace

double spearman(std::span<const double> x, std::span<const double> y) {
  require(x.size() == y.size() && x.size() >= 2, "spearman: need two equal-length series");
  const auto rx = ranks(x), ry = ranks(y);
  const double n = static_cast<double>(x.size());
  const double mx = std::accumulate(rx.begin(), rx.end(), 0.0) / n;
  const double my = std::accumulate(ry.begin(), ry.end(), 0.0) / n;
  double sxy = 0, sxx = 0, syy = 0;
  for (std::size_t i = 0; i < rx.size(); ++i) {
    sxy += (rx[i] - mx) * (ry[i] - my);
    sxx += (rx[i] - mx) * (rx[i] - mx);
    syy += (ry[i] - my) * (ry[i] - my);
  }
  if (sxx == 0.0 || syy == 0.0) return 0.0;
  return sxy / std::sqrt(sxx * syy);
}

}  // namespace ilap::gamma
