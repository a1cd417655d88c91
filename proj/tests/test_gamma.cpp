#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "ilap/error.hpp"
#include "ilap/gamma.hpp"

using namespace ilap;
using namespace ilap::gamma;

TEST_SUITE("gamma") {

TEST_CASE("sigma_eta for the tent kernel in one dimension") {
  // 2 * int_0^1 (1 - z) z^2 dz = 1/6
  CHECK(sigma_eta(KernelSpec::tent(1.0), 2.0, 1) == doctest::Approx(std::sqrt(1.0 / 6.0)).epsilon(1e-10));
}

TEST_CASE("sigma_eta for the tent kernel in two dimensions against a planar quadrature") {
  // Midpoint rule over [-1,1]^2 of max(0, 1 - |z|) z_1^2, refined until stable.
  auto planar = [](int cells) {
    const double h = 2.0 / cells;
    double sum = 0.0;
    for (int a = 0; a < cells; ++a)
      for (int b = 0; b < cells; ++b) {
        const double x = -1.0 + (a + 0.5) * h, y = -1.0 + (b + 0.5) * h;
        sum += std::max(0.0, 1.0 - std::hypot(x, y)) * x * x;
      }
    return sum * h * h;
  };
  const double fine = planar(4000);
  CHECK(std::abs(fine - planar(2000)) < 1e-7);
  const double s = sigma_eta(KernelSpec::tent(1.0), 2.0, 2);
  CHECK(s * s == doctest::Approx(fine).epsilon(1e-6));
  CHECK(s * s == doctest::Approx(std::numbers::pi / 20.0).epsilon(1e-10));
}

TEST_CASE("sigma_eta scales like lambda^(1/p)") {
  const auto base = KernelSpec::tabulated({{0.0, 1.0}, {0.4, 0.7}, {1.0, 0.0}});
  const auto scaled = KernelSpec::tabulated({{0.0, 3.0}, {0.4, 2.1}, {1.0, 0.0}});
  for (double p : {1.5, 2.0, 3.0})
    for (int d : {1, 2, 3}) CHECK(sigma_eta(scaled, p, d) == doctest::Approx(std::pow(3.0, 1.0 / p) * sigma_eta(base, p, d)).epsilon(1e-9));
}

TEST_CASE("sigma_eta rejects unbounded kernels and bad exponents") {
  CHECK_THROWS_AS(sigma_eta(KernelSpec::gaussian(1.0), 2.0, 1), Error);
  CHECK_THROWS_AS(sigma_eta(KernelSpec::tent(1.0), 1.0, 1), Error);
}

TEST_CASE("angular moment") {
  CHECK(angular_moment(2.0, 1) == doctest::Approx(2.0));
  CHECK(angular_moment(2.0, 2) == doctest::Approx(std::numbers::pi));
  CHECK(angular_moment(2.0, 3) == doctest::Approx(4.0 * std::numbers::pi / 3.0));
}

TEST_CASE("discrete energy") {
  std::mt19937_64 rng(1);
  ContinuumProblem prob;
  PointCloud pts;
  prob.sample(80, rng, pts);
  const auto kernel = KernelSpec::tent(1.0);
  const EnergyOptions opt{2.0, 1};
  std::vector<double> u(80);
  for (std::size_t i = 0; i < 80; ++i) u[i] = pts.point(i)[0];
  SUBCASE("constant") {
    const std::vector<double> c(80, 0.7);
    CHECK(discrete_energy(c, pts, kernel, 0.2, opt) == 0.0);
  }
  SUBCASE("shift invariance") {
    auto v = u;
    for (auto& x : v) x += 5.0;
    CHECK(discrete_energy(v, pts, kernel, 0.2, opt) == doctest::Approx(discrete_energy(u, pts, kernel, 0.2, opt)));
  }
  SUBCASE("homogeneity") {
    auto v = u;
    for (auto& x : v) x *= -3.0;
    CHECK(discrete_energy(v, pts, kernel, 0.2, opt) == doctest::Approx(3.0 * discrete_energy(u, pts, kernel, 0.2, opt)));
    const EnergyOptions p3{3.0, 1};
    CHECK(discrete_energy(v, pts, kernel, 0.2, p3) == doctest::Approx(3.0 * discrete_energy(u, pts, kernel, 0.2, p3)));
  }
  SUBCASE("constraint") {
    const LabelAssignment labels(80, {{0, u[0]}, {1, u[1] + 1.0}});
    CHECK(std::isinf(discrete_energy(u, pts, kernel, 0.2, opt, labels)));
    const LabelAssignment ok(80, {{0, u[0]}, {1, u[1]}});
    CHECK(discrete_energy(u, pts, kernel, 0.2, opt, ok) == discrete_energy(u, pts, kernel, 0.2, opt));
  }
  SUBCASE("two points by hand") {
    PointCloud two(1, {0.0, 0.1});
    const std::vector<double> w{0.0, 1.0};
    // s = 0.2: eta_s(0.1) = 5 * 0.5, E = (1/0.2) sqrt(2.5 / 2)
    CHECK(discrete_energy(w, two, kernel, 0.2, opt) == doctest::Approx(5.0 * std::sqrt(1.25)));
  }
}

TEST_CASE("delta rates and schedules") {
  CHECK(delta_rate(1000, 1) == doctest::Approx(std::sqrt(std::log(std::log(1000.0)) / 1000)));
  CHECK(delta_rate(1000, 2) == doctest::Approx(std::pow(std::log(1000.0), 0.75) / std::sqrt(1000.0)));
  CHECK(delta_rate(1000, 3) == doctest::Approx(std::cbrt(std::log(1000.0) / 1000)));
  BandwidthSchedule s;
  s.ns = {125, 2000};
  for (int d : {1, 2, 3}) {
    CHECK_NOTHROW(s.check(d));
    // delta / s = 1 / (scale ln n)
    CHECK(delta_rate(2000, d) / s.bandwidth(2000, d) == doctest::Approx(1.0 / (s.scale * std::log(2000.0))));
  }
  CHECK(s.bandwidth(2000, 1) < s.bandwidth(125, 1));
  s.rule = ScheduleRule::RootLog;
  for (int d : {1, 2, 3}) CHECK_THROWS_AS(s.check(d), Error);
  s.rule = ScheduleRule::Power;
  s.exponent = 0.25;
  CHECK_NOTHROW(s.check(1));
  CHECK_NOTHROW(s.check(3));
  s.exponent = 0.5;
  CHECK_THROWS_AS(s.check(1), Error);
  s.exponent = 0.4;
  CHECK_THROWS_AS(s.check(3), Error);
  s.exponent = 0.0;
  CHECK_THROWS_AS(s.check(1), Error);
}

TEST_CASE("continuum problems") {
  ContinuumProblem line;
  const double x[1] = {0.25};
  CHECK(line.minimizer(x) == 0.25);
  CHECK(line.min_energy() == 1.0);
  ContinuumProblem circle{Domain::Circle, 0.0, 2.0};
  const double top[2] = {0.0, 1.0};
  CHECK(circle.minimizer(top) == doctest::Approx(1.0));
  CHECK(circle.min_energy() == doctest::Approx(2.0 / std::numbers::pi));
  CHECK(circle.volume() == doctest::Approx(2 * std::numbers::pi));
  std::mt19937_64 rng(3);
  PointCloud pts;
  circle.sample(50, rng, pts);
  for (std::size_t i = 0; i < 50; ++i)
    CHECK(std::hypot(pts.point(i)[0], pts.point(i)[1]) == doctest::Approx(1.0));
  CHECK(parse_domain("circle") == Domain::Circle);
  CHECK_THROWS_AS(parse_domain("torus"), Error);
}

TEST_CASE("spearman") {
  const std::vector<double> x{1, 2, 3, 4, 5};
  CHECK(spearman(x, std::vector<double>{5, 4, 3, 2, 1}) == doctest::Approx(-1.0));
  CHECK(spearman(x, std::vector<double>{1, 4, 9, 16, 25}) == doctest::Approx(1.0));
  CHECK(spearman(x, std::vector<double>{1, 1, 2, 2, 3}) == doctest::Approx(0.9486832981));
}

TEST_CASE("small study") {
  StudyConfig cfg;
  cfg.schedule.ns = {60, 120};
  cfg.trials = 2;
  cfg.seed = 4;
  const auto r = convergence_study(cfg);
  CHECK(r.rows.size() == 4);
  CHECK(r.summary.size() == 2);
  CHECK(r.target == doctest::Approx(std::sqrt(1.0 / 6.0)));
  for (const auto& row : r.rows) {
    CHECK_FALSE(row.disconnected);
    CHECK(row.energy > 0.0);
    // the discrete minimizer never has more energy than the continuum one on the same sample
    CHECK(row.energy <= row.energy_continuum + 1e-6);
  }
  SUBCASE("deterministic") {
    CHECK(format_rows_csv(convergence_study(cfg)) == format_rows_csv(r));
  }
  SUBCASE("constant labels give zero energy") {
    auto c = cfg;
    c.problem.g1 = 0.0;
    for (const auto& row : convergence_study(c).rows) {
      CHECK(row.energy == 0.0);
      CHECK(row.sup_dist == 0.0);
    }
  }
  SUBCASE("doubling the labels doubles the energy") {
    auto c = cfg;
    c.problem.g1 = 2.0;
    const auto d = convergence_study(c);
    for (std::size_t k = 0; k < r.rows.size(); ++k)
      CHECK(d.rows[k].energy == doctest::Approx(2.0 * r.rows[k].energy).epsilon(1e-4));
  }
  SUBCASE("tiny bandwidth is flagged as disconnected") {
    auto c = cfg;
    c.schedule.scale = 0.01;
    const auto d = convergence_study(c);
    bool any = false;
    for (const auto& row : d.rows) any = any || row.disconnected;
    CHECK(any);
  }
  SUBCASE("circle") {
    auto c = cfg;
    c.problem.domain = Domain::Circle;
    c.schedule.ns = {100};
    c.trials = 1;
    const auto d = convergence_study(c);
    CHECK(d.target == doctest::Approx(std::sqrt(1.0 / 6.0) / std::sqrt(2 * std::numbers::pi) / std::numbers::pi));
    CHECK_FALSE(d.rows[0].disconnected);
  }
}

TEST_CASE("study validation") {
  StudyConfig cfg;
  cfg.schedule.ns = {100};
  cfg.trials = 0;
  CHECK_THROWS_AS(convergence_study(cfg), Error);
  cfg.trials = 1;
  cfg.kernel = KernelSpec::gaussian(1.0);
  CHECK_THROWS_AS(convergence_study(cfg), Error);
}

}  // TEST_SUITE
