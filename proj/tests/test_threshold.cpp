#include <doctest.h>

#include <algorithm>
#include <random>

#include "ilap/error.hpp"
#include "ilap/threshold.hpp"
#include "oracles.hpp"

using namespace ilap;

namespace {

std::vector<double> run(std::vector<double> a, std::vector<double> c) { return threshold_subproblem(a, c); }

}  // namespace

TEST_SUITE("threshold") {

TEST_CASE("single zero target") {
  const auto x = run({3}, {0});
  CHECK(x[0] == 0.0);
}

TEST_CASE("two targets, only the largest is lowered") {
  const std::vector<double> a{1, 1}, c{2, 0.5};
  const auto x = threshold_subproblem(a, c);
  CHECK(x[0] == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(x[1] == doctest::Approx(0.5).epsilon(1e-12));
  std::mt19937_64 rng(1);
  CHECK(threshold_objective(x, a, c) <= oracle::subproblem_min(a, c, rng) + 1e-9);
  // stationarity of x1^2 + (x1 - 2)^2
  CHECK(2 * x[0] + 2 * (x[0] - 2) == doctest::Approx(0.0));
}

TEST_CASE("two close targets share the level") {
  const std::vector<double> a{1, 1}, c{1, 0.9};
  const auto x = threshold_subproblem(a, c);
  CHECK(x[0] == doctest::Approx(19.0 / 30.0).epsilon(1e-12));
  CHECK(x[1] == doctest::Approx(19.0 / 30.0).epsilon(1e-12));
  std::mt19937_64 rng(2);
  CHECK(threshold_objective(x, a, c) <= oracle::subproblem_min(a, c, rng) + 1e-9);
}

TEST_CASE("tied targets are merged") {
  const std::vector<double> a{1, 1, 1}, c{5, 5, 0.1};
  const auto x = threshold_subproblem(a, c);
  CHECK(x[0] == x[1]);
  CHECK(x[0] == doctest::Approx(10.0 / 3.0));
  CHECK(x[2] == doctest::Approx(0.1));
  std::mt19937_64 rng(3);
  CHECK(std::abs(threshold_objective(x, a, c) - oracle::subproblem_min(a, c, rng)) <= 1e-8);
}

TEST_CASE("input order does not matter") {
  const std::vector<double> a{0.5, 2, 1, 3}, c{1, 4, 0, 2.5};
  const auto x = threshold_subproblem(a, c);
  std::vector<std::size_t> perm{2, 0, 3, 1};
  std::vector<double> pa, pc;
  for (auto p : perm) pa.push_back(a[p]), pc.push_back(c[p]);
  const auto y = threshold_subproblem(pa, pc);
  for (std::size_t k = 0; k < perm.size(); ++k) CHECK(y[k] == x[perm[k]]);
}

TEST_CASE("invalid parameters") {
  CHECK_THROWS_AS(run({0}, {1}), Error);
  CHECK_THROWS_AS(run({1}, {-1}), Error);
  CHECK_THROWS_AS(run({1, 2}, {1}), Error);
}

TEST_CASE("random instances match the oracle") {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> ua(1e-3, 10.0), uc(0.0, 10.0);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 1 + rng() % 6;
    std::vector<double> a(n), c(n);
    for (std::size_t i = 0; i < n; ++i) {
      a[i] = ua(rng);
      c[i] = (rng() % 5 == 0) ? 0.0 : uc(rng);
      if (i > 0 && rng() % 3 == 0) c[i] = c[rng() % i];  // deliberate ties
    }
    const auto x = threshold_subproblem(a, c);
    CHECK(threshold_objective(x, a, c) <= oracle::subproblem_min(a, c, rng, 10) + 1e-6);
  }
}

TEST_CASE("KKT conditions at the solution") {
  std::mt19937_64 rng(23);
  std::uniform_real_distribution<double> ua(1e-2, 10.0), uc(0.0, 10.0);
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t n = 1 + rng() % 6;
    std::vector<double> a(n), c(n);
    for (std::size_t i = 0; i < n; ++i) {
      a[i] = ua(rng);
      c[i] = uc(rng);
      if (i > 0 && rng() % 3 == 0) c[i] = c[rng() % i];
    }
    const auto x = threshold_subproblem(a, c);
    const double top = *std::max_element(x.begin(), x.end());
    double sa = 0.0, sac = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      if (x[i] < top - 1e-12) {
        CHECK(std::abs(2 * a[i] * (x[i] - c[i])) <= 1e-9);
      } else {
        sa += a[i];
        sac += a[i] * c[i];
      }
    }
    // the top group either keeps its target (no lowering) or sits at its phi
    const double phi = sac / (sa + 1.0);
    bool kept = true;
    for (std::size_t i = 0; i < n; ++i)
      if (x[i] >= top - 1e-12 && std::abs(x[i] - c[i]) > 1e-12) kept = false;
    if (!kept) CHECK(top == doctest::Approx(phi).epsilon(1e-10));
  }
}

}  // TEST_SUITE
