// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fail.
//
// Optional environment:
//   ILAP_ACCEPTANCE_IMAGE  PGM (at least 128x128) whose top-left 128x128 crop
//                          replaces the synthetic texture in criterion 7.
//   ILAP_ACCEPTANCE_SKIP   comma-separated criterion numbers to skip.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "ilap/error.hpp"
#include "ilap/gamma.hpp"
#include "ilap/image.hpp"
#include "ilap/inpaint.hpp"
#include "ilap/solver.hpp"
#include "ilap/threshold.hpp"
#include "ilap/toy2d.hpp"
#include "oracles.hpp"

using namespace ilap;

namespace {

// Tolerances and targets.
constexpr double kOracleSlack = 1e-6;
constexpr double kSubproblemSeconds = 60.0;
constexpr double kFourNodeValue = 11.0 / 6.0;
constexpr double kFourNodeSlack = 1e-6;
constexpr double kSeedAgreement = 1e-5;
constexpr double kPrimalFeasibility = 1e-4;
constexpr double kFirstIterationMatch = 1e-10;
constexpr double kToyIl = 1.92e-4, kToyWnll = 4.36e-3, kToyGl = 3.52e-2, kToyTruth = 6.85e-4;
constexpr double kToyFactor = 3.0;
constexpr double kToyC = 4.59e-3, kToyCFactor = 2.0;
constexpr double kToyStop = 123.0, kToyStopBand = 0.5;
constexpr double kOptimalitySlack = 1e-8;
constexpr double kMaxPrinciple = 1e-6;
constexpr double kGammaFinal = 0.15;
constexpr double kGammaSeconds = 600.0;
constexpr double kPsnrGap = 1.0;

int failures = 0;

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

void line(int id, bool ok, const std::string& what) {
  std::printf("[%s] criterion %d: %s\n", ok ? "PASS" : "FAIL", id, what.c_str());
  std::fflush(stdout);
  if (!ok) ++failures;
}

void note(const std::string& s) {
  std::printf("      %s\n", s.c_str());
  std::fflush(stdout);
}

std::string fmt(const char* f, double a) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, a);
  return buf;
}

bool within_factor(double value, double target, double factor) {
  return value > 0.0 && value <= target * factor && value >= target / factor;
}

bool skipped(int id) {
  const char* env = std::getenv("ILAP_ACCEPTANCE_SKIP");
  if (!env) return false;
  std::stringstream ss(env);
  std::string tok;
  while (std::getline(ss, tok, ','))
    if (tok == std::to_string(id)) return true;
  return false;
}

LabelAssignment random_labels(std::size_t n, std::size_t m, std::mt19937_64& rng) {
  std::vector<Index> idx(n);
  for (std::size_t i = 0; i < n; ++i) idx[i] = static_cast<Index>(i);
  std::shuffle(idx.begin(), idx.end(), rng);
  std::uniform_real_distribution<double> val(-1.0, 2.0);
  std::vector<std::pair<Index, double>> l;
  for (std::size_t k = 0; k < m; ++k) l.emplace_back(idx[k], val(rng));
  return LabelAssignment(n, l);
}

double max_abs_diff(const std::vector<double>& a, const std::vector<double>& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

// ------------------------------------------------------------------------ 1

void criterion1() {
  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> ua(1e-3, 10.0), uc(0.0, 10.0);
  int bad = 0, ties = 0, zeros = 0;
  double solver_seconds = 0.0, worst = -1e300;
  const auto t0 = std::chrono::steady_clock::now();
  for (int trial = 0; trial < 1000; ++trial) {
    const std::size_t n = 1 + rng() % 6;
    std::vector<double> a(n), c(n);
    for (std::size_t i = 0; i < n; ++i) {
      a[i] = ua(rng);
      c[i] = uc(rng);
      if (rng() % 6 == 0) c[i] = 0.0, ++zeros;
      if (i > 0 && rng() % 3 == 0) c[i] = c[rng() % i], ++ties;
    }
    const auto ts = std::chrono::steady_clock::now();
    const auto x = threshold_subproblem(a, c);
    solver_seconds += seconds_since(ts);
    const double got = threshold_objective(x, a, c);
    const double ref = oracle::subproblem_min(a, c, rng, 50);
    worst = std::max(worst, got - ref);
    if (!(got <= ref + kOracleSlack)) ++bad;
  }
  const double total = seconds_since(t0);
  note("instances 1000, tied targets " + std::to_string(ties) + ", zero targets " + std::to_string(zeros));
  note("worst objective - oracle " + fmt("%.3e", worst) + ", solver time " + fmt("%.4f", solver_seconds) +
       " s, total with oracle " + fmt("%.1f", total) + " s");
  line(1, bad == 0 && total < kSubproblemSeconds,
       "subproblem matches the brute-force oracle on 1000 instances (" + std::to_string(bad) + " misses)");
}

// ------------------------------------------------------------------------ 2

void criterion2() {
  const auto g = oracle::four_node_graph();
  const auto labels = oracle::four_node_labels();
  const auto literal = oracle::four_node_minimizers(false);
  const auto unlabeled = oracle::four_node_minimizers(true);
  auto describe = [](const oracle::MinimizerSet& s) {
    char buf[200];
    std::snprintf(buf, sizeof buf, "min %.6f, x3 in [%.3f, %.3f], x4 in [%.3f, %.3f], %zu grid points",
                  s.min_value, s.x3_lo, s.x3_hi, s.x4_lo, s.x4_hi, s.count);
    return std::string(buf);
  };
  // claimed set: x3 = 1, -1 <= x4 <= 1
  auto matches_claim = [](const oracle::MinimizerSet& s) {
    return std::abs(s.x3_lo - 1) < 1e-9 && std::abs(s.x3_hi - 1) < 1e-9 && std::abs(s.x4_lo + 1) < 0.01 &&
           std::abs(s.x4_hi - 1) < 0.01;
  };
  note("oracle, max over all rows:       " + describe(literal));
  note("oracle, max over unlabeled rows: " + describe(unlabeled));
  note(std::string("claimed set {x3 = 1, -1 <= x4 <= 1} matches: all rows ") +
       (matches_claim(literal) ? "yes" : "no") + ", unlabeled rows " + (matches_claim(unlabeled) ? "yes" : "no"));

  SolverConfig cfg;
  const auto r = il_solve(g, labels, cfg);
  const double f = r.diagnostics.final_objective;
  const double step = 0.005;
  const bool member = r.u[2] >= literal.x3_lo - step && r.u[2] <= literal.x3_hi + step &&
                      r.u[3] >= literal.x4_lo - step && r.u[3] <= literal.x4_hi + step;
  note("IL alpha 0: f = " + fmt("%.10f", f) + ", (x3, x4) = (" + fmt("%.6f", r.u[2]) + ", " + fmt("%.6f", r.u[3]) +
       "), iterations " + std::to_string(r.diagnostics.iterations));

  SolverConfig tight = cfg;
  tight.primal_tol = 1e-6;
  const auto rt = il_solve(g, labels, tight);
  note("with primal tolerance 1e-6: iterations " + std::to_string(rt.diagnostics.iterations) +
       ", max |D - grad u| " + fmt("%.2e", rt.diagnostics.primal_residual));

  // the unlabeled-only reading needs a fixed penalty (the adaptive ratio stays below 1/4)
  SolverConfig other = tight;
  other.max_scope = MaxScope::UnlabeledOnly;
  other.fixed_c = 1.0;
  const auto ru = il_solve(g, labels, other);
  const bool member_u = ru.u[2] >= unlabeled.x3_lo - step && ru.u[2] <= unlabeled.x3_hi + step &&
                        ru.u[3] >= unlabeled.x4_lo - step && ru.u[3] <= unlabeled.x4_hi + step &&
                        ru.diagnostics.final_objective <= unlabeled.min_value + kFourNodeSlack;
  note("IL unlabeled-only reading: f = " + fmt("%.10f", ru.diagnostics.final_objective) + ", (x3, x4) = (" +
       fmt("%.6f", ru.u[2]) + ", " + fmt("%.6f", ru.u[3]) + ")");

  SolverConfig reg = cfg;
  reg.alpha = 1e-3;
  reg.seed = 1;
  const auto a = il_solve(g, labels, reg);
  reg.seed = 2;
  const auto b = il_solve(g, labels, reg);
  const double agree = max_abs_diff(a.u, b.u);
  note("alpha 1e-3, seeds 1 and 2: max difference " + fmt("%.2e", agree));

  line(2,
       f <= kFourNodeValue + kFourNodeSlack && member && member_u &&
           rt.diagnostics.primal_residual <= kPrimalFeasibility && agree <= kSeedAgreement,
       "four-node example: objective " + fmt("%.8f", f) + " <= 11/6 + 1e-6, solution in the oracle set");
}

// ------------------------------------------------------------------------ 3

void criterion3() {
  double worst_gl = 0.0, worst_wnll = 0.0;
  std::mt19937_64 rng(31);
  std::vector<std::pair<WeightGraph, LabelAssignment>> cases;
  for (int t = 0; t < 10; ++t) {
    const std::size_t n = 10 + rng() % 90;
    auto g = oracle::random_connected_graph(n, 2.0, rng);
    auto l = random_labels(n, 1 + rng() % 5, rng);
    cases.emplace_back(std::move(g), std::move(l));
  }
  const auto toy = make_toy2d({31, 2.0 / 30.0, 10});
  cases.emplace_back(toy.graph, toy.labels);
  for (const auto& [g, labels] : cases) {
    SolverConfig cfg;
    cfg.linear.tol = 1e-14;
    auto st = BregmanState::initial(g, labels, cfg.seed);
    std::fill(st.nu.begin(), st.nu.end(), 1.0);
    update_u(st, g, labels, cfg);
    worst_gl = std::max(worst_gl, max_abs_diff(st.u, gl_solve(g, labels, cfg).u));
    auto sw = BregmanState::initial(g, labels, cfg.seed);
    const double ratio = static_cast<double>(g.size()) / static_cast<double>(labels.labeled_count());
    for (std::size_t i = 0; i < g.size(); ++i) sw.nu[i] = labels.is_labeled(i) ? ratio : 1.0;
    update_u(sw, g, labels, cfg);
    worst_wnll = std::max(worst_wnll, max_abs_diff(sw.u, wnll_solve(g, labels, cfg).u));
  }
  line(3, worst_gl <= kFirstIterationMatch && worst_wnll <= kFirstIterationMatch,
       "baselines equal one u-update: GL " + fmt("%.2e", worst_gl) + ", WNLL " + fmt("%.2e", worst_wnll));
}

// ------------------------------------------------------------------------ 4

struct ToyMetrics {
  double truth, gl, wnll, il, c_star;
  std::size_t iterations;
  bool stopped;
  double seconds;
};

ToyMetrics run_toy(const Toy2dOptions& opt) {
  const auto t0 = std::chrono::steady_clock::now();
  const auto toy = make_toy2d(opt);
  SolverConfig cfg;
  ToyMetrics m{};
  m.truth = nonlocal_inf_metric(toy.truth, toy.graph);
  m.gl = nonlocal_inf_metric(gl_solve(toy.graph, toy.labels, cfg).u, toy.graph);
  m.wnll = nonlocal_inf_metric(wnll_solve(toy.graph, toy.labels, cfg).u, toy.graph);
  const auto il = il_solve(toy.graph, toy.labels, cfg);
  m.il = nonlocal_inf_metric(il.u, toy.graph);
  m.c_star = il.diagnostics.c_star;
  m.iterations = il.diagnostics.iterations;
  m.stopped = il.diagnostics.stopped_by_tolerance;
  m.seconds = seconds_since(t0);
  return m;
}

void criterion4() {
  const auto ci = run_toy({31, 2.0 / 30.0, 10});
  note("31x31 (sigma = 2h): GL " + fmt("%.3e", ci.gl) + ", WNLL " + fmt("%.3e", ci.wnll) + ", IL " +
       fmt("%.3e", ci.il) + " (" + fmt("%.1f", ci.seconds) + " s)");
  const bool ci_order = ci.il < ci.wnll && ci.wnll < ci.gl;

  const auto full = run_toy({101, 0.02, 10});
  note("101x101: truth " + fmt("%.3e", full.truth) + " (reported " + fmt("%.2e", kToyTruth) + ")");
  note("101x101: GL " + fmt("%.3e", full.gl) + " (" + fmt("%.2e", kToyGl) + "), WNLL " + fmt("%.3e", full.wnll) +
       " (" + fmt("%.2e", kToyWnll) + "), IL " + fmt("%.3e", full.il) + " (" + fmt("%.2e", kToyIl) + ")");
  note("101x101: c* " + fmt("%.3e", full.c_star) + " (" + fmt("%.2e", kToyC) + "), stopping iteration " +
       std::to_string(full.iterations) + (full.stopped ? "" : " (cap)") + " (" + fmt("%.0f", kToyStop) +
       " +/- 50%), " + fmt("%.1f", full.seconds) + " s");
  const bool order = full.il < full.wnll && full.wnll < full.gl;
  const bool values = within_factor(full.gl, kToyGl, kToyFactor) && within_factor(full.wnll, kToyWnll, kToyFactor) &&
                      within_factor(full.il, kToyIl, kToyFactor);
  const bool c_ok = within_factor(full.c_star, kToyC, kToyCFactor);
  const double it = static_cast<double>(full.iterations);
  const bool stop_ok = full.stopped && it >= kToyStop * (1 - kToyStopBand) && it <= kToyStop * (1 + kToyStopBand);
  note(std::string("checks: CI ordering ") + (ci_order ? "ok" : "FAIL") + ", full ordering " + (order ? "ok" : "FAIL") +
       ", factor-3 values " + (values ? "ok" : "FAIL") + ", c* factor 2 " + (c_ok ? "ok" : "FAIL") +
       ", stopping iteration " + (stop_ok ? "ok" : "FAIL"));
  line(4, ci_order && order && values && c_ok && stop_ok, "toy grid example at 31x31 and 101x101");
}

// ------------------------------------------------------------------------ 5

void criterion5() {
  std::mt19937_64 rng(55);
  int opt_bad = 0, mp_bad = 0;
  double worst_gap = -1e300;
  for (int t = 0; t < 20; ++t) {
    const std::size_t n = 10 + rng() % 91;
    const auto g = oracle::random_connected_graph(n, 1.0 + (rng() % 4), rng);
    const auto labels = random_labels(n, 1 + rng() % 6, rng);
    for (double alpha : {0.0, 1e-3}) {
      SolverConfig cfg;
      cfg.alpha = alpha;
      cfg.seed = t;
      const auto il = il_solve(g, labels, cfg).u;
      const auto gl = gl_solve(g, labels, cfg).u;
      const auto wn = wnll_solve(g, labels, cfg).u;
      const double fil = objective(il, g, alpha);
      const double best = std::min(objective(gl, g, alpha), objective(wn, g, alpha));
      worst_gap = std::max(worst_gap, fil - best);
      if (!(fil <= best + kOptimalitySlack)) ++opt_bad;
      for (const auto* u : {&il, &gl, &wn})
        for (double v : *u)
          if (v < labels.min_value() - kMaxPrinciple || v > labels.max_value() + kMaxPrinciple) ++mp_bad;
    }
  }
  note("worst f(IL) - min(f(GL), f(WNLL)) = " + fmt("%.3e", worst_gap));
  line(5, opt_bad == 0 && mp_bad == 0,
       "IL optimal against the baselines on 40 solves (" + std::to_string(opt_bad) + " violations), maximum principle (" +
           std::to_string(mp_bad) + " violations)");
}

// ------------------------------------------------------------------------ 6

void criterion6() {
  gamma::StudyConfig cfg;
  cfg.schedule.ns = {125, 250, 500, 1000, 2000};
  cfg.trials = 3;
  cfg.seed = 1;
  const auto t0 = std::chrono::steady_clock::now();
  const auto r = gamma::convergence_study(cfg);
  const double secs = seconds_since(t0);
  std::vector<double> ns, errs;
  for (const auto& s : r.summary) {
    note("n " + std::to_string(s.n) + ": s_n " + fmt("%.4f", s.s) + ", E_n " + fmt("%.5f", s.energy) +
         ", E_n(affine) " + fmt("%.5f", s.energy_continuum) + ", rel_error " + fmt("%.4f", s.rel_error) +
         ", sup_dist " + fmt("%.4f", s.sup_dist) + ", trials " + std::to_string(s.trials));
    if (s.trials > 0) {
      ns.push_back(static_cast<double>(s.n));
      errs.push_back(s.rel_error);
    }
  }
  const bool complete = ns.size() == cfg.schedule.ns.size();
  const double rho = complete ? gamma::spearman(ns, errs) : 0.0;
  const double final_err = complete ? errs.back() : 1.0;
  note("target sqrt(1/6) = " + fmt("%.6f", r.target) + ", Spearman(n, rel_error) " + fmt("%.3f", rho) + ", " +
       fmt("%.1f", secs) + " s");
  line(6, complete && final_err < kGammaFinal && rho < 0.0 && secs < kGammaSeconds,
       "1-D energy study: final rel_error " + fmt("%.4f", final_err) + " < 0.15, negative trend");
}

// ------------------------------------------------------------------------ 7

// Textures at several orientations and frequencies over a smooth background,
// so patches repeat approximately but never exactly.
Image synthetic_texture(std::size_t n) {
  Image img(n, n);
  const double pi = std::numbers::pi;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const double x = (j + 0.5) / n, y = (i + 0.5) / n;
      double v;
      if (x < 0.5 && y < 0.5) v = 128 + 90 * std::sin(2 * pi * 9 * (x + y));
      else if (y < 0.5) v = 128 + 90 * std::sin(2 * pi * 11 * x);
      else if (x < 0.5) v = 128 + 90 * std::sin(2 * pi * 7 * (x - 0.6 * y));
      else v = 128 + 90 * std::sin(2 * pi * 8 * std::hypot(x - 0.75, y - 0.75));
      img.at(i, j) = v + 20 * (x - y);
    }
  img.clamp();
  return img;
}

void criterion7() {
  Image clear;
  if (const char* path = std::getenv("ILAP_ACCEPTANCE_IMAGE")) {
    const auto full = read_pgm(path);
    require(full.rows >= 128 && full.cols >= 128, "acceptance image must be at least 128x128");
    clear = Image(128, 128);
    for (std::size_t i = 0; i < 128; ++i)
      for (std::size_t j = 0; j < 128; ++j) clear.at(i, j) = full.at(i, j);
    note(std::string("image: crop of ") + path);
  } else {
    clear = synthetic_texture(128);
    note("image: synthetic 128x128 texture");
  }
  const auto mask = SampleMask::random(128, 128, 0.01, 7);
  InpaintConfig cfg;
  cfg.seed = 7;
  cfg.solver.linear.tol = 1e-6;
  double p[3];
  const Method methods[3] = {Method::GL, Method::WNLL, Method::IL};
  for (int k = 0; k < 3; ++k) {
    cfg.method = methods[k];
    const auto t0 = std::chrono::steady_clock::now();
    p[k] = psnr(oracle_weight_inpaint(clear, mask, cfg).image, clear);
    note(to_string(methods[k]) + ": " + fmt("%.3f", p[k]) + " dB (" + fmt("%.1f", seconds_since(t0)) + " s)");
  }
  note("samples " + std::to_string(mask.size()));
  line(7, p[2] - p[0] >= kPsnrGap && p[2] >= p[1] && p[1] >= p[0],
       "inpainting with clear-image weights: IL - GL = " + fmt("%.3f", p[2] - p[0]) + " dB, IL >= WNLL >= GL");
}

// ------------------------------------------------------------------------ 8

void criterion8() {
  std::vector<std::string> failed;
  auto check = [&](bool ok, const std::string& name) {
    if (!ok) failed.push_back(name);
  };
  std::mt19937_64 rng(88);
  std::normal_distribution<double> gauss;
  for (int t = 0; t < 5; ++t) {
    const std::size_t n = 20 + rng() % 60;
    const auto g = oracle::random_connected_graph(n, 2.0, rng);
    const auto labels = random_labels(n, 2 + rng() % 3, rng);
    SolverConfig cfg;
    cfg.alpha = t % 2 ? 1e-3 : 0.0;
    const auto base = il_solve(g, labels, cfg);
    const auto moved = il_solve(g, labels.transformed(1.0, -4.0), cfg);
    const auto scaled = il_solve(g, labels.transformed(3.0, 0.0), cfg);
    double dm = 0.0, ds = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      dm = std::max(dm, std::abs(moved.u[i] + 4.0 - base.u[i]));
      ds = std::max(ds, std::abs(scaled.u[i] - 3.0 * base.u[i]));
    }
    check(dm <= 1e-4, "IL translation");
    check(ds <= 3e-4, "IL scaling");
    check(std::abs(scaled.diagnostics.final_objective - 9.0 * base.diagnostics.final_objective) <=
              1e-4 * (9.0 * base.diagnostics.final_objective + 1e-12),
          "IL objective scaling");
    for (auto solve : {&gl_solve, &wnll_solve}) {
      const auto a = solve(g, labels, cfg).u;
      const auto b = solve(g, labels.transformed(2.0, 1.0), cfg).u;
      double d = 0.0;
      for (std::size_t i = 0; i < n; ++i) d = std::max(d, std::abs(b[i] - (2.0 * a[i] + 1.0)));
      check(d <= 1e-7, "baseline affine covariance");
    }
    std::vector<double> u(n);
    for (auto& v : u) v = gauss(rng);
    auto v = u;
    for (auto& x : v) x *= -2.5;
    check(std::abs(nonlocal_inf_metric(v, g) - 6.25 * nonlocal_inf_metric(u, g)) <= 1e-12 * 6.25 * nonlocal_inf_metric(u, g),
          "metric 2-homogeneity");
    // D-update spot check
    BregmanState st = BregmanState::initial(g, labels);
    for (auto& x : st.u) x = gauss(rng);
    for (auto& x : st.q) x = 0.2 * gauss(rng);
    for (auto& x : st.nu) x = 0.5 + std::abs(gauss(rng));
    update_D(st, g, labels, cfg);
    const double best = d_subproblem_objective(st.d, st, g, labels, cfg);
    for (int k = 0; k < 100; ++k) {
      auto d = st.d;
      for (auto& x : d) x += (k < 50 ? 1.0 : 1e-3) * gauss(rng);
      check(best <= d_subproblem_objective(d, st, g, labels, cfg) + 1e-12, "D-update convexity");
    }
    check(il_solve(g, labels, cfg).u == base.u, "IL rerun");
  }
  // PGM P5 round trip
  std::string bytes = "P5\n13 9\n255\n";
  for (int k = 0; k < 13 * 9; ++k) bytes.push_back(static_cast<char>(rng() % 256));
  check(format_pgm(parse_pgm(bytes), true) == bytes, "P5 round trip");
  // deterministic pipelines
  const auto img = synthetic_texture(24);
  const auto mask = SampleMask::random(24, 24, 0.1, 3);
  InpaintConfig icfg;
  icfg.patch_rows = icfg.patch_cols = 5;
  icfg.k = 10;
  icfg.k_sigma = 5;
  icfg.outer_iters = 2;
  check(inpaint(img, mask, icfg).image == inpaint(img, mask, icfg).image, "inpaint rerun");
  gamma::StudyConfig gcfg;
  gcfg.schedule.ns = {60, 90};
  gcfg.trials = 1;
  check(gamma::format_rows_csv(gamma::convergence_study(gcfg)) == gamma::format_rows_csv(gamma::convergence_study(gcfg)),
        "study rerun");
  std::sort(failed.begin(), failed.end());
  failed.erase(std::unique(failed.begin(), failed.end()), failed.end());
  std::string what = "invariant suite";
  for (const auto& f : failed) what += " [" + f + "]";
  line(8, failed.empty(), what);
}

}  // namespace

int main() {
  struct Entry {
    int id;
    void (*run)();
  };
  const Entry all[] = {{1, criterion1}, {2, criterion2}, {3, criterion3}, {4, criterion4},
                       {5, criterion5}, {6, criterion6}, {7, criterion7}, {8, criterion8}};
  for (const auto& e : all) {
    if (skipped(e.id)) {
      std::printf("[SKIP] criterion %d\n", e.id);
      continue;
    }
    try {
      e.run();
    } catch (const std::exception& ex) {
      line(e.id, false, std::string("threw: ") + ex.what());
    }
  }
  std::printf("%d criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
