#include "commands.hpp"

#include <CLI11.hpp>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <json.hpp>
#include <optional>
#include <string>

#include "ilap/error.hpp"
#include "ilap/gamma.hpp"
#include "ilap/graph.hpp"
#include "ilap/image.hpp"
#include "ilap/inpaint.hpp"
#include "ilap/io.hpp"
#include "ilap/kernel.hpp"
#include "ilap/labels.hpp"
#include "ilap/parallel.hpp"
#include "ilap/solver.hpp"
#include "ilap/toy2d.hpp"
#include "toml_lite.hpp"

namespace ilap::cli {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr int kOk = 0;
constexpr int kInputError = 1;
constexpr int kNotConverged = 2;

// Above these sizes a run needs --full.
constexpr std::size_t kToyIlNodeLimit = 5000;
constexpr std::size_t kInpaintPixelLimit = 128 * 128;

struct Global {
  std::string out_dir;
  unsigned threads = 0;
  std::uint64_t seed = 0;
  bool full = false;
  bool quiet = false;
};

struct SolverFlags {
  double alpha = 0.0;
  double rel_obj_tol = 1e-6;
  std::size_t max_outer_iter = 500;
  double choose_c_eps = 1e-4;
  double linear_tol = 1e-10;
  std::size_t linear_max_iter = 0;
  std::optional<double> fixed_c;
  std::optional<double> primal_tol;
  bool unlabeled_only = false;

  void add(CLI::App* app) {
    app->add_option("--alpha", alpha, "Regularization weight")->check(CLI::NonNegativeNumber);
    app->add_option("--rel-tol", rel_obj_tol, "Relative objective change that stops the iteration");
    app->add_option("--max-iter", max_outer_iter, "Outer iteration cap");
    app->add_option("--choose-c-eps", choose_c_eps, "Band around 1/4 for the adaptive penalty");
    app->add_option("--linear-tol", linear_tol, "Relative residual for each linear solve");
    app->add_option("--linear-max-iter", linear_max_iter, "Krylov iteration cap (0 means 10n)");
    app->add_option("--fixed-c", fixed_c, "Use this penalty instead of the adaptive choice");
    app->add_option("--primal-tol", primal_tol, "Also require max |D - grad u| below this to stop");
    app->add_flag("--max-over-unlabeled", unlabeled_only, "Restrict the max to unlabeled rows");
  }

  SolverConfig config(std::uint64_t seed) const {
    SolverConfig cfg;
    cfg.alpha = alpha;
    cfg.rel_obj_tol = rel_obj_tol;
    cfg.max_outer_iter = max_outer_iter;
    cfg.choose_c_eps = choose_c_eps;
    cfg.linear.tol = linear_tol;
    cfg.linear.max_iter = linear_max_iter;
    cfg.fixed_c = fixed_c;
    cfg.primal_tol = primal_tol;
    cfg.max_scope = unlabeled_only ? MaxScope::UnlabeledOnly : MaxScope::AllNodes;
    cfg.seed = seed;
    cfg.validate();
    return cfg;
  }
};

json to_json(const SolverConfig& c) {
  json j{{"alpha", c.alpha},
         {"rel_obj_tol", c.rel_obj_tol},
         {"max_outer_iter", c.max_outer_iter},
         {"choose_c_eps", c.choose_c_eps},
         {"choose_c_max_iter", c.choose_c_max_iter},
         {"linear_tol", c.linear.tol},
         {"linear_max_iter", c.linear.max_iter},
         {"max_scope", c.max_scope == MaxScope::AllNodes ? "all" : "unlabeled"},
         {"seed", c.seed}};
  j["fixed_c"] = c.fixed_c ? json(*c.fixed_c) : json(nullptr);
  j["primal_tol"] = c.primal_tol ? json(*c.primal_tol) : json(nullptr);
  return j;
}

json to_json(const LinearStats& s) {
  return {{"solves", s.solves},
          {"total_iterations", s.total_iterations},
          {"worst_relative_residual", s.worst_relative_residual},
          {"all_converged", s.all_converged}};
}

json to_json(const SolveReport& r) {
  return {{"iterations", r.iterations},
          {"relative_residual", r.relative_residual},
          {"converged", r.converged}};
}

json to_json(const IlDiagnostics& d) {
  return {{"objective_history", d.history},
          {"c_star", d.c_star},
          {"choose_c", {{"ratio", d.choose.ratio},
                        {"iterations", d.choose.iterations},
                        {"degenerate", d.choose.degenerate}}},
          {"iterations", d.iterations},
          {"stopped_by_tolerance", d.stopped_by_tolerance},
          {"final_objective", d.final_objective},
          {"primal_residual", d.primal_residual},
          {"linear", to_json(d.linear)}};
}

// JSON has no infinity; identical images are reported as null with a flag.
json psnr_json(double v) { return std::isinf(v) ? json(nullptr) : json(v); }

fs::path resolve_out_dir(const Global& g) {
  std::string dir = g.out_dir;
  if (dir.empty()) {
    if (const char* env = std::getenv("ILAP_OUTPUT_DIR"); env && *env) dir = env;
    else dir = ".";
  }
  fs::create_directories(dir);
  return dir;
}

void write_json(const fs::path& path, const json& j) { io::write_file(path, j.dump(2) + "\n"); }

void echo_config(const Global& g, const fs::path& out, const json& cfg) {
  write_json(out / "config.json", cfg);
  if (!g.quiet) std::cout << "config " << cfg.dump() << "\n";
}

json global_json(const Global& g, const fs::path& out) {
  return {{"out_dir", out.string()}, {"threads", max_threads()}, {"seed", g.seed}, {"full", g.full}};
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

// -------------------------------------------------------------------- solve

struct SolveArgs {
  std::string graph, labels;
  std::string method = "il";
  std::size_t nodes = 0;
  bool symmetrize = false;
  SolverFlags solver;
};

int cmd_solve(const Global& g, const SolveArgs& a) {
  const auto out = resolve_out_dir(g);
  const Method method = parse_method(a.method);
  const auto cfg = a.solver.config(g.seed);
  const auto edges = io::read_edges_csv(a.graph);
  auto label_rows = io::read_labels_csv(a.labels);
  if (label_rows.empty()) fail(ErrorKind::InvalidParameter, a.labels + ": no labels");

  std::size_t n = a.nodes;
  if (n == 0) {
    for (const auto& e : edges) n = std::max<std::size_t>(n, std::max(e.from, e.to) + 1);
    for (const auto& [i, v] : label_rows) n = std::max<std::size_t>(n, i + 1);
  }
  auto graph = WeightGraph::from_edges(n, edges);
  if (a.symmetrize) graph = graph.symmetrized();
  const LabelAssignment labels(n, std::move(label_rows));

  echo_config(g, out, {{"command", "solve"},
                       {"graph", a.graph},
                       {"labels", a.labels},
                       {"method", to_string(method)},
                       {"nodes", n},
                       {"symmetrize", a.symmetrize},
                       {"solver", to_json(cfg)},
                       {"global", global_json(g, out)}});

  const auto t0 = std::chrono::steady_clock::now();
  json report{{"method", to_string(method)}, {"nodes", n}, {"edges", graph.nnz()}};
  std::vector<double> u;
  bool converged = true;
  if (method == Method::IL) {
    auto r = il_solve(graph, labels, cfg);
    u = std::move(r.u);
    report["diagnostics"] = to_json(r.diagnostics);
    converged = r.diagnostics.stopped_by_tolerance && r.diagnostics.linear.all_converged;
  } else {
    auto r = method == Method::GL ? gl_solve(graph, labels, cfg) : wnll_solve(graph, labels, cfg);
    u = std::move(r.u);
    report["linear"] = to_json(r.linear);
    converged = r.linear.converged;
  }
  report["objective"] = objective(u, graph, cfg.alpha, labels, cfg.max_scope);
  report["nonlocal_inf_metric"] = nonlocal_inf_metric(u, graph);
  report["converged"] = converged;
  report["seconds"] = seconds_since(t0);
  io::write_solution_csv(out / "solution.csv", u);
  write_json(out / "report.json", report);
  if (!g.quiet)
    std::cout << "objective " << report["objective"].get<double>() << (converged ? "" : " (not converged)")
              << "\n";
  return converged ? kOk : kNotConverged;
}

// -------------------------------------------------------------------- toy2d

struct ToyArgs {
  std::size_t grid = 101;
  double sigma = 0.02;
  std::size_t k = 10;
  std::string method = "all";
  SolverFlags solver;
};

int cmd_toy2d(const Global& g, const ToyArgs& a) {
  const auto out = resolve_out_dir(g);
  const auto cfg = a.solver.config(g.seed);
  std::vector<Method> methods;
  if (a.method == "all") methods = {Method::GL, Method::WNLL, Method::IL};
  else methods = {parse_method(a.method)};
  const std::size_t nodes = a.grid * a.grid + 3;
  for (Method m : methods)
    if (m == Method::IL && nodes > kToyIlNodeLimit && !g.full)
      fail(ErrorKind::InvalidParameter, "IL on " + std::to_string(nodes) +
                                            " nodes is a long run; pass --full to allow it");
  echo_config(g, out, {{"command", "toy2d"},
                       {"grid", a.grid},
                       {"sigma", a.sigma},
                       {"k", a.k},
                       {"method", a.method},
                       {"solver", to_json(cfg)},
                       {"global", global_json(g, out)}});

  const auto toy = make_toy2d({a.grid, a.sigma, a.k});
  json report{{"nodes", toy.graph.size()}, {"edges", toy.graph.nnz()}};
  report["truth_metric"] = nonlocal_inf_metric(toy.truth, toy.graph);
  std::string metrics = "method,metric,seconds\n";
  metrics += "truth," + std::to_string(report["truth_metric"].get<double>()) + ",0\n";
  bool converged = true;
  for (Method m : methods) {
    const auto t0 = std::chrono::steady_clock::now();
    std::vector<double> u;
    json entry;
    if (m == Method::IL) {
      auto r = il_solve(toy.graph, toy.labels, cfg);
      u = std::move(r.u);
      entry["diagnostics"] = to_json(r.diagnostics);
      entry["c_star"] = r.diagnostics.c_star;
      entry["iterations"] = r.diagnostics.iterations;
      converged = converged && r.diagnostics.stopped_by_tolerance;
    } else {
      auto r = m == Method::GL ? gl_solve(toy.graph, toy.labels, cfg)
                               : wnll_solve(toy.graph, toy.labels, cfg);
      u = std::move(r.u);
      entry["linear"] = to_json(r.linear);
      converged = converged && r.linear.converged;
    }
    const double secs = seconds_since(t0);
    entry["metric"] = nonlocal_inf_metric(u, toy.graph);
    entry["seconds"] = secs;
    char line[128];
    std::snprintf(line, sizeof line, "%s,%.6e,%.3f\n", to_string(m).c_str(),
                  entry["metric"].get<double>(), secs);
    metrics += line;
    report[to_string(m)] = entry;
    io::write_solution_csv(out / ("solution_" + to_string(m) + ".csv"), u);
    if (!g.quiet) std::cout << line;
  }
  io::write_file(out / "metrics.csv", metrics);
  write_json(out / "report.json", report);
  return converged ? kOk : kNotConverged;
}

// ------------------------------------------------------------------ inpaint

struct InpaintArgs {
  std::string image;
  std::optional<double> mask_density;
  std::string mask_file;
  std::string method = "il";
  std::string oracle;
  std::string truth;
  std::size_t patch = 11;
  std::size_t k = 50;
  std::size_t k_sigma = 20;
  std::size_t outer_iters = 8;
  bool ascii = false;
  SolverFlags solver;
};

int cmd_inpaint(const Global& g, const InpaintArgs& a) {
  const auto out = resolve_out_dir(g);
  const Image input = read_pgm(a.image);
  if (input.size() > kInpaintPixelLimit && !g.full)
    fail(ErrorKind::InvalidParameter, "images above 128x128 are long runs; pass --full to allow them");
  std::optional<Image> clear;
  if (!a.oracle.empty()) clear = read_pgm(a.oracle);
  std::optional<Image> truth;
  if (!a.truth.empty()) truth = read_pgm(a.truth);
  else if (clear) truth = clear;
  if (!a.mask_density == a.mask_file.empty())
    fail(ErrorKind::InvalidParameter, "give exactly one of --mask-density or --mask-file");
  const SampleMask mask = a.mask_density
                              ? SampleMask::random(input.rows, input.cols, *a.mask_density, g.seed)
                              : SampleMask::from_csv(a.mask_file, input.rows, input.cols);

  std::vector<Method> methods;
  if (a.method == "all") methods = {Method::GL, Method::WNLL, Method::IL};
  else methods = {parse_method(a.method)};

  InpaintConfig cfg;
  cfg.patch_rows = cfg.patch_cols = a.patch;
  cfg.k = a.k;
  cfg.k_sigma = a.k_sigma;
  cfg.outer_iters = a.outer_iters;
  cfg.seed = g.seed;
  cfg.solver = a.solver.config(g.seed);
  cfg.validate();

  echo_config(g, out, {{"command", "inpaint"},
                       {"image", a.image},
                       {"mask", a.mask_density ? json{{"density", *a.mask_density}, {"seed", g.seed}}
                                               : json{{"file", a.mask_file}}},
                       {"oracle_weights", a.oracle},
                       {"truth", a.truth},
                       {"method", a.method},
                       {"patch", a.patch},
                       {"k", a.k},
                       {"k_sigma", a.k_sigma},
                       {"outer_iters", a.outer_iters},
                       {"solver", to_json(cfg.solver)},
                       {"global", global_json(g, out)}});

  json report{{"rows", input.rows}, {"cols", input.cols}, {"samples", mask.size()}};
  bool converged = true;
  for (Method m : methods) {
    cfg.method = m;
    const auto t0 = std::chrono::steady_clock::now();
    const auto r = clear ? oracle_weight_inpaint(*clear, mask, cfg) : inpaint(input, mask, cfg);
    json entry{{"seconds", seconds_since(t0)}, {"linear", to_json(r.linear)}};
    converged = converged && r.linear.all_converged;
    const std::string name = "inpainted_" + to_string(m) + ".pgm";
    write_pgm(out / name, r.image, !a.ascii);
    entry["output"] = name;
    if (truth) {
      const double v = psnr(r.image, *truth);
      entry["psnr"] = psnr_json(v);
      entry["identical"] = std::isinf(v);
      if (!g.quiet) std::cout << to_string(m) << " psnr " << (std::isinf(v) ? "inf" : std::to_string(v)) << "\n";
    }
    report[to_string(m)] = entry;
  }
  write_json(out / "report.json", report);
  return converged ? kOk : kNotConverged;
}

// -------------------------------------------------------------------- gamma

struct GammaArgs {
  std::string config;
  std::string problem = "1d";
  std::vector<std::size_t> ns;
  std::size_t trials = 3;
  std::string rule = "delta-log";
  double scale = 0.5;
  double exponent = 0.25;
  double g0 = 0.0, g1 = 1.0;
  double p = 2.0;
  double rel_obj_tol = 1e-6;
  std::size_t max_outer_iter = 500;
  CLI::App* app = nullptr;
  bool seed_given = false;
};

double toml_number(const TomlTable& t, const std::string& key, double fallback) {
  const auto it = t.find(key);
  if (it == t.end()) return fallback;
  if (it->second.type != TomlValue::Type::Number) fail(ErrorKind::Parse, "config: '" + key + "' must be a number");
  return it->second.number;
}

std::string toml_string(const TomlTable& t, const std::string& key, const std::string& fallback) {
  const auto it = t.find(key);
  if (it == t.end()) return fallback;
  if (it->second.type != TomlValue::Type::String) fail(ErrorKind::Parse, "config: '" + key + "' must be a string");
  return it->second.string;
}

std::size_t as_count(double v, const std::string& key) {
  if (!(v >= 0) || v != std::floor(v)) fail(ErrorKind::Parse, "config: '" + key + "' must be a nonnegative integer");
  return static_cast<std::size_t>(v);
}

int cmd_gamma(Global g, GammaArgs a) {
  // Config file first, then explicit flags win.
  if (!a.config.empty()) {
    const auto t = read_toml(a.config);
    auto set = [&](const char* flag) { return a.app->count(flag) > 0; };
    if (!set("--problem")) a.problem = toml_string(t, "problem", a.problem);
    if (!set("--rule")) a.rule = toml_string(t, "rule", a.rule);
    if (!set("--trials")) a.trials = as_count(toml_number(t, "trials", static_cast<double>(a.trials)), "trials");
    if (!set("--scale")) a.scale = toml_number(t, "scale", a.scale);
    if (!set("--exponent")) a.exponent = toml_number(t, "exponent", a.exponent);
    if (!set("--g0")) a.g0 = toml_number(t, "g0", a.g0);
    if (!set("--g1")) a.g1 = toml_number(t, "g1", a.g1);
    if (!set("--p")) a.p = toml_number(t, "p", a.p);
    if (!set("--rel-tol")) a.rel_obj_tol = toml_number(t, "solver.rel_obj_tol", a.rel_obj_tol);
    if (!set("--max-iter"))
      a.max_outer_iter = as_count(toml_number(t, "solver.max_outer_iter", static_cast<double>(a.max_outer_iter)),
                                  "solver.max_outer_iter");
    if (!a.seed_given && t.count("seed")) g.seed = as_count(toml_number(t, "seed", 0), "seed");
    if (!set("--ns")) {
      if (const auto it = t.find("ns"); it != t.end()) {
        if (it->second.type != TomlValue::Type::Array) fail(ErrorKind::Parse, "config: 'ns' must be an array");
        a.ns.clear();
        for (const auto& v : it->second.array) {
          if (v.type != TomlValue::Type::Number) fail(ErrorKind::Parse, "config: 'ns' entries must be numbers");
          a.ns.push_back(as_count(v.number, "ns"));
        }
      }
    }
  }
  if (a.ns.empty()) a.ns = {125, 250, 500, 1000, 2000};
  if (a.trials == 0) fail(ErrorKind::InvalidParameter, "--trials must be at least 1");

  gamma::StudyConfig cfg;
  cfg.problem.domain = gamma::parse_domain(a.problem);
  cfg.problem.g0 = a.g0;
  cfg.problem.g1 = a.g1;
  cfg.schedule.ns = a.ns;
  if (a.rule == "delta-log") cfg.schedule.rule = gamma::ScheduleRule::DeltaLog;
  else if (a.rule == "power") cfg.schedule.rule = gamma::ScheduleRule::Power;
  else if (a.rule == "root-log") cfg.schedule.rule = gamma::ScheduleRule::RootLog;
  else fail(ErrorKind::InvalidParameter, "unknown schedule rule '" + a.rule + "'");
  cfg.schedule.scale = a.scale;
  cfg.schedule.exponent = a.exponent;
  cfg.p = a.p;
  cfg.trials = a.trials;
  cfg.seed = g.seed;
  cfg.solver.rel_obj_tol = a.rel_obj_tol;
  cfg.solver.max_outer_iter = a.max_outer_iter;
  cfg.validate();

  const auto out = resolve_out_dir(g);
  echo_config(g, out, {{"command", "gamma"},
                       {"problem", gamma::to_string(cfg.problem.domain)},
                       {"g0", a.g0},
                       {"g1", a.g1},
                       {"ns", a.ns},
                       {"trials", a.trials},
                       {"rule", a.rule},
                       {"scale", a.scale},
                       {"exponent", a.exponent},
                       {"p", a.p},
                       {"kernel", "tent"},
                       {"solver", to_json(cfg.solver)},
                       {"global", global_json(g, out)}});
  const auto t0 = std::chrono::steady_clock::now();
  const auto r = gamma::convergence_study(cfg);
  io::write_file(out / "study.csv", gamma::format_rows_csv(r));
  io::write_file(out / "summary.csv", gamma::format_summary_csv(r));
  std::vector<double> ns, errs;
  for (const auto& s : r.summary)
    if (s.trials > 0) {
      ns.push_back(static_cast<double>(s.n));
      errs.push_back(s.rel_error);
    }
  json report{{"target", r.target}, {"seconds", seconds_since(t0)}};
  report["spearman_rel_error"] = ns.size() >= 2 ? json(gamma::spearman(ns, errs)) : json(nullptr);
  report["final_rel_error"] = errs.empty() ? json(nullptr) : json(errs.back());
  write_json(out / "report.json", report);
  if (!g.quiet) std::cout << gamma::format_summary_csv(r);
  return kOk;
}

// ---------------------------------------------------------------------- knn

struct KnnArgs {
  std::string points;
  std::size_t k = 10;
  std::string kernel = "gaussian";
  double bandwidth = 1.0;
  std::size_t k_sigma = 20;
  bool symmetrize = false;
};

int cmd_knn(const Global& g, const KnnArgs& a) {
  const auto out = resolve_out_dir(g);
  const auto cloud = a.points.size() > 5 && a.points.ends_with(".ilpc") ? io::read_points_binary(a.points)
                                                                       : io::read_points_csv(a.points);
  KernelSpec kernel;
  if (a.kernel == "gaussian") kernel = KernelSpec::gaussian(a.bandwidth);
  else if (a.kernel == "tent") kernel = KernelSpec::tent(a.bandwidth);
  else if (a.kernel == "self-tuning") kernel = KernelSpec::quartic_self_tuning(static_cast<int>(a.k_sigma));
  else fail(ErrorKind::InvalidParameter, "unknown kernel '" + a.kernel + "'");
  echo_config(g, out, {{"command", "knn"},
                       {"points", a.points},
                       {"k", a.k},
                       {"kernel", a.kernel},
                       {"bandwidth", a.bandwidth},
                       {"k_sigma", a.k_sigma},
                       {"symmetrize", a.symmetrize},
                       {"global", global_json(g, out)}});
  const auto graph = knn_graph(cloud, a.k, kernel, {a.symmetrize});
  io::write_graph_csv(out / "graph.csv", graph);
  if (!g.quiet) std::cout << "edges " << graph.nnz() << "\n";
  return kOk;
}

}  // namespace

int run(int argc, char** argv) {
  CLI::App app{"Graph interpolation with infinity Laplacian, graph Laplacian and WNLL models"};
  app.require_subcommand(1);
  Global g;
  app.add_option("--out-dir", g.out_dir, "Output directory (default $ILAP_OUTPUT_DIR or .)");
  app.add_option("--threads", g.threads, "Worker thread cap (0 = hardware)");
  app.add_option("--seed", g.seed, "Seed for every random choice");
  app.add_flag("--full", g.full, "Allow long-running full-scale runs");
  app.add_flag("-q,--quiet", g.quiet, "Only write files");

  SolveArgs solve;
  auto* s = app.add_subcommand("solve", "Solve an interpolation problem given as CSV files");
  s->add_option("graph", solve.graph, "Edge list i,j,w")->required();
  s->add_option("labels", solve.labels, "Labels i,value")->required();
  s->add_option("--method", solve.method, "gl, wnll or il");
  s->add_option("--nodes", solve.nodes, "Node count (default: largest index + 1)");
  s->add_flag("--symmetrize", solve.symmetrize, "Use max(w_ij, w_ji) on both directions");
  solve.solver.add(s);

  ToyArgs toy;
  auto* t = app.add_subcommand("toy2d", "Grid example labeled by sin(x) cos(y) at three points");
  t->add_option("--grid", toy.grid, "Grid points per side")->check(CLI::Range(2, 100000));
  t->add_option("--sigma", toy.sigma, "Gaussian bandwidth")->check(CLI::PositiveNumber);
  t->add_option("--k", toy.k, "Nearest neighbors")->check(CLI::PositiveNumber);
  t->add_option("--method", toy.method, "gl, wnll, il or all");
  toy.solver.add(t);

  InpaintArgs inp;
  auto* ip = app.add_subcommand("inpaint", "Patch-graph inpainting of a PGM image");
  ip->add_option("image", inp.image, "Image with known samples (PGM)")->required();
  ip->add_option("--mask-density", inp.mask_density, "Fraction of pixels sampled at random");
  ip->add_option("--mask-file", inp.mask_file, "CSV of sampled row,col");
  ip->add_option("--method", inp.method, "gl, wnll, il or all");
  ip->add_option("--oracle-weights", inp.oracle, "Build weights once from this clear image");
  ip->add_option("--truth", inp.truth, "Ground truth for PSNR (defaults to the oracle image)");
  ip->add_option("--patch", inp.patch, "Odd patch side");
  ip->add_option("--k", inp.k, "Nearest neighbors");
  ip->add_option("--k-sigma", inp.k_sigma, "Neighbor rank setting the local bandwidth");
  ip->add_option("--outer-iters", inp.outer_iters, "Rounds of the blind pipeline");
  ip->add_flag("--ascii", inp.ascii, "Write P2 instead of P5");
  inp.solver.add(ip);

  GammaArgs gam;
  auto* gm = app.add_subcommand("gamma", "Discrete-to-continuum energy study");
  gam.app = gm;
  gm->add_option("--config", gam.config, "Study config (TOML)");
  gm->add_option("--problem", gam.problem, "1d, circle or square");
  gm->add_option("--ns", gam.ns, "Sample sizes")->delimiter(',');
  gm->add_option("--trials", gam.trials, "Trials per sample size");
  gm->add_option("--rule", gam.rule, "delta-log, power or root-log");
  gm->add_option("--scale", gam.scale, "Bandwidth scale");
  gm->add_option("--exponent", gam.exponent, "Exponent of the power rule");
  gm->add_option("--g0", gam.g0, "Value at the first label point");
  gm->add_option("--g1", gam.g1, "Value at the second label point");
  gm->add_option("--p", gam.p, "Energy exponent");
  gm->add_option("--rel-tol", gam.rel_obj_tol, "Relative objective change that stops the iteration");
  gm->add_option("--max-iter", gam.max_outer_iter, "Outer iteration cap");

  KnnArgs knn;
  auto* kn = app.add_subcommand("knn", "Build a kNN weight graph from points");
  kn->add_option("points", knn.points, "Points CSV or .ilpc cache")->required();
  kn->add_option("--k", knn.k, "Neighbors per point");
  kn->add_option("--kernel", knn.kernel, "gaussian, tent or self-tuning");
  kn->add_option("--bandwidth", knn.bandwidth, "Kernel bandwidth");
  kn->add_option("--k-sigma", knn.k_sigma, "Self-tuning neighbor rank");
  kn->add_flag("--symmetrize", knn.symmetrize, "Symmetrize by max");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kInputError;
  }

  set_max_threads(g.threads);
  try {
    if (*s) return cmd_solve(g, solve);
    if (*t) return cmd_toy2d(g, toy);
    if (*ip) return cmd_inpaint(g, inp);
    if (*gm) {
      gam.seed_given = app.count("--seed") > 0;
      return cmd_gamma(g, gam);
    }
    if (*kn) return cmd_knn(g, knn);
  } catch (const Error& e) {
    std::cerr << "error (" << to_string(e.kind()) << "): " << e.what() << "\n";
    return e.kind() == ErrorKind::NonConvergence ? kNotConverged : kInputError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInputError;
  }
  return kInputError;
}

}  // namespace ilap::cli
