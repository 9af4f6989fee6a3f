// Command line front end: axiom scans, covering nets, contraction fixed
// points, the satellite coupling solver, and the worked-example figure data.
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <stdexcept>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "fuzzyf/coverings.hpp"
#include "fuzzyf/csv.hpp"
#include "fuzzyf/fixpoint.hpp"
#include "fuzzyf/fmetric.hpp"
#include "fuzzyf/satellite.hpp"

namespace {

using nlohmann::json;

void write_json_file(const std::string& path, const json& j) {
  std::ofstream os(path);
  if (!os) throw std::runtime_error("cannot open " + path);
  os << j.dump(2) << '\n';
  if (!os.good()) throw std::runtime_error("write failed: " + path);
}

fuzzyf::FMetricConfig<double> metric_by_name(const std::string& name) {
  if (name == "abs") return fuzzyf::abs_exponent_config();
  return fuzzyf::canonical_config();
}

fuzzyf::PsiFn psi_by_name(const std::string& name, double k, double beta) {
  if (name == "rational") return fuzzyf::PsiFn::rational(k);
  if (name == "power") return fuzzyf::PsiFn::power_recip(beta);
  return fuzzyf::PsiFn::sqrt_root();
}

std::vector<double> even_lattice() {
  std::vector<double> v;
  for (int k = 0; k <= 100; k += 2) v.push_back(static_cast<double>(k));
  return v;
}

// ---------------------------------------------------------------- axioms --

struct AxiomsOpts {
  std::string metric = "canonical";
  long samples = 10000;
  long chain_samples = 10000;
  int max_chain_len = 6;
  std::uint64_t seed = 42;
  double t_max = 10.0;
  double xmin = -5.0;
  double xmax = 5.0;
  std::string out;
  bool serial = false;
};

int run_axioms(const AxiomsOpts& o) {
  auto cfg = metric_by_name(o.metric);
  fuzzyf::AxiomOptions opt;
  opt.pair_samples = o.samples;
  opt.chain_samples = o.chain_samples;
  opt.max_chain_len = o.max_chain_len;
  opt.seed = o.seed;
  opt.t_max = o.t_max;
  opt.exec = o.serial ? fuzzyf::Exec::serial : fuzzyf::Exec::parallel;
  auto report =
      fuzzyf::verify_axioms(cfg, fuzzyf::interval_sampler(o.xmin, o.xmax), opt);
  std::cout << "metric: " << o.metric << " on [" << o.xmin << ", " << o.xmax
            << "], " << o.samples << " pairs, " << o.chain_samples
            << " chains, seed " << o.seed << "\n"
            << report.to_text();
  if (!o.out.empty()) {
    json j;
    j["metric"] = o.metric;
    j["domain"] = {{"xmin", o.xmin}, {"xmax", o.xmax}};
    j["pair_samples"] = o.samples;
    j["chain_samples"] = o.chain_samples;
    j["max_chain_len"] = o.max_chain_len;
    j["seed"] = o.seed;
    j["t_max"] = o.t_max;
    j["checks"] = report.to_json();
    write_json_file(o.out, j);
  }
  return report.all_passed() ? 0 : 1;
}

// ------------------------------------------------------------------- net --

struct NetOpts {
  std::string points_file;
  std::string candidates_file;
  double epsilon = 1.0;
  double r = 0.5;
  double t0 = 1.0;
  std::string out;
};

int run_net(const NetOpts& o) {
  fuzzyf::FiniteSubset<double> set{fuzzyf::read_points_file(o.points_file),
                                   fuzzyf::canonical_config()};
  auto bound = fuzzyf::boundedness_witness(set, o.t0);
  auto greedy = fuzzyf::greedy_separated_points(set, o.r, o.epsilon);

  std::vector<double> candidates = o.candidates_file.empty()
                                       ? set.points
                                       : fuzzyf::read_points_file(o.candidates_file);
  json j;
  j["points"] = set.points.size();
  j["r"] = o.r;
  j["epsilon"] = o.epsilon;
  j["boundedness"] = {{"t0", o.t0},
                      {"beta", bound.beta},
                      {"r", bound.r},
                      {"one_minus_r", bound.one_minus_r}};
  j["greedy"] = {{"is_net", greedy.is_net},
                 {"size", greedy.chosen.size()},
                 {"chosen", greedy.chosen}};

  std::cout << "points: " << set.points.size() << ", pairwise grade floor "
            << bound.beta << " at t0 " << o.t0 << "\n";
  std::cout << "greedy: " << greedy.chosen.size() << " point(s), covers: "
            << (greedy.is_net ? "yes" : "no") << "\n";

  bool covered = greedy.is_net;
  if (candidates.size() <= 20) {
    auto bf = fuzzyf::min_net_bruteforce(set, candidates, o.r, o.epsilon);
    j["brute_force"] = {{"exists", bf.exists},
                        {"size", bf.net.size()},
                        {"net", bf.net},
                        {"candidates", candidates.size()}};
    covered = bf.exists;
    if (bf.exists)
      std::cout << "minimum net: " << bf.net.size() << " of "
                << candidates.size() << " candidate(s)\n";
    else
      std::cout << "no net from the " << candidates.size() << " candidate(s)\n";
  } else {
    j["brute_force"] = {{"skipped", "candidate pool exceeds 20"}};
    std::cout << "brute force skipped: " << candidates.size()
              << " candidates exceed the exhaustive limit\n";
  }
  if (!o.out.empty()) write_json_file(o.out, j);
  return covered ? 0 : 1;
}

// -------------------------------------------------------------- fixpoint --

struct FixpointOpts {
  double scale = 1.0 / 6.0;
  std::string domain = "interval";
  double xmin = -5.0;
  double xmax = 5.0;
  double x0 = 5.0;
  std::string psi = "sqrt";
  double psi_k = 0.5;
  double psi_beta = 2.0;
  long samples = 10000;
  double tol = 1e-10;
  long max_iter = 200;
  std::uint64_t seed = 42;
  std::vector<double> t_grid;
  std::string trace_csv;
  std::string out;
  bool serial = false;
};

int run_fixpoint(const FixpointOpts& o) {
  auto cfg = fuzzyf::canonical_config();
  auto psi = psi_by_name(o.psi, o.psi_k, o.psi_beta);
  const double scale = o.scale;
  std::function<double(const double&)> map = [scale](const double& x) {
    return scale * x;
  };
  auto sampler = o.domain == "evens"
                     ? fuzzyf::finite_sampler(even_lattice())
                     : fuzzyf::interval_sampler(o.xmin, o.xmax);
  std::vector<double> t_grid = o.t_grid.empty()
                                   ? std::vector<double>{0.5, 1.0, 2.0}
                                   : o.t_grid;

  auto contraction = fuzzyf::verify_contraction(
      cfg, map, psi, sampler, o.samples, t_grid, o.seed,
      o.serial ? fuzzyf::Exec::serial : fuzzyf::Exec::parallel);

  fuzzyf::PicardOptions popt;
  popt.t_grid = t_grid;
  popt.tol = o.tol;
  popt.max_iter = o.max_iter;
  popt.audit_psi = psi;
  auto trace = fuzzyf::picard_solve(cfg, map, o.x0, popt);

  std::cout << "map x -> " << scale << " * x, psi " << o.psi << ", "
            << contraction.sampled_pairs << " guarded evaluations, min margin "
            << contraction.min_margin << "\n";
  if (contraction.witness) {
    const auto& w = *contraction.witness;
    std::cout << "violation at x " << w.x << ", y " << w.y << ", t " << w.t
              << ": mapped grade " << w.grade_mapped << " < psi "
              << w.psi_value << "\n";
  }
  std::cout << "iteration from " << o.x0 << ": "
            << (trace.converged ? "converged" : "no convergence") << " after "
            << trace.iterations << " step(s)";
  if (trace.fixed_point) std::cout << ", fixed point " << *trace.fixed_point;
  std::cout << "\n";

  if (!o.trace_csv.empty()) {
    // wide layout: iter, point, then 1 - M(x_{n+1}, x_n, t) per grid t,
    // then the psi^n lower bound per grid t
    auto tlabel = [](double t) {
      char buf[32];
      std::snprintf(buf, sizeof buf, "%g", t);
      return std::string(buf);
    };
    std::vector<std::string> header{"iter", "point"};
    for (double t : t_grid) header.push_back("one_minus_m_t" + tlabel(t));
    for (double t : t_grid) header.push_back("psi_bound_t" + tlabel(t));
    std::vector<std::vector<std::string>> rows;
    for (std::size_t n = 0; n < trace.step_gaps.size(); ++n) {
      std::vector<std::string> row{std::to_string(n),
                                   fuzzyf::format_g17(trace.iterates[n])};
      for (double g : trace.step_gaps[n]) row.push_back(fuzzyf::format_g17(g));
      for (double b : trace.psi_bounds[n]) row.push_back(fuzzyf::format_g17(b));
      rows.push_back(std::move(row));
    }
    fuzzyf::write_csv(o.trace_csv, header, rows);
  }
  if (!o.out.empty()) {
    json j;
    j["map"] = {{"kind", "linear"}, {"scale", scale}};
    j["psi"] = o.psi;
    j["domain"] = o.domain;
    j["seed"] = o.seed;
    json c;
    c["samples"] = o.samples;
    c["sampled_pairs"] = contraction.sampled_pairs;
    c["min_margin"] = contraction.min_margin;
    c["holds"] = !contraction.witness.has_value();
    if (contraction.witness) {
      const auto& w = *contraction.witness;
      c["witness"] = {{"x", w.x},
                      {"y", w.y},
                      {"t", w.t},
                      {"grade_pair", w.grade_pair},
                      {"grade_mapped", w.grade_mapped},
                      {"psi_value", w.psi_value}};
    }
    j["contraction"] = c;
    json it;
    it["x0"] = o.x0;
    it["tol"] = o.tol;
    it["converged"] = trace.converged;
    it["iterations"] = trace.iterations;
    if (trace.fixed_point) it["fixed_point"] = *trace.fixed_point;
    if (!trace.step_gaps.empty()) it["final_gaps"] = trace.step_gaps.back();
    it["t_grid"] = t_grid;
    j["iteration"] = it;
    write_json_file(o.out, j);
  }
  return (!contraction.witness.has_value() && trace.converged) ? 0 : 1;
}

// ------------------------------------------------------------- satellite --

struct SatelliteOpts {
  double mu = 1.0;
  int grid = 201;
  double tol = 1e-10;
  long max_iter = 200;
  std::string quadrature = "simpson";
  bool homogeneous = false;
  double w0 = 1.0;
  double k_bound = 3.99;
  std::vector<double> t_grid;
  std::string out_csv;
  std::string report_json;
  bool serial = false;
};

int run_satellite(const SatelliteOpts& o) {
  fuzzyf::BvpConfig cfg;
  cfg.mu = o.mu;
  cfg.grid_size = o.grid;
  cfg.tol = o.tol;
  cfg.max_iter = o.max_iter;
  cfg.quadrature = o.quadrature == "trapezoid" ? fuzzyf::QuadratureRule::trapezoid
                                               : fuzzyf::QuadratureRule::simpson;
  cfg.homogeneous = o.homogeneous;
  cfg.k_bound = o.k_bound;
  if (!o.t_grid.empty()) cfg.t_grid = o.t_grid;

  auto rep = fuzzyf::solve_bvp(
      cfg, fuzzyf::GridFunction::constant(o.grid, o.w0),
      o.serial ? fuzzyf::Exec::serial : fuzzyf::Exec::parallel);

  const int mid = (o.grid - 1) / 2;
  std::cout << "coupling " << o.mu << ", grid " << o.grid << ", "
            << (rep.converged ? "converged" : "no convergence") << " after "
            << rep.iterations << " step(s)\n";
  std::cout << "w(" << rep.solution.node(mid) << ") = " << rep.solution[mid]
            << ", residual sup " << rep.residual_sup << ", measured factor "
            << rep.contraction_factor_measured << " (k " << rep.k_used
            << ", bounds " << rep.bound_sharp << " / " << rep.bound_coarse
            << ")\n";

  if (!o.out_csv.empty()) {
    std::vector<std::vector<std::string>> rows;
    for (int i = 0; i < rep.solution.size(); ++i)
      rows.push_back({fuzzyf::format_g17(rep.solution.node(i)),
                      fuzzyf::format_g17(rep.solution[i])});
    fuzzyf::write_csv(o.out_csv, {"t", "omega"}, rows);
  }
  if (!o.report_json.empty()) {
    json j = rep.to_json();
    j["mu"] = o.mu;
    j["grid_size"] = o.grid;
    j["quadrature"] = o.quadrature;
    j["homogeneous"] = o.homogeneous;
    j["w0"] = o.w0;
    j["k_bound"] = o.k_bound;
    j["solution_mid"] = rep.solution[mid];
    write_json_file(o.report_json, j);
  }
  return rep.converged ? 0 : 1;
}

// --------------------------------------------------------------- figure1 --

struct Figure1Opts {
  double t = 2.0;
  int grid = 11;
  int steps = 50;
  std::string out_base;
};

int run_figure1(const Figure1Opts& o) {
  if (o.grid < 2) throw std::runtime_error("figure1: --grid must be >= 2");
  if (o.steps < 1) throw std::runtime_error("figure1: --steps must be >= 1");
  auto cfg = fuzzyf::canonical_config();
  auto psi = fuzzyf::PsiFn::sqrt_root();
  auto map = [](double x) { return x / 6.0; };
  const double lo = -5.0, hi = 5.0;
  bool all_ok = true;

  // (a) margin across a point lattice at fixed t
  std::vector<std::vector<std::string>> rows_a;
  for (int i = 0; i < o.grid; ++i)
    for (int j = 0; j < o.grid; ++j) {
      const double x = lo + (hi - lo) * i / (o.grid - 1);
      const double y = lo + (hi - lo) * j / (o.grid - 1);
      const double m = cfg.metric(x, y, o.t);
      const double pm = psi(m);
      const double mapped = cfg.metric(map(x), map(y), o.t);
      const double margin = mapped - pm;
      if (margin < 0.0) all_ok = false;
      rows_a.push_back({fuzzyf::format_g17(x), fuzzyf::format_g17(y),
                        fuzzyf::format_g17(mapped), fuzzyf::format_g17(pm),
                        fuzzyf::format_g17(margin)});
    }
  const std::string path_a = o.out_base + "_a.csv";
  fuzzyf::write_csv(path_a, {"x", "y", "m_mapped", "psi_m", "margin"}, rows_a);

  // (b) margin for the endpoint pair across t = j/5
  std::vector<std::vector<std::string>> rows_b;
  for (int j = 1; j <= o.steps; ++j) {
    const double t = static_cast<double>(j) / 5.0;
    const double m = cfg.metric(lo, hi, t);
    const double pm = psi(m);
    const double mapped = cfg.metric(map(lo), map(hi), t);
    const double margin = mapped - pm;
    if (margin < 0.0) all_ok = false;
    rows_b.push_back({fuzzyf::format_g17(t), fuzzyf::format_g17(mapped),
                      fuzzyf::format_g17(pm), fuzzyf::format_g17(margin)});
  }
  const std::string path_b = o.out_base + "_b.csv";
  fuzzyf::write_csv(path_b, {"t", "m_mapped", "psi_m", "margin"}, rows_b);

  std::cout << "wrote " << path_a << " (" << rows_a.size() << " rows) and "
            << path_b << " (" << rows_b.size() << " rows); margins "
            << (all_ok ? "all nonnegative" : "NEGATIVE somewhere") << "\n";
  return all_ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"fuzzy triangular-grade metric toolkit"};
  app.require_subcommand(1);
  int rc = 0;

  AxiomsOpts ax;
  auto* axioms = app.add_subcommand(
      "axioms", "sample the space axioms for a grade function");
  axioms->add_option("--metric", ax.metric, "grade function: canonical | abs")
      ->check(CLI::IsMember({"canonical", "abs"}));
  axioms->add_option("--samples", ax.samples, "point pair samples")
      ->check(CLI::PositiveNumber);
  axioms->add_option("--chain-samples", ax.chain_samples, "chain samples")
      ->check(CLI::PositiveNumber);
  axioms->add_option("--max-chain-len", ax.max_chain_len,
                     "largest sampled chain length");
  axioms->add_option("--seed", ax.seed, "sampling seed");
  axioms->add_option("--t-max", ax.t_max, "sampled times lie in (0, t-max]");
  axioms->add_option("--xmin", ax.xmin, "domain lower end");
  axioms->add_option("--xmax", ax.xmax, "domain upper end");
  axioms->add_option("--out", ax.out, "JSON report path");
  axioms->add_flag("--serial", ax.serial, "disable the parallel scan");
  axioms->callback([&] { rc = run_axioms(ax); });

  NetOpts net;
  auto* netc = app.add_subcommand(
      "net", "boundedness witness and covering nets for a finite set");
  netc->add_option("--points", net.points_file, "points file, one real per line")
      ->required();
  netc->add_option("--candidates", net.candidates_file,
                   "candidate net points (default: the set itself)");
  netc->add_option("--epsilon", net.epsilon, "covering time parameter")
      ->check(CLI::PositiveNumber);
  netc->add_option("--r", net.r, "covering level in (0,1)");
  netc->add_option("--t", net.t0, "boundedness witness time")
      ->check(CLI::PositiveNumber);
  netc->add_option("--out", net.out, "JSON report path");
  netc->callback([&] { rc = run_net(net); });

  FixpointOpts fp;
  auto* fixp = app.add_subcommand(
      "fixpoint", "contraction scan and fixed-point iteration for x -> s*x");
  fixp->add_option("--scale", fp.scale, "map slope s");
  fixp->add_option("--domain", fp.domain, "sample domain: interval | evens")
      ->check(CLI::IsMember({"interval", "evens"}));
  fixp->add_option("--xmin", fp.xmin, "interval lower end");
  fixp->add_option("--xmax", fp.xmax, "interval upper end");
  fixp->add_option("--x0", fp.x0, "iteration start");
  fixp->add_option("--psi", fp.psi, "comparison map: sqrt | rational | power")
      ->check(CLI::IsMember({"sqrt", "rational", "power"}));
  fixp->add_option("--psi-k", fp.psi_k, "rational parameter in (0,1)");
  fixp->add_option("--psi-beta", fp.psi_beta, "power parameter > 1");
  fixp->add_option("--samples", fp.samples, "pair samples")
      ->check(CLI::PositiveNumber);
  fixp->add_option("--tol", fp.tol, "stopping tolerance on 1 - M");
  fixp->add_option("--max-iter", fp.max_iter, "iteration budget");
  fixp->add_option("--seed", fp.seed, "sampling seed");
  fixp->add_option("--t", fp.t_grid, "grid time (repeatable; default 0.5 1 2)");
  fixp->add_option("--trace", fp.trace_csv, "iteration trace CSV path");
  fixp->add_option("--out", fp.out, "JSON report path");
  fixp->add_flag("--serial", fp.serial, "disable the parallel scan");
  fixp->callback([&] { rc = run_fixpoint(fp); });

  SatelliteOpts sat;
  auto* satc = app.add_subcommand(
      "satellite", "solve the satellite web coupling problem");
  satc->add_option("--mu", sat.mu, "coupling constant >= 0");
  satc->add_option("--grid", sat.grid, "grid nodes over [0,1]");
  satc->add_option("--tol", sat.tol, "stopping tolerance on 1 - M");
  satc->add_option("--max-iter", sat.max_iter, "iteration budget");
  satc->add_option("--quadrature", sat.quadrature, "simpson | trapezoid")
      ->check(CLI::IsMember({"simpson", "trapezoid"}));
  satc->add_flag("--homogeneous", sat.homogeneous,
                 "drop the boundary constant from the operator");
  satc->add_option("--w0", sat.w0, "constant starting profile");
  satc->add_option("--k-bound", sat.k_bound,
                   "declared contraction constant in (0,4)");
  satc->add_option("--t", sat.t_grid, "grid time (repeatable; default 0.5 1 2)");
  satc->add_option("--out", sat.out_csv, "solution CSV path");
  satc->add_option("--report", sat.report_json, "JSON report path");
  satc->add_flag("--serial", sat.serial, "disable the parallel operator");
  satc->callback([&] { rc = run_satellite(sat); });

  Figure1Opts fig;
  auto* figc = app.add_subcommand(
      "figure1", "margin data for the worked x/6 example");
  figc->add_option("--t", fig.t, "fixed time for the lattice sheet");
  figc->add_option("--grid", fig.grid, "lattice points per axis");
  figc->add_option("--steps", fig.steps, "number of 0.2-wide time steps");
  figc->add_option("--out", fig.out_base, "output base path (suffix _a/_b.csv)")
      ->required();
  figc->callback([&] { rc = run_figure1(fig); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return rc;
}
