#include "fuzzyf/satellite.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace fuzzyf {

GridFunction::GridFunction(std::vector<double> values)
    : values_(std::move(values)) {
  if (values_.size() < 3)
    throw std::invalid_argument("GridFunction: need at least 3 nodes");
}

GridFunction GridFunction::constant(int grid_size, double value) {
  if (grid_size < 3)
    throw std::invalid_argument("GridFunction: need at least 3 nodes");
  return GridFunction(std::vector<double>(static_cast<std::size_t>(grid_size),
                                          value));
}

double GridFunction::sup_norm() const {
  double s = 0.0;
  for (double v : values_) s = std::max(s, std::fabs(v));
  return s;
}

double sup_diff(const GridFunction& a, const GridFunction& b) {
  if (a.size() != b.size())
    throw std::invalid_argument("sup_diff: grid sizes differ");
  double s = 0.0;
  for (int i = 0; i < a.size(); ++i) s = std::max(s, std::fabs(a[i] - b[i]));
  return s;
}

void BvpConfig::validate() const {
  if (!(mu >= 0.0)) throw std::invalid_argument("BvpConfig: mu must be >= 0");
  if (grid_size < 5)
    throw std::invalid_argument("BvpConfig: grid_size must be >= 5");
  if (!(tol > 0.0 && tol < 1.0))
    throw std::invalid_argument("BvpConfig: tol must be in (0,1)");
  if (max_iter < 1)
    throw std::invalid_argument("BvpConfig: max_iter must be >= 1");
  if (!(k_bound > 0.0 && k_bound < 4.0))
    throw std::invalid_argument("BvpConfig: k_bound must be in (0,4)");
  if (t_grid.empty())
    throw std::invalid_argument("BvpConfig: empty t grid");
  for (double t : t_grid)
    if (!(t > 0.0))
      throw std::invalid_argument("BvpConfig: grid times must be > 0");
}

double green(double t, double xi) {
  if (!(t >= 0.0 && t <= 1.0 && xi >= 0.0 && xi <= 1.0))
    throw std::domain_error("green: arguments must lie in [0,1]");
  return t <= xi ? t * (1.0 - xi) : xi * (1.0 - t);
}

double green_row_integral(double t) {
  if (!(t >= 0.0 && t <= 1.0))
    throw std::domain_error("green_row_integral: t must lie in [0,1]");
  return t * (1.0 - t) / 2.0;
}

std::vector<double> composite_weights(QuadratureRule rule, int intervals,
                                      double h) {
  if (intervals < 0)
    throw std::invalid_argument("composite_weights: negative interval count");
  std::vector<double> w(static_cast<std::size_t>(intervals) + 1, 0.0);
  if (intervals == 0) return w;

  if (rule == QuadratureRule::trapezoid || intervals == 1) {
    w[0] = w[static_cast<std::size_t>(intervals)] = h / 2.0;
    for (int i = 1; i < intervals; ++i) w[static_cast<std::size_t>(i)] = h;
    return w;
  }

  // Simpson over an even run; an odd tail keeps a 3/8 patch on the last
  // three intervals. Both pieces are exact through cubics.
  int even_part = intervals;
  bool patch = false;
  if (intervals % 2 == 1) {
    even_part = intervals - 3;
    patch = true;
  }
  for (int i = 0; i + 2 <= even_part; i += 2) {
    w[static_cast<std::size_t>(i)] += h / 3.0;
    w[static_cast<std::size_t>(i + 1)] += 4.0 * h / 3.0;
    w[static_cast<std::size_t>(i + 2)] += h / 3.0;
  }
  if (patch) {
    const double c = 3.0 * h / 8.0;
    const std::size_t base = static_cast<std::size_t>(even_part);
    w[base] += c;
    w[base + 1] += 3.0 * c;
    w[base + 2] += 3.0 * c;
    w[base + 3] += c;
  }
  return w;
}

BvpOperator::BvpOperator(const BvpConfig& cfg) : cfg_(cfg) {
  cfg_.validate();
  const int m = cfg_.grid_size - 1;
  const double h = 1.0 / m;
  weights_.resize(static_cast<std::size_t>(cfg_.grid_size));
  for (int i = 0; i <= m; ++i) {
    const double ti = static_cast<double>(i) / m;
    std::vector<double>& row = weights_[static_cast<std::size_t>(i)];
    row.assign(static_cast<std::size_t>(cfg_.grid_size), 0.0);
    // split the row at the kernel kink xi = t_i
    const std::vector<double> left = composite_weights(cfg_.quadrature, i, h);
    const std::vector<double> right =
        composite_weights(cfg_.quadrature, m - i, h);
    for (int j = 0; j <= i; ++j) row[static_cast<std::size_t>(j)] += left[static_cast<std::size_t>(j)];
    for (int j = i; j <= m; ++j)
      row[static_cast<std::size_t>(j)] += right[static_cast<std::size_t>(j - i)];
    for (int j = 0; j <= m; ++j)
      row[static_cast<std::size_t>(j)] *=
          green(ti, static_cast<double>(j) / m);
  }
}

double BvpOperator::row_value(const GridFunction& w4, int i) const {
  const std::vector<double>& row = weights_[static_cast<std::size_t>(i)];
  std::vector<double> terms(row.size());
  for (std::size_t j = 0; j < row.size(); ++j)
    terms[j] = row[j] * w4[static_cast<int>(j)];
  const double integral = pairwise_sum(terms);
  return cfg_.homogeneous ? cfg_.mu * integral : 1.0 - cfg_.mu * integral;
}

GridFunction BvpOperator::apply_serial(const GridFunction& w) const {
  if (w.size() != cfg_.grid_size)
    throw std::invalid_argument("BvpOperator: grid size mismatch");
  GridFunction w4 = w;
  for (int i = 0; i < w.size(); ++i) {
    const double v = w[i];
    w4[i] = v * v * v * v;
  }
  GridFunction out = w;
  for (int i = 0; i < w.size(); ++i) out[i] = row_value(w4, i);
  return out;
}

GridFunction BvpOperator::apply(const GridFunction& w, Exec exec) const {
  if (exec == Exec::serial) return apply_serial(w);
  if (w.size() != cfg_.grid_size)
    throw std::invalid_argument("BvpOperator: grid size mismatch");
  GridFunction w4 = w;
  for (int i = 0; i < w.size(); ++i) {
    const double v = w[i];
    w4[i] = v * v * v * v;
  }
  GridFunction out = w;
  const int n = w.size();
#pragma omp parallel for schedule(static)
  for (int i = 0; i < n; ++i) out[i] = row_value(w4, i);
  return out;
}

GridFunction apply_operator(const BvpConfig& cfg, const GridFunction& w,
                            Exec exec) {
  return BvpOperator(cfg).apply(w, exec);
}

ContractionEstimate contraction_estimate(const BvpConfig& cfg,
                                         const GridFunction& w,
                                         const GridFunction& v) {
  cfg.validate();
  const double denom = sup_diff(w, v);
  if (denom == 0.0)
    throw std::invalid_argument(
        "contraction_estimate: w and v coincide, ratio undefined");
  BvpOperator op(cfg);
  const double num = sup_diff(op.apply(w), op.apply(v));

  ContractionEstimate est;
  const double q = num / denom;  // divide first: denom^2 can underflow
  est.ratio = q * q;
  double s = 0.0;
  for (int i = 0; i < w.size(); ++i) {
    const double a = w[i], b = v[i];
    s = std::max(s, std::fabs((a * a + b * b) * (a + b)));
  }
  est.k = cfg.mu * s;
  est.bound_coarse = est.k * est.k / 16.0;
  est.bound_sharp = est.k * est.k / 64.0;
  return est;
}

double residual_check(const BvpConfig& cfg, const GridFunction& w) {
  cfg.validate();
  if (w.size() != cfg.grid_size)
    throw std::invalid_argument("residual_check: grid size mismatch");
  const double h = w.h();
  const double bc = cfg.homogeneous ? 0.0 : 1.0;
  const double sign = cfg.homogeneous ? 1.0 : -1.0;  // D2 w = -sign*mu*w^4
  double res = std::max(std::fabs(w[0] - bc), std::fabs(w[w.size() - 1] - bc));
  for (int i = 1; i + 1 < w.size(); ++i) {
    const double d2 = (w[i - 1] - 2.0 * w[i] + w[i + 1]) / (h * h);
    const double w4 = w[i] * w[i] * w[i] * w[i];
    res = std::max(res, std::fabs(d2 + sign * cfg.mu * w4));
  }
  return res;
}

FMetricConfig<GridFunction> grid_function_config() {
  FMetricConfig<GridFunction> cfg;
  cfg.metric = [](const GridFunction& a, const GridFunction& b, double t) {
    if (!(t > 0.0))
      throw std::domain_error("grid metric: t must be > 0");
    const double d = sup_diff(a, b);
    return fuzzy_pow(t / (t + 1.0), d * d);
  };
  cfg.f = FClassFn::power(2);
  cfg.alpha = 0.5;
  cfg.star = TNorm::product();
  cfg.domain = "C[0,1] on a uniform grid";
  return cfg;
}

SolveReport solve_bvp(const BvpConfig& cfg, const GridFunction& w0, Exec exec) {
  cfg.validate();
  if (w0.size() != cfg.grid_size)
    throw std::invalid_argument("solve_bvp: w0 grid size mismatch");

  BvpOperator op(cfg);
  FMetricConfig<GridFunction> space = grid_function_config();

  PicardOptions popt;
  popt.t_grid = cfg.t_grid;
  popt.tol = cfg.tol;
  popt.max_iter = cfg.max_iter;
  popt.audit_psi = PsiFn::power_recip(16.0 / (cfg.k_bound * cfg.k_bound));

  auto map = [&op, exec](const GridFunction& w) { return op.apply(w, exec); };
  IterationTrace<GridFunction> trace = picard_solve<GridFunction>(
      space, map, w0, popt);

  SolveReport rep(trace.converged ? *trace.fixed_point : trace.iterates.back());
  rep.converged = trace.converged;
  rep.iterations = trace.iterations;
  rep.t_grid = cfg.t_grid;
  if (!trace.step_gaps.empty()) rep.final_step_gap = trace.step_gaps.back();
  const std::size_t n_it = trace.iterates.size();
  if (n_it >= 2)
    rep.final_step_sup =
        sup_diff(trace.iterates[n_it - 1], trace.iterates[n_it - 2]);
  rep.residual_sup = residual_check(cfg, rep.solution);

  // contraction statistics over consecutive iterate pairs
  for (std::size_t i = 0; i + 2 < n_it; ++i) {
    const double denom = sup_diff(trace.iterates[i], trace.iterates[i + 1]);
    if (denom == 0.0) continue;
    const double num = sup_diff(trace.iterates[i + 1], trace.iterates[i + 2]);
    const double q = num / denom;
    const double factor = q * q;
    rep.contraction_factor_measured =
        std::max(rep.contraction_factor_measured, factor);
    double s = 0.0;
    for (int g = 0; g < cfg.grid_size; ++g) {
      const double a = trace.iterates[i][g], b = trace.iterates[i + 1][g];
      s = std::max(s, std::fabs((a * a + b * b) * (a + b)));
    }
    rep.k_used = std::max(rep.k_used, cfg.mu * s);
  }
  rep.bound_coarse = rep.k_used * rep.k_used / 16.0;
  rep.bound_sharp = rep.k_used * rep.k_used / 64.0;
  rep.trace = std::move(trace);
  return rep;
}

nlohmann::json SolveReport::to_json() const {
  nlohmann::json j;
  j["converged"] = converged;
  j["iterations"] = iterations;
  j["t_grid"] = t_grid;
  j["final_step_gap"] = final_step_gap;
  j["final_step_sup"] = final_step_sup;
  j["residual_sup"] = residual_sup;
  j["contraction_factor_measured"] = contraction_factor_measured;
  j["k_used"] = k_used;
  j["bound_coarse"] = bound_coarse;
  j["bound_sharp"] = bound_sharp;
  return j;
}

}  // namespace fuzzyf
