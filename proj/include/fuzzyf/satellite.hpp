#pragma once

#include <cstddef>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "fuzzyf/fixpoint.hpp"
#include "fuzzyf/fmetric.hpp"
#include "fuzzyf/parallel.hpp"

namespace fuzzyf {

// Real-valued function sampled on the uniform grid t_i = i/(n-1) over [0,1].
class GridFunction {
 public:
  explicit GridFunction(std::vector<double> values);
  static GridFunction constant(int grid_size, double value);

  int size() const { return static_cast<int>(values_.size()); }
  double h() const { return 1.0 / (size() - 1); }
  double node(int i) const { return static_cast<double>(i) / (size() - 1); }
  double operator[](int i) const { return values_[static_cast<std::size_t>(i)]; }
  double& operator[](int i) { return values_[static_cast<std::size_t>(i)]; }
  const std::vector<double>& values() const { return values_; }

  double sup_norm() const;

 private:
  std::vector<double> values_;
};

double sup_diff(const GridFunction& a, const GridFunction& b);

inline std::string point_label(const GridFunction& w) {
  std::ostringstream os;
  os.precision(17);
  os << "grid(n=" << w.size() << ", sup=" << w.sup_norm() << ")";
  return os.str();
}

enum class QuadratureRule { trapezoid, simpson };

struct BvpConfig {
  double mu = 1.0;
  int grid_size = 201;
  QuadratureRule quadrature = QuadratureRule::simpson;
  double tol = 1e-10;
  long max_iter = 200;
  double k_bound = 3.99;  // declared contraction constant, must sit in (0,4)
  // Drop the constant term: w -> mu * int G w^4. The default operator pins
  // w(0) = w(1) = 1 (its fixed points solve w'' = mu w^4); this variant pins
  // the boundary at 0 instead.
  bool homogeneous = false;
  std::vector<double> t_grid{0.5, 1.0, 2.0};

  void validate() const;
};

// Triangular kernel of -d^2/dt^2 with the boundary data folded in:
// t(1-xi) for t <= xi, xi(1-t) otherwise. Throws outside the unit square.
double green(double t, double xi);

// Closed form of the kernel's row integral: t(1-t)/2.
double green_row_integral(double t);

// Weights of a composite rule over `intervals` equal steps of width h
// (nodes 0..intervals). Simpson pairs intervals and patches an odd remainder
// with the 3/8 rule, so piecewise-cubic integrands stay exact; a single
// interval falls back to the trapezoid.
std::vector<double> composite_weights(QuadratureRule rule, int intervals,
                                      double h);

// Discretized integral operator w -> 1 - mu * int_0^1 G(t,.) w^4 (or the
// homogeneous variant without the constant). The quadrature row for node i is
// split at the kernel kink xi = t_i. Row sums use a fixed pairwise tree, so
// parallel and serial applications agree bitwise.
class BvpOperator {
 public:
  explicit BvpOperator(const BvpConfig& cfg);

  GridFunction apply(const GridFunction& w, Exec exec = Exec::parallel) const;
  GridFunction apply_serial(const GridFunction& w) const;
  GridFunction operator()(const GridFunction& w) const { return apply(w); }

  const BvpConfig& config() const { return cfg_; }
  // quadrature weights (geometry only) for row i
  const std::vector<double>& row_weights(int i) const {
    return weights_[static_cast<std::size_t>(i)];
  }

 private:
  double row_value(const GridFunction& w4, int i) const;

  BvpConfig cfg_;
  std::vector<std::vector<double>> weights_;  // [row][node], includes G factor
};

GridFunction apply_operator(const BvpConfig& cfg, const GridFunction& w,
                            Exec exec = Exec::parallel);

struct ContractionEstimate {
  double ratio = 0.0;        // sup|Aw-Av|^2 / sup|w-v|^2
  double k = 0.0;            // mu * sup|(w^2+v^2)(w+v)|
  double bound_coarse = 0.0;  // k^2/16
  double bound_sharp = 0.0;  // k^2/64
};

// Measured contraction data for one pair. Throws std::invalid_argument when
// w and v coincide on the grid (the ratio is undefined); a tiny but nonzero
// separation is fine, the division is guarded by construction.
ContractionEstimate contraction_estimate(const BvpConfig& cfg,
                                         const GridFunction& w,
                                         const GridFunction& v);

// sup_i |D2 w(t_i) - mu w(t_i)^4| over interior nodes with the boundary
// deviations |w(0) - c|, |w(1) - c| folded into the sup (c = 1, or 0 for the
// homogeneous variant, whose sign convention flips to |D2 w + mu w^4|).
double residual_check(const BvpConfig& cfg, const GridFunction& w);

struct SolveReport {
  explicit SolveReport(GridFunction s) : solution(std::move(s)) {}

  GridFunction solution;
  bool converged = false;
  long iterations = 0;
  std::vector<double> t_grid;
  std::vector<double> final_step_gap;  // 1 - M per grid t for the last step
  double final_step_sup = 0.0;         // plain sup-norm of the last step
  double residual_sup = 0.0;
  double contraction_factor_measured = 0.0;  // max over consecutive pairs
  double k_used = 0.0;   // max mu*sup|(w^2+v^2)(w+v)| over the same pairs
  double bound_coarse = 0.0;
  double bound_sharp = 0.0;
  IterationTrace<GridFunction> trace;

  nlohmann::json to_json() const;
};

// Fuzzy metric over grid functions used by the solver:
// (T/(T+1))^{sup|xi-eta|^2} with f = x^2, alpha = 1/2, product norm.
FMetricConfig<GridFunction> grid_function_config();

// Picard iteration of the integral operator from w0, with convergence judged
// by the fuzzy criterion (the sup-norm gap is reported alongside).
SolveReport solve_bvp(const BvpConfig& cfg, const GridFunction& w0,
                      Exec exec = Exec::parallel);

inline SolveReport solve_bvp(const BvpConfig& cfg,
                             Exec exec = Exec::parallel) {
  return solve_bvp(cfg, GridFunction::constant(cfg.grid_size, 1.0), exec);
}

}  // namespace fuzzyf
