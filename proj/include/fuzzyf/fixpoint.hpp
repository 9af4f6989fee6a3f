#pragma once

#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "fuzzyf/fmetric.hpp"
#include "fuzzyf/parallel.hpp"
#include "fuzzyf/rng.hpp"

namespace fuzzyf {

// One sampled violation of M(Tx,Ty,t) >= psi(M(x,y,t)).
template <typename P>
struct ContractionWitness {
  P x;
  P y;
  double t = 0.0;
  double grade_pair = 0.0;    // M(x,y,t)
  double grade_mapped = 0.0;  // M(Tx,Ty,t)
  double psi_value = 0.0;     // psi(M(x,y,t))
};

template <typename P>
struct ContractionReport {
  long sampled_pairs = 0;  // (x,y,t) evaluations that passed the guard
  double min_margin = std::numeric_limits<double>::infinity();
  std::optional<ContractionWitness<P>> witness;  // first negative, sample order
};

namespace detail {

// Margin scan body for one sampled pair; evaluates every grid t under the
// guard 0 < M(x,y,t) < 1.
template <typename P>
struct MarginSample {
  double min_margin = std::numeric_limits<double>::infinity();
  int count = 0;
  bool negative = false;
};

template <typename P>
MarginSample<P> margin_sample(const FMetricConfig<P>& cfg,
                              const std::function<P(const P&)>& map,
                              const PsiFn& psi,
                              const PointSampler<P>& sample_point,
                              std::uint64_t seed, long index,
                              const std::vector<double>& t_grid) {
  SplitMix64 rng = stream_rng(seed, static_cast<std::uint64_t>(index));
  const P x = sample_point(rng);
  const P y = sample_point(rng);
  const P tx = map(x);
  const P ty = map(y);
  MarginSample<P> out;
  for (double t : t_grid) {
    const double m = cfg.metric(x, y, t);
    if (!(m > 0.0 && m < 1.0)) continue;
    const double margin = cfg.metric(tx, ty, t) - psi(m);
    ++out.count;
    if (margin < out.min_margin) out.min_margin = margin;
    if (margin < 0.0) out.negative = true;
  }
  return out;
}

}  // namespace detail

template <typename P>
ContractionReport<P> verify_contraction_serial(
    const FMetricConfig<P>& cfg, const std::function<P(const P&)>& map,
    const PsiFn& psi, const PointSampler<P>& sample_point, long samples,
    const std::vector<double>& t_grid, std::uint64_t seed) {
  ContractionReport<P> report;
  long first_negative = -1;
  for (long i = 0; i < samples; ++i) {
    auto s = detail::margin_sample(cfg, map, psi, sample_point, seed, i, t_grid);
    report.sampled_pairs += s.count;
    if (s.min_margin < report.min_margin) report.min_margin = s.min_margin;
    if (s.negative && first_negative < 0) first_negative = i;
  }
  if (first_negative >= 0) {
    // rebuild the first offending evaluation
    SplitMix64 rng = stream_rng(seed, static_cast<std::uint64_t>(first_negative));
    const P x = sample_point(rng);
    const P y = sample_point(rng);
    const P tx = map(x);
    const P ty = map(y);
    for (double t : t_grid) {
      const double m = cfg.metric(x, y, t);
      if (!(m > 0.0 && m < 1.0)) continue;
      const double mapped = cfg.metric(tx, ty, t);
      const double p = psi(m);
      if (mapped - p < 0.0) {
        report.witness = ContractionWitness<P>{x, y, t, m, mapped, p};
        break;
      }
    }
  }
  return report;
}

// Samples pairs under the guard 0 < M(x,y,t) < 1, reporting the minimum
// margin and the first witness (in sample order) when it is negative.
// Per-sample RNG streams plus (value, index) min-reductions keep the result
// schedule independent; tests check it against the serial reference bitwise.
template <typename P>
ContractionReport<P> verify_contraction(
    const FMetricConfig<P>& cfg, const std::function<P(const P&)>& map,
    const PsiFn& psi, const PointSampler<P>& sample_point, long samples,
    const std::vector<double>& t_grid, std::uint64_t seed = 42,
    Exec exec = Exec::parallel) {
  if (samples < 1) throw std::invalid_argument("verify_contraction: samples < 1");
  if (t_grid.empty())
    throw std::invalid_argument("verify_contraction: empty t grid");
  for (double t : t_grid)
    if (!(t > 0.0))
      throw std::invalid_argument("verify_contraction: grid times must be > 0");
  if (exec == Exec::serial)
    return verify_contraction_serial(cfg, map, psi, sample_point, samples,
                                     t_grid, seed);

  ContractionReport<P> report;
  long first_negative = -1;
  long total_count = 0;
  double min_margin = std::numeric_limits<double>::infinity();
#pragma omp parallel
  {
    long local_first = -1;
    long local_count = 0;
    double local_min = std::numeric_limits<double>::infinity();
#pragma omp for nowait
    for (long i = 0; i < samples; ++i) {
      auto s =
          detail::margin_sample(cfg, map, psi, sample_point, seed, i, t_grid);
      local_count += s.count;
      if (s.min_margin < local_min) local_min = s.min_margin;
      if (s.negative && (local_first < 0 || i < local_first)) local_first = i;
    }
#pragma omp critical
    {
      total_count += local_count;
      if (local_min < min_margin) min_margin = local_min;
      if (local_first >= 0 && (first_negative < 0 || local_first < first_negative))
        first_negative = local_first;
    }
  }
  report.sampled_pairs = total_count;
  report.min_margin = min_margin;
  if (first_negative >= 0) {
    SplitMix64 rng = stream_rng(seed, static_cast<std::uint64_t>(first_negative));
    const P x = sample_point(rng);
    const P y = sample_point(rng);
    const P tx = map(x);
    const P ty = map(y);
    for (double t : t_grid) {
      const double m = cfg.metric(x, y, t);
      if (!(m > 0.0 && m < 1.0)) continue;
      const double mapped = cfg.metric(tx, ty, t);
      const double p = psi(m);
      if (mapped - p < 0.0) {
        report.witness = ContractionWitness<P>{x, y, t, m, mapped, p};
        break;
      }
    }
  }
  return report;
}

// Picard trace. iterates[0] is the start; step n (1-based) carries
// 1 - M(x_n, x_{n-1}, t) per grid t and, when an audit psi is supplied, the
// contraction lower bound psi^{n-1}(M(x_1, x_0, t)).
template <typename P>
struct IterationTrace {
  std::vector<P> iterates;
  std::vector<std::vector<double>> step_gaps;   // [step-1][t index]
  std::vector<std::vector<double>> psi_bounds;  // same shape; empty without psi
  std::vector<double> t_grid;
  bool converged = false;
  long iterations = 0;  // steps actually taken
  std::optional<P> fixed_point;
};

struct PicardOptions {
  std::vector<double> t_grid{0.5, 1.0, 2.0};
  double tol = 1e-10;
  long max_iter = 200;
  std::optional<PsiFn> audit_psi;
};

// Iterates x_{n+1} = T(x_n) until 1 - M(x_{n+1}, x_n, t) < tol at every grid
// t, or max_iter steps. Non-convergence is an honest report, not an error.
// A start that is already fixed returns after one step.
template <typename P>
IterationTrace<P> picard_solve(const FMetricConfig<P>& cfg,
                               const std::function<P(const P&)>& map,
                               const P& x0, const PicardOptions& opt = {}) {
  if (!(opt.tol > 0.0 && opt.tol < 1.0))
    throw std::invalid_argument("picard_solve: tol must be in (0,1)");
  if (opt.max_iter < 1)
    throw std::invalid_argument("picard_solve: max_iter must be >= 1");
  if (opt.t_grid.empty())
    throw std::invalid_argument("picard_solve: empty t grid");
  for (double t : opt.t_grid)
    if (!(t > 0.0))
      throw std::invalid_argument("picard_solve: grid times must be > 0");

  IterationTrace<P> trace;
  trace.t_grid = opt.t_grid;
  trace.iterates.push_back(x0);

  std::vector<double> first_grades;  // M(x_1, x_0, t), audit chain root
  for (long n = 0; n < opt.max_iter; ++n) {
    const P next = map(trace.iterates.back());
    const P& cur = trace.iterates.back();

    std::vector<double> gaps;
    gaps.reserve(opt.t_grid.size());
    bool all_within = true;
    for (double t : opt.t_grid) {
      const double m = cfg.metric(next, cur, t);
      gaps.push_back(1.0 - m);
      if (!(1.0 - m < opt.tol)) all_within = false;
    }
    if (n == 0) {
      for (double t : opt.t_grid)
        first_grades.push_back(cfg.metric(next, cur, t));
    }
    if (opt.audit_psi) {
      std::vector<double> bounds;
      bounds.reserve(opt.t_grid.size());
      for (std::size_t k = 0; k < opt.t_grid.size(); ++k) {
        double b = first_grades[k];
        for (long j = 0; j < n; ++j) b = (*opt.audit_psi)(b);
        bounds.push_back(b);
      }
      trace.psi_bounds.push_back(std::move(bounds));
    }
    trace.step_gaps.push_back(std::move(gaps));
    trace.iterates.push_back(next);
    trace.iterations = n + 1;
    if (all_within) {
      trace.converged = true;
      trace.fixed_point = trace.iterates.back();
      return trace;
    }
  }
  return trace;
}

// Runs picard_solve from every start and compares the limits pairwise.
template <typename P>
struct UniquenessReport {
  std::vector<IterationTrace<P>> runs;
  bool all_converged = false;
  // max over converged pairs and grid t of 1 - M(u_i, u_j, t)
  double max_pairwise_gap = 0.0;
  bool agreed = false;
};

template <typename P>
UniquenessReport<P> uniqueness_probe(const FMetricConfig<P>& cfg,
                                     const std::function<P(const P&)>& map,
                                     const std::vector<P>& starts,
                                     const PicardOptions& opt = {}) {
  if (starts.size() < 2)
    throw std::invalid_argument("uniqueness_probe: need at least two starts");
  UniquenessReport<P> out;
  for (const P& s : starts) out.runs.push_back(picard_solve(cfg, map, s, opt));
  out.all_converged = true;
  for (const auto& r : out.runs)
    if (!r.converged) out.all_converged = false;

  for (std::size_t i = 0; i < out.runs.size(); ++i) {
    if (!out.runs[i].converged) continue;
    for (std::size_t j = i + 1; j < out.runs.size(); ++j) {
      if (!out.runs[j].converged) continue;
      for (double t : opt.t_grid) {
        const double gap =
            1.0 - cfg.metric(*out.runs[i].fixed_point, *out.runs[j].fixed_point, t);
        if (gap > out.max_pairwise_gap) out.max_pairwise_gap = gap;
      }
    }
  }
  out.agreed = out.all_converged && out.max_pairwise_gap < opt.tol;
  return out;
}

}  // namespace fuzzyf
