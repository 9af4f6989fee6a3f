#pragma once

#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "fuzzyf/core_functions.hpp"
#include "fuzzyf/parallel.hpp"
#include "fuzzyf/report.hpp"
#include "fuzzyf/rng.hpp"

namespace fuzzyf {

// (t/(t+1))^{|x-y|^2} for t > 0. Underflow is clamped to the smallest
// positive double: the mathematical value is always positive, and the clamp
// keeps strict-positivity checks meaningful near the representation floor.
double canonical_metric(double x, double y, double t);

// Same guard for arbitrary base^exponent evaluations of fuzzy grades.
inline double fuzzy_pow(double base, double exponent) {
  double m = std::pow(base, exponent);
  if (m <= 0.0) return std::numeric_limits<double>::denorm_min();
  return m < 1.0 ? m : 1.0;
}

template <typename P>
using MetricFn = std::function<double(const P&, const P&, double)>;

template <typename P>
using PointSampler = std::function<P(SplitMix64&)>;

// Everything the axioms need: the grade function M, the scaling function f,
// the exponent alpha in (0,1], and the t-norm that folds chains.
template <typename P>
struct FMetricConfig {
  MetricFn<P> metric;
  FClassFn f = FClassFn::power(2);
  double alpha = 0.5;
  TNorm star = TNorm::product();
  std::string domain = "R";
};

// f = x^2, alpha = 1/2, product norm over the canonical grade function.
// With this pair (f(M))^alpha collapses to M itself.
FMetricConfig<double> canonical_config();

// Grade function with exponent |x-y| instead of |x-y|^2, paired with the
// identity scaling and alpha = 1. Kept as a contrast configuration for the
// axiom scanner.
FMetricConfig<double> abs_exponent_config();

// Uniform sampler over [lo, hi].
PointSampler<double> interval_sampler(double lo, double hi);
// Uniform sampler over a finite list of values.
PointSampler<double> finite_sampler(std::vector<double> values);

// Label used when a point appears inside a witness string.
inline std::string point_label(double x) {
  std::ostringstream os;
  os.precision(17);
  os << x;
  return os.str();
}

// u_1..u_N with N >= 2 and positive leg times t_1..t_{N-1}; the chain axiom
// compares M(u_1, u_N, sum t_i) against the folded legs.
template <typename P>
struct Chain {
  std::vector<P> points;
  std::vector<double> times;

  void validate() const {
    if (points.size() < 2)
      throw std::invalid_argument("Chain: need at least two points");
    if (times.size() + 1 != points.size())
      throw std::invalid_argument("Chain: times must have N-1 entries");
    for (double t : times)
      if (!(t > 0.0)) throw std::invalid_argument("Chain: leg times must be > 0");
  }

  double total_time() const {
    double s = 0.0;
    for (double t : times) s += t;
    return s;
  }
};

// Signed slack (f(M(u_1,u_N,T)))^alpha - f(fold of leg grades). nullopt when
// M(u_1,u_N,T) = 1 and the axiom imposes nothing.
template <typename P>
std::optional<double> fm4_slack(const FMetricConfig<P>& cfg,
                                const Chain<P>& chain) {
  chain.validate();
  const double T = chain.total_time();
  const double m_direct = cfg.metric(chain.points.front(), chain.points.back(), T);
  if (m_direct >= 1.0) return std::nullopt;

  double fold = cfg.metric(chain.points[0], chain.points[1], chain.times[0]);
  for (std::size_t i = 1; i < chain.times.size(); ++i)
    fold = cfg.star(fold, cfg.metric(chain.points[i], chain.points[i + 1],
                                     chain.times[i]));
  return std::pow(cfg.f(m_direct), cfg.alpha) - cfg.f(fold);
}

template <typename P>
std::string chain_label(const Chain<P>& chain) {
  std::ostringstream os;
  os.precision(17);
  os << "points=[";
  for (std::size_t i = 0; i < chain.points.size(); ++i) {
    if (i) os << ", ";
    os << point_label(chain.points[i]);
  }
  os << "], times=[";
  for (std::size_t i = 0; i < chain.times.size(); ++i) {
    if (i) os << ", ";
    os << chain.times[i];
  }
  os << "]";
  return os.str();
}

struct AxiomOptions {
  long pair_samples = 10000;
  long chain_samples = 10000;
  int max_chain_len = 6;  // chain points, >= 2
  std::uint64_t seed = 42;
  double t_max = 10.0;  // pair times and chain totals drawn from (0, t_max]
  double tol = 1e-12;
  Exec exec = Exec::parallel;
};

/// Chain of random length in [2, max_len]: endpoints and interior points from
// the point sampler, total time uniform in (0, t_max], legs split by a
// uniform simplex draw (normalized exponentials).
template <typename P>
Chain<P> sample_chain(const PointSampler<P>& sample_point, SplitMix64& rng,
                      int max_len, double t_max) {
  Chain<P> c;
  const int n = rng.uniform_int(2, max_len);
  c.points.reserve(n);
  for (int i = 0; i < n; ++i) c.points.push_back(sample_point(rng));
  const double total = t_max * rng.uniform01_pos();
  c.times.resize(n - 1);
  double sum = 0.0;
  for (auto& g : c.times) {
    g = -std::log(rng.uniform01_open());
    sum += g;
  }
  for (auto& g : c.times)
    g = std::max(total * (g / sum), std::numeric_limits<double>::denorm_min());
  return c;
}

template <typename P>
struct Fm4ScanResult {
  double worst_slack = std::numeric_limits<double>::infinity();
  long evaluated = 0;  // chains where the guard M(x,y,T) < 1 held
  long worst_index = -1;
  std::optional<Chain<P>> worst_chain;
};

namespace detail {

template <typename P>
struct Fm4Sample {
  bool evaluated = false;
  double slack = 0.0;
};

template <typename P>
Fm4Sample<P> fm4_sample(const FMetricConfig<P>& cfg,
                        const PointSampler<P>& sample_point, std::uint64_t seed,
                        long index, int max_len, double t_max) {
  SplitMix64 rng = stream_rng(seed, static_cast<std::uint64_t>(index));
  Chain<P> c = sample_chain(sample_point, rng, max_len, t_max);
  auto s = fm4_slack(cfg, c);
  if (!s) return {};
  return {true, *s};
}

}  // namespace detail

// Plain-loop reference for the chain scan; the OpenMP kernel must agree with
// it bit for bit.
template <typename P>
Fm4ScanResult<P> fm4_chain_scan_serial(const FMetricConfig<P>& cfg,
                                       const PointSampler<P>& sample_point,
                                       const AxiomOptions& opt) {
  Fm4ScanResult<P> out;
  for (long i = 0; i < opt.chain_samples; ++i) {
    auto s = detail::fm4_sample(cfg, sample_point, opt.seed, i,
                                opt.max_chain_len, opt.t_max);
    if (!s.evaluated) continue;
    ++out.evaluated;
    if (s.slack < out.worst_slack) {
      out.worst_slack = s.slack;
      out.worst_index = i;
    }
  }
  if (out.worst_index >= 0) {
    SplitMix64 rng = stream_rng(opt.seed, static_cast<std::uint64_t>(out.worst_index));
    out.worst_chain = sample_chain(sample_point, rng, opt.max_chain_len, opt.t_max);
  }
  return out;
}

// Samples are indexed by their own RNG stream and reduced by
// (slack, index) lexicographic minimum, so the result is identical for any
// schedule and matches the serial reference exactly.
template <typename P>
Fm4ScanResult<P> fm4_chain_scan(const FMetricConfig<P>& cfg,
                                const PointSampler<P>& sample_point,
                                const AxiomOptions& opt) {
  if (opt.exec == Exec::serial) return fm4_chain_scan_serial(cfg, sample_point, opt);

  Fm4ScanResult<P> out;
#pragma omp parallel
  {
    double local_worst = std::numeric_limits<double>::infinity();
    long local_idx = -1;
    long local_eval = 0;
#pragma omp for nowait
    for (long i = 0; i < opt.chain_samples; ++i) {
      auto s = detail::fm4_sample(cfg, sample_point, opt.seed, i,
                                  opt.max_chain_len, opt.t_max);
      if (!s.evaluated) continue;
      ++local_eval;
      if (s.slack < local_worst ||
          (s.slack == local_worst && (local_idx < 0 || i < local_idx))) {
        local_worst = s.slack;
        local_idx = i;
      }
    }
#pragma omp critical
    {
      out.evaluated += local_eval;
      if (local_idx >= 0 &&
          (local_worst < out.worst_slack ||
           (local_worst == out.worst_slack &&
            (out.worst_index < 0 || local_idx < out.worst_index)))) {
        out.worst_slack = local_worst;
        out.worst_index = local_idx;
      }
    }
  }
  if (out.worst_index >= 0) {
    SplitMix64 rng = stream_rng(opt.seed, static_cast<std::uint64_t>(out.worst_index));
    out.worst_chain = sample_chain(sample_point, rng, opt.max_chain_len, opt.t_max);
  }
  return out;
}

// FM1 positivity / FM2 both directions / FM3 symmetry on sampled pairs and
// times, FM4 on sampled chains. Report fields: axiom, status, worst_slack,
// witness. Deterministic given (seed, sample counts).
template <typename P>
VerificationReport verify_axioms(const FMetricConfig<P>& cfg,
                                 const PointSampler<P>& sample_point,
                                 const AxiomOptions& opt = {}) {
  if (opt.pair_samples < 1 || opt.chain_samples < 1)
    throw std::invalid_argument("verify_axioms: sample counts must be >= 1");
  if (opt.max_chain_len < 2)
    throw std::invalid_argument("verify_axioms: max_chain_len must be >= 2");
  if (!(opt.t_max > 0.0))
    throw std::invalid_argument("verify_axioms: t_max must be > 0");

  VerificationReport report;
  const double inf = std::numeric_limits<double>::infinity();
  AxiomCheck fm1{"fm1_positivity", true, inf, ""};
  AxiomCheck fm2_self{"fm2_self_unit", true, inf, ""};
  AxiomCheck fm2_dist{"fm2_distinct", true, inf, ""};
  AxiomCheck fm3{"fm3_symmetry", true, inf, ""};

  SplitMix64 rng(opt.seed);
  for (long s = 0; s < opt.pair_samples; ++s) {
    const P x = sample_point(rng);
    const P y = sample_point(rng);
    const double t = opt.t_max * rng.uniform01_pos();

    const double mxy = cfg.metric(x, y, t);
    const double myx = cfg.metric(y, x, t);

    // FM1: 0 < M <= 1
    double slack = std::min(mxy, 1.0 - mxy + opt.tol);
    if (slack < fm1.worst_slack) {
      fm1.worst_slack = slack;
      if ((mxy <= 0.0 || mxy > 1.0 + opt.tol) && fm1.passed) {
        fm1.passed = false;
        fm1.witness = "x=" + point_label(x) + ", y=" + point_label(y) +
                      ", t=" + std::to_string(t);
      }
    }

    // FM3
    slack = -std::fabs(mxy - myx);
    if (slack < fm3.worst_slack) {
      fm3.worst_slack = slack;
      if (slack < -opt.tol && fm3.passed) {
        fm3.passed = false;
        fm3.witness = "x=" + point_label(x) + ", y=" + point_label(y) +
                      ", t=" + std::to_string(t);
      }
    }

    // FM2, reflexive direction: M(x,x,t) = 1
    const double mxx = cfg.metric(x, x, t);
    slack = -std::fabs(mxx - 1.0);
    if (slack < fm2_self.worst_slack) {
      fm2_self.worst_slack = slack;
      if (slack < -opt.tol && fm2_self.passed) {
        fm2_self.passed = false;
        fm2_self.witness = "x=" + point_label(x) + ", t=" + std::to_string(t);
      }
    }

    // FM2, converse direction on this pair: distinct points must show a
    // grade below 1 at some sampled time.
    if (point_label(x) != point_label(y)) {
      double best_gap = 1.0 - mxy;
      for (int k = 0; k < 8; ++k) {
        const double tk = opt.t_max * rng.uniform01_pos();
        best_gap = std::max(best_gap, 1.0 - cfg.metric(x, y, tk));
      }
      if (best_gap < fm2_dist.worst_slack) {
        fm2_dist.worst_slack = best_gap;
        if (best_gap <= 0.0 && fm2_dist.passed) {
          fm2_dist.passed = false;
          fm2_dist.witness = "x=" + point_label(x) + ", y=" + point_label(y);
        }
      }
    }
  }

  AxiomCheck fm4{"fm4_chain", true, inf, ""};
  Fm4ScanResult<P> scan = fm4_chain_scan(cfg, sample_point, opt);
  if (scan.evaluated > 0) {
    fm4.worst_slack = scan.worst_slack;
    if (scan.worst_slack < -opt.tol) {
      fm4.passed = false;
      if (scan.worst_chain) fm4.witness = chain_label(*scan.worst_chain);
    }
  } else {
    fm4.worst_slack = inf;  // guard never bound; vacuous
  }

  report.checks = {fm1, fm2_self, fm2_dist, fm3, fm4};
  return report;
}

// Tail behaviour of a finite trace against a candidate limit. tail_index is
// 1-based: the first position from which 1 - M(x_n, limit, t) < tol holds
// through the end of the trace; nullopt when even the last entry misses.
struct ConvergenceEntry {
  double t = 0.0;
  std::optional<long> tail_index;
  double final_gap = 0.0;
};

struct ConvergenceReport {
  std::vector<ConvergenceEntry> entries;
  bool converged = false;  // a tail index exists for every grid t
};

template <typename P>
ConvergenceReport convergence_diagnostic(const FMetricConfig<P>& cfg,
                                         const std::vector<P>& trace,
                                         const P& limit,
                                         const std::vector<double>& t_grid,
                                         double tol) {
  if (trace.empty())
    throw std::invalid_argument("convergence_diagnostic: empty trace");
  if (!(tol > 0.0 && tol < 1.0))
    throw std::invalid_argument("convergence_diagnostic: tol must be in (0,1)");

  ConvergenceReport out;
  out.converged = true;
  const long n = static_cast<long>(trace.size());
  for (double t : t_grid) {
    ConvergenceEntry e;
    e.t = t;
    e.final_gap = 1.0 - cfg.metric(trace.back(), limit, t);
    long first_bad_after = 0;  // last 1-based index violating the bound
    for (long i = 0; i < n; ++i) {
      if (!(1.0 - cfg.metric(trace[i], limit, t) < tol)) first_bad_after = i + 1;
    }
    if (first_bad_after < n) e.tail_index = first_bad_after + 1;
    if (!e.tail_index) out.converged = false;
    out.entries.push_back(e);
  }
  return out;
}

/// Same notion over all pairs: tail_index k is the first 1-based position such
// that every pair (n, m) with n, m >= k satisfies 1 - M(x_n, x_m, t) < tol.
template <typename P>
ConvergenceReport cauchy_diagnostic(const FMetricConfig<P>& cfg,
                                    const std::vector<P>& trace,
                                    const std::vector<double>& t_grid,
                                    double tol) {
  if (trace.empty())
    throw std::invalid_argument("cauchy_diagnostic: empty trace");
  if (!(tol > 0.0 && tol < 1.0))
    throw std::invalid_argument("cauchy_diagnostic: tol must be in (0,1)");

  ConvergenceReport out;
  out.converged = true;
  const long n = static_cast<long>(trace.size());
  for (double t : t_grid) {
    ConvergenceEntry e;
    e.t = t;
    e.final_gap = 0.0;
    std::optional<long> tail;
    if (n == 1) {
      tail = 1;  // vacuous
    } else {
      // Walk the suffix start downward while every pair inside stays within
      // tol. A certificate must cover at least one nontrivial pair, so the
      // smallest admissible suffix has two elements.
      bool suffix_ok = true;
      for (long k = n - 2; k >= 0 && suffix_ok; --k) {
        for (long m = k + 1; m < n && suffix_ok; ++m) {
          if (!(1.0 - cfg.metric(trace[k], trace[m], t) < tol))
            suffix_ok = false;
        }
        if (suffix_ok) tail = k + 1;
      }
    }
    e.tail_index = tail;
    if (n >= 2) e.final_gap = 1.0 - cfg.metric(trace[n - 2], trace[n - 1], t);
    if (!e.tail_index) out.converged = false;
    out.entries.push_back(e);
  }
  return out;
}

}  // namespace fuzzyf
