#include "fuzzyf/core_functions.hpp"

#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <vector>

#include "fuzzyf/rng.hpp"

namespace fuzzyf {

namespace {

std::string format_triple(const char* names, double a, double b, double c,
                          int count) {
  std::ostringstream os;
  os.precision(17);
  const char* n = names;
  const double v[3] = {a, b, c};
  for (int i = 0; i < count; ++i) {
    if (i) os << ", ";
    os << n[i] << "=" << v[i];
  }
  return os.str();
}

}  // namespace

FClassFn FClassFn::power(int n) {
  if (n < 1) throw std::domain_error("FClassFn::power requires n >= 1");
  return FClassFn(Kind::power, "power(" + std::to_string(n) + ")", n, {});
}

PsiFn PsiFn::rational(double k) {
  if (!(k > 0.0 && k < 1.0))
    throw std::domain_error("PsiFn::rational requires k in (0,1)");
  std::ostringstream name;
  name << "rational(k=" << k << ")";
  return PsiFn(Kind::rational, name.str(), k, {});
}

PsiFn PsiFn::power_recip(double beta) {
  if (!(beta > 1.0))
    throw std::domain_error("PsiFn::power_recip requires beta > 1");
  std::ostringstream name;
  name << "power(1/" << beta << ")";
  return PsiFn(Kind::power_recip, name.str(), 1.0 / beta, {});
}

VerificationReport verify_tnorm(const TNorm& norm, long samples,
                                std::uint64_t seed) {
  if (samples < 1) throw std::invalid_argument("verify_tnorm: samples < 1");
  constexpr double kTol = 1e-12;
  VerificationReport report;

  AxiomCheck identity{"identity", true, std::numeric_limits<double>::infinity(),
                      ""};
  AxiomCheck commut{"commutativity", true,
                    std::numeric_limits<double>::infinity(), ""};
  AxiomCheck assoc{"associativity", true,
                   std::numeric_limits<double>::infinity(), ""};
  AxiomCheck mono{"monotonicity", true,
                  std::numeric_limits<double>::infinity(), ""};

  SplitMix64 rng(seed);
  // Corner values first so degenerate-at-the-boundary failures are caught
  // deterministically, then the random bulk.
  std::vector<double> corner{0.0, 1.0};
  for (long s = 0; s < samples; ++s) {
    double a, b, c, d;
    if (s < 4) {
      a = corner[s & 1];
      b = corner[(s >> 1) & 1];
      c = rng.uniform01();
      d = rng.uniform01();
    } else {
      a = rng.uniform01();
      b = rng.uniform01();
      c = rng.uniform01();
      d = rng.uniform01();
    }

    double dev = -std::fabs(norm(a, 1.0) - a);
    if (dev < identity.worst_slack) {
      identity.worst_slack = dev;
      if (dev < -kTol && identity.passed) {
        identity.passed = false;
        identity.witness = format_triple("a", a, 0, 0, 1);
      }
    }

    dev = -std::fabs(norm(a, b) - norm(b, a));
    if (dev < commut.worst_slack) {
      commut.worst_slack = dev;
      if (dev < -kTol && commut.passed) {
        commut.passed = false;
        commut.witness = format_triple("ab", a, b, 0, 2);
      }
    }

    dev = -std::fabs(norm(a, norm(b, c)) - norm(norm(a, b), c));
    if (dev < assoc.worst_slack) {
      assoc.worst_slack = dev;
      if (dev < -kTol && assoc.passed) {
        assoc.passed = false;
        assoc.witness = format_triple("abc", a, b, c, 3);
      }
    }

    // a <= b and c <= d must give norm(a,c) <= norm(b,d)
    double lo1 = std::min(a, b), hi1 = std::max(a, b);
    double lo2 = std::min(c, d), hi2 = std::max(c, d);
    dev = norm(hi1, hi2) - norm(lo1, lo2);
    if (dev < mono.worst_slack) {
      mono.worst_slack = dev;
      if (dev < -kTol && mono.passed) {
        mono.passed = false;
        mono.witness = format_triple("abc", lo1, hi1, lo2, 3) + ", d=" +
                       std::to_string(hi2);
      }
    }
  }

  report.checks = {identity, commut, assoc, mono};
  return report;
}

VerificationReport verify_fclass(const FClassFn& f, int grid) {
  if (grid < 4) throw std::invalid_argument("verify_fclass: grid < 4");
  VerificationReport report;

  AxiomCheck mono{"strict_monotonicity", true,
                  std::numeric_limits<double>::infinity(), ""};
  double prev = f(0.0);
  for (int i = 1; i < grid; ++i) {
    double x = static_cast<double>(i) / grid;
    double fx = f(x);
    double diff = fx - prev;
    if (diff < mono.worst_slack) {
      mono.worst_slack = diff;
      if (diff <= 0.0 && mono.passed) {
        mono.passed = false;
        std::ostringstream os;
        os.precision(17);
        os << "f(" << (static_cast<double>(i - 1) / grid) << ")=" << prev
           << " !< f(" << x << ")=" << fx;
        mono.witness = os.str();
      }
    }
    prev = fx;
  }

  AxiomCheck unit{"unit_value", true, 0.0, ""};
  double f1 = f(1.0);
  unit.worst_slack = -std::fabs(f1 - 1.0);
  if (f1 != 1.0) {
    unit.passed = false;
    std::ostringstream os;
    os.precision(17);
    os << "f(1)=" << f1;
    unit.witness = os.str();
  }

  // Sequence condition surrogate on t_n = 1 - 1/n: values must be
  // nondecreasing, and probing x = 1 - 2^-k up to k = 52 must push the left
  // limit estimate above 1 - 1e-6. A sampler cannot decide the limit; this
  // catches a trapped supremum such as f jumping at 1.
  AxiomCheck seq{"sequence_condition", true,
                 std::numeric_limits<double>::infinity(), ""};
  double prev_fam = f(1.0 - 1.0 / 2.0);
  for (int n = 3; n <= grid; ++n) {
    double fn = f(1.0 - 1.0 / n);
    double diff = fn - prev_fam;
    if (diff < 0.0 && seq.passed) {
      seq.passed = false;
      std::ostringstream os;
      os << "family not monotone at n=" << n;
      seq.witness = os.str();
    }
    prev_fam = fn;
  }
  double limit_estimate = prev_fam;
  for (int k = 1; k <= 52; ++k)
    limit_estimate = std::max(limit_estimate, f(1.0 - std::ldexp(1.0, -k)));
  seq.worst_slack = limit_estimate - (1.0 - 1e-6);
  if (seq.worst_slack < 0.0 && seq.passed) {
    seq.passed = false;
    std::ostringstream os;
    os.precision(17);
    os << "left limit estimate " << limit_estimate << " stays below 1";
    seq.witness = os.str();
  }

  report.checks = {mono, unit, seq};
  return report;
}

VerificationReport verify_psi(const PsiFn& psi, int grid) {
  if (grid < 4) throw std::invalid_argument("verify_psi: grid < 4");
  VerificationReport report;

  AxiomCheck mono{"nondecreasing", true,
                  std::numeric_limits<double>::infinity(), ""};
  constexpr double kTol = 1e-12;
  double prev = psi(0.0);
  for (int i = 1; i <= grid; ++i) {
    double t = static_cast<double>(i) / grid;
    double pt = psi(t);
    double diff = pt - prev;
    if (diff < mono.worst_slack) {
      mono.worst_slack = diff;
      if (diff < -kTol && mono.passed) {
        mono.passed = false;
        std::ostringstream os;
        os.precision(17);
        os << "psi decreases at t=" << t;
        mono.witness = os.str();
      }
    }
    prev = pt;
  }

  AxiomCheck dom{"interior_dominance", true,
                 std::numeric_limits<double>::infinity(), ""};
  for (int i = 1; i < grid; ++i) {
    double t = static_cast<double>(i) / grid;
    double margin = psi(t) - t;
    if (margin < dom.worst_slack) {
      dom.worst_slack = margin;
      if (margin <= 0.0 && dom.passed) {
        dom.passed = false;
        std::ostringstream os;
        os.precision(17);
        os << "psi(" << t << ")=" << psi(t) << " <= t";
        dom.witness = os.str();
      }
    }
  }

  AxiomCheck unit{"unit_value", true, 0.0, ""};
  double p1 = psi(1.0);
  unit.worst_slack = -std::fabs(p1 - 1.0);
  if (p1 != 1.0) {
    unit.passed = false;
    std::ostringstream os;
    os.precision(17);
    os << "psi(1)=" << p1;
    unit.witness = os.str();
  }

  report.checks = {mono, dom, unit};
  return report;
}

double psi_iterate(const PsiFn& psi, double t0, long n) {
  if (!(t0 > 0.0 && t0 < 1.0))
    throw std::domain_error("psi_iterate: t0 must lie in (0,1)");
  if (n < 0) throw std::invalid_argument("psi_iterate: n < 0");
  double t = t0;
  for (long i = 0; i < n; ++i) t = psi(t);
  return t;
}

std::optional<long> psi_steps_to_reach(const PsiFn& psi, double t0,
                                       double threshold, long max_iter) {
  if (!(t0 > 0.0 && t0 < 1.0))
    throw std::domain_error("psi_steps_to_reach: t0 must lie in (0,1)");
  double t = t0;
  if (t > threshold) return 0;
  for (long i = 1; i <= max_iter; ++i) {
    t = psi(t);
    if (t > threshold) return i;
  }
  return std::nullopt;
}

}  // namespace fuzzyf
