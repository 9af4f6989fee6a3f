#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <utility>

#include "fuzzyf/report.hpp"

namespace fuzzyf {

/// Continuous t-norm on [0,1]^2.
///
/// Built-in kinds evaluate through a direct switch so the common norms stay
/// exact (min and product introduce no rounding of their own).
class TNorm {
 public:
  enum class Kind { minimum, product, lukasiewicz, custom };

  static TNorm minimum() { return TNorm(Kind::minimum, "minimum", {}); }
  static TNorm product() { return TNorm(Kind::product, "product", {}); }
  static TNorm lukasiewicz() {
    return TNorm(Kind::lukasiewicz, "lukasiewicz", {});
  }
  static TNorm custom(std::string name,
                      std::function<double(double, double)> eval) {
    return TNorm(Kind::custom, std::move(name), std::move(eval));
  }

  double operator()(double a, double b) const {
    switch (kind_) {
      case Kind::minimum:
        return std::min(a, b);
      case Kind::product:
        return a * b;
      case Kind::lukasiewicz:
        return std::max(0.0, a + b - 1.0);
      case Kind::custom:
        break;
    }
    return fn_(a, b);
  }

  Kind kind() const { return kind_; }
  const std::string& name() const { return name_; }

 private:
  TNorm(Kind kind, std::string name, std::function<double(double, double)> fn)
      : kind_(kind), name_(std::move(name)), fn_(std::move(fn)) {}

  Kind kind_;
  std::string name_;
  std::function<double(double, double)> fn_;
};

/// Strictly increasing map [0,1] -> [0,1] with f(1) = 1 and the sequence
/// condition t_n -> 1 iff f(t_n) -> 1.
class FClassFn {
 public:
  enum class Kind { power, sqrt_root, custom };

  // x^n, n >= 1
  static FClassFn power(int n);
  static FClassFn sqrt_root() {
    return FClassFn(Kind::sqrt_root, "sqrt", 0, {});
  }
  static FClassFn custom(std::string name, std::function<double(double)> eval) {
    return FClassFn(Kind::custom, std::move(name), 0, std::move(eval));
  }
  static FClassFn identity() { return power(1); }

  double operator()(double x) const {
    switch (kind_) {
      case Kind::power:
        if (n_ == 1) return x;
        if (n_ == 2) return x * x;
        return std::pow(x, static_cast<double>(n_));
      case Kind::sqrt_root:
        return std::sqrt(x);
      case Kind::custom:
        break;
    }
    return fn_(x);
  }

  Kind kind() const { return kind_; }
  const std::string& name() const { return name_; }

 private:
  FClassFn(Kind kind, std::string name, int n, std::function<double(double)> fn)
      : kind_(kind), name_(std::move(name)), n_(n), fn_(std::move(fn)) {}

  Kind kind_;
  std::string name_;
  int n_;
  std::function<double(double)> fn_;
};

/// Comparison function for the contraction principle: continuous,
/// nondecreasing, psi(t) > t on (0,1), psi(1) = 1.
class PsiFn {
 public:
  enum class Kind { sqrt_root, rational, power_recip, custom };

  static PsiFn sqrt_root() { return PsiFn(Kind::sqrt_root, "sqrt", 0.0, {}); }

  // t / (t + k (1 - t)), k in (0,1); throws std::domain_error otherwise
  static PsiFn rational(double k);

  // t^{1/beta}, beta > 1; throws std::domain_error otherwise
  static PsiFn power_recip(double beta);

  static PsiFn custom(std::string name, std::function<double(double)> eval) {
    return PsiFn(Kind::custom, std::move(name), 0.0, std::move(eval));
  }

  double operator()(double t) const {
    switch (kind_) {
      case Kind::sqrt_root:
        return std::sqrt(t);
      case Kind::rational:
        return t / (t + param_ * (1.0 - t));
      case Kind::power_recip:
        return std::pow(t, param_);  // param_ = 1/beta
      case Kind::custom:
        break;
    }
    return fn_(t);
  }

  Kind kind() const { return kind_; }
  const std::string& name() const { return name_; }
  double param() const { return param_; }

 private:
  PsiFn(Kind kind, std::string name, double param,
        std::function<double(double)> fn)
      : kind_(kind), name_(std::move(name)), param_(param), fn_(std::move(fn)) {}

  Kind kind_;
  std::string name_;
  double param_;
  std::function<double(double)> fn_;
};

// Checks identity, commutativity, associativity and monotonicity on `samples`
// random tuples plus the unit-interval corners. Equality axioms use a 1e-12
// tolerance (Lukasiewicz re-associates sums); deterministic for a fixed seed.
VerificationReport verify_tnorm(const TNorm& norm, long samples = 10000,
                                std::uint64_t seed = 42);

// Strict monotonicity on the uniform grid i/grid (margin must be > 0
// exactly), f(1) = 1 exactly, and the sequence condition on the family
// t_n = 1 - 1/n, n = 2..grid. The limit itself is undecidable by sampling;
// the check probes f at 1 - 2^-k up to k = 52 and requires the left limit
// estimate to rise above 1 - 1e-6.
VerificationReport verify_fclass(const FClassFn& f, int grid = 10000);

// Nondecreasing on the grid i/grid, psi(t) > t strictly at interior grid
// points, psi(1) = 1 exactly.
VerificationReport verify_psi(const PsiFn& psi, int grid = 10000);

// n-fold composition psi^n(t0). Throws std::domain_error unless t0 in (0,1)
// and std::invalid_argument for n < 0.
double psi_iterate(const PsiFn& psi, double t0, long n);

// First n with psi^n(t0) > threshold, or nullopt if max_iter compositions do
// not reach it.
std::optional<long> psi_steps_to_reach(const PsiFn& psi, double t0,
                                       double threshold, long max_iter);

}  // namespace fuzzyf
