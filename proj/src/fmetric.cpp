#include "fuzzyf/fmetric.hpp"

#include <memory>
#include <stdexcept>
#include <utility>

namespace fuzzyf {

double canonical_metric(double x, double y, double t) {
  if (!(t > 0.0)) throw std::domain_error("canonical_metric: t must be > 0");
  const double d = x - y;
  return fuzzy_pow(t / (t + 1.0), d * d);
}

FMetricConfig<double> canonical_config() {
  FMetricConfig<double> cfg;
  cfg.metric = [](const double& x, const double& y, double t) {
    return canonical_metric(x, y, t);
  };
  cfg.f = FClassFn::power(2);
  cfg.alpha = 0.5;
  cfg.star = TNorm::product();
  cfg.domain = "R";
  return cfg;
}

FMetricConfig<double> abs_exponent_config() {
  FMetricConfig<double> cfg;
  cfg.metric = [](const double& x, const double& y, double t) {
    if (!(t > 0.0)) throw std::domain_error("abs metric: t must be > 0");
    return fuzzy_pow(t / (t + 1.0), std::fabs(x - y));
  };
  cfg.f = FClassFn::identity();
  cfg.alpha = 1.0;
  cfg.star = TNorm::product();
  cfg.domain = "R";
  return cfg;
}

PointSampler<double> interval_sampler(double lo, double hi) {
  if (!(lo < hi)) throw std::invalid_argument("interval_sampler: lo < hi required");
  return [lo, hi](SplitMix64& rng) { return rng.uniform(lo, hi); };
}

PointSampler<double> finite_sampler(std::vector<double> values) {
  if (values.empty())
    throw std::invalid_argument("finite_sampler: empty value set");
  auto shared = std::make_shared<std::vector<double>>(std::move(values));
  return [shared](SplitMix64& rng) {
    return (*shared)[static_cast<std::size_t>(
        rng.uniform_int(0, static_cast<int>(shared->size()) - 1))];
  };
}

}  // namespace fuzzyf
