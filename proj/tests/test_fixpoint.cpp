#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "fuzzyf/fixpoint.hpp"

using namespace fuzzyf;

namespace {

const std::vector<double> kGrid{0.5, 1.0, 2.0};

std::vector<double> evens() {
  std::vector<double> v;
  for (int k = 0; k <= 100; k += 2) v.push_back(static_cast<double>(k));
  return v;
}

}  // namespace

TEST_CASE("x/6 is a sqrt-psi contraction on sampled pairs") {
  auto cfg = canonical_config();
  std::function<double(const double&)> map = [](const double& x) {
    return x / 6.0;
  };
  auto rep = verify_contraction(cfg, map, PsiFn::sqrt_root(),
                                interval_sampler(-5.0, 5.0), 10000, kGrid, 42);
  CHECK(rep.sampled_pairs > 0);
  CHECK(rep.min_margin >= 0.0);
  CHECK_FALSE(rep.witness.has_value());
}

TEST_CASE("10x on the even lattice fails the contraction inequality") {
  auto cfg = canonical_config();
  std::function<double(const double&)> map = [](const double& x) {
    return 10.0 * x;
  };
  auto rep = verify_contraction(cfg, map, PsiFn::sqrt_root(),
                                finite_sampler(evens()), 1000, kGrid, 42);
  CHECK(rep.min_margin < 0.0);
  REQUIRE(rep.witness.has_value());
  const auto& w = *rep.witness;
  CHECK(w.grade_mapped < w.psi_value);
  CHECK(w.grade_pair > 0.0);
  CHECK(w.grade_pair < 1.0);
  // 0 is still a fixed point of the map itself
  CHECK(1.0 - cfg.metric(0.0, map(0.0), 1.0) == 0.0);
}

TEST_CASE("identity map cannot dominate a strictly expanding psi") {
  auto cfg = canonical_config();
  std::function<double(const double&)> map = [](const double& x) { return x; };
  auto rep = verify_contraction(cfg, map, PsiFn::rational(0.5),
                                interval_sampler(-5.0, 5.0), 200, kGrid, 7);
  CHECK(rep.min_margin < 0.0);
  CHECK(rep.witness.has_value());
}

TEST_CASE("contraction scan skips guarded-out pairs") {
  auto cfg = canonical_config();
  std::function<double(const double&)> map = [](const double& x) { return x; };
  // single-point domain: every pair has grade exactly 1
  auto rep = verify_contraction(cfg, map, PsiFn::sqrt_root(),
                                finite_sampler({3.0}), 100, kGrid, 1);
  CHECK(rep.sampled_pairs == 0);
  CHECK(rep.min_margin == std::numeric_limits<double>::infinity());
  CHECK_FALSE(rep.witness.has_value());
}

TEST_CASE("contraction scan: parallel matches serial bitwise") {
  auto cfg = canonical_config();
  std::function<double(const double&)> map = [](const double& x) {
    return 10.0 * x;
  };
  auto s = verify_contraction(cfg, map, PsiFn::sqrt_root(),
                              finite_sampler(evens()), 2000, kGrid, 5,
                              Exec::serial);
  auto p = verify_contraction(cfg, map, PsiFn::sqrt_root(),
                              finite_sampler(evens()), 2000, kGrid, 5,
                              Exec::parallel);
  CHECK(s.sampled_pairs == p.sampled_pairs);
  CHECK(s.min_margin == p.min_margin);
  REQUIRE(s.witness.has_value());
  REQUIRE(p.witness.has_value());
  CHECK(s.witness->x == p.witness->x);
  CHECK(s.witness->y == p.witness->y);
  CHECK(s.witness->t == p.witness->t);
  CHECK(s.witness->grade_mapped == p.witness->grade_mapped);
}

TEST_CASE("contraction scan is deterministic for a fixed seed") {
  auto cfg = canonical_config();
  std::function<double(const double&)> map = [](const double& x) {
    return x / 6.0;
  };
  auto a = verify_contraction(cfg, map, PsiFn::sqrt_root(),
                              interval_sampler(-5.0, 5.0), 3000, kGrid, 11);
  auto b = verify_contraction(cfg, map, PsiFn::sqrt_root(),
                              interval_sampler(-5.0, 5.0), 3000, kGrid, 11);
  CHECK(a.min_margin == b.min_margin);
  CHECK(a.sampled_pairs == b.sampled_pairs);
}

TEST_CASE("contraction scan input validation") {
  auto cfg = canonical_config();
  std::function<double(const double&)> map = [](const double& x) { return x; };
  CHECK_THROWS_AS(verify_contraction(cfg, map, PsiFn::sqrt_root(),
                                     interval_sampler(-1.0, 1.0), 0, kGrid),
                  std::invalid_argument);
  CHECK_THROWS_AS(verify_contraction(cfg, map, PsiFn::sqrt_root(),
                                     interval_sampler(-1.0, 1.0), 10, {}),
                  std::invalid_argument);
  CHECK_THROWS_AS(verify_contraction(cfg, map, PsiFn::sqrt_root(),
                                     interval_sampler(-1.0, 1.0), 10, {0.0}),
                  std::invalid_argument);
}

TEST_CASE("picard orbit of x/6 contracts to zero") {
  auto cfg = canonical_config();
  std::function<double(const double&)> map = [](const double& x) {
    return x / 6.0;
  };
  PicardOptions opt;
  opt.t_grid = {1.0};
  opt.audit_psi = PsiFn::sqrt_root();
  auto trace = picard_solve(cfg, map, 5.0, opt);
  CHECK(trace.converged);
  CHECK(trace.iterations <= 16);
  REQUIRE(trace.fixed_point.has_value());
  // x_n = 5 / 6^n
  CHECK(*trace.fixed_point ==
        doctest::Approx(5.0 / std::pow(6.0, trace.iterations)).epsilon(1e-12));
  // step gaps shrink monotonically on this orbit
  for (std::size_t n = 1; n < trace.step_gaps.size(); ++n)
    CHECK(trace.step_gaps[n][0] <= trace.step_gaps[n - 1][0]);
  // residual at the reported fixed point
  const double u = *trace.fixed_point;
  for (double t : opt.t_grid) CHECK(1.0 - cfg.metric(u, map(u), t) < 10.0 * opt.tol);
}

TEST_CASE("picard from a fixed start returns immediately") {
  auto cfg = canonical_config();
  std::function<double(const double&)> map = [](const double& x) {
    return x / 6.0;
  };
  auto trace = picard_solve(cfg, map, 0.0);
  CHECK(trace.converged);
  CHECK(trace.iterations == 1);
  REQUIRE(trace.fixed_point.has_value());
  CHECK(*trace.fixed_point == 0.0);
}

TEST_CASE("picard reports divergence honestly") {
  auto cfg = canonical_config();
  std::function<double(const double&)> map = [](const double& x) {
    return 10.0 * x;
  };
  PicardOptions opt;
  opt.max_iter = 10;
  auto trace = picard_solve(cfg, map, 2.0, opt);
  CHECK_FALSE(trace.converged);
  CHECK(trace.iterations == 10);
  CHECK_FALSE(trace.fixed_point.has_value());
  CHECK(trace.iterates.size() == 11);
  // last recorded gap is still essentially 1
  CHECK(trace.step_gaps.back()[0] > 0.99);
}

TEST_CASE("psi audit bound holds along the x/6 orbit") {
  auto cfg = canonical_config();
  std::function<double(const double&)> map = [](const double& x) {
    return x / 6.0;
  };
  PicardOptions opt;
  opt.audit_psi = PsiFn::sqrt_root();
  auto trace = picard_solve(cfg, map, 5.0, opt);
  REQUIRE(trace.converged);
  REQUIRE(trace.psi_bounds.size() == trace.step_gaps.size());
  for (std::size_t n = 0; n < trace.step_gaps.size(); ++n)
    for (std::size_t k = 0; k < opt.t_grid.size(); ++k) {
      const double measured = 1.0 - trace.step_gaps[n][k];
      CHECK(measured >= trace.psi_bounds[n][k] - 1e-12);
    }
}

TEST_CASE("picard input validation") {
  auto cfg = canonical_config();
  std::function<double(const double&)> map = [](const double& x) { return x; };
  PicardOptions opt;
  opt.tol = 0.0;
  CHECK_THROWS_AS(picard_solve(cfg, map, 1.0, opt), std::invalid_argument);
  opt.tol = 1e-10;
  opt.max_iter = 0;
  CHECK_THROWS_AS(picard_solve(cfg, map, 1.0, opt), std::invalid_argument);
  opt.max_iter = 10;
  opt.t_grid = {};
  CHECK_THROWS_AS(picard_solve(cfg, map, 1.0, opt), std::invalid_argument);
  opt.t_grid = {-1.0};
  CHECK_THROWS_AS(picard_solve(cfg, map, 1.0, opt), std::invalid_argument);
}

TEST_CASE("uniqueness probe agrees across starts for x/6") {
  auto cfg = canonical_config();
  std::function<double(const double&)> map = [](const double& x) {
    return x / 6.0;
  };
  auto rep = uniqueness_probe(cfg, map, std::vector<double>{-5.0, 0.0, 5.0});
  CHECK(rep.all_converged);
  CHECK(rep.agreed);
  CHECK(rep.max_pairwise_gap < 1e-10);
}

TEST_CASE("uniqueness probe refuses to certify a diverging map") {
  auto cfg = canonical_config();
  std::function<double(const double&)> map = [](const double& x) {
    return 10.0 * x;
  };
  PicardOptions opt;
  opt.max_iter = 10;
  auto rep = uniqueness_probe(cfg, map, std::vector<double>{2.0, 4.0}, opt);
  CHECK_FALSE(rep.all_converged);
  CHECK_FALSE(rep.agreed);
  CHECK_THROWS_AS(uniqueness_probe(cfg, map, std::vector<double>{2.0}, opt),
                  std::invalid_argument);
}
