#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "fuzzyf/core_functions.hpp"
#include "fuzzyf/rng.hpp"

using namespace fuzzyf;

TEST_CASE("built-in t-norm values") {
  TNorm tmin = TNorm::minimum();
  TNorm tprod = TNorm::product();
  TNorm tluk = TNorm::lukasiewicz();

  CHECK(tmin(0.3, 0.7) == 0.3);
  CHECK(tprod(0.5, 0.5) == 0.25);
  CHECK(tluk(0.5, 0.5) == 0.0);  // max{0, 0.5+0.5-1}
  CHECK(tluk(0.9, 0.8) == doctest::Approx(0.7).epsilon(1e-15));
  CHECK(tluk(0.2, 0.3) == 0.0);
}

TEST_CASE("verify_tnorm passes the three standard norms") {
  for (const TNorm& n :
       {TNorm::minimum(), TNorm::product(), TNorm::lukasiewicz()}) {
    VerificationReport r = verify_tnorm(n, 10000, 42);
    CHECK(r.all_passed());
    for (const auto& c : r.checks) CHECK(c.worst_slack >= -1e-12);
  }
}

TEST_CASE("verify_tnorm rejects the arithmetic mean") {
  // mean(a,1) = (a+1)/2 != a except at a = 1
  TNorm mean = TNorm::custom("mean", [](double a, double b) {
    return (a + b) / 2.0;
  });
  VerificationReport r = verify_tnorm(mean, 1000, 42);
  CHECK_FALSE(r.all_passed());
  const AxiomCheck* id = r.find("identity");
  REQUIRE(id != nullptr);
  CHECK_FALSE(id->passed);
  // corner a = 0 is probed deterministically: mean(0,1) = 0.5, deviation 0.5
  CHECK(id->worst_slack == doctest::Approx(-0.5).epsilon(1e-15));
  CHECK_FALSE(id->witness.empty());
}

TEST_CASE("verify_tnorm is deterministic for a fixed seed") {
  VerificationReport a = verify_tnorm(TNorm::lukasiewicz(), 5000, 7);
  VerificationReport b = verify_tnorm(TNorm::lukasiewicz(), 5000, 7);
  REQUIRE(a.checks.size() == b.checks.size());
  for (std::size_t i = 0; i < a.checks.size(); ++i) {
    CHECK(a.checks[i].worst_slack == b.checks[i].worst_slack);
    CHECK(a.checks[i].passed == b.checks[i].passed);
  }
}

TEST_CASE("verify_fclass accepts powers and the square root") {
  CHECK(verify_fclass(FClassFn::power(1), 200).all_passed());
  CHECK(verify_fclass(FClassFn::power(2), 200).all_passed());
  CHECK(verify_fclass(FClassFn::power(7), 200).all_passed());
  CHECK(verify_fclass(FClassFn::sqrt_root(), 200).all_passed());
  // large grid as well; the sequence check must stay scale-free
  CHECK(verify_fclass(FClassFn::power(5), 10000).all_passed());
}

TEST_CASE("verify_fclass catches a broken unit value") {
  FClassFn broken = FClassFn::custom("broken_at_1", [](double x) {
    return x < 1.0 ? x : 0.9;
  });
  VerificationReport r = verify_fclass(broken, 200);
  const AxiomCheck* unit = r.find("unit_value");
  REQUIRE(unit != nullptr);
  CHECK_FALSE(unit->passed);
  CHECK(unit->worst_slack == doctest::Approx(-0.1).epsilon(1e-12));
}

TEST_CASE("verify_fclass catches a trapped supremum") {
  // strictly increasing on [0,1), f(1) = 1, but the left limit is 1/2
  FClassFn jump = FClassFn::custom("jump", [](double x) {
    return x < 1.0 ? x / 2.0 : 1.0;
  });
  VerificationReport r = verify_fclass(jump, 200);
  const AxiomCheck* seq = r.find("sequence_condition");
  REQUIRE(seq != nullptr);
  CHECK_FALSE(seq->passed);
  CHECK(r.find("strict_monotonicity")->passed);
  CHECK(r.find("unit_value")->passed);
}

TEST_CASE("verify_fclass rejects a non-increasing map") {
  FClassFn flat = FClassFn::custom("flat", [](double) { return 1.0; });
  VerificationReport r = verify_fclass(flat, 100);
  CHECK_FALSE(r.find("strict_monotonicity")->passed);
}

TEST_CASE("verify_psi accepts the comparison functions in use") {
  CHECK(verify_psi(PsiFn::sqrt_root(), 500).all_passed());
  for (double k : {0.1, 0.5, 0.9})
    CHECK(verify_psi(PsiFn::rational(k), 500).all_passed());
  CHECK(verify_psi(PsiFn::power_recip(16.0), 500).all_passed());
  CHECK(verify_psi(PsiFn::power_recip(16.0 / (0.25 * 0.25)), 500).all_passed());
}

TEST_CASE("verify_psi rejects the identity") {
  PsiFn id = PsiFn::custom("identity", [](double t) { return t; });
  VerificationReport r = verify_psi(id, 200);
  const AxiomCheck* dom = r.find("interior_dominance");
  REQUIRE(dom != nullptr);
  CHECK_FALSE(dom->passed);
  CHECK(dom->worst_slack <= 0.0);
}

TEST_CASE("rational psi closed-form values") {
  PsiFn psi = PsiFn::rational(0.5);
  // oracle: t/(t + k(1-t)) at t = 0.5, k = 0.5 -> 0.5/0.75 = 2/3
  CHECK(psi(0.5) == doctest::Approx(0.6666666666666666).epsilon(1e-15));
  CHECK(psi(1.0) == 1.0);
  CHECK(psi(0.0) == 0.0);
}

TEST_CASE("psi_iterate composes") {
  PsiFn sq = PsiFn::sqrt_root();
  // oracle: two square roots are the fourth root, 0.25^(1/4)
  const double oracle = std::pow(0.25, 0.25);
  CHECK(oracle == doctest::Approx(0.7071067811865476).epsilon(1e-16));
  CHECK(psi_iterate(sq, 0.25, 2) == doctest::Approx(oracle).epsilon(1e-15));
  CHECK(psi_iterate(sq, 0.25, 0) == 0.25);

  // closed form for the rational family: psi^n(t) = t / (t + k^n (1-t))
  PsiFn rat = PsiFn::rational(0.5);
  const double t0 = 0.3;
  const double kn = std::pow(0.5, 6);
  const double closed = t0 / (t0 + kn * (1.0 - t0));
  CHECK(psi_iterate(rat, t0, 6) == doctest::Approx(closed).epsilon(1e-13));
}

TEST_CASE("psi_iterate domain errors") {
  PsiFn sq = PsiFn::sqrt_root();
  CHECK_THROWS_AS(psi_iterate(sq, 0.0, 1), std::domain_error);
  CHECK_THROWS_AS(psi_iterate(sq, 1.0, 1), std::domain_error);
  CHECK_THROWS_AS(psi_iterate(sq, -0.5, 1), std::domain_error);
  CHECK_THROWS_AS(psi_iterate(sq, 0.5, -1), std::invalid_argument);
}

TEST_CASE("psi iterates climb to 1 from any start") {
  // 2^-20 depresses the exponent enough that sqrt reaches 1 - 1e-6 from 0.5:
  // 0.5^(2^-20) = 1 - 6.6e-7 (frozen oracle)
  CHECK(std::pow(0.5, std::ldexp(1.0, -20)) > 1.0 - 1e-6);

  for (const PsiFn& psi : {PsiFn::sqrt_root(), PsiFn::rational(0.1),
                           PsiFn::rational(0.5), PsiFn::rational(0.9)}) {
    for (double t0 = 0.1; t0 < 0.95; t0 += 0.1) {
      auto steps = psi_steps_to_reach(psi, t0, 1.0 - 1e-6, 1000000);
      REQUIRE(steps.has_value());
      CHECK(*steps <= 1000000);
      // monotone nondecreasing along the orbit
      double prev = t0;
      for (long n = 1; n <= std::min<long>(*steps, 64); ++n) {
        double cur = psi_iterate(psi, t0, n);
        CHECK(cur >= prev);
        prev = cur;
      }
    }
  }
}

TEST_CASE("parameter validation on constructors") {
  CHECK_THROWS_AS(PsiFn::rational(0.0), std::domain_error);
  CHECK_THROWS_AS(PsiFn::rational(1.0), std::domain_error);
  CHECK_THROWS_AS(PsiFn::power_recip(1.0), std::domain_error);
  CHECK_THROWS_AS(FClassFn::power(0), std::domain_error);
}
