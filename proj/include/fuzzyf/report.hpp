#pragma once

#include <string>
#include <vector>

#include <json.hpp>

namespace fuzzyf {

// Outcome of a single axiom check. worst_slack is the signed margin by which
// the axiom held: the minimum over all samples for inequality axioms, minus
// the largest deviation for equality axioms. Negative beyond tolerance means
// the check failed and witness carries a counterexample.
struct AxiomCheck {
  std::string axiom;
  bool passed = false;
  double worst_slack = 0.0;
  std::string witness;
};

struct VerificationReport {
  std::vector<AxiomCheck> checks;

  bool all_passed() const;
  const AxiomCheck* find(const std::string& axiom) const;

  // Array of {axiom, status, worst_slack, witness} objects.
  nlohmann::json to_json() const;
  std::string to_text() const;
};

}  // namespace fuzzyf
