#include "fuzzyf/report.hpp"

#include <sstream>

namespace fuzzyf {

bool VerificationReport::all_passed() const {
  for (const auto& c : checks)
    if (!c.passed) return false;
  return true;
}

const AxiomCheck* VerificationReport::find(const std::string& axiom) const {
  for (const auto& c : checks)
    if (c.axiom == axiom) return &c;
  return nullptr;
}

nlohmann::json VerificationReport::to_json() const {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& c : checks) {
    arr.push_back({{"axiom", c.axiom},
                   {"status", c.passed ? "pass" : "fail"},
                   {"worst_slack", c.worst_slack},
                   {"witness", c.witness}});
  }
  return arr;
}

std::string VerificationReport::to_text() const {
  std::ostringstream os;
  for (const auto& c : checks) {
    os << c.axiom << ": " << (c.passed ? "pass" : "FAIL")
       << " (worst slack " << c.worst_slack << ")";
    if (!c.witness.empty()) os << " witness: " << c.witness;
    os << '\n';
  }
  return os.str();
}

}  // namespace fuzzyf
