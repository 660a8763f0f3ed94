#include "pdmlayer/report.hpp"

#include <json.hpp>

namespace pdm {

std::string report_to_json(const VerificationReport& rep) {
  nlohmann::ordered_json out = nlohmann::ordered_json::array();
  for (const auto& e : rep.entries) {
    out.push_back({{"identity", e.identity},
                   {"status", e.pass ? "pass" : "fail"},
                   {"residual_terms", e.residual_terms},
                   {"decided_by", e.decided_by}});
  }
  return out.dump(2) + "\n";
}

}  // namespace pdm
