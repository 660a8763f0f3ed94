#ifndef PDMLAYER_REPORT_HPP
#define PDMLAYER_REPORT_HPP

#include <string>
#include <vector>

namespace pdm {

struct IdentityResult {
  std::string identity;
  bool pass{false};
  std::size_t residual_terms{0};
  std::string decided_by{"symbolic"};
};

struct VerificationReport {
  std::vector<IdentityResult> entries;

  bool all_pass() const {
    for (const auto& e : entries)
      if (!e.pass) return false;
    return true;
  }
  const IdentityResult* first_failure() const {
    for (const auto& e : entries)
      if (!e.pass) return &e;
    return nullptr;
  }
  void add(std::string name, bool pass, std::size_t residual_terms = 0,
           std::string decided_by = "symbolic") {
    entries.push_back({std::move(name), pass, residual_terms, std::move(decided_by)});
  }
};

/// Serializes to the documented schema:
/// [{"identity": ..., "status": "pass"|"fail", "residual_terms": n}, ...]
std::string report_to_json(const VerificationReport& rep);

}  // namespace pdm

#endif
