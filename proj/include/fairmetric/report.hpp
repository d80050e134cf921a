#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"

namespace fairmetric {

// One named property check inside a suite.
struct CheckResult {
  std::string name;
  bool passed = true;
  long trials = 0;
  long failures = 0;
  double worst_error = 0.0;
  std::string note;  // first failure detail, or a skip reason
};

struct SuiteReport {
  std::string suite;
  std::uint64_t seed = 0;
  double tolerance = 0.0;
  std::vector<CheckResult> checks;

  bool all_passed() const {
    for (const auto& c : checks) {
      if (!c.passed) return false;
    }
    return true;
  }

  nlohmann::ordered_json to_json() const {
    nlohmann::ordered_json j;
    j["suite"] = suite;
    j["seed"] = seed;
    j["tolerance"] = tolerance;
    j["passed"] = all_passed();
    auto arr = nlohmann::ordered_json::array();
    for (const auto& c : checks) {
      nlohmann::ordered_json e;
      e["name"] = c.name;
      e["passed"] = c.passed;
      e["trials"] = c.trials;
      e["failures"] = c.failures;
      e["worst_error"] = c.worst_error;
      if (!c.note.empty()) e["note"] = c.note;
      arr.push_back(e);
    }
    j["checks"] = arr;
    return j;
  }
};

}  // namespace fairmetric
