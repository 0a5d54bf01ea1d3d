#pragma once

#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

namespace heavenly {

struct CheckResult {
  std::string check;
  std::string case_id;
  nlohmann::json params = nlohmann::json::object();
  double defect = 0.0;
  double tolerance = 0.0;
  bool pass = false;
  std::optional<int> sign;  // resolved global sign, where one was fitted
};

// pass is derived, never set by hand
CheckResult make_check(const std::string& check, const std::string& case_id, double defect,
                       double tolerance);

struct VerificationReport {
  std::string command;
  std::vector<CheckResult> checks;
};

// canonical order: check name, then case, then serialized params; report
// content is independent of whatever order the checks finished in
void sort_canonical(std::vector<CheckResult>& checks);

bool all_pass(const std::vector<CheckResult>& checks);

nlohmann::json to_json(const VerificationReport& report, bool with_timestamp = true);

// empty path or "-" prints to stdout
void write_report(const VerificationReport& report, const std::string& path);

}  // namespace heavenly
