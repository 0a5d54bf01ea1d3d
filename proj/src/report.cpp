#include "heavenly/report.hpp"

#include <algorithm>
#include <ctime>
#include <fstream>
#include <iostream>
#include <stdexcept>
#include <tuple>

namespace heavenly {

CheckResult make_check(const std::string& check, const std::string& case_id, double defect,
                       double tolerance) {
  CheckResult c;
  c.check = check;
  c.case_id = case_id;
  c.defect = defect;
  c.tolerance = tolerance;
  c.pass = defect <= tolerance;  // NaN sorts itself into fail
  return c;
}

void sort_canonical(std::vector<CheckResult>& checks) {
  std::sort(checks.begin(), checks.end(), [](const CheckResult& a, const CheckResult& b) {
    return std::make_tuple(a.check, a.case_id, a.params.dump()) <
           std::make_tuple(b.check, b.case_id, b.params.dump());
  });
}

bool all_pass(const std::vector<CheckResult>& checks) {
  for (const auto& c : checks)
    if (!c.pass) return false;
  return !checks.empty();
}

namespace {

std::string timestamp_utc() {
  std::time_t now = std::time(nullptr);
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

}  // namespace

nlohmann::json to_json(const VerificationReport& report, bool with_timestamp) {
  nlohmann::json out;
  out["command"] = report.command;
  if (with_timestamp) out["timestamp"] = timestamp_utc();
  auto arr = nlohmann::json::array();
  for (const auto& c : report.checks) {
    nlohmann::json jc = {{"check", c.check},   {"case", c.case_id},
                         {"params", c.params}, {"defect", c.defect},
                         {"tolerance", c.tolerance}, {"pass", c.pass}};
    if (c.sign) jc["sign"] = *c.sign;
    arr.push_back(std::move(jc));
  }
  out["checks"] = std::move(arr);
  return out;
}

void write_report(const VerificationReport& report, const std::string& path) {
  std::string text = to_json(report).dump(2) + "\n";
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream f(path);
  if (!f) throw std::runtime_error("cannot open report path " + path);
  f << text;
}

}  // namespace heavenly
