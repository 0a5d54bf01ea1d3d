#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "heavenly/report.hpp"

namespace heavenly::checks {

// bad flag combinations; the driver maps this to exit code 2
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Options {
  std::string case_id = "mp";
  int grid = 128;
  std::uint64_t seed = 7;
  std::optional<int> p;  // bracket power filter; unset sweeps all
  double dt = 1e-3;
  double T = 0.1;
  double y0 = 0.0;
  double t0 = 0.0;
  bool on_shell = false;
  bool dealias = false;
  std::string field;
  std::string init = "0.1*sin(x)";
  std::string flow = "mp-y";
  std::string csv;
};

// which: grid | loop | poisson
std::vector<CheckResult> verify_suite(const std::string& which, const Options& opt);
std::vector<CheckResult> bracket_table(const Options& opt);
std::vector<CheckResult> lax_check(const Options& opt);
std::vector<CheckResult> evolve_flow(const Options& opt);
std::vector<CheckResult> reconstruct(const Options& opt);
std::vector<CheckResult> casimir(const Options& opt);

nlohmann::json defaults_table();

}  // namespace heavenly::checks
