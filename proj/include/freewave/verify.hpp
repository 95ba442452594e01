#pragma once

// Named verification suites behind `freewave verify`. Each suite evaluates
// one property of the lifted states and compares a scalar metric with a fixed
// threshold.

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "freewave/analysis.hpp"

namespace freewave::verify {

struct SuiteOptions {
  OscillatorParams params;
  int n = 2;
  int l = 1;
  std::vector<double> taus;  // empty: suite default
  int refinements = 4;
  std::vector<int> n_values;  // semiclassical suite; empty: {5, 10, 20, 40, 60}
};

struct SuiteOutcome {
  std::string suite;
  bool pass = false;
  double metric = 0.0;
  double threshold = 0.0;
  std::optional<analysis::ResidualReport> residuals;  // residual suites only
  std::map<std::string, double> details;
};

const std::vector<std::string>& suite_names();

// Throws std::invalid_argument for an unknown suite; numerical failures
// propagate as the library's exception types.
SuiteOutcome run_suite(const std::string& suite, const SuiteOptions& options);

}  // namespace freewave::verify
