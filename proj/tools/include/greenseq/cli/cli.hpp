#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "greenseq/intmat.hpp"

namespace greenseq::cli {

enum ExitCode : int { kOk = 0, kDomainFailure = 1, kUsage = 2, kBudgetExhausted = 3 };

/// Dispatches one command line.  `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int run(int argc, const char* const* argv);

struct PropertyResult {
  std::string suite;
  std::string property;
  bool passed = true;
  bool skipped = false;
  std::size_t checked = 0;
  std::string counterexample;
};

struct VerifyOptions {
  /// One of suite_names(), or "all".
  std::string suite = "all";
  std::uint64_t seed = 42;
  /// Random mutation paths per matrix for path-based suites.
  std::size_t paths = 100;
  std::size_t path_length = 10;
  /// Length bound when enumerating reddening and greening sequences.
  std::size_t depth = 6;
  /// Length bound when enumerating maximal green sequences.
  std::size_t mgs_length = 9;
  /// Perturbs one G-matrix entry so that the duality suite must fail.
  bool inject_corruption = false;
};

struct VerifyReport {
  std::vector<PropertyResult> results;
  bool ok() const;
};

const std::vector<std::string>& suite_names();

/// Runs the selected property suites on each matrix.  Throws
/// std::invalid_argument for an unknown suite.
VerifyReport verify_suite(const std::vector<Matrix>& matrices, const VerifyOptions& options);
VerifyReport verify_suite(const Matrix& matrix, const VerifyOptions& options);

}  // namespace greenseq::cli
