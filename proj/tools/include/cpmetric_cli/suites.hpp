#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "cpmetric/random.hpp"
#include "cpmetric/states.hpp"

namespace cpmetric::cli {

struct SuiteFailure {
  std::uint64_t trial = 0;
  std::uint64_t seed = 0;
  std::string assertion;
  double lhs = 0.0;
  double rhs = 0.0;
  double tolerance = 0.0;
};

struct SuiteResult {
  std::string suite;
  std::uint64_t seed = 0;
  std::size_t trials = 0;
  std::size_t assertions = 0;
  std::vector<SuiteFailure> failures;
  double max_deviation = 0.0;  ///< largest |lhs - rhs| on the wrong side of a relation
  double wall_seconds = 0.0;   ///< not part of emitted documents

  bool passed() const noexcept { return failures.empty(); }
};

/// Collects the assertions of one trial.
class TrialRecorder {
 public:
  TrialRecorder(std::uint64_t seed, std::uint64_t trial) : seed_(seed), trial_(trial) {}

  /// |lhs - rhs| <= tol
  void near(const std::string& what, double lhs, double rhs, double tol);
  /// lhs <= rhs + tol
  void at_most(const std::string& what, double lhs, double rhs, double tol);
  /// lhs > rhs
  void strictly_greater(const std::string& what, double lhs, double rhs);
  void fail(const std::string& what, double lhs = 0.0, double rhs = 0.0, double tol = 0.0);

  std::uint64_t seed() const noexcept { return seed_; }
  std::uint64_t trial() const noexcept { return trial_; }
  const std::vector<SuiteFailure>& failures() const noexcept { return failures_; }
  std::size_t assertions() const noexcept { return assertions_; }
  double max_deviation() const noexcept { return max_deviation_; }

 private:
  void record(bool ok, const std::string& what, double lhs, double rhs, double tol, double deviation);

  std::uint64_t seed_;
  std::uint64_t trial_;
  std::size_t assertions_ = 0;
  double max_deviation_ = 0.0;
  std::vector<SuiteFailure> failures_;
};

/// Brute-force Uhlmann overlap: ascent of Re tr(sqrt(rho) sqrt(sigma) U) over
/// unitaries from `restarts` random starts. Used as an oracle for sqrt_fidelity.
double purification_overlap_search(const DensityState& rho, const DensityState& sigma, Rng& rng,
                                   std::size_t restarts);

using TrialFunction = std::function<void(TrialRecorder&)>;

struct SuiteSpec {
  std::string name;
  std::string description;
  std::size_t default_trials = 0;
  TrialFunction trial;
};

const std::vector<SuiteSpec>& suite_registry();
/// nullptr when no suite has that name.
const SuiteSpec* find_suite(const std::string& name);

/// Runs trials 0..trials-1 on `jobs` worker threads. Each trial draws from
/// trial_rng(seed, trial), so the result does not depend on `jobs`.
SuiteResult run_suite(const SuiteSpec& suite, std::uint64_t seed, std::size_t trials, std::size_t jobs = 1);

}  // namespace cpmetric::cli
