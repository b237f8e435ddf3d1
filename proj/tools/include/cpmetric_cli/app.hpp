#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace cpmetric::cli {

enum ExitCode : int {
  kOk = 0,
  kMalformedInput = 1,
  kInvariantViolation = 2,
  kCertificationFailure = 3,
  kSuiteFailure = 4,
};

struct SuiteResult;

/// kOk when the suite has no failures, kSuiteFailure otherwise.
int suite_exit_code(const SuiteResult& result);

/// CPMETRIC_SEED when set, otherwise 7. Throws InputError on a malformed value.
std::uint64_t default_seed();

/// Runs one command line (without the program name). Text goes to `out`,
/// diagnostics to `err`; the JSON report goes to the --out path.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace cpmetric::cli
