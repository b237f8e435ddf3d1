// One line per acceptance criterion; exit status is nonzero if any fails.
#include <chrono>
#include <cstdio>
#include <exception>
#include <string>
#include <vector>

#include "cpmetric_cli/app.hpp"
#include "cpmetric_cli/suites.hpp"

using namespace cpmetric::cli;

namespace {

struct Criterion {
  int id;
  const char* title;
  const char* suite;
  std::size_t trials;
  double wall_limit;  // seconds, 0 = none
};

// Trial counts and wall-clock limits are the acceptance thresholds.
const std::vector<Criterion> kCriteria = {
    {1, "beta/gamma identity on random state pairs", "beta-gamma", 1000, 10.0},
    {2, "constructive gamma matches the closed form", "constructive", 100, 300.0},
    {3, "Ad-unitary distance lemma", "ad-lemma", 500, 0.0},
    {4, "cb-norm sandwich bounds", "bounds", 1000, 0.0},
    {5, "unitary conjugation example", "example-one", 4, 0.0},
    {6, "projection example chain", "example-two", 50, 0.0},
    {7, "Choi-Li dilation distance", "choi-li", 100, 0.0},
    {8, "Uhlmann fidelity against purification search", "uhlmann", 50, 0.0},
    {9, "ampliation invariance", "ampliation", 20, 600.0},
    {10, "contraction under UCP composition", "composition", 100, 0.0},
    {11, "metric axioms", "metric-axioms", 1000, 0.0},
};

}  // namespace

int main() {
  std::uint64_t seed = 7;
  try {
    seed = default_seed();
  } catch (const std::exception& e) {
    std::printf("FAIL seed: %s\n", e.what());
    return 1;
  }
  int failed = 0;
  for (const auto& c : kCriteria) {
    const SuiteSpec* spec = find_suite(c.suite);
    if (spec == nullptr) {
      std::printf("FAIL [%d] %s: suite %s missing\n", c.id, c.title, c.suite);
      ++failed;
      continue;
    }
    const auto t0 = std::chrono::steady_clock::now();
    const SuiteResult r = run_suite(*spec, seed, c.trials, 1);
    const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const bool in_time = c.wall_limit <= 0.0 || wall <= c.wall_limit;
    const bool ok = r.passed() && in_time;
    std::string detail = std::to_string(r.trials) + " trials, " + std::to_string(r.assertions) + " assertions, " +
                         std::to_string(r.failures.size()) + " failures";
    char buf[160];
    std::snprintf(buf, sizeof buf, ", max deviation %.3g, %.2fs", r.max_deviation, wall);
    detail += buf;
    if (c.wall_limit > 0.0) {
      std::snprintf(buf, sizeof buf, " (limit %.0fs)", c.wall_limit);
      detail += buf;
    }
    if (!r.passed()) {
      const auto& f = r.failures.front();
      std::snprintf(buf, sizeof buf, "; first: trial %llu seed %llu %s", static_cast<unsigned long long>(f.trial),
                    static_cast<unsigned long long>(f.seed), f.assertion.c_str());
      detail += buf;
    }
    std::printf("%s [%d] %s (%s): %s\n", ok ? "PASS" : "FAIL", c.id, c.title, c.suite, detail.c_str());
    std::fflush(stdout);
    if (!ok) ++failed;
  }
  std::printf("%d/%zu criteria passed (seed %llu)\n", static_cast<int>(kCriteria.size()) - failed, kCriteria.size(),
              static_cast<unsigned long long>(seed));
  return failed == 0 ? 0 : 1;
}
