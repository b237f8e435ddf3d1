#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "cpmetric/matrix.hpp"
#include "cpmetric/metric.hpp"
#include "cpmetric_cli/suites.hpp"

namespace cpmetric::cli {

struct ReportScalar {
  std::string name;
  double value = 0.0;
  double tolerance = 0.0;
  std::string provenance;  ///< formula | optimizer | oracle
  std::string source;      ///< operation and formula that produced the value
  bool analogue = false;
};

struct ReportCheck {
  std::string name;
  double lhs = 0.0;
  std::string relation;
  double rhs = 0.0;
  double tolerance = 0.0;
  bool holds = false;
};

struct Report {
  std::string command;
  std::vector<std::pair<std::string, std::string>> inputs;
  std::vector<ReportScalar> scalars;
  std::vector<ReportCheck> checks;
  std::vector<std::pair<std::string, ComplexMatrix>> matrices;
  std::optional<SuiteResult> suite;
};

/// Value rounded to 10 significant digits, as it appears in emitted documents.
double canonical(double value);

Report metric_report(const std::string& command, const MetricReport& m);
Report example_report(const std::string& command, const ExampleReport& e);
Report suite_report(const std::string& command, const SuiteResult& s);

/// Aligned table for standard output.
std::string render_text(const Report& r);
/// JSON document with a fixed field order; identical inputs give identical bytes.
std::string render_json(const Report& r);

}  // namespace cpmetric::cli
