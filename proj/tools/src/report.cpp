#include "cpmetric_cli/report.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

#include <json.hpp>

#include "cpmetric/tolerance.hpp"

namespace cpmetric::cli {

namespace {

using ojson = nlohmann::ordered_json;

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

ojson number(double v) {
  if (!std::isfinite(v)) return fmt(v);  // JSON has no inf/nan
  return canonical(v);
}

ojson matrix_json(const ComplexMatrix& m) {
  ojson entries = ojson::array();
  for (const cplx& z : m.entries()) entries.push_back({number(z.real()), number(z.imag())});
  return {{"dims", {m.rows(), m.cols()}}, {"entries", std::move(entries)}};
}

}  // namespace

double canonical(double value) {
  if (!std::isfinite(value)) return value;
  const double v = std::stod(fmt(value));
  return v == 0.0 ? 0.0 : v;  // no negative zero
}

Report metric_report(const std::string& command, const MetricReport& m) {
  const double tol = tolerances().residual;
  Report r;
  r.command = command;
  const bool optimized_beta = m.beta_provenance != "formula";
  r.scalars.push_back({"beta", m.beta, optimized_beta ? 1e-7 : tol, m.beta_provenance,
                       optimized_beta ? "bures_channels: sup over omega of the marginal Bures distance"
                                      : "bures_states: sqrt(2 - 2 ||sqrt(rho) sqrt(sigma)||_1)"});
  r.scalars.push_back({"gamma", m.gamma, optimized_beta ? 1e-6 : tol, m.beta_provenance,
                       "gamma_from_beta: beta sqrt(4 - beta^2)"});
  if (m.gamma_constructive) {
    r.scalars.push_back({"gamma_constructive", *m.gamma_constructive, m.certified_gap.value_or(0.0), "optimizer",
                         "gamma_states_constructive: 2 d(U, pi(M_n)') over the commutant"});
  }
  if (m.certified_gap) {
    r.scalars.push_back({"certified_gap", *m.certified_gap, 0.0, "optimizer", "dist_to_subspace: primal - dual"});
  }
  r.scalars.push_back({"cb_lower", m.cb_lower, m.cb_provenance == "formula" ? tol : 1e-7, m.cb_provenance,
                       m.cb_provenance == "formula" ? "functional_cb_distance: ||rho - sigma||_1"
                                                    : "max trace norm of marginal differences over restarts"});
  r.scalars.push_back({"cb_upper", m.cb_upper, tol, "formula", "2 sqrt(cb_lower)"});
  if (m.restarts > 0) {
    r.scalars.push_back({"restarts", double(m.restarts), 0.0, "optimizer", "omega restarts used"});
  }
  r.checks.push_back({"cb_lower <= gamma", m.cb_lower, "<=", m.gamma, 1e-6, m.cb_lower <= m.gamma + 1e-6});
  r.checks.push_back({"gamma <= cb_upper", m.gamma, "<=", m.cb_upper, 1e-6, m.gamma <= m.cb_upper + 1e-6});
  if (m.witness_unitary) r.matrices.emplace_back("witness_unitary", *m.witness_unitary);
  if (m.witness_commutant) r.matrices.emplace_back("witness_commutant", *m.witness_commutant);
  if (m.witness_omega) r.matrices.emplace_back("witness_omega", ComplexMatrix::column(*m.witness_omega));
  return r;
}

Report example_report(const std::string& command, const ExampleReport& e) {
  Report r;
  r.command = command;
  r.inputs.emplace_back("theta", fmt(e.theta));
  for (const auto& q : e.quantities) {
    r.scalars.push_back({q.name, q.value, q.tolerance, q.provenance, q.source, q.analogue});
  }
  for (const auto& c : e.inequality_checks) r.checks.push_back({c.name, c.lhs, c.relation, c.rhs, c.tolerance, c.holds});
  return r;
}

Report suite_report(const std::string& command, const SuiteResult& s) {
  Report r;
  r.command = command;
  r.inputs.emplace_back("suite", s.suite);
  r.inputs.emplace_back("seed", std::to_string(s.seed));
  r.inputs.emplace_back("trials", std::to_string(s.trials));
  r.scalars.push_back({"assertions", double(s.assertions), 0.0, "oracle", "assertions evaluated"});
  r.scalars.push_back({"failures", double(s.failures.size()), 0.0, "oracle", "assertions violated"});
  r.scalars.push_back({"max_deviation", s.max_deviation, 0.0, "oracle", "largest violation before tolerance"});
  r.suite = s;
  return r;
}

std::string render_text(const Report& r) {
  std::ostringstream out;
  out << r.command << '\n';
  for (const auto& [k, v] : r.inputs) out << "  " << k << ": " << v << '\n';
  if (!r.scalars.empty()) {
    std::size_t w = 8;
    for (const auto& s : r.scalars) w = std::max(w, s.name.size());
    char line[512];
    std::snprintf(line, sizeof line, "  %-*s  %-17s  %-9s  %-10s  %s\n", int(w), "quantity", "value", "tolerance",
                  "provenance", "source");
    out << line;
    for (const auto& s : r.scalars) {
      std::snprintf(line, sizeof line, "  %-*s  %-17s  %-9s  %-10s  %s%s\n", int(w), s.name.c_str(),
                    fmt(s.value).c_str(), fmt(s.tolerance).c_str(), s.provenance.c_str(), s.source.c_str(),
                    s.analogue ? " [analogue]" : "");
      out << line;
    }
  }
  if (!r.checks.empty()) {
    out << "  checks\n";
    for (const auto& c : r.checks) {
      out << "    " << (c.holds ? "ok   " : "FAIL ") << c.name << "  (" << fmt(c.lhs) << ' ' << c.relation << ' '
          << fmt(c.rhs) << ", tol " << fmt(c.tolerance) << ")\n";
    }
  }
  for (const auto& [name, m] : r.matrices) out << "  matrix " << name << ": " << m.rows() << 'x' << m.cols() << '\n';
  if (r.suite) {
    out << "  result: " << (r.suite->passed() ? "pass" : "FAIL") << '\n';
    for (const auto& f : r.suite->failures) {
      out << "    trial " << f.trial << " (seed " << f.seed << "): " << f.assertion << "  lhs " << fmt(f.lhs)
          << " rhs " << fmt(f.rhs) << " tol " << fmt(f.tolerance) << '\n';
    }
  }
  return out.str();
}

std::string render_json(const Report& r) {
  ojson doc;
  doc["command"] = r.command;
  ojson inputs = ojson::object();
  for (const auto& [k, v] : r.inputs) inputs[k] = v;
  doc["inputs"] = std::move(inputs);
  ojson scalars = ojson::array();
  for (const auto& s : r.scalars) {
    ojson q;
    q["name"] = s.name;
    q["value"] = number(s.value);
    q["tolerance"] = number(s.tolerance);
    q["provenance"] = s.provenance;
    q["source"] = s.source;
    q["analogue"] = s.analogue;
    scalars.push_back(std::move(q));
  }
  doc["scalars"] = std::move(scalars);
  ojson checks = ojson::array();
  for (const auto& c : r.checks) {
    ojson q;
    q["name"] = c.name;
    q["lhs"] = number(c.lhs);
    q["relation"] = c.relation;
    q["rhs"] = number(c.rhs);
    q["tolerance"] = number(c.tolerance);
    q["holds"] = c.holds;
    checks.push_back(std::move(q));
  }
  doc["checks"] = std::move(checks);
  ojson matrices = ojson::object();
  for (const auto& [name, m] : r.matrices) matrices[name] = matrix_json(m);
  doc["matrices"] = std::move(matrices);
  if (r.suite) {
    ojson s;
    s["suite"] = r.suite->suite;
    s["seed"] = r.suite->seed;
    s["trials"] = r.suite->trials;
    s["assertions"] = r.suite->assertions;
    s["passed"] = r.suite->passed();
    s["max_deviation"] = number(r.suite->max_deviation);
    ojson failures = ojson::array();
    for (const auto& f : r.suite->failures) {
      ojson q;
      q["trial"] = f.trial;
      q["seed"] = f.seed;
      q["assertion"] = f.assertion;
      q["lhs"] = number(f.lhs);
      q["rhs"] = number(f.rhs);
      q["tolerance"] = number(f.tolerance);
      failures.push_back(std::move(q));
    }
    s["failures"] = std::move(failures);
    doc["suite"] = std::move(s);
  }
  return doc.dump(2) + "\n";
}

}  // namespace cpmetric::cli
