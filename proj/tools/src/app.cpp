#include "cpmetric_cli/app.hpp"

#include <cstdlib>
#include <fstream>
#include <optional>
#include <ostream>
#include <thread>

#include <CLI11.hpp>

#include "cpmetric/dilation.hpp"
#include "cpmetric/error.hpp"
#include "cpmetric/linalg.hpp"
#include "cpmetric/metric.hpp"
#include "cpmetric/operator_geometry.hpp"
#include "cpmetric/tolerance.hpp"
#include "cpmetric_cli/matrix_file.hpp"
#include "cpmetric_cli/report.hpp"
#include "cpmetric_cli/suites.hpp"

namespace cpmetric::cli {

int suite_exit_code(const SuiteResult& result) { return result.passed() ? kOk : kSuiteFailure; }

std::uint64_t default_seed() {
  const char* env = std::getenv("CPMETRIC_SEED");
  if (env == nullptr || *env == '\0') return 7;
  try {
    std::size_t used = 0;
    const unsigned long long v = std::stoull(env, &used, 0);
    if (used != std::string(env).size()) throw std::invalid_argument(env);
    return v;
  } catch (const std::exception&) {
    throw InputError(std::string("CPMETRIC_SEED is not an unsigned integer: ") + env);
  }
}

namespace {

struct Options {
  std::string out_path;

  bool states = false, channels = false, constructive = false;
  std::optional<std::uint64_t> seed;
  std::string a, b;

  bool halmos = false, choi_li = false;
  std::string w_path;

  bool scalar = false, subspace = false;
  std::vector<std::string> files;

  std::size_t angles = 64;

  bool one = false, two = false;
  double theta = 0.0;

  std::string suite;
  std::optional<std::size_t> trials;
  std::size_t jobs = std::max(1u, std::thread::hardware_concurrency());
  bool list = false;
};

std::optional<std::uint64_t> optimizer_seed(const Options& o) {
  if (o.seed) return o.seed;
  if (const char* env = std::getenv("CPMETRIC_SEED"); env != nullptr && *env != '\0') return default_seed();
  return std::nullopt;
}

BuresOptions bures_options(const Options& o) {
  BuresOptions opts;
  if (auto s = optimizer_seed(o)) opts.seed = *s;
  return opts;
}

Report fidelity_command(const Options& o) {
  const DensityState rho = load_state(o.a), sigma = load_state(o.b);
  const double tol = tolerances().residual;
  const StateDistanceReport d = state_distances(rho, sigma);
  Report r;
  r.command = "fidelity";
  r.inputs = {{"a", o.a}, {"b", o.b}};
  r.scalars = {
      {"sqrt_fidelity", d.sqrt_fidelity, tol, "formula", "sqrt_fidelity: ||sqrt(rho) sqrt(sigma)||_1"},
      {"fidelity", d.sqrt_fidelity * d.sqrt_fidelity, tol, "formula", "square of sqrt_fidelity"},
      {"bures", d.bures, tol, "formula", "bures_states: sqrt(2 - 2 sqrt_fidelity)"},
      {"cb_distance", d.functional_cb_distance, tol, "formula", "functional_cb_distance: ||rho - sigma||_1"},
  };
  return r;
}

Report bures_command(const Options& o) {
  Report r;
  r.inputs = {{"a", o.a}, {"b", o.b}};
  if (o.channels) {
    const QuantumChannel a = load_channel(o.a), b = load_channel(o.b);
    const ChannelBuresResult br = bures_channels(a, b, bures_options(o));
    r.command = "bures --channels";
    r.scalars = {
        {"beta", br.beta, 1e-7, "optimizer", "bures_channels: sup over omega of the marginal Bures distance"},
        {"sqrt_fidelity", br.sqrt_fidelity, 1e-7, "optimizer", "inf over omega of the marginal sqrt fidelity"},
        {"restarts", double(br.restarts), 0.0, "optimizer", "omega restarts used"},
    };
    r.matrices.emplace_back("witness_omega", ComplexMatrix::column(br.omega));
  } else {
    const DensityState rho = load_state(o.a), sigma = load_state(o.b);
    r.command = "bures --states";
    r.scalars = {{"beta", bures_states(rho, sigma), tolerances().residual, "formula",
                  "bures_states: sqrt(2 - 2 ||sqrt(rho) sqrt(sigma)||_1)"}};
  }
  return r;
}

Report gamma_command(const Options& o) {
  Report r;
  if (o.channels) {
    if (o.constructive) throw InputError("--constructive applies to --states only");
    const QuantumChannel a = load_channel(o.a), b = load_channel(o.b);
    r = metric_report("gamma --channels", gamma_channels(a, b, bures_options(o)));
  } else {
    const DensityState rho = load_state(o.a), sigma = load_state(o.b);
    if (o.constructive) {
      MetricReport m = gamma_states_constructive(rho, sigma);
      r = metric_report("gamma --states --constructive", m);
      r.checks.push_back({"gamma_constructive = gamma", *m.gamma_constructive, "=", m.gamma, 1e-5,
                          std::abs(*m.gamma_constructive - m.gamma) <= 1e-5});
    } else {
      r = metric_report("gamma --states", gamma_states(rho, sigma));
    }
  }
  r.inputs = {{"a", o.a}, {"b", o.b}};
  return r;
}

Report dilate_command(const Options& o) {
  const ComplexMatrix t = load_matrix(o.a);
  if (!t.is_square()) throw InputError("dilate: T must be square");
  DilationResult d;
  Report r;
  r.inputs = {{"t", o.a}};
  if (o.choi_li) {
    if (!o.w_path.empty()) throw InputError("--W applies to --halmos only");
    ChoiLiOptions opts;
    if (auto s = optimizer_seed(o)) opts.seed = *s;
    d = choi_li_dilation(t, opts);
    r.command = "dilate --choi-li";
  } else {
    ComplexMatrix w = ComplexMatrix::identity(t.rows());
    if (!o.w_path.empty()) {
      w = load_matrix(o.w_path);
      r.inputs.emplace_back("w", o.w_path);
    }
    d = halmos_dilation(t, w);
    r.command = "dilate --halmos";
  }
  const double defect = unitarity_defect(d.v);
  const double lmin = lambda_min(d.v + d.v.adjoint());
  r.scalars = {
      {"r", d.half_gap, tolerances().residual, "formula", "lambda_min(T + T^*) / 2"},
      {"lambda_min_v", lmin, tolerances().residual, o.choi_li ? "optimizer" : "formula", "lambda_min(V + V^*)"},
      {"unitarity_defect", defect, 0.0, "oracle", "||V^* V - I||"},
      {"dilation_defect", max_abs_diff(d.v.block(0, 0, t.rows(), t.cols()), t), 0.0, "oracle", "max |V_11 - T|"},
  };
  if (o.choi_li) {
    r.scalars.push_back({"restarts", double(d.restarts_used), 0.0, "optimizer", "Choi-Li search restarts used"});
    r.checks.push_back({"lambda_min(V + V^*) >= 2r", lmin, ">=", 2.0 * d.half_gap, 1e-7, lmin >= 2.0 * d.half_gap - 1e-7});
  }
  r.checks.push_back({"V unitary", defect, "<=", 0.0, 1e-9, defect <= 1e-9});
  r.matrices = {{"v", d.v}, {"w", d.w}};
  return r;
}

Report commutant_command(const Options& o) {
  std::vector<ComplexMatrix> gens;
  for (const auto& f : o.files) gens.push_back(load_matrix(f));
  const std::size_t n = gens.front().rows();
  for (const auto& g : gens) {
    if (!g.is_square() || g.rows() != n) throw InputError("commutant: generators must be square of one size");
  }
  const SubspaceBasis c = commutant(StarAlgebraPresentation(n, gens));
  double residual = 0.0;
  for (const auto& x : c.basis())
    for (const auto& g : gens) {
      residual = std::max(residual, operator_norm(x * g - g * x));
      residual = std::max(residual, operator_norm(x * g.adjoint() - g.adjoint() * x));
    }
  Report r;
  r.command = "commutant";
  for (std::size_t i = 0; i < o.files.size(); ++i) r.inputs.emplace_back("g" + std::to_string(i + 1), o.files[i]);
  r.scalars = {
      {"dimension", double(c.size()), 0.0, "optimizer", "commutant: null space of the commutator map"},
      {"residual", residual, tolerances().residual, "oracle", "max ||[X, G]|| over basis X and generators G"},
  };
  for (std::size_t k = 0; k < c.size(); ++k) r.matrices.emplace_back("basis_" + std::to_string(k), c.basis()[k]);
  return r;
}

Report dist_command(const Options& o) {
  const ComplexMatrix t = load_matrix(o.files.front());
  if (!t.is_square()) throw InputError("dist: T must be square");
  Report r;
  r.inputs.emplace_back("t", o.files.front());
  DistanceResult d;
  if (o.subspace) {
    std::vector<ComplexMatrix> span;
    for (std::size_t i = 1; i < o.files.size(); ++i) {
      span.push_back(load_matrix(o.files[i]));
      r.inputs.emplace_back("s" + std::to_string(i), o.files[i]);
    }
    if (span.empty()) throw InputError("dist --subspace needs at least one spanning matrix");
    d = dist_to_subspace(t, SubspaceBasis(t.rows(), span));
    r.command = "dist --subspace";
  } else {
    if (o.files.size() > 1) throw InputError("dist --scalar takes a single matrix");
    d = dist_to_scalars(t);
    r.command = "dist --scalar";
  }
  r.scalars = {
      {"distance", d.distance, d.certified_gap, "optimizer", "||T - X|| at the minimizer X"},
      {"lower_bound", d.lower_bound, 0.0, "optimizer", "dual certificate Re tr(M^* T) / ||M||_1"},
      {"certified_gap", d.certified_gap, 0.0, "optimizer", "distance - lower_bound"},
  };
  if (!o.subspace) {
    r.scalars.push_back({"lambda_re", d.scalar.real(), 1e-6, "optimizer", "real part of the best scalar"});
    r.scalars.push_back({"lambda_im", d.scalar.imag(), 1e-6, "optimizer", "imaginary part of the best scalar"});
  }
  r.scalars.push_back({"iterations", double(d.iterations), 0.0, "optimizer", "Newton steps"});
  r.matrices.emplace_back("witness", d.witness);
  return r;
}

Report numrange_command(const Options& o) {
  const ComplexMatrix t = load_matrix(o.a);
  if (!t.is_square()) throw InputError("numrange: T must be square");
  const NumericalRangeSummary s = numerical_range(t, o.angles);
  Report r;
  r.command = "numrange";
  r.inputs = {{"t", o.a}, {"angles", std::to_string(o.angles)}};
  const double tol = 1e-12 * std::max(1.0, operator_norm(t));
  r.scalars = {
      {"min_modulus", s.min_modulus, tol, "optimizer", "dist(0, W(T)) by support-line refinement"},
      {"min_modulus_angle", s.min_modulus_angle, 0.0, "optimizer", "argument of the min-modulus point"},
      {"min_point_re", s.min_modulus_point.real(), tol, "optimizer", "min-modulus point of W(T)"},
      {"min_point_im", s.min_modulus_point.imag(), tol, "optimizer", "min-modulus point of W(T)"},
      {"contains_zero", s.contains_zero ? 1.0 : 0.0, 0.0, "optimizer", "0 inside the boundary polygon"},
  };
  ComplexMatrix boundary(s.boundary.size(), 1);
  for (std::size_t i = 0; i < s.boundary.size(); ++i) boundary(i, 0) = s.boundary[i];
  r.matrices.emplace_back("boundary", boundary);
  return r;
}

Report example_command(const Options& o) {
  if (o.two) return example_report("example --two", example_two(o.theta));
  return example_report("example --one", example_unitary_conjugation(o.theta));
}

void emit(const Report& r, const Options& o, std::ostream& out) {
  if (o.out_path == "-") {
    out << render_json(r);
    return;
  }
  out << render_text(r);
  if (!o.out_path.empty()) {
    std::ofstream f(o.out_path, std::ios::binary);
    if (!f) throw InputError("cannot write " + o.out_path);
    f << render_json(r);
  }
}

void exclusive_pair(CLI::App* cmd, bool& first, const std::string& a, bool& second, const std::string& b,
                    const std::string& what) {
  auto* fa = cmd->add_flag(a, first, what);
  auto* fb = cmd->add_flag(b, second, what);
  fa->excludes(fb);
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Bures distance and representation metric for states and UCP maps", "cpmetric"};
  app.require_subcommand(1);
  app.fallthrough();
  app.add_option("--out", o.out_path, "write the JSON report to this path ('-' prints it instead of the table)");

  auto* fid = app.add_subcommand("fidelity", "sqrt fidelity of two density matrices");
  fid->add_option("A", o.a)->required();
  fid->add_option("B", o.b)->required();

  auto* bures = app.add_subcommand("bures", "Bures distance of two states or two channels");
  exclusive_pair(bures, o.states, "--states", o.channels, "--channels", "input kind (default --states)");
  bures->add_option("--seed", o.seed, "seed of the omega search");
  bures->add_option("A", o.a)->required();
  bures->add_option("B", o.b)->required();

  auto* gamma = app.add_subcommand("gamma", "representation metric of two states or two channels");
  exclusive_pair(gamma, o.states, "--states", o.channels, "--channels", "input kind (default --states)");
  gamma->add_flag("--constructive", o.constructive, "also compute 2 d(U, commutant)");
  gamma->add_option("--seed", o.seed, "seed of the omega search");
  gamma->add_option("A", o.a)->required();
  gamma->add_option("B", o.b)->required();

  auto* dilate = app.add_subcommand("dilate", "unitary dilation of a contraction");
  exclusive_pair(dilate, o.halmos, "--halmos", o.choi_li, "--choi-li", "construction (default --halmos)");
  dilate->add_option("--W", o.w_path, "unitary for the Halmos dilation (default identity)");
  dilate->add_option("--seed", o.seed, "seed of the Choi-Li search");
  dilate->add_option("T", o.a)->required();

  auto* comm = app.add_subcommand("commutant", "commutant of the *-algebra generated by G1 G2 ...");
  comm->add_option("G", o.files)->required();

  auto* dist = app.add_subcommand("dist", "operator-norm distance to the scalars or to a subspace");
  exclusive_pair(dist, o.scalar, "--scalar", o.subspace, "--subspace", "target set (default --scalar)");
  dist->add_option("T_and_S", o.files, "T followed by the spanning matrices S...")->required();

  auto* nr = app.add_subcommand("numrange", "distance from 0 to the numerical range");
  nr->add_option("T", o.a)->required();
  nr->add_option("--angles", o.angles, "initial support directions")->check(CLI::Range(3, 100000));

  auto* ex = app.add_subcommand("example", "worked examples");
  exclusive_pair(ex, o.one, "--one", o.two, "--two", "which example");
  ex->add_option("--theta", o.theta)->required();

  auto* verify = app.add_subcommand("verify", "run a seeded property suite");
  verify->add_option("SUITE", o.suite);
  verify->add_flag("--list", o.list, "list the suites");
  verify->add_option("--seed", o.seed);
  verify->add_option("--trials", o.trials);
  verify->add_option("--jobs", o.jobs)->check(CLI::Range(1, 1024));

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kMalformedInput;
  }

  try {
    if (const char* profile = std::getenv("CPMETRIC_TOL_PROFILE"); profile != nullptr && *profile != '\0') {
      try {
        set_tolerance_profile(tolerance_profile_by_name(profile));
      } catch (const Error& e) {
        throw InputError(std::string("CPMETRIC_TOL_PROFILE: ") + e.what());
      }
    }
    if (ex->parsed() && !o.one && !o.two) throw InputError("example needs --one or --two");

    if (verify->parsed()) {
      if (o.list) {
        for (const auto& s : suite_registry()) {
          out << s.name << "  (" << s.default_trials << " trials)  " << s.description << '\n';
        }
        return kOk;
      }
      const SuiteSpec* spec = find_suite(o.suite);
      if (spec == nullptr) throw InputError("unknown suite '" + o.suite + "' (see verify --list)");
      const std::uint64_t seed = o.seed ? *o.seed : default_seed();
      const SuiteResult res = run_suite(*spec, seed, o.trials.value_or(spec->default_trials), o.jobs);
      emit(suite_report("verify " + spec->name, res), o, out);
      return suite_exit_code(res);
    }

    Report r;
    if (fid->parsed()) r = fidelity_command(o);
    else if (bures->parsed()) r = bures_command(o);
    else if (gamma->parsed()) r = gamma_command(o);
    else if (dilate->parsed()) r = dilate_command(o);
    else if (comm->parsed()) r = commutant_command(o);
    else if (dist->parsed()) r = dist_command(o);
    else if (nr->parsed()) r = numrange_command(o);
    else r = example_command(o);
    emit(r, o, out);
    return kOk;
  } catch (const CertificationError& e) {
    err << "certification failure: " << e.what() << '\n';
    return kCertificationFailure;
  } catch (const InvariantError& e) {
    err << "invariant violation: " << e.what() << '\n';
    return kInvariantViolation;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kMalformedInput;
  }
}

}  // namespace cpmetric::cli
