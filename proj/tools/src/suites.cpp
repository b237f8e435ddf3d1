#include "cpmetric_cli/suites.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <limits>
#include <numbers>
#include <thread>

#include "cpmetric/channel.hpp"
#include "cpmetric/dilation.hpp"
#include "cpmetric/error.hpp"
#include "cpmetric/linalg.hpp"
#include "cpmetric/metric.hpp"
#include "cpmetric/operator_geometry.hpp"
#include "cpmetric/random.hpp"
#include "cpmetric/states.hpp"

namespace cpmetric::cli {

// Independent of the closed form: ascent of Re tr(A U) over unitaries U from
// random starts, A = sqrt(rho) sqrt(sigma) from the spectral purifications.
double purification_overlap_search(const DensityState& rho, const DensityState& sigma, Rng& rng,
                                   std::size_t restarts) {
  auto root = [](const ComplexMatrix& p) {
    const SpectralDecomposition e = herm_eig(p);
    std::vector<double> s(e.eigenvalues.size());
    for (std::size_t i = 0; i < s.size(); ++i) s[i] = std::sqrt(std::max(0.0, e.eigenvalues[i]));
    return e.eigenvectors * ComplexMatrix::diagonal(s) * e.eigenvectors.adjoint();
  };
  const ComplexMatrix a = root(rho.rho()) * root(sigma.rho());
  const std::size_t n = a.rows();
  auto value = [&](const ComplexMatrix& u) { return (a * u).trace().real(); };
  double best = 0.0;
  for (std::size_t k = 0; k < restarts; ++k) {
    ComplexMatrix u = random_unitary(rng, n);
    double f = value(u);
    double step = 1.0;
    for (int it = 0; it < 400 && step > 1e-14; ++it) {
      const ComplexMatrix au = a * u;
      const ComplexMatrix x = (au.adjoint() - au) * 0.5;  // ascent direction in u(n)
      double gnorm = 0.0;
      for (const cplx& v : x.entries()) gnorm += std::norm(v);
      if (gnorm < 1e-30) break;
      bool moved = false;
      while (step > 1e-14) {
        // Cayley retraction (I - hX/2)^{-1} (I + hX/2)
        const ComplexMatrix half = x * (0.5 * step);
        const ComplexMatrix c = solve(ComplexMatrix::identity(n) - half, ComplexMatrix::identity(n) + half);
        const ComplexMatrix trial = u * c;
        const double ft = value(trial);
        if (ft >= f + 0.25 * step * gnorm) {
          u = trial;
          f = ft;
          step *= 2.0;
          moved = true;
          break;
        }
        step *= 0.5;
      }
      if (!moved) break;
    }
    best = std::max(best, f);
  }
  return best;
}

void TrialRecorder::record(bool ok, const std::string& what, double lhs, double rhs, double tol, double deviation) {
  ++assertions_;
  if (std::isnan(deviation)) deviation = std::numeric_limits<double>::infinity();
  max_deviation_ = std::max(max_deviation_, deviation);
  if (!ok) failures_.push_back({trial_, seed_, what, lhs, rhs, tol});
}

void TrialRecorder::near(const std::string& what, double lhs, double rhs, double tol) {
  const double dev = std::abs(lhs - rhs);
  record(dev <= tol, what, lhs, rhs, tol, dev);
}

void TrialRecorder::at_most(const std::string& what, double lhs, double rhs, double tol) {
  const double dev = lhs - rhs;
  record(lhs <= rhs + tol, what, lhs, rhs, tol, std::isnan(dev) ? dev : std::max(0.0, dev));
}

void TrialRecorder::strictly_greater(const std::string& what, double lhs, double rhs) {
  const double dev = rhs - lhs;
  record(lhs > rhs, what, lhs, rhs, 0.0, std::isnan(dev) ? dev : std::max(0.0, dev));
}

void TrialRecorder::fail(const std::string& what, double lhs, double rhs, double tol) {
  record(false, what, lhs, rhs, tol, 0.0);
}

namespace {

// Ranks cycle through pure, low-rank and full-rank states.
DensityState random_state(Rng& rng, std::size_t n) {
  const std::size_t rank = 1 + std::uniform_int_distribution<std::size_t>(0, n - 1)(rng);
  return DensityState(random_density(rng, n, rank));
}

struct StatePair {
  DensityState rho;
  DensityState sigma;
};

// Shared by beta-gamma and bounds, so both suites see the same pairs.
StatePair beta_gamma_pair(Rng& rng, std::uint64_t trial) {
  const std::size_t n = 2 + trial % 3;
  DensityState rho = random_state(rng, n);
  DensityState sigma = random_state(rng, n);
  return {std::move(rho), std::move(sigma)};
}

void beta_gamma_trial(TrialRecorder& rec) {
  Rng rng = trial_rng(rec.seed(), rec.trial());
  const auto [rho, sigma] = beta_gamma_pair(rng, rec.trial());
  const MetricReport r = gamma_states(rho, sigma);
  rec.near("beta^2 + sqrt(4 - gamma^2) = 2", r.beta * r.beta + std::sqrt(4.0 - r.gamma * r.gamma), 2.0, 1e-9);
}

void bounds_trial(TrialRecorder& rec) {
  Rng rng = trial_rng(rec.seed(), rec.trial());
  const auto [rho, sigma] = beta_gamma_pair(rng, rec.trial());
  const double gamma = gamma_states(rho, sigma).gamma;
  const double d = trace_norm(rho.rho() - sigma.rho());
  rec.at_most("||rho - sigma||_1 <= gamma", d, gamma, 1e-6);
  rec.at_most("gamma <= 2 sqrt(||rho - sigma||_1)", gamma, 2.0 * std::sqrt(d), 1e-6);
}

void constructive_trial(TrialRecorder& rec) {
  Rng rng = trial_rng(rec.seed(), rec.trial());
  const std::size_t n = 2 + rec.trial() % 2;
  const DensityState rho(random_density(rng, n));
  const DensityState sigma(random_density(rng, n));
  const double closed = gamma_states(rho, sigma).gamma;
  const MetricReport c = gamma_states_constructive(rho, sigma);
  rec.near("gamma_states = 2 d(U, commutant)", closed, *c.gamma_constructive, 1e-5);
}

void ad_lemma_trial(TrialRecorder& rec) {
  Rng rng = trial_rng(rec.seed(), rec.trial());
  const std::size_t n = 2 + rec.trial() % 7;
  const ComplexVector x = random_unit_vector(rng, n);
  ComplexVector y = random_unit_vector(rng, n);
  switch (rec.trial() % 10) {
    case 0: {  // orthogonal pair
      const cplx c = inner(x, y);
      for (std::size_t i = 0; i < n; ++i) y[i] -= c * x[i];
      y = normalized(y);
      break;
    }
    case 1: {  // nearly parallel pair
      for (std::size_t i = 0; i < n; ++i) y[i] = std::polar(1.0, 0.7) * x[i] + 1e-3 * y[i];
      y = normalized(y);
      break;
    }
    default:
      break;
  }
  const double overlap = std::abs(inner(x, y));
  const DistanceResult d = dist_to_scalars(ad_unitary(x, y));
  rec.near("2 d(Ad(x, y), C) = 2 sqrt(1 - |<x, y>|^2)", 2.0 * d.distance,
           2.0 * std::sqrt(std::max(0.0, 1.0 - overlap * overlap)), 1e-6);
}

void example_one_trial(TrialRecorder& rec) {
  const double pi = std::numbers::pi;
  const double thetas[] = {pi / 12, pi / 6, pi / 4, pi / 3};
  const double theta = thetas[rec.trial() % 4];
  std::vector<cplx> diag = {std::polar(1.0, theta), std::polar(1.0, -theta)};
  const double recomputed = 2.0 * dist_to_scalars(ComplexMatrix::diagonal(diag)).distance;
  rec.near("2 d(diag(e^{i theta}, e^{-i theta}), C) = 2 sin theta", recomputed, 2.0 * std::sin(theta), 1e-8);
  const double beta = std::sqrt(2.0) * std::sqrt(1.0 - std::cos(theta));
  rec.near("2 sin theta = beta sqrt(4 - beta^2)", 2.0 * std::sin(theta), beta * std::sqrt(4.0 - beta * beta), 1e-9);
  const ExampleReport r = example_unitary_conjugation(theta);
  for (const auto& c : r.inequality_checks) {
    if (!c.holds) rec.fail("example report: " + c.name, c.lhs, c.rhs, c.tolerance);
  }
}

void example_two_trial(TrialRecorder& rec) {
  const double theta = double(rec.trial() % 50 + 1) * (std::numbers::pi / 4.0) / 51.0;
  const double s = std::sin(theta), c = std::cos(theta);
  rec.strictly_greater("2 sin theta > 2 sin theta / sqrt(1 + sin^2 theta)", 2.0 * s, 2.0 * s / std::sqrt(1.0 + s * s));
  rec.strictly_greater("2 sqrt(1 - cos theta) > sqrt((3 + cos theta)(1 - cos theta))", 2.0 * std::sqrt(1.0 - c),
                       std::sqrt((3.0 + c) * (1.0 - c)));
  const ExampleReport r = example_two(theta);
  const double re = r.quantity("lambda_star_re").value, im = r.quantity("lambda_star_im").value;
  rec.near("argmin lambda = 1", std::abs(cplx(re, im) - 1.0), 0.0, 1e-6);
  rec.near("min over lambda = sqrt(1 - cos theta)", r.quantity("beta_tilde_recomputed").value, std::sqrt(1.0 - c),
           1e-6);
  for (const auto& chk : r.inequality_checks) {
    if (!chk.holds) rec.fail("example report: " + chk.name, chk.lhs, chk.rhs, chk.tolerance);
  }
}

void choi_li_trial(TrialRecorder& rec) {
  Rng rng = trial_rng(rec.seed(), rec.trial());
  const std::size_t n = 1 + rec.trial() % 4;
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  ComplexMatrix t;
  if (rec.trial() % 2 == 0) {
    std::vector<cplx> z(n);
    for (auto& v : z) v = std::polar(0.98 * std::sqrt(unit(rng)), 2.0 * std::numbers::pi * unit(rng));
    const ComplexMatrix u = random_unitary(rng, n);
    t = u * ComplexMatrix::diagonal(z) * u.adjoint();
  } else {
    t = random_contraction(rng, n, 0.2 + 0.78 * unit(rng));
  }
  const double r = lambda_min(t + t.adjoint()) / 2.0;
  try {
    const DilationResult d = choi_li_dilation(t);
    rec.at_most("V unitary", unitarity_defect(d.v), 0.0, 1e-9);
    rec.at_most("V dilates T", max_abs_diff(d.v.block(0, 0, n, n), t), 0.0, 1e-9);
    rec.at_most("lambda_min(V + V^*) >= 2r", 2.0 * r, lambda_min(d.v + d.v.adjoint()), 1e-5);
  } catch (const DilationSearchFailed& e) {
    rec.fail("dilation search failed", e.best_lambda_min(), e.target(), 1e-5);
  }
}

void uhlmann_trial(TrialRecorder& rec) {
  Rng rng = trial_rng(rec.seed(), rec.trial());
  const std::size_t n = 2 + rec.trial() % 2;
  const DensityState rho = random_state(rng, n);
  const DensityState sigma = random_state(rng, n);
  const double closed = sqrt_fidelity(rho, sigma);
  const double searched = purification_overlap_search(rho, sigma, rng, 200);
  rec.near("sqrt_fidelity = max purification overlap", closed, searched, 1e-6);
}

void ampliation_trial(TrialRecorder& rec) {
  Rng rng = trial_rng(rec.seed(), rec.trial());
  const DensityState rho = random_state(rng, 2);
  const DensityState sigma = random_state(rng, 2);
  const AmpliationCheck a = check_ampliation(rho, sigma, 2);
  rec.near("gamma = gamma of the 2-fold ampliations", a.gamma_base, a.gamma_ampliated, 1e-3);
}

void composition_trial(TrialRecorder& rec) {
  Rng rng = trial_rng(rec.seed(), rec.trial());
  const DensityState rho = random_state(rng, 2);
  const DensityState sigma = random_state(rng, 2);
  const std::size_t k = 2 + rec.trial() % 2;
  const QuantumChannel psi = random_ucp_channel(rng, k, 2, 1 + rec.trial() % 3);
  const CompositionCheck c = check_composition(rho, sigma, psi);
  rec.at_most("gamma(phi1 o psi, phi2 o psi) <= gamma(phi1, phi2)", c.gamma_after, c.gamma_before, 1e-6);
}

void metric_axioms_trial(TrialRecorder& rec) {
  Rng rng = trial_rng(rec.seed(), rec.trial());
  const DensityState a = random_state(rng, 2);
  const DensityState b = random_state(rng, 2);
  const DensityState c = random_state(rng, 2);
  const double ab = gamma_states(a, b).gamma, ba = gamma_states(b, a).gamma;
  const double bc = gamma_states(b, c).gamma, ac = gamma_states(a, c).gamma;
  rec.near("gamma(a, b) = gamma(b, a)", ab, ba, 0.0);
  rec.at_most("gamma(a, c) <= gamma(a, b) + gamma(b, c)", ac, ab + bc, 1e-9);
  rec.at_most("gamma(a, a) = 0", gamma_states(a, a).gamma, 0.0, 1e-6);
}

void monotonicity_trial(TrialRecorder& rec) {
  const std::size_t grid = 200;
  const double lo = double(rec.trial()) / 64.0 * std::sqrt(2.0);
  const double hi = double(rec.trial() + 1) / 64.0 * std::sqrt(2.0);
  double prev = gamma_from_beta(lo);
  for (std::size_t i = 1; i <= grid; ++i) {
    const double b = lo + (hi - lo) * double(i) / double(grid);
    const double g = gamma_from_beta(b);
    if (!(g > prev)) rec.fail("gamma strictly increasing in beta", prev, g);
    rec.near("beta_from_gamma inverts gamma_from_beta", beta_from_gamma(g), b, 1e-7);
    prev = g;
  }
}

void channel_reduction_trial(TrialRecorder& rec) {
  Rng rng = trial_rng(rec.seed(), rec.trial());
  const std::size_t n = 2 + rec.trial() % 2;
  const DensityState rho = random_state(rng, n);
  const DensityState sigma = random_state(rng, n);
  const ChannelBuresResult r =
      bures_channels(QuantumChannel::from_state(rho), QuantumChannel::from_state(sigma));
  rec.near("bures_channels (m = 1) = bures_states", r.beta, bures_states(rho, sigma), 1e-7);
}

}  // namespace

const std::vector<SuiteSpec>& suite_registry() {
  static const std::vector<SuiteSpec> suites = {
      {"beta-gamma", "beta^2 + sqrt(4 - gamma^2) = 2 on random state pairs, n in {2,3,4}", 1000, beta_gamma_trial},
      {"constructive", "closed-form gamma against 2 d(U, commutant), n in {2,3}", 100, constructive_trial},
      {"ad-lemma", "2 d(Ad(x, y), C) = 2 sqrt(1 - |<x, y>|^2), dim <= 8", 500, ad_lemma_trial},
      {"bounds", "||rho - sigma||_1 <= gamma <= 2 sqrt(||rho - sigma||_1) on the beta-gamma pairs", 1000,
       bounds_trial},
      {"example-one", "diagonal unitary example at theta in {pi/12, pi/6, pi/4, pi/3}", 4, example_one_trial},
      {"example-two", "strict chain and lambda = 1 on a 50-point grid in (0, pi/4)", 50, example_two_trial},
      {"choi-li", "unitary dilations with lambda_min(V + V^*) >= lambda_min(T + T^*), n <= 4", 100, choi_li_trial},
      {"uhlmann", "closed-form sqrt fidelity against a purification search, 200 restarts", 50, uhlmann_trial},
      {"ampliation", "gamma of qubit states against their 2-fold ampliations", 20, ampliation_trial},
      {"composition", "gamma contracts under precomposition with a random UCP map, n = 2", 100, composition_trial},
      {"metric-axioms", "symmetry, identity and triangle inequality on random qubit triples", 1000,
       metric_axioms_trial},
      {"monotonicity", "gamma_from_beta strictly increasing on [0, sqrt 2] with inverse", 64, monotonicity_trial},
      {"channel-reduction", "bures_channels of state functionals equals bures_states", 20, channel_reduction_trial},
  };
  return suites;
}

const SuiteSpec* find_suite(const std::string& name) {
  for (const auto& s : suite_registry())
    if (s.name == name) return &s;
  return nullptr;
}

SuiteResult run_suite(const SuiteSpec& suite, std::uint64_t seed, std::size_t trials, std::size_t jobs) {
  const auto start = std::chrono::steady_clock::now();
  std::vector<TrialRecorder> records;
  records.reserve(trials);
  for (std::size_t t = 0; t < trials; ++t) records.emplace_back(seed, t);

  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t t = next++; t < trials; t = next++) {
      TrialRecorder& rec = records[t];
      try {
        suite.trial(rec);
      } catch (const std::exception& e) {
        rec.fail(std::string("exception: ") + e.what());
      }
    }
  };
  jobs = std::clamp<std::size_t>(jobs, 1, std::max<std::size_t>(1, trials));
  if (jobs == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (std::size_t j = 0; j < jobs; ++j) pool.emplace_back(worker);
  }

  SuiteResult result;
  result.suite = suite.name;
  result.seed = seed;
  result.trials = trials;
  for (const auto& rec : records) {
    result.assertions += rec.assertions();
    result.max_deviation = std::max(result.max_deviation, rec.max_deviation());
    result.failures.insert(result.failures.end(), rec.failures().begin(), rec.failures().end());
  }
  result.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return result;
}

}  // namespace cpmetric::cli
