#include "cpmetric/metric.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "cpmetric/dilation.hpp"
#include "cpmetric/error.hpp"
#include "cpmetric/linalg.hpp"
#include "cpmetric/operator_geometry.hpp"
#include "cpmetric/random.hpp"
#include "cpmetric/tolerance.hpp"

namespace cpmetric {

double gamma_from_beta(double beta) {
  const double b = clamp_checked(beta, 0.0, std::sqrt(2.0), "gamma_from_beta");
  return b * std::sqrt(std::max(0.0, 4.0 - b * b));
}

double beta_from_gamma(double gamma) {
  const double g = clamp_checked(gamma, 0.0, 2.0, "beta_from_gamma");
  // Only the negative root keeps beta in [0, sqrt 2].
  return std::sqrt(std::max(0.0, 2.0 - std::sqrt(std::max(0.0, 4.0 - g * g))));
}

const NamedQuantity& ExampleReport::quantity(const std::string& key) const {
  for (const auto& q : quantities)
    if (q.name == key) return q;
  throw InvariantError("ExampleReport: no quantity named " + key);
}

bool ExampleReport::all_hold() const {
  return std::all_of(inequality_checks.begin(), inequality_checks.end(), [](const auto& c) { return c.holds; });
}

// ---------------------------------------------------------------------------
// States

MetricReport gamma_states(const DensityState& rho, const DensityState& sigma) {
  const StateDistanceReport d = state_distances(rho, sigma);
  MetricReport r;
  r.beta = d.bures;
  r.gamma = gamma_from_beta(r.beta);
  r.cb_lower = d.functional_cb_distance;
  r.cb_upper = 2.0 * std::sqrt(r.cb_lower);
  return r;
}

MetricReport gamma_states_constructive(const DensityState& rho, const DensityState& sigma) {
  if (rho.dimension() != sigma.dimension()) throw DimensionError("gamma_states_constructive: dimension mismatch");
  if (rho.dimension() > 8) throw DimensionError("gamma_states_constructive: dimension above 8");
  MetricReport r = gamma_states(rho, sigma);
  const CommonRepresentation common = common_representation(rho, sigma);
  const ComplexMatrix u = ad_unitary(common.x, common.y);
  const SubspaceBasis comm =
      commutant(StarAlgebraPresentation(common.rep.space_dimension(), common.rep.images()));
  const DistanceResult d = dist_to_subspace(u, comm);
  if (d.certified_gap > 1e-5) {
    throw CertificationError("gamma_states_constructive: certified gap " + std::to_string(d.certified_gap) +
                                 " exceeds 1e-5",
                             d.certified_gap);
  }
  r.gamma_constructive = 2.0 * d.distance;
  r.certified_gap = 2.0 * d.certified_gap;
  r.witness_unitary = u;
  r.witness_commutant = d.witness;
  return r;
}

// ---------------------------------------------------------------------------
// Channels

namespace {

// omega in C^m (x) C^m as the m x m matrix Omega with omega = vec(Omega).
ComplexMatrix as_square(std::span<const cplx> omega, std::size_t m) {
  return ComplexMatrix(m, m, ComplexVector(omega.begin(), omega.end()));
}

// Fidelity of the two marginal states as a function of omega. With
// B_kl = K1_k^* K2_l the overlap matrix is M_kl = tr(B_kl Omega Omega^*)
// and the fidelity is ||M||_1.
struct FidelityObjective {
  std::size_t m;
  std::size_t d1;
  std::size_t d2;
  std::vector<ComplexMatrix> b;  // d1 * d2 blocks, row-major in (k, l)

  FidelityObjective(const QuantumChannel& a, const QuantumChannel& c)
      : m(a.output_dimension()), d1(a.kraus_rank()), d2(c.kraus_rank()) {
    for (const auto& k1 : a.kraus())
      for (const auto& k2 : c.kraus()) b.push_back(adjoint_times(k1, k2));
  }

  ComplexMatrix overlap(std::span<const cplx> omega) const {
    const ComplexMatrix w = as_square(omega, m);
    const ComplexMatrix theta = w * w.adjoint();
    ComplexMatrix mm(d1, d2);
    for (std::size_t k = 0; k < d1; ++k)
      for (std::size_t l = 0; l < d2; ++l) mm(k, l) = hs_inner(b[k * d2 + l].adjoint(), theta);
    return mm;
  }
  double value(std::span<const cplx> omega) const { return trace_norm(overlap(omega)); }

  // Euclidean gradient (G + G^*) omega with G = sum_kl conj(P_kl) B_kl (x) I,
  // P the unitary part of M.
  ComplexVector gradient(std::span<const cplx> omega, double& f) const {
    const ComplexMatrix mm = overlap(omega);
    const SingularValueDecomposition s = svd(mm);
    const std::size_t r = std::min(d1, d2);
    f = 0.0;
    for (double x : s.singular_values) f += x;
    ComplexMatrix p(d1, d2);
    for (std::size_t k = 0; k < d1; ++k)
      for (std::size_t l = 0; l < d2; ++l) {
        cplx acc = 0.0;
        for (std::size_t j = 0; j < r; ++j) acc += s.u(k, j) * std::conj(s.v(l, j));
        p(k, l) = acc;
      }
    ComplexMatrix g(m, m);
    for (std::size_t k = 0; k < d1; ++k)
      for (std::size_t l = 0; l < d2; ++l) g += b[k * d2 + l] * std::conj(p(k, l));
    const ComplexMatrix gw = (g + g.adjoint()) * as_square(omega, m);
    return ComplexVector(gw.entries().begin(), gw.entries().end());
  }
};

ComplexVector tangent(std::span<const cplx> omega, ComplexVector g) {
  const double radial = inner(omega, g).real();
  for (std::size_t i = 0; i < g.size(); ++i) g[i] -= radial * omega[i];
  return g;
}

ComplexVector step_on_sphere(std::span<const cplx> omega, std::span<const cplx> dir, double t) {
  ComplexVector out(omega.size());
  for (std::size_t i = 0; i < omega.size(); ++i) out[i] = omega[i] + t * dir[i];
  return normalized(out);
}

// Armijo descent on the sphere followed by a random-direction pattern search.
std::pair<ComplexVector, double> minimize_fidelity(const FidelityObjective& obj, ComplexVector omega, Rng& rng,
                                                   std::size_t steps) {
  double f = obj.value(omega);
  double t = 0.5;
  for (std::size_t it = 0; it < steps; ++it) {
    double f0 = 0.0;
    ComplexVector g = tangent(omega, obj.gradient(omega, f0));
    const double g2 = std::pow(norm(g), 2);
    if (g2 < 1e-28) break;
    for (auto& z : g) z = -z;
    t = std::min(t * 2.0, 4.0);
    bool moved = false;
    for (int ls = 0; ls < 50; ++ls) {
      ComplexVector cand = step_on_sphere(omega, g, t);
      const double fc = obj.value(cand);
      if (fc <= f0 - 1e-4 * t * g2) {
        moved = f0 - fc > 1e-16;
        omega = std::move(cand);
        f = fc;
        break;
      }
      t *= 0.5;
    }
    if (!moved) break;
  }
  // Gradient-free polish.
  std::normal_distribution<double> gauss;
  double h = 1e-3;
  for (int it = 0; it < 200 && h > 1e-10; ++it) {
    ComplexVector d(omega.size());
    for (auto& z : d) z = cplx(gauss(rng), gauss(rng));
    d = tangent(omega, d);
    const double dn = norm(d);
    if (dn == 0.0) continue;
    for (auto& z : d) z /= dn;
    bool improved = false;
    for (double sgn : {1.0, -1.0}) {
      ComplexVector cand = step_on_sphere(omega, d, sgn * h);
      const double fc = obj.value(cand);
      if (fc < f) {
        f = fc;
        omega = std::move(cand);
        improved = true;
        break;
      }
    }
    h *= improved ? 1.5 : 0.7;
  }
  return {omega, f};
}

void require_ucp_pair(const QuantumChannel& a, const QuantumChannel& b, const char* op) {
  if (a.input_dimension() != b.input_dimension() || a.output_dimension() != b.output_dimension()) {
    throw DimensionError(std::string(op) + ": channels M_" + std::to_string(a.input_dimension()) + " -> M_" +
                         std::to_string(a.output_dimension()) + " and M_" + std::to_string(b.input_dimension()) +
                         " -> M_" + std::to_string(b.output_dimension()));
  }
}

bool is_factor(const StarAlgebraPresentation& alg) {
  const SubspaceBasis comm = commutant(alg);
  std::vector<ComplexMatrix> gens = alg.generators();
  for (const auto& c : comm.basis()) gens.push_back(c);
  // The center is the commutant of the algebra generated by A and A'.
  return commutant(StarAlgebraPresentation(alg.dimension(), gens)).size() == 1;
}

}  // namespace

DensityState channel_marginal_state(const QuantumChannel& channel, std::span<const cplx> omega) {
  const std::size_t n = channel.input_dimension();
  const std::size_t m = channel.output_dimension();
  if (omega.size() != m * m) throw DimensionError("channel_marginal_state: omega must lie in C^m (x) C^m");
  if (std::abs(norm(omega) - 1.0) > 1e-8) throw InvariantError("channel_marginal_state: omega is not a unit vector");
  const ComplexMatrix w = as_square(omega, m);
  ComplexMatrix rho(n * m, n * m);
  for (const auto& k : channel.kraus()) {
    // (K (x) I) omega = vec(K Omega)
    const ComplexMatrix kw = k * w;
    ComplexVector v(kw.entries().begin(), kw.entries().end());
    rho += ComplexMatrix::outer(v, v);
  }
  rho *= 1.0 / rho.trace().real();
  return DensityState(rho);
}

ChannelBuresResult bures_channels(const QuantumChannel& a, const QuantumChannel& b, const BuresOptions& options) {
  require_ucp_pair(a, b, "bures_channels");
  const std::size_t m = a.output_dimension();
  const FidelityObjective obj(a, b);
  ChannelBuresResult res;
  double best_f = 2.0;
  std::vector<ComplexVector> ends;
  std::size_t quiet = 0;
  for (std::size_t restart = 0; restart < std::max<std::size_t>(1, options.restarts); ++restart) {
    Rng rng = trial_rng(options.seed, restart);
    ComplexVector start;
    if (restart == 0) {
      start.assign(m * m, 0.0);
      for (std::size_t i = 0; i < m; ++i) start[i * m + i] = 1.0 / std::sqrt(double(m));
    } else {
      start = random_unit_vector(rng, m * m);
    }
    auto [omega, f] = minimize_fidelity(obj, std::move(start), rng, options.descent_steps);
    ++res.restarts;
    const double improvement = best_f - f;
    if (f < best_f) {
      best_f = f;
      res.omega = omega;
    }
    ends.push_back(std::move(omega));
    quiet = improvement < options.min_improvement ? quiet + 1 : 0;
    if (m == 1 || quiet >= options.patience) break;
  }
  res.sqrt_fidelity = clamp_checked(best_f, 0.0, 1.0, "bures_channels");
  res.beta = std::sqrt(std::max(0.0, 2.0 - 2.0 * res.sqrt_fidelity));
  for (const auto& w : ends) {
    const DensityState r1 = channel_marginal_state(a, w);
    const DensityState r2 = channel_marginal_state(b, w);
    res.cb_lower = std::max(res.cb_lower, trace_norm(r1.rho() - r2.rho()));
  }
  res.cb_lower = std::min(res.cb_lower, 2.0);
  return res;
}

MetricReport gamma_channels(const QuantumChannel& a, const QuantumChannel& b, const BuresOptions& options) {
  require_ucp_pair(a, b, "gamma_channels");
  for (const QuantumChannel* c : {&a, &b}) {
    if (c->range_algebra() && !is_factor(*c->range_algebra())) {
      throw InvariantError("gamma_channels: range algebra is not a full matrix algebra");
    }
  }
  const ChannelBuresResult br = bures_channels(a, b, options);
  MetricReport r;
  r.beta = br.beta;
  r.gamma = gamma_from_beta(br.beta);
  r.cb_lower = br.cb_lower;
  r.cb_upper = 2.0 * std::sqrt(br.cb_lower);
  r.witness_omega = br.omega;
  r.beta_provenance = "optimizer";
  r.cb_provenance = "optimizer";
  r.restarts = br.restarts;
  return r;
}

AmpliationCheck check_ampliation(const DensityState& rho, const DensityState& sigma, std::size_t k) {
  if (k != 2 && k != 3) throw DomainError("check_ampliation: k must be 2 or 3");
  AmpliationCheck c;
  c.gamma_base = gamma_states(rho, sigma).gamma;
  const QuantumChannel a = QuantumChannel::from_state(rho).ampliation(k);
  const QuantumChannel b = QuantumChannel::from_state(sigma).ampliation(k);
  c.gamma_ampliated = gamma_channels(a, b).gamma;
  c.agree = std::abs(c.gamma_base - c.gamma_ampliated) <= 1e-3;
  return c;
}

CompositionCheck check_composition(const DensityState& rho, const DensityState& sigma, const QuantumChannel& psi) {
  if (rho.dimension() != sigma.dimension()) throw DimensionError("check_composition: dimension mismatch");
  if (psi.output_dimension() != rho.dimension()) {
    throw DimensionError("check_composition: psi must map into M_" + std::to_string(rho.dimension()));
  }
  CompositionCheck c;
  c.gamma_before = gamma_states(rho, sigma).gamma;
  const DensityState r2(psi.apply_dual(rho.rho()));
  const DensityState s2(psi.apply_dual(sigma.rho()));
  c.gamma_after = gamma_states(r2, s2).gamma;
  c.contracted = c.gamma_after <= c.gamma_before + 1e-6;
  return c;
}

// ---------------------------------------------------------------------------
// Examples

namespace {

InequalityCheck compare(std::string name, double lhs, const char* rel, double rhs, double tol = 0.0) {
  InequalityCheck c{std::move(name), lhs, rhs, rel, tol, false};
  const std::string r(rel);
  if (r == "<") c.holds = lhs < rhs;
  else if (r == ">") c.holds = lhs > rhs;
  else c.holds = std::abs(lhs - rhs) <= tol;
  return c;
}

// Golden-section minimization of a unimodal f on [lo, hi].
template <class F>
std::pair<double, double> golden(F f, double lo, double hi, double tol) {
  const double g = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = lo, b = hi;
  double c = b - g * (b - a), d = a + g * (b - a);
  double fc = f(c), fd = f(d);
  while (b - a > tol) {
    if (fc <= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - g * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + g * (b - a);
      fd = f(d);
    }
  }
  const double x = (a + b) / 2.0;
  return {x, f(x)};
}

}  // namespace

ExampleReport example_unitary_conjugation(double theta) {
  if (!(theta > 0.0 && theta < std::numbers::pi / 2.0)) {
    throw DomainError("example_unitary_conjugation: theta must lie in (0, pi/2)");
  }
  ExampleReport rep;
  rep.name = "unitary-conjugation";
  rep.theta = theta;
  const double s = std::sin(theta), c = std::cos(theta);
  const ComplexMatrix d = ComplexMatrix::diagonal(std::vector<cplx>{std::polar(1.0, theta), std::polar(1.0, -theta)});
  const DistanceResult dist = dist_to_scalars(d);
  const double gamma_inner = 2.0 * dist.distance;
  const double beta_tilde = std::sqrt(2.0) * std::sqrt(1.0 - c);
  const double gamma_tilde = 2.0 * std::sqrt(1.0 - c * c);
  const double gamma_tilde_formula = beta_tilde * std::sqrt(4.0 - beta_tilde * beta_tilde);

  rep.quantities = {
      {"gamma_inner", gamma_inner, 1e-8, "optimizer", "2*dist_to_scalars(diag(e^{i theta}, e^{-i theta}))", false},
      {"gamma_inner_closed_form", 2.0 * s, 0.0, "formula", "|lambda - conj(lambda)| = 2 sin theta", false},
      {"beta_tilde", beta_tilde, 0.0, "formula", "sqrt(2) (1 - Re lambda)^{1/2}", false},
      {"gamma_tilde", gamma_tilde, 0.0, "formula", "2 sqrt(1 - (Re lambda)^2)", false},
      {"gamma_tilde_from_beta", gamma_tilde_formula, 1e-9, "formula", "beta_tilde sqrt(4 - beta_tilde^2)", false},
  };
  // Finite-dimensional analogue: id versus a -> u^* a u on M_2.
  const QuantumChannel id = QuantumChannel::identity(2);
  const QuantumChannel ad = QuantumChannel::unitary_conjugation(d);
  const ChannelBuresResult br = bures_channels(id, ad);
  rep.quantities.push_back({"beta_channels_analogue", br.beta, 1e-7, "optimizer", "bures_channels(id, Ad_u) on M_2", true});
  rep.quantities.push_back(
      {"gamma_channels_analogue", gamma_from_beta(br.beta), 1e-6, "optimizer", "gamma_channels(id, Ad_u) on M_2", true});

  rep.inequality_checks = {
      compare("gamma_inner < 2", gamma_inner, "<", 2.0),
      compare("gamma_inner = 2 sin theta", gamma_inner, "=", 2.0 * s, 1e-8),
      compare("gamma_tilde = beta_tilde sqrt(4 - beta_tilde^2)", gamma_tilde, "=", gamma_tilde_formula, 1e-9),
      compare("beta_channels_analogue = beta_tilde", br.beta, "=", beta_tilde, 1e-6),
  };
  return rep;
}

ExampleReport example_two(double theta) {
  if (!(theta > 0.0 && theta < std::numbers::pi / 4.0)) {
    throw DomainError("example_two: theta must lie in (0, pi/4)");
  }
  ExampleReport rep;
  rep.name = "example-two";
  rep.theta = theta;
  const double s = std::sin(theta), c = std::cos(theta);

  // u = e^{i theta} p + e^{-i theta} (1 - p) on C^8 with rank p = 4.
  std::vector<cplx> diag(8);
  for (std::size_t i = 0; i < 8; ++i) diag[i] = std::polar(1.0, i < 4 ? theta : -theta);
  const ComplexMatrix u = ComplexMatrix::diagonal(diag);
  const ComplexMatrix half = (u + ComplexMatrix::identity(8)) * 0.5;
  auto objective = [&](double x, double y) {
    const ComplexMatrix a = ComplexMatrix::identity(8) - hermitian_part(half * cplx(x, y));
    return std::sqrt(2.0) * std::sqrt(operator_norm(a));
  };
  // The objective is convex in lambda, so the partial minimum over y is convex in x.
  double best_y = 0.0;
  auto inner_min = [&](double x) {
    const double h = std::sqrt(std::max(0.0, 1.0 - x * x));
    auto [y, v] = golden([&](double yy) { return objective(x, yy); }, -h, h, 1e-11);
    best_y = y;
    return v;
  };
  auto [x_star, beta_min] = golden(inner_min, -1.0, 1.0, 1e-11);
  inner_min(x_star);
  const double y_star = best_y;

  const double beta_tilde = std::sqrt(1.0 - c);
  const double gamma_tilde = std::sqrt((3.0 + c) * (1.0 - c));
  const double lower = 2.0 * s / std::sqrt(1.0 + s * s);
  // lower bound as 2 sqrt(min_r r^2 sin^2 + (1 - r)^2)
  auto [r_star, fmin] = golden([&](double r) { return r * r * s * s + (1.0 - r) * (1.0 - r); }, 0.0, 1.0, 1e-12);
  (void)r_star;
  const double lower_recomputed = 2.0 * std::sqrt(fmin);
  const double upper = 2.0 * s;
  const double middle = 2.0 * std::sqrt(1.0 - c);

  rep.quantities = {
      {"beta_tilde", beta_tilde, 0.0, "formula", "sqrt(1 - cos theta)", false},
      {"beta_tilde_recomputed", beta_min, 1e-6, "optimizer",
       "min over |lambda| <= 1 of sqrt(2) ||I - Re(lambda (u + I)/2)||^{1/2}, dim 8", true},
      {"lambda_star_re", x_star, 1e-6, "optimizer", "minimizer of the lambda search", true},
      {"lambda_star_im", y_star, 1e-6, "optimizer", "minimizer of the lambda search", true},
      {"gamma_tilde", gamma_tilde, 0.0, "formula", "sqrt((3 + cos theta)(1 - cos theta))", false},
      {"gamma_tilde_from_beta", gamma_from_beta(beta_tilde), 1e-9, "formula", "beta_tilde sqrt(4 - beta_tilde^2)", false},
      {"lower_bound", lower, 0.0, "formula", "2 sin theta / sqrt(1 + sin^2 theta)", false},
      {"lower_bound_recomputed", lower_recomputed, 1e-8, "optimizer", "2 sqrt(min_r r^2 sin^2 theta + (1 - r)^2)", false},
      {"upper_bound", upper, 0.0, "formula", "2 sin theta", false},
  };
  rep.inequality_checks = {
      compare("2 sin theta > lower_bound", upper, ">", lower),
      compare("lower_bound > 2 sqrt(1 - cos theta)", lower, ">", middle),
      compare("2 sin theta / sqrt(1 + cos theta) = 2 sqrt(1 - cos theta)", 2.0 * s / std::sqrt(1.0 + c), "=", middle,
              1e-12),
      compare("2 sqrt(1 - cos theta) > gamma_tilde", middle, ">", gamma_tilde),
      compare("lambda_star = 1", std::abs(cplx(x_star, y_star) - 1.0), "=", 0.0, 1e-6),
      compare("beta_tilde_recomputed = beta_tilde", beta_min, "=", beta_tilde, 1e-6),
      compare("lower_bound_recomputed = lower_bound", lower_recomputed, "=", lower, 1e-8),
  };
  return rep;
}

}  // namespace cpmetric
