#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "cpmetric/channel.hpp"
#include "cpmetric/matrix.hpp"
#include "cpmetric/states.hpp"

namespace cpmetric {

/// beta sqrt(4 - beta^2)
double gamma_from_beta(double beta);
/// sqrt(2 - sqrt(4 - gamma^2)), the inverse on [0, sqrt 2].
double beta_from_gamma(double gamma);

struct MetricReport {
  double beta = 0.0;
  double gamma = 0.0;
  std::optional<double> gamma_constructive;
  std::optional<double> certified_gap;  ///< of the commutant-distance optimizer
  double cb_lower = 0.0;                ///< ||phi1 - phi2||_cb (or a certified lower bound)
  double cb_upper = 0.0;                ///< 2 sqrt(cb_lower)
  std::optional<ComplexMatrix> witness_unitary;
  std::optional<ComplexMatrix> witness_commutant;
  std::optional<ComplexVector> witness_omega;
  std::string beta_provenance = "formula";
  std::string cb_provenance = "formula";
  std::size_t restarts = 0;
};

struct NamedQuantity {
  std::string name;
  double value = 0.0;
  double tolerance = 0.0;
  std::string provenance;  ///< formula | optimizer | oracle
  std::string source;      ///< operation that produced the value
  bool analogue = false;   ///< finite-dimensional stand-in
};

struct InequalityCheck {
  std::string name;
  double lhs = 0.0;
  double rhs = 0.0;
  std::string relation;  ///< "<", ">", "=" (within tolerance)
  double tolerance = 0.0;
  bool holds = false;
};

struct ExampleReport {
  std::string name;
  double theta = 0.0;
  std::vector<NamedQuantity> quantities;
  std::vector<InequalityCheck> inequality_checks;

  const NamedQuantity& quantity(const std::string& key) const;
  bool all_hold() const;
};

/// Closed form: beta from the Uhlmann overlap, gamma = beta sqrt(4 - beta^2),
/// cb distance = ||rho - sigma||_1.
MetricReport gamma_states(const DensityState& rho, const DensityState& sigma);

/// 2 d(U, pi(M_n)') for the intertwining unitary U of the optimal common
/// representation. Requires n <= 8. Throws CertificationError when the
/// distance optimizer's certified gap exceeds 1e-5.
MetricReport gamma_states_constructive(const DensityState& rho, const DensityState& sigma);

/// State a (x) b -> <omega, (Phi(a) (x) b) omega> on M_n (x) M_m.
DensityState channel_marginal_state(const QuantumChannel& channel, std::span<const cplx> omega);

struct BuresOptions {
  std::size_t restarts = 32;
  std::size_t patience = 5;        ///< stop after this many restarts improving by < min_improvement
  double min_improvement = 1e-7;
  std::size_t descent_steps = 400;
  std::uint64_t seed = 0x42757265ULL;
};

struct ChannelBuresResult {
  double beta = 0.0;
  double sqrt_fidelity = 1.0;
  ComplexVector omega;
  double cb_lower = 0.0;  ///< max ||rho1^w - rho2^w||_1 over the restart end points
  std::size_t restarts = 0;
};

/// sup over unit omega in C^m (x) C^m of the Bures distance of the two
/// marginal states (multi-restart descent on the fidelity).
ChannelBuresResult bures_channels(const QuantumChannel& a, const QuantumChannel& b, const BuresOptions& options = {});

/// gamma = beta sqrt(4 - beta^2) for channels whose range algebra is a
/// full matrix algebra (a factor); refuses otherwise.
MetricReport gamma_channels(const QuantumChannel& a, const QuantumChannel& b, const BuresOptions& options = {});

struct AmpliationCheck {
  double gamma_base = 0.0;
  double gamma_ampliated = 0.0;
  bool agree = false;
};
/// gamma of two states against gamma of their k-fold ampliations, k in {2, 3}.
AmpliationCheck check_ampliation(const DensityState& rho, const DensityState& sigma, std::size_t k);

struct CompositionCheck {
  double gamma_before = 0.0;
  double gamma_after = 0.0;
  bool contracted = false;
};
/// gamma(phi1 o psi, phi2 o psi) against gamma(phi1, phi2) for states phi_i on
/// M_n and a UCP map psi: M_k -> M_n. The composed states have densities
/// psi_*(rho), psi_*(sigma).
CompositionCheck check_composition(const DensityState& rho, const DensityState& sigma, const QuantumChannel& psi);

/// Example with lambda = e^{i theta}, 0 < theta < pi/2.
ExampleReport example_unitary_conjugation(double theta);
/// Example with u = e^{i theta} p + e^{-i theta}(1 - p), 0 < theta < pi/4.
ExampleReport example_two(double theta);

}  // namespace cpmetric
