#pragma once

#include <cstddef>

#include "cpmetric/matrix.hpp"

namespace cpmetric {

/// Density matrix of a state a -> tr(rho a) on M_n.
class DensityState {
 public:
  /// Validates Hermiticity, unit trace and positivity against
  /// tolerances().state. The stored matrix is the Hermitian part of `rho`.
  explicit DensityState(const ComplexMatrix& rho);

  static DensityState pure(std::span<const cplx> psi);
  static DensityState maximally_mixed(std::size_t n);

  std::size_t dimension() const noexcept { return rho_.rows(); }
  const ComplexMatrix& rho() const noexcept { return rho_; }
  /// tr(rho a)
  cplx expectation(const ComplexMatrix& a) const;

 private:
  ComplexMatrix rho_;
};

struct StateDistanceReport {
  double sqrt_fidelity = 1.0;
  double bures = 0.0;
  double functional_cb_distance = 0.0;
};

/// ||sqrt(rho) sqrt(sigma)||_1, clamped to [0, 1].
double sqrt_fidelity(const DensityState& rho, const DensityState& sigma);
/// sqrt(2 - 2 F), clamped to [0, sqrt 2].
double bures_states(const DensityState& rho, const DensityState& sigma);
/// ||rho - sigma||_1
double functional_cb_distance(const DensityState& rho, const DensityState& sigma);

StateDistanceReport state_distances(const DensityState& rho, const DensityState& sigma);

/// Clamps `value` into [lo, hi]. Throws InvariantError when the correction
/// exceeds tolerances().clamp_diagnostic.
double clamp_checked(double value, double lo, double hi, const char* what);

}  // namespace cpmetric
