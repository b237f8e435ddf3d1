#include "cpmetric/states.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "cpmetric/error.hpp"
#include "cpmetric/linalg.hpp"
#include "cpmetric/tolerance.hpp"

namespace cpmetric {

DensityState::DensityState(const ComplexMatrix& rho) {
  if (!rho.is_square() || rho.rows() == 0) throw DimensionError("DensityState: matrix is not square");
  const double tol = tolerances().state;
  if (hermiticity_defect(rho) > tol * std::max(1.0, frobenius_norm(rho))) {
    throw InvariantError("DensityState: matrix is not Hermitian");
  }
  rho_ = hermitian_part(rho);
  const double tr = rho_.trace().real();
  if (std::abs(tr - 1.0) > tol) {
    throw InvariantError("DensityState: trace is " + std::to_string(tr) + ", expected 1");
  }
  if (lambda_min(rho_) < -tol) throw InvariantError("DensityState: matrix is not positive semidefinite");
}

DensityState DensityState::pure(std::span<const cplx> psi) {
  ComplexVector v = normalized(psi);
  return DensityState(ComplexMatrix::outer(v, v));
}

DensityState DensityState::maximally_mixed(std::size_t n) {
  return DensityState(ComplexMatrix::identity(n) * (1.0 / double(n)));
}

cplx DensityState::expectation(const ComplexMatrix& a) const {
  if (a.rows() != dimension() || a.cols() != dimension()) {
    throw DimensionError("DensityState::expectation: shape mismatch");
  }
  cplx s = 0.0;
  for (std::size_t i = 0; i < dimension(); ++i)
    for (std::size_t j = 0; j < dimension(); ++j) s += rho_(i, j) * a(j, i);
  return s;
}

double clamp_checked(double value, double lo, double hi, const char* what) {
  const double c = std::clamp(value, lo, hi);
  if (std::abs(c - value) > tolerances().clamp_diagnostic) {
    throw InvariantError(std::string(what) + ": value " + std::to_string(value) +
                         " lies outside its valid range");
  }
  return c;
}

namespace {

void require_same_dimension(const DensityState& a, const DensityState& b, const char* op) {
  if (a.dimension() != b.dimension()) {
    throw DimensionError(std::string(op) + ": states of dimension " + std::to_string(a.dimension()) +
                         " and " + std::to_string(b.dimension()));
  }
}

}  // namespace

double sqrt_fidelity(const DensityState& rho, const DensityState& sigma) {
  require_same_dimension(rho, sigma, "sqrt_fidelity");
  const ComplexMatrix a = psd_sqrt(rho.rho());
  const ComplexMatrix b = psd_sqrt(sigma.rho());
  // Both orders, so swapping the arguments gives a bitwise-identical value.
  const double f = 0.5 * (trace_norm(a * b) + trace_norm(b * a));
  return clamp_checked(f, 0.0, 1.0, "sqrt_fidelity");
}

double bures_states(const DensityState& rho, const DensityState& sigma) {
  const double f = sqrt_fidelity(rho, sigma);
  return std::sqrt(std::max(0.0, 2.0 - 2.0 * f));
}

double functional_cb_distance(const DensityState& rho, const DensityState& sigma) {
  require_same_dimension(rho, sigma, "functional_cb_distance");
  return clamp_checked(trace_norm(rho.rho() - sigma.rho()), 0.0, 2.0, "functional_cb_distance");
}

StateDistanceReport state_distances(const DensityState& rho, const DensityState& sigma) {
  StateDistanceReport r;
  r.sqrt_fidelity = sqrt_fidelity(rho, sigma);
  r.bures = std::sqrt(std::max(0.0, 2.0 - 2.0 * r.sqrt_fidelity));
  r.functional_cb_distance = functional_cb_distance(rho, sigma);
  return r;
}

}  // namespace cpmetric
