#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "cpmetric/channel.hpp"
#include "cpmetric/matrix.hpp"
#include "cpmetric/states.hpp"

namespace cpmetric {

/// Unital *-representation of M_n on C^K, stored on the matrix-unit basis:
/// images[i * n + j] = pi(E_ij).
class Representation {
 public:
  Representation(std::size_t algebra_dimension, std::vector<ComplexMatrix> images);

  /// a -> a (x) I_k on C^n (x) C^k
  static Representation ampliation(std::size_t n, std::size_t k);

  std::size_t algebra_dimension() const noexcept { return n_; }
  std::size_t space_dimension() const noexcept { return k_; }
  const std::vector<ComplexMatrix>& images() const noexcept { return images_; }
  const ComplexMatrix& image(std::size_t i, std::size_t j) const { return images_[i * n_ + j]; }

  ComplexMatrix apply(const ComplexMatrix& a) const;
  /// U^* pi(.) U
  Representation conjugated(const ComplexMatrix& u) const;

  /// Largest violation of unitality, multiplicativity and *-preservation on
  /// the matrix units.
  double homomorphism_defect() const;
  /// max_ij |<x, pi(E_ij) x> - tr(rho E_ij)|
  double reproduction_error(std::span<const cplx> x, const DensityState& rho) const;

 private:
  std::size_t n_;
  std::size_t k_;
  std::vector<ComplexMatrix> images_;
};

Representation direct_sum(const Representation& a, const Representation& b);

struct GnsTriple {
  Representation rep;
  ComplexVector x;
};

struct CommonRepresentation {
  Representation rep;
  ComplexVector x;
  ComplexVector y;
  cplx overlap;  ///< <x, y>
};

struct JointRepresentationTuple {
  Representation rep1;
  Representation rep2;
  ComplexVector x;
  ComplexMatrix swap;  ///< U with rep2 = U^* rep1 U
};

struct StinespringDilation {
  ComplexMatrix isometry;   ///< V: C^m -> C^n (x) C^d
  std::size_t ancilla = 0;  ///< d
};

struct DilationResult {
  ComplexMatrix t;
  ComplexMatrix w;
  ComplexMatrix v;
  ComplexMatrix defect1;  ///< (I - T^*T)^{1/2}
  ComplexMatrix defect2;  ///< (I - TT^*)^{1/2}
  double half_gap = 0.0;  ///< r = lambda_min(T + T^*) / 2
  double achieved_lambda_min = 0.0;  ///< lambda_min(V + V^*)
  std::size_t restarts_used = 0;
};

struct ChoiLiOptions {
  std::size_t restarts = 16;
  std::size_t steps = 2000;
  double accept_slack = 1e-7;  ///< success when lambda_min(V+V^*) >= 2r - accept_slack
  double fail_slack = 1e-6;    ///< best below 2r - fail_slack raises DilationSearchFailed
  std::uint64_t seed = 0x43686f69ULL;
};

struct UnitaryDistanceResult {
  ComplexMatrix u;              ///< unitary on G (+) G with U (X (+) 0) = Y (+) 0
  double bound = 0.0;           ///< sqrt(1 - r^2), or 1 when 0 lies in W(X^*Y)
  double r = 0.0;               ///< dist(0, W(X^*Y))
  double theta = 0.0;           ///< argument of the min-modulus point
  bool zero_in_numerical_range = false;
  bool identity_branch = false;  ///< Y = lambda X, U = lambda I
};

/// GNS triple for a -> tr(rho a): a (x) I_n on C^n (x) C^n, x = vec(sqrt rho).
GnsTriple gns_state(const DensityState& rho);

/// V = sum_k K_k (x) e_k with V^*(a (x) I_d)V = Phi(a).
StinespringDilation stinespring(const QuantumChannel& channel);

/// Shared GNS representation with x = vec(sqrt rho), y = vec(sqrt sigma W)
/// where W aligns the phases so that <x, y> = sqrt_fidelity(rho, sigma).
CommonRepresentation common_representation(const DensityState& rho, const DensityState& sigma);

/// Unitary with U x = y acting on span{x, y} only (up to the phase of <x,y>).
ComplexMatrix ad_unitary(std::span<const cplx> x, std::span<const cplx> y);

/// Joint representation tuple on the direct sum of the two GNS spaces.
JointRepresentationTuple joint_rep_direct_sum(const DensityState& rho, const DensityState& sigma);

/// V = [[T, -D2 W], [D1, T^* W]].
DilationResult halmos_dilation(const ComplexMatrix& t, const ComplexMatrix& w);

/// Unitary dilation with V + V^* >= lambda_min(T + T^*) I. Throws
/// DilationSearchFailed when the search budget is exhausted.
DilationResult choi_li_dilation(const ComplexMatrix& t, const ChoiLiOptions& options = {});

/// Unitary U on G (+) G with U X = Y and d(U, C) <= sqrt(1 - r^2) for
/// isometries X, Y: C^m -> C^g with ||X^*Y|| < 1.
UnitaryDistanceResult lemma_distance_unitary(const ComplexMatrix& x, const ComplexMatrix& y,
                                             const ChoiLiOptions& options = {});

/// (X (+) 0, rY (+) sqrt(1 - r^2) Y), so that ||X_r^* Y_r|| <= r < 1.
std::pair<ComplexMatrix, ComplexMatrix> subfamily_rescale(const ComplexMatrix& x, const ComplexMatrix& y,
                                                           double r = 1.0 - 1e-4);

}  // namespace cpmetric
