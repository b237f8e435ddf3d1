#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "cpmetric/matrix.hpp"
#include "cpmetric/operator_geometry.hpp"
#include "cpmetric/random.hpp"
#include "cpmetric/states.hpp"

namespace cpmetric {

/// Unital completely positive map Phi: M_n -> M_m (Heisenberg picture),
/// stored through its Choi matrix sum_ij E_ij (x) Phi(E_ij) on C^n (x) C^m.
class QuantumChannel {
 public:
  /// Validates positivity of the Choi matrix and Phi(I) = I against
  /// tolerances().channel.
  QuantumChannel(std::size_t n, std::size_t m, const ComplexMatrix& choi);

  /// Phi(a) = sum_k K_k^* a K_k with K_k of size n x m.
  static QuantumChannel from_kraus(std::size_t n, std::size_t m, const std::vector<ComplexMatrix>& kraus);
  static QuantumChannel identity(std::size_t n);
  /// a -> u^* a u
  static QuantumChannel unitary_conjugation(const ComplexMatrix& u);
  /// a -> tr(a)/n I_n
  static QuantumChannel depolarizing(std::size_t n);
  /// The state as a UCP map M_n -> C = M_1; its Choi matrix is rho^T.
  static QuantumChannel from_state(const DensityState& rho);

  std::size_t input_dimension() const noexcept { return n_; }
  std::size_t output_dimension() const noexcept { return m_; }
  const ComplexMatrix& choi() const noexcept { return choi_; }

  /// Phi(E_ij) = (i, j) block of the Choi matrix.
  ComplexMatrix image_of_unit(std::size_t i, std::size_t j) const;
  ComplexMatrix apply(const ComplexMatrix& a) const;
  /// Schrodinger dual Phi_*: tr(Phi_*(rho) a) = tr(rho Phi(a)).
  ComplexMatrix apply_dual(const ComplexMatrix& rho) const;

  /// Minimal Kraus operators (one per Choi eigenvalue above 1e-10 relative).
  const std::vector<ComplexMatrix>& kraus() const noexcept { return kraus_; }
  std::size_t kraus_rank() const noexcept { return kraus_.size(); }

  /// Phi^(k) = id_k (x) Phi : M_k(M_n) -> M_k(M_m).
  QuantumChannel ampliation(std::size_t k) const;

  /// Sub-algebra of M_m that contains the range. When absent the range is
  /// treated as all of M_m.
  const std::optional<StarAlgebraPresentation>& range_algebra() const noexcept { return range_; }
  QuantumChannel with_range_algebra(StarAlgebraPresentation range) const;

 private:
  std::size_t n_;
  std::size_t m_;
  ComplexMatrix choi_;
  std::vector<ComplexMatrix> kraus_;
  std::optional<StarAlgebraPresentation> range_;
};

/// psi o phi, where phi: M_n -> M_m and psi: M_m -> M_k.
QuantumChannel compose(const QuantumChannel& psi, const QuantumChannel& phi);

/// Random UCP map M_n -> M_m with `kraus_count` Kraus operators
/// K_k = G_k S^{-1/2}, S = sum G_k^* G_k.
QuantumChannel random_ucp_channel(Rng& rng, std::size_t n, std::size_t m, std::size_t kraus_count);

}  // namespace cpmetric
