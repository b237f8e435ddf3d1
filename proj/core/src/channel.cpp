#include "cpmetric/channel.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "cpmetric/error.hpp"
#include "cpmetric/linalg.hpp"
#include "cpmetric/tolerance.hpp"

namespace cpmetric {

namespace {

ComplexMatrix choi_from_kraus(std::size_t n, std::size_t m, const std::vector<ComplexMatrix>& kraus) {
  ComplexMatrix c(n * m, n * m);
  for (const auto& k : kraus) {
    // C[(i,p),(j,q)] = sum_k conj(K[i,p]) K[j,q]
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t p = 0; p < m; ++p) {
        const cplx a = std::conj(k(i, p));
        if (a == 0.0) continue;
        for (std::size_t j = 0; j < n; ++j)
          for (std::size_t q = 0; q < m; ++q) c(i * m + p, j * m + q) += a * k(j, q);
      }
  }
  return c;
}

}  // namespace

QuantumChannel::QuantumChannel(std::size_t n, std::size_t m, const ComplexMatrix& choi) : n_(n), m_(m) {
  if (n == 0 || m == 0) throw DimensionError("QuantumChannel: zero dimension");
  if (choi.rows() != n * m || choi.cols() != n * m) {
    throw DimensionError("QuantumChannel: Choi matrix must be " + std::to_string(n * m) + "x" +
                         std::to_string(n * m));
  }
  const double tol = tolerances().channel;
  const double scale = std::max(1.0, frobenius_norm(choi));
  if (hermiticity_defect(choi) > tol * scale) throw InvariantError("QuantumChannel: Choi matrix is not Hermitian");
  choi_ = hermitian_part(choi);
  SpectralDecomposition eig = herm_eig(choi_);
  if (eig.min() < -tol * scale) throw InvariantError("QuantumChannel: Choi matrix is not positive (map is not CP)");

  ComplexMatrix unit_image(m, m);
  for (std::size_t i = 0; i < n; ++i) unit_image += choi_.block(i * m, i * m, m, m);
  if (frobenius_norm(unit_image - ComplexMatrix::identity(m)) > tol * scale) {
    throw InvariantError("QuantumChannel: Phi(I) != I (map is not unital)");
  }

  const double cut = 1e-10 * std::max(1.0, eig.max());
  for (std::size_t k = eig.eigenvalues.size(); k-- > 0;) {
    const double lam = eig.eigenvalues[k];
    if (lam <= cut) break;
    const double w = std::sqrt(lam);
    ComplexMatrix kr(n, m);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t p = 0; p < m; ++p) kr(i, p) = std::conj(w * eig.eigenvectors(i * m + p, k));
    kraus_.push_back(std::move(kr));
  }
}

QuantumChannel QuantumChannel::from_kraus(std::size_t n, std::size_t m, const std::vector<ComplexMatrix>& kraus) {
  if (kraus.empty()) throw InvariantError("from_kraus: empty Kraus list");
  for (const auto& k : kraus) {
    if (k.rows() != n || k.cols() != m) {
      throw DimensionError("from_kraus: Kraus operators must be " + std::to_string(n) + "x" + std::to_string(m));
    }
  }
  return QuantumChannel(n, m, choi_from_kraus(n, m, kraus));
}

QuantumChannel QuantumChannel::identity(std::size_t n) {
  return from_kraus(n, n, {ComplexMatrix::identity(n)});
}

QuantumChannel QuantumChannel::unitary_conjugation(const ComplexMatrix& u) {
  if (!u.is_square()) throw DimensionError("unitary_conjugation: matrix is not square");
  if (unitarity_defect(u) > 1e-9) throw InvariantError("unitary_conjugation: matrix is not unitary");
  return from_kraus(u.rows(), u.rows(), {u});
}

QuantumChannel QuantumChannel::depolarizing(std::size_t n) {
  // Choi of a -> tr(a)/n I is sum_i E_ii (x) I/n = I/n.
  return QuantumChannel(n, n, ComplexMatrix::identity(n * n) * (1.0 / double(n)));
}

QuantumChannel QuantumChannel::from_state(const DensityState& rho) {
  const std::size_t n = rho.dimension();
  return QuantumChannel(n, 1, rho.rho().transpose());
}

ComplexMatrix QuantumChannel::image_of_unit(std::size_t i, std::size_t j) const {
  return choi_.block(i * m_, j * m_, m_, m_);
}

ComplexMatrix QuantumChannel::apply(const ComplexMatrix& a) const {
  if (a.rows() != n_ || a.cols() != n_) throw DimensionError("QuantumChannel::apply: shape mismatch");
  ComplexMatrix out(m_, m_);
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = 0; j < n_; ++j) {
      const cplx aij = a(i, j);
      if (aij == 0.0) continue;
      for (std::size_t p = 0; p < m_; ++p)
        for (std::size_t q = 0; q < m_; ++q) out(p, q) += aij * choi_(i * m_ + p, j * m_ + q);
    }
  return out;
}

ComplexMatrix QuantumChannel::apply_dual(const ComplexMatrix& rho) const {
  if (rho.rows() != m_ || rho.cols() != m_) throw DimensionError("QuantumChannel::apply_dual: shape mismatch");
  ComplexMatrix out(n_, n_);
  for (const auto& k : kraus_) out += k * rho * k.adjoint();
  return out;
}

QuantumChannel QuantumChannel::ampliation(std::size_t k) const {
  if (k == 0) throw DimensionError("ampliation: k must be positive");
  std::vector<ComplexMatrix> kr;
  kr.reserve(kraus_.size());
  const ComplexMatrix ik = ComplexMatrix::identity(k);
  for (const auto& op : kraus_) kr.push_back(kron(ik, op));
  return from_kraus(k * n_, k * m_, kr);
}

QuantumChannel QuantumChannel::with_range_algebra(StarAlgebraPresentation range) const {
  if (range.dimension() != m_) throw DimensionError("with_range_algebra: algebra must act on C^m");
  QuantumChannel c = *this;
  c.range_ = std::move(range);
  return c;
}

QuantumChannel compose(const QuantumChannel& psi, const QuantumChannel& phi) {
  if (phi.output_dimension() != psi.input_dimension()) {
    throw DimensionError("compose: phi maps into M_" + std::to_string(phi.output_dimension()) +
                         " but psi is defined on M_" + std::to_string(psi.input_dimension()));
  }
  std::vector<ComplexMatrix> kr;
  for (const auto& k : phi.kraus())
    for (const auto& l : psi.kraus()) kr.push_back(k * l);
  return QuantumChannel::from_kraus(phi.input_dimension(), psi.output_dimension(), kr);
}

QuantumChannel random_ucp_channel(Rng& rng, std::size_t n, std::size_t m, std::size_t kraus_count) {
  if (kraus_count == 0) throw DimensionError("random_ucp_channel: kraus_count must be positive");
  if (kraus_count * n < m) throw DimensionError("random_ucp_channel: too few Kraus operators to be unital");
  std::vector<ComplexMatrix> g;
  ComplexMatrix s(m, m);
  for (std::size_t k = 0; k < kraus_count; ++k) {
    g.push_back(random_ginibre(rng, n, m));
    s += adjoint_times(g.back(), g.back());
  }
  const ComplexMatrix s_inv_half = herm_function(hermitian_part(s), [](double x) { return 1.0 / std::sqrt(x); });
  for (auto& op : g) op = op * s_inv_half;
  return QuantumChannel::from_kraus(n, m, g);
}

}  // namespace cpmetric
