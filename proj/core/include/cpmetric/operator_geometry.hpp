#pragma once

#include <cstddef>
#include <vector>

#include "cpmetric/matrix.hpp"

namespace cpmetric {

/// A *-subalgebra of M_n given by generators. Adjoints are implied: the
/// generated algebra is the smallest *-algebra containing the generators.
class StarAlgebraPresentation {
 public:
  StarAlgebraPresentation(std::size_t dimension, std::vector<ComplexMatrix> generators);

  std::size_t dimension() const noexcept { return dimension_; }
  const std::vector<ComplexMatrix>& generators() const noexcept { return generators_; }

  /// The generators together with their adjoints, as Hermitian elements
  /// (A + A^*)/2 and (A - A^*)/2i with negligible ones dropped.
  std::vector<ComplexMatrix> hermitian_generators() const;

 private:
  std::size_t dimension_;
  std::vector<ComplexMatrix> generators_;
};

/// Complex linear span of n x n matrices, stored with a Hilbert-Schmidt
/// orthonormal basis.
class SubspaceBasis {
 public:
  /// Orthonormalizes `spanning` (dependent members are dropped). Throws if the
  /// retained members are too ill-conditioned (Gram condition above 1e8).
  SubspaceBasis(std::size_t dimension, const std::vector<ComplexMatrix>& spanning);

  static SubspaceBasis full(std::size_t dimension);
  static SubspaceBasis scalars(std::size_t dimension);

  std::size_t ambient_dimension() const noexcept { return dimension_; }
  std::size_t size() const noexcept { return basis_.size(); }
  const std::vector<ComplexMatrix>& basis() const noexcept { return basis_; }

  /// Orthogonal (Hilbert-Schmidt) projection onto the span.
  ComplexMatrix project(const ComplexMatrix& x) const;
  /// ||x - project(x)||_F
  double distance_hs(const ComplexMatrix& x) const;
  bool contains(const ComplexMatrix& x, double tol) const;

 private:
  SubspaceBasis() = default;
  std::size_t dimension_ = 0;
  std::vector<ComplexMatrix> basis_;
};

struct DistanceResult {
  double distance = 0.0;      ///< ||target - witness||
  ComplexMatrix witness;      ///< minimizer X (lambda I for scalars)
  cplx scalar = 0.0;          ///< lambda when the subspace is the scalars
  std::size_t iterations = 0; ///< Newton steps of the barrier path
  double lower_bound = 0.0;   ///< dual certificate
  double certified_gap = 0.0; ///< distance - lower_bound, >= 0
};

struct NumericalRangeSummary {
  std::vector<cplx> boundary;          ///< <v, T v> for the top eigenvector per direction
  std::vector<ComplexVector> vectors;  ///< the unit vectors v
  std::vector<double> angles;
  cplx min_modulus_point = 0.0;        ///< r e^{i theta}
  double min_modulus = 0.0;            ///< r = dist(0, closure of W(T))
  double min_modulus_angle = 0.0;      ///< theta
  bool contains_zero = false;          ///< 0 in W(T): min_modulus reported as 0
};

/// Commutant of the *-algebra generated by `alg`: all X with [X, A] = 0 and
/// [X, A^*] = 0 for every generator A. Basis is Hilbert-Schmidt orthonormal.
SubspaceBasis commutant(const StarAlgebraPresentation& alg);

/// min over complex lambda of ||T - lambda I||.
DistanceResult dist_to_scalars(const ComplexMatrix& t);

/// min over X in span(S) of ||T - X||, certified by a dual bound.
DistanceResult dist_to_subspace(const ComplexMatrix& t, const SubspaceBasis& s);

/// Support-function description of the numerical range and the point of
/// smallest modulus in its closure.
NumericalRangeSummary numerical_range(const ComplexMatrix& t, std::size_t angle_count = 64);

}  // namespace cpmetric
