#pragma once

#include <functional>
#include <optional>

#include "cpmetric/matrix.hpp"

namespace cpmetric {

/// H = Q diag(eigenvalues) Q^*, eigenvalues ascending, Q unitary.
struct SpectralDecomposition {
  RealVector eigenvalues;
  ComplexMatrix eigenvectors;

  ComplexMatrix reconstruct() const;
  double min() const { return eigenvalues.front(); }
  double max() const { return eigenvalues.back(); }
};

/// A = U diag(singular_values) V^*, singular values descending.
/// U is rows x rows, V is cols x cols, both unitary.
struct SingularValueDecomposition {
  ComplexMatrix u;
  RealVector singular_values;
  ComplexMatrix v;

  ComplexMatrix reconstruct() const;
};

struct PolarDecomposition {
  ComplexMatrix unitary;
  ComplexMatrix positive;
};

/// Cyclic complex Jacobi eigensolver for Hermitian matrices.
/// Throws DimensionError if not square, InvariantError if ||H - H^*|| exceeds
/// the construction tolerance relative to ||H||.
SpectralDecomposition herm_eig(const ComplexMatrix& h);

/// Eigenvalues only (same solver).
RealVector herm_eigenvalues(const ComplexMatrix& h);
double lambda_min(const ComplexMatrix& h);
double lambda_max(const ComplexMatrix& h);

/// SVD through the Hermitian embedding [[0, A], [A^*, 0]].
SingularValueDecomposition svd(const ComplexMatrix& a);
RealVector singular_values(const ComplexMatrix& a);

/// f applied to the spectrum of a Hermitian matrix.
ComplexMatrix herm_function(const ComplexMatrix& h, const std::function<double(double)>& f);

/// Positive square root. Eigenvalues in [-psd_clip, 0) are clipped to zero;
/// anything more negative raises InvariantError.
ComplexMatrix psd_sqrt(const ComplexMatrix& p);

/// A = V P with V unitary and P = (A^* A)^{1/2}. Singular A gets V completed
/// to a unitary on the kernel.
PolarDecomposition polar(const ComplexMatrix& a);

double operator_norm(const ComplexMatrix& a);
double trace_norm(const ComplexMatrix& a);

/// Lower-triangular L with A = L L^*, or nullopt when A is not numerically
/// positive definite.
std::optional<ComplexMatrix> cholesky(const ComplexMatrix& a);

/// Solves A X = B by LU with partial pivoting. Throws InvariantError when A is
/// singular to working precision.
ComplexMatrix solve(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix inverse(const ComplexMatrix& a);

/// Columns of `basis` extended to an orthonormal basis of C^n (modified
/// Gram-Schmidt against the standard basis). Input columns must be orthonormal.
ComplexMatrix complete_orthonormal(const ComplexMatrix& basis);

/// Orthonormalizes the columns in place order (modified Gram-Schmidt, two passes).
ComplexMatrix orthonormalize_columns(const ComplexMatrix& a);

/// ||A^*A - I||_F
double unitarity_defect(const ComplexMatrix& a);

}  // namespace cpmetric
