#pragma once

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace cpmetric {

using cplx = std::complex<double>;
using ComplexVector = std::vector<cplx>;
using RealVector = std::vector<double>;

/// Dense complex matrix, row-major.
class ComplexMatrix {
 public:
  ComplexMatrix() = default;
  /// Zero matrix.
  ComplexMatrix(std::size_t rows, std::size_t cols);
  /// Takes ownership of `entries` (row-major). Throws DimensionError on a size
  /// mismatch and InvariantError on NaN/Inf entries.
  ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<cplx> entries);
  ComplexMatrix(std::initializer_list<std::initializer_list<cplx>> rows);

  static ComplexMatrix identity(std::size_t n);
  static ComplexMatrix zeros(std::size_t rows, std::size_t cols) { return {rows, cols}; }
  static ComplexMatrix diagonal(std::span<const cplx> diag);
  static ComplexMatrix diagonal(std::span<const double> diag);
  /// Matrix unit E_ij of size n x n.
  static ComplexMatrix unit(std::size_t n, std::size_t i, std::size_t j);
  static ComplexMatrix column(std::span<const cplx> v);
  /// x y^*
  static ComplexMatrix outer(std::span<const cplx> x, std::span<const cplx> y);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  std::size_t size() const noexcept { return data_.size(); }
  bool is_square() const noexcept { return rows_ == cols_; }
  bool empty() const noexcept { return data_.empty(); }

  cplx& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const cplx& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  std::span<cplx> entries() noexcept { return data_; }
  std::span<const cplx> entries() const noexcept { return data_; }

  ComplexMatrix adjoint() const;
  ComplexMatrix transpose() const;
  ComplexMatrix conj() const;
  cplx trace() const;

  ComplexMatrix block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const;
  void set_block(std::size_t r0, std::size_t c0, const ComplexMatrix& b);
  ComplexVector col(std::size_t j) const;
  void set_col(std::size_t j, std::span<const cplx> v);

  ComplexMatrix& operator+=(const ComplexMatrix& o);
  ComplexMatrix& operator-=(const ComplexMatrix& o);
  ComplexMatrix& operator*=(cplx s);

  bool all_finite() const noexcept;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<cplx> data_;
};

ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b);
ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b);
ComplexMatrix operator-(ComplexMatrix a);
ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix operator*(ComplexMatrix a, cplx s);
ComplexMatrix operator*(cplx s, ComplexMatrix a);
ComplexVector operator*(const ComplexMatrix& a, std::span<const cplx> v);

/// A^* B without forming A^*.
ComplexMatrix adjoint_times(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);
/// Block diagonal a (+) b.
ComplexMatrix direct_sum(const ComplexMatrix& a, const ComplexMatrix& b);
/// Hilbert-Schmidt inner product tr(A^* B).
cplx hs_inner(const ComplexMatrix& a, const ComplexMatrix& b);
double frobenius_norm(const ComplexMatrix& a);
/// (A + A^*) / 2
ComplexMatrix hermitian_part(const ComplexMatrix& a);
/// Largest |A - A^*| entry relative test helper: ||A - A^*||_F.
double hermiticity_defect(const ComplexMatrix& a);
double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b);

/// Partial trace of an operator on C^a (x) C^b over the first or second factor.
ComplexMatrix partial_trace_first(const ComplexMatrix& m, std::size_t a, std::size_t b);
ComplexMatrix partial_trace_second(const ComplexMatrix& m, std::size_t a, std::size_t b);

// Vectors. Inner products are conjugate-linear in the first slot.
cplx inner(std::span<const cplx> x, std::span<const cplx> y);
double norm(std::span<const cplx> x);
ComplexVector normalized(std::span<const cplx> x);
ComplexVector kron(std::span<const cplx> x, std::span<const cplx> y);
ComplexVector axpy(cplx a, std::span<const cplx> x, std::span<const cplx> y);  // a x + y

}  // namespace cpmetric
