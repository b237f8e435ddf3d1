#include "cpmetric/random.hpp"

#include <cmath>

#include "cpmetric/error.hpp"
#include "cpmetric/linalg.hpp"

namespace cpmetric {

Rng trial_rng(std::uint64_t seed, std::uint64_t trial) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(trial), static_cast<std::uint32_t>(trial >> 32),
                    0x9e3779b9u};
  return Rng(seq);
}

ComplexMatrix random_ginibre(Rng& rng, std::size_t rows, std::size_t cols) {
  std::normal_distribution<double> g(0.0, 1.0);
  ComplexMatrix m(rows, cols);
  for (auto& z : m.entries()) {
    const double re = g(rng);
    const double im = g(rng);
    z = cplx(re, im) / std::sqrt(2.0);
  }
  return m;
}

ComplexMatrix random_hermitian(Rng& rng, std::size_t n) {
  return hermitian_part(random_ginibre(rng, n, n));
}

ComplexMatrix random_unitary(Rng& rng, std::size_t n) {
  return orthonormalize_columns(random_ginibre(rng, n, n));
}

ComplexMatrix random_isometry(Rng& rng, std::size_t rows, std::size_t cols) {
  if (cols > rows) throw DimensionError("random_isometry: cols > rows");
  return orthonormalize_columns(random_ginibre(rng, rows, cols));
}

ComplexVector random_unit_vector(Rng& rng, std::size_t n) {
  ComplexMatrix g = random_ginibre(rng, n, 1);
  return normalized(g.entries());
}

ComplexMatrix random_density(Rng& rng, std::size_t n, std::size_t rank) {
  if (rank == 0 || rank > n) rank = n;
  ComplexMatrix g = random_ginibre(rng, n, rank);
  ComplexMatrix rho = g * g.adjoint();
  rho *= 1.0 / rho.trace().real();
  return hermitian_part(rho);
}

ComplexMatrix random_contraction(Rng& rng, std::size_t n, double norm_bound) {
  ComplexMatrix g = random_ginibre(rng, n, n);
  const double s = operator_norm(g);
  g *= norm_bound / s;
  return g;
}

}  // namespace cpmetric
