#pragma once

#include <cstdint>
#include <random>

#include "cpmetric/matrix.hpp"

namespace cpmetric {

using Rng = std::mt19937_64;

/// Independent generator for trial `trial` of a run seeded with `seed`.
/// Trials can be evaluated in any order (or concurrently) with identical results.
Rng trial_rng(std::uint64_t seed, std::uint64_t trial);

ComplexMatrix random_ginibre(Rng& rng, std::size_t rows, std::size_t cols);
ComplexMatrix random_hermitian(Rng& rng, std::size_t n);
/// Haar-distributed unitary (QR of a Ginibre matrix with phase correction).
ComplexMatrix random_unitary(Rng& rng, std::size_t n);
/// rows x cols isometry (cols <= rows).
ComplexMatrix random_isometry(Rng& rng, std::size_t rows, std::size_t cols);
ComplexVector random_unit_vector(Rng& rng, std::size_t n);
/// Density matrix G G^* / tr(G G^*) with G of size n x rank.
ComplexMatrix random_density(Rng& rng, std::size_t n, std::size_t rank = 0);
/// Contraction with operator norm exactly `norm_bound` (< 1 for a strict one).
ComplexMatrix random_contraction(Rng& rng, std::size_t n, double norm_bound);

}  // namespace cpmetric
