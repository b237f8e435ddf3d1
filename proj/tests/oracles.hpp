#pragma once

// Brute-force reference computations. They share no code path with the
// library routines they check beyond basic matrix arithmetic.

#include <vector>

#include "cpmetric/matrix.hpp"

namespace oracle {

using cpmetric::ComplexMatrix;
using cpmetric::cplx;

/// Eigenvalues of a 2x2 Hermitian matrix from the characteristic quadratic, ascending.
std::vector<double> quadratic_eigenvalues(const ComplexMatrix& h);

/// Radius of the smallest disc containing the points (all pairs and triples).
double enclosing_radius(const std::vector<cplx>& points);

/// min over a lambda grid of max_k |mu_k - lambda|, refined around the best cell.
double chebyshev_radius_grid(const std::vector<cplx>& points);

/// Distance from 0 to the convex hull of the points.
double hull_distance_to_origin(const std::vector<cplx>& points);

/// Null-space dimension of X -> ([X, G_k], [X, G_k^*])_k by Gaussian
/// elimination with complete pivoting on its matrix.
std::size_t commutant_dimension(const std::vector<ComplexMatrix>& generators);

/// max over sampled unit vectors v of |A v|, a lower bound on the operator norm.
double sampled_operator_norm(const ComplexMatrix& a, std::size_t samples, unsigned seed);

}  // namespace oracle
