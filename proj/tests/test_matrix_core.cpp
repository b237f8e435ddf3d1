#include <gtest/gtest.h>

#include <cmath>

#include "cpmetric/error.hpp"
#include "cpmetric/linalg.hpp"
#include "cpmetric/random.hpp"
#include "oracles.hpp"

using namespace cpmetric;

namespace {

constexpr std::uint64_t kSeed = 11;

double residual(const ComplexMatrix& a, const ComplexMatrix& b) { return operator_norm(a - b); }

}  // namespace

TEST(HermEig, IdentityAndDiagonal) {
  const auto e = herm_eig(ComplexMatrix::identity(2));
  EXPECT_NEAR(e.eigenvalues[0], 1.0, 1e-15);
  EXPECT_NEAR(e.eigenvalues[1], 1.0, 1e-15);
  const double d[] = {3.0, 1.0};
  const auto f = herm_eig(ComplexMatrix::diagonal(std::span<const double>(d)));
  EXPECT_NEAR(f.eigenvalues[0], 1.0, 1e-15);
  EXPECT_NEAR(f.eigenvalues[1], 3.0, 1e-15);
}

TEST(HermEig, MatchesCharacteristicQuadratic) {
  for (std::uint64_t t = 0; t < 100; ++t) {
    Rng rng = trial_rng(kSeed, t);
    const ComplexMatrix h = random_hermitian(rng, 2);
    const auto ev = herm_eigenvalues(h);
    const auto ref = oracle::quadratic_eigenvalues(h);
    EXPECT_NEAR(ev[0], ref[0], 1e-12);
    EXPECT_NEAR(ev[1], ref[1], 1e-12);
  }
}

TEST(HermEig, ReconstructsAndOrthonormal) {
  for (std::uint64_t t = 0; t < 40; ++t) {
    Rng rng = trial_rng(kSeed, t);
    const std::size_t n = 1 + t % 12;
    const ComplexMatrix h = random_hermitian(rng, n);
    const auto e = herm_eig(h);
    EXPECT_LE(residual(e.reconstruct(), h), 1e-10 * std::max(1.0, operator_norm(h)));
    EXPECT_LE(unitarity_defect(e.eigenvectors), 1e-10);
    EXPECT_TRUE(std::is_sorted(e.eigenvalues.begin(), e.eigenvalues.end()));
  }
}

TEST(HermEig, RejectsNonHermitian) {
  ComplexMatrix a = {{1.0, 2.0}, {0.0, 1.0}};
  EXPECT_THROW(herm_eig(a), InvariantError);
}

TEST(Svd, ZeroUnitaryRankOne) {
  for (double s : singular_values(ComplexMatrix(3, 3))) EXPECT_EQ(s, 0.0);
  Rng rng = trial_rng(kSeed, 0);
  for (double s : singular_values(random_unitary(rng, 4))) EXPECT_NEAR(s, 1.0, 1e-12);
  const ComplexVector x = random_unit_vector(rng, 4), y = random_unit_vector(rng, 4);
  const auto sv = singular_values(ComplexMatrix::outer(x, y));
  EXPECT_NEAR(sv[0], 1.0, 1e-12);
  for (std::size_t i = 1; i < sv.size(); ++i) EXPECT_NEAR(sv[i], 0.0, 1e-12);
}

TEST(Svd, ReconstructsRectangular) {
  for (std::uint64_t t = 0; t < 30; ++t) {
    Rng rng = trial_rng(kSeed, t);
    const ComplexMatrix a = random_ginibre(rng, 1 + t % 5, 1 + (t / 5) % 5);
    const auto d = svd(a);
    EXPECT_LE(residual(d.reconstruct(), a), 1e-10 * std::max(1.0, operator_norm(a)));
    EXPECT_TRUE(std::is_sorted(d.singular_values.rbegin(), d.singular_values.rend()));
  }
}

TEST(PsdSqrt, ScalarAndDiagonal) {
  for (double c : {0.0, 1.0, 4.0}) {
    const ComplexMatrix s = psd_sqrt(ComplexMatrix::identity(3) * cplx(c));
    EXPECT_LE(residual(s, ComplexMatrix::identity(3) * cplx(std::sqrt(c))), 1e-14);
  }
  const double d[] = {4.0, 9.0}, r[] = {2.0, 3.0};
  EXPECT_LE(residual(psd_sqrt(ComplexMatrix::diagonal(std::span<const double>(d))),
                     ComplexMatrix::diagonal(std::span<const double>(r))),
            1e-14);
}

TEST(PsdSqrt, SquaresBack) {
  for (std::uint64_t t = 0; t < 40; ++t) {
    Rng rng = trial_rng(kSeed, t);
    const std::size_t n = 1 + t % 8;
    const ComplexMatrix g = random_ginibre(rng, n, 1 + t % n);
    const ComplexMatrix p = g * g.adjoint();
    const ComplexMatrix s = psd_sqrt(p);
    EXPECT_LE(residual(s * s, p), 1e-10 * std::max(1.0, operator_norm(p)));
    EXPECT_GE(lambda_min(s), -1e-12);
  }
}

TEST(PsdSqrt, RejectsNegativeBeyondClip) {
  const double d[] = {1.0, -1e-6};
  EXPECT_THROW(psd_sqrt(ComplexMatrix::diagonal(std::span<const double>(d))), InvariantError);
}

TEST(Polar, UnitaryAndPositiveCases) {
  Rng rng = trial_rng(kSeed, 1);
  const ComplexMatrix u = random_unitary(rng, 3);
  const auto pu = polar(u);
  EXPECT_LE(residual(pu.unitary, u), 1e-10);
  EXPECT_LE(residual(pu.positive, ComplexMatrix::identity(3)), 1e-10);
  const ComplexMatrix g = random_ginibre(rng, 3, 3);
  const ComplexMatrix p = g * g.adjoint();
  const auto pp = polar(p);
  EXPECT_LE(residual(pp.unitary, ComplexMatrix::identity(3)), 1e-9);
  EXPECT_LE(residual(pp.positive, p), 1e-10 * operator_norm(p));
}

TEST(Polar, MatchesSvdFactors) {
  for (std::uint64_t t = 0; t < 20; ++t) {
    Rng rng = trial_rng(kSeed, t);
    const ComplexMatrix a = random_ginibre(rng, 4, 4);
    const auto p = polar(a);
    const auto d = svd(a);
    EXPECT_LE(residual(p.unitary * p.positive, a), 1e-10 * operator_norm(a));
    EXPECT_LE(residual(p.unitary, d.u * d.v.adjoint()), 1e-8);
  }
}

TEST(Norms, IdentityAndDiagonal) {
  EXPECT_NEAR(operator_norm(ComplexMatrix::identity(5)), 1.0, 1e-15);
  EXPECT_NEAR(trace_norm(ComplexMatrix::identity(5)), 5.0, 1e-14);
  const double d[] = {3.0, -4.0};
  const ComplexMatrix m = ComplexMatrix::diagonal(std::span<const double>(d));
  EXPECT_NEAR(operator_norm(m), 4.0, 1e-14);
  EXPECT_NEAR(trace_norm(m), 7.0, 1e-14);
}

TEST(Norms, DualityBoundsAndSubmultiplicativity) {
  for (std::uint64_t t = 0; t < 20; ++t) {
    Rng rng = trial_rng(kSeed, t);
    const std::size_t n = 2 + t % 4;
    const ComplexMatrix a = random_ginibre(rng, n, n), b = random_ginibre(rng, n, n);
    EXPECT_LE(operator_norm(a * b), operator_norm(a) * operator_norm(b) * (1 + 1e-12));
    const double tn = trace_norm(a);
    for (int k = 0; k < 25; ++k) {
      const ComplexMatrix u = random_unitary(rng, n);
      EXPECT_GE(tn, std::abs((u.adjoint() * a).trace().real()) - 1e-12);
    }
    EXPECT_GE(operator_norm(a), oracle::sampled_operator_norm(a, 200, unsigned(t)) - 1e-12);
  }
}

TEST(Cholesky, PositiveDefiniteOnly) {
  Rng rng = trial_rng(kSeed, 2);
  const ComplexMatrix g = random_ginibre(rng, 4, 4);
  const ComplexMatrix p = g * g.adjoint() + ComplexMatrix::identity(4);
  const auto l = cholesky(p);
  ASSERT_TRUE(l.has_value());
  EXPECT_LE(residual(*l * l->adjoint(), p), 1e-10 * operator_norm(p));
  const double d[] = {1.0, -1.0};
  EXPECT_FALSE(cholesky(ComplexMatrix::diagonal(std::span<const double>(d))).has_value());
}

TEST(Solve, InverseAndCompletion) {
  Rng rng = trial_rng(kSeed, 3);
  const ComplexMatrix a = random_ginibre(rng, 5, 5);
  EXPECT_LE(residual(a * inverse(a), ComplexMatrix::identity(5)), 1e-9);
  const ComplexMatrix v = random_isometry(rng, 5, 2);
  const ComplexMatrix full = complete_orthonormal(v);
  EXPECT_LE(unitarity_defect(full), 1e-10);
  EXPECT_LE(residual(full.block(0, 0, 5, 2), v), 1e-10);
}

TEST(Random, GeneratorsSatisfyTheirContracts) {
  for (std::uint64_t t = 0; t < 20; ++t) {
    Rng rng = trial_rng(kSeed, t);
    const std::size_t n = 1 + t % 6;
    EXPECT_LE(unitarity_defect(random_unitary(rng, n)), 1e-12);
    const ComplexMatrix rho = random_density(rng, n, 1 + t % n);
    EXPECT_NEAR(rho.trace().real(), 1.0, 1e-12);
    EXPECT_GE(lambda_min(rho), -1e-12);
    EXPECT_NEAR(operator_norm(random_contraction(rng, n, 0.7)), 0.7, 1e-10);
  }
}

TEST(Random, TrialStreamsAreReproducible) {
  Rng a = trial_rng(5, 9), b = trial_rng(5, 9), c = trial_rng(5, 10);
  EXPECT_EQ(a(), b());
  EXPECT_NE(trial_rng(5, 9)(), c());
}

TEST(Matrix, RejectsNonFiniteAndBadShape) {
  EXPECT_THROW(ComplexMatrix(2, 2, std::vector<cplx>(3)), DimensionError);
  EXPECT_THROW(ComplexMatrix(1, 1, {cplx(NAN, 0)}), InvariantError);
}
