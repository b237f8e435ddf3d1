#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "cpmetric/dilation.hpp"
#include "cpmetric/error.hpp"
#include "cpmetric/linalg.hpp"
#include "cpmetric/operator_geometry.hpp"
#include "cpmetric/random.hpp"
#include "oracles.hpp"

using namespace cpmetric;

namespace {

constexpr std::uint64_t kSeed = 47;

ComplexMatrix pad(const ComplexMatrix& x) {
  ComplexMatrix p(2 * x.rows(), x.cols());
  p.set_block(0, 0, x);
  return p;
}

// lambda_min(T + T^*) = 2 * half_gap, non-normal, strict contraction.
ComplexMatrix contraction_with_gap(Rng& rng, std::size_t n, double half_gap) {
  ComplexMatrix k = random_ginibre(rng, n, n);
  k *= cplx(1.0 / operator_norm(k));
  k -= ComplexMatrix::identity(n) * cplx(lambda_min(k + k.adjoint()) / 2.0);
  double s = 0.5;
  ComplexMatrix t;
  do {
    t = ComplexMatrix::identity(n) * cplx(half_gap) + k * cplx(s);
    s *= 0.8;
  } while (operator_norm(t) >= 0.99);
  return t;
}

}  // namespace

TEST(Representation, AmpliationIsAHomomorphism) {
  const Representation r = Representation::ampliation(3, 2);
  EXPECT_EQ(r.space_dimension(), 6u);
  EXPECT_LE(r.homomorphism_defect(), 1e-15);
  std::vector<ComplexMatrix> bad(4, ComplexMatrix::identity(2));
  EXPECT_GT(Representation(2, bad).homomorphism_defect(), 0.5);
  EXPECT_THROW(Representation(2, std::vector<ComplexMatrix>(3, ComplexMatrix::identity(2))), DimensionError);
}

TEST(Gns, PureAndMaximallyMixed) {
  const GnsTriple p = gns_state(DensityState::pure(ComplexVector{1.0, 0.0}));
  const ComplexVector e00 = {1.0, 0.0, 0.0, 0.0};
  EXPECT_NEAR(std::abs(inner(p.x, e00)), 1.0, 1e-14);
  const GnsTriple m = gns_state(DensityState::maximally_mixed(2));
  const double h = 1.0 / std::sqrt(2.0);
  const ComplexVector bell = {h, 0.0, 0.0, h};
  EXPECT_NEAR(std::abs(inner(m.x, bell)), 1.0, 1e-14);
}

TEST(Gns, ReproducesRandomStates) {
  for (std::uint64_t t = 0; t < 200; ++t) {
    Rng rng = trial_rng(kSeed, t);
    const DensityState rho(random_density(rng, 2 + t % 3, 1 + t % 2));
    const GnsTriple g = gns_state(rho);
    EXPECT_LE(g.rep.reproduction_error(g.x, rho), 1e-10);
    // direct trace evaluation on the matrix units
    const std::size_t n = rho.dimension();
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        const ComplexVector px = g.rep.image(i, j) * std::span<const cplx>(g.x);
        EXPECT_NEAR(std::abs(inner(g.x, px) - rho.rho()(j, i)), 0.0, 1e-10);
      }
    EXPECT_LE(g.rep.homomorphism_defect(), 1e-12);
  }
}

TEST(Stinespring, IdentityAndUnitaryConjugation) {
  const StinespringDilation id = stinespring(QuantumChannel::identity(3));
  EXPECT_EQ(id.ancilla, 1u);
  EXPECT_NEAR(std::abs(std::abs(id.isometry(0, 0)) - 1.0), 0.0, 1e-12);
  Rng rng = trial_rng(kSeed, 1);
  const ComplexMatrix u = random_unitary(rng, 3);
  const StinespringDilation su = stinespring(QuantumChannel::unitary_conjugation(u));
  EXPECT_EQ(su.ancilla, 1u);
  // V = u up to a phase
  const cplx phase = hs_inner(u, su.isometry) / 3.0;
  EXPECT_NEAR(std::abs(phase), 1.0, 1e-10);
  EXPECT_LE(max_abs_diff(su.isometry, u * phase), 1e-10);
}

TEST(Stinespring, DepolarizingNeedsFullAncilla) {
  const QuantumChannel dep = QuantumChannel::depolarizing(3);
  const StinespringDilation s = stinespring(dep);
  std::size_t rank = 0;
  for (double ev : herm_eigenvalues(dep.choi()))
    if (ev > 1e-9) ++rank;
  EXPECT_EQ(rank, 9u);
  EXPECT_EQ(s.ancilla, rank);
}

TEST(Stinespring, ReconstructsTheChannel) {
  for (std::uint64_t t = 0; t < 20; ++t) {
    Rng rng = trial_rng(kSeed, t);
    const std::size_t n = 2 + t % 2, m = 1 + t % 3;
    const QuantumChannel ch = random_ucp_channel(rng, n, m, std::max<std::size_t>(1 + t % 4, (m + n - 1) / n));
    const StinespringDilation s = stinespring(ch);
    EXPECT_EQ(s.ancilla, ch.kraus_rank());
    EXPECT_LE(max_abs_diff(adjoint_times(s.isometry, s.isometry), ComplexMatrix::identity(m)), 1e-10);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        const ComplexMatrix big = kron(ComplexMatrix::unit(n, i, j), ComplexMatrix::identity(s.ancilla));
        EXPECT_LE(max_abs_diff(s.isometry.adjoint() * big * s.isometry, ch.image_of_unit(i, j)), 1e-9);
      }
  }
}

TEST(CommonRepresentation, TrivialCases) {
  Rng rng = trial_rng(kSeed, 2);
  const DensityState rho(random_density(rng, 3));
  const CommonRepresentation c = common_representation(rho, rho);
  EXPECT_NEAR(c.overlap.real(), 1.0, 1e-9);
  const CommonRepresentation o =
      common_representation(DensityState::pure(ComplexVector{1.0, 0.0}), DensityState::pure(ComplexVector{0.0, 1.0}));
  EXPECT_NEAR(std::abs(o.overlap), 0.0, 1e-12);
}

TEST(CommonRepresentation, OverlapIsPhaseAlignedAndOptimal) {
  for (std::uint64_t t = 0; t < 30; ++t) {
    Rng rng = trial_rng(kSeed, t);
    const std::size_t n = 2 + t % 2;
    const DensityState rho(random_density(rng, n)), sigma(random_density(rng, n));
    const CommonRepresentation c = common_representation(rho, sigma);
    EXPECT_LE(c.rep.reproduction_error(c.x, rho), 1e-9);
    EXPECT_LE(c.rep.reproduction_error(c.y, sigma), 1e-9);
    EXPECT_GE(c.overlap.real(), 0.0);
    EXPECT_NEAR(c.overlap.imag(), 0.0, 1e-12);
    EXPECT_NEAR(std::abs(inner(c.x, c.y) - c.overlap), 0.0, 1e-12);
    EXPECT_NEAR(c.overlap.real(), sqrt_fidelity(rho, sigma), 1e-9);
  }
}

TEST(AdUnitary, IdentityWhenEqual) {
  Rng rng = trial_rng(kSeed, 3);
  const ComplexVector x = random_unit_vector(rng, 4);
  EXPECT_LE(max_abs_diff(ad_unitary(x, x), ComplexMatrix::identity(4)), 1e-12);
}

TEST(AdUnitary, OrthogonalPairGivesDistanceOne) {
  const ComplexVector x = {1.0, 0.0}, y = {0.0, 1.0};
  const ComplexMatrix u = ad_unitary(x, y);
  EXPECT_NEAR(2 * dist_to_scalars(u).distance, 2.0, 1e-9);
}

TEST(AdUnitary, RealOverlapGivesSine) {
  for (double th : {0.2, 0.9, 1.3}) {
    const ComplexVector x = {1.0, 0.0, 0.0}, y = {std::cos(th), std::sin(th), 0.0};
    const ComplexMatrix u = ad_unitary(x, y);
    const ComplexVector ux = u * std::span<const cplx>(x);
    EXPECT_NEAR(norm(axpy(-1.0, ux, y)), 0.0, 1e-12);
    EXPECT_NEAR(dist_to_scalars(u).distance, std::sin(th), 1e-9);
    std::vector<cplx> eig;  // spectrum of u
    for (double ev : {th, -th, 0.0}) eig.push_back(std::polar(1.0, ev));
    EXPECT_NEAR(dist_to_scalars(u).distance, oracle::chebyshev_radius_grid(eig), 1e-6);
  }
}

TEST(AdUnitary, OptimalOnRandomPairs) {
  for (std::uint64_t t = 0; t < 100; ++t) {
    Rng rng = trial_rng(kSeed, t);
    const std::size_t n = 2 + t % 7;
    const ComplexVector x = random_unit_vector(rng, n), y = random_unit_vector(rng, n);
    const ComplexMatrix u = ad_unitary(x, y);
    EXPECT_LE(unitarity_defect(u), 1e-12);
    const double ov = std::abs(inner(x, y));
    EXPECT_NEAR(2 * dist_to_scalars(u).distance, 2 * std::sqrt(1 - ov * ov), 1e-6);
  }
}

TEST(JointRepresentation, ReproducesBothStates) {
  for (std::uint64_t t = 0; t < 20; ++t) {
    Rng rng = trial_rng(kSeed, t);
    const std::size_t n = 2 + t % 2;
    const DensityState rho(random_density(rng, n)), sigma(random_density(rng, n, 1));
    const JointRepresentationTuple j = joint_rep_direct_sum(rho, sigma);
    EXPECT_LE(j.rep1.reproduction_error(j.x, rho), 1e-9);
    EXPECT_LE(j.rep2.reproduction_error(j.x, sigma), 1e-9);
    EXPECT_LE(j.rep1.homomorphism_defect(), 1e-9);
    EXPECT_LE(j.rep2.homomorphism_defect(), 1e-9);
    const Representation conj = j.rep1.conjugated(j.swap);
    for (std::size_t k = 0; k < n * n; ++k) EXPECT_LE(max_abs_diff(conj.images()[k], j.rep2.images()[k]), 1e-12);
    double diff = 0.0;
    for (std::size_t k = 0; k < n * n; ++k) diff = std::max(diff, operator_norm(j.rep1.images()[k] - j.rep2.images()[k]));
    EXPECT_LE(diff, 2.0 + 1e-12);
  }
}

TEST(Halmos, ScalarCases) {
  const DilationResult z = halmos_dilation(ComplexMatrix(1, 1), ComplexMatrix::identity(1));
  const ComplexMatrix expect = {{0.0, -1.0}, {1.0, 0.0}};
  EXPECT_LE(max_abs_diff(z.v, expect), 1e-15);
  const double th = 0.6;
  const DilationResult r = halmos_dilation(ComplexMatrix{{std::cos(th)}}, ComplexMatrix::identity(1));
  const ComplexMatrix rot = {{std::cos(th), -std::sin(th)}, {std::sin(th), std::cos(th)}};
  EXPECT_LE(max_abs_diff(r.v, rot), 1e-15);
  EXPECT_LE(max_abs_diff(r.v + r.v.adjoint(), ComplexMatrix::identity(2) * cplx(2 * std::cos(th))), 1e-15);
}

TEST(Halmos, UnitaryForRandomInputs) {
  for (std::uint64_t t = 0; t < 500; ++t) {
    Rng rng = trial_rng(kSeed, t);
    const std::size_t n = 1 + t % 6;
    const ComplexMatrix c = random_contraction(rng, n, 0.05 + 0.95 * double(t % 20) / 20.0);
    const DilationResult d = halmos_dilation(c, random_unitary(rng, n));
    EXPECT_LE(unitarity_defect(d.v), 1e-9);
    EXPECT_LE(max_abs_diff(d.v.block(0, 0, n, n), c), 1e-10);
  }
}

TEST(Halmos, RejectsNonContractionsAndNonUnitaries) {
  EXPECT_THROW(halmos_dilation(ComplexMatrix{{1.5}}, ComplexMatrix::identity(1)), InvariantError);
  EXPECT_THROW(halmos_dilation(ComplexMatrix{{0.5}}, ComplexMatrix{{2.0}}), InvariantError);
}

TEST(ChoiLi, ScalarCase) {
  const double th = 0.8;
  const DilationResult d = choi_li_dilation(ComplexMatrix{{std::cos(th)}});
  EXPECT_NEAR(lambda_min(d.v + d.v.adjoint()), 2 * std::cos(th), 1e-12);
}

TEST(ChoiLi, NonNormalWithPrescribedGap) {
  for (std::uint64_t t = 0; t < 20; ++t) {
    Rng rng = trial_rng(kSeed, t);
    const ComplexMatrix c = contraction_with_gap(rng, 3, 0.2);
    ASSERT_NEAR(lambda_min(c + c.adjoint()), 0.4, 1e-12);
    const DilationResult d = choi_li_dilation(c);
    EXPECT_LE(unitarity_defect(d.v), 1e-9);
    EXPECT_LE(max_abs_diff(d.v.block(0, 0, 3, 3), c), 1e-10);
    EXPECT_GE(lambda_min(d.v + d.v.adjoint()), 0.4 - 1e-6);  // checked independently of the result fields
  }
}

TEST(ChoiLi, NegativeGapAndNormalInputs) {
  for (std::uint64_t t = 0; t < 20; ++t) {
    Rng rng = trial_rng(kSeed, t);
    const std::size_t n = 1 + t % 4;
    std::vector<cplx> z(n);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (auto& v : z) v = std::polar(0.95 * u(rng), 6.283 * u(rng));
    const ComplexMatrix w = random_unitary(rng, n);
    const ComplexMatrix t0 = w * ComplexMatrix::diagonal(z) * w.adjoint();
    const DilationResult d = choi_li_dilation(t0);
    EXPECT_GE(lambda_min(d.v + d.v.adjoint()), lambda_min(t0 + t0.adjoint()) - 1e-6);
  }
}

TEST(LemmaDistance, IdentityBranch) {
  Rng rng = trial_rng(kSeed, 5);
  const ComplexMatrix x = random_isometry(rng, 3, 1);
  const UnitaryDistanceResult r = lemma_distance_unitary(x, x);
  EXPECT_TRUE(r.identity_branch);
  EXPECT_NEAR(r.bound, 0.0, 1e-12);
  EXPECT_NEAR(dist_to_scalars(r.u).distance, 0.0, 1e-9);
}

TEST(LemmaDistance, RotatedLine) {
  for (double th : {0.3, 0.8, 1.2}) {
    const ComplexMatrix x = {{1.0}, {0.0}}, y = {{std::cos(th)}, {std::sin(th)}};
    const UnitaryDistanceResult r = lemma_distance_unitary(x, y);
    EXPECT_LE(dist_to_scalars(r.u).distance, std::sin(th) + 1e-6);
    EXPECT_NEAR(r.bound, std::sqrt(1 - std::cos(th) * std::cos(th)), 1e-12);
    EXPECT_LE(max_abs_diff(r.u * pad(x), pad(y)), 1e-10);
  }
}

TEST(LemmaDistance, ZeroInNumericalRange) {
  const ComplexMatrix x = {{1.0}, {0.0}}, y = {{0.0}, {1.0}};
  const UnitaryDistanceResult r = lemma_distance_unitary(x, y);
  EXPECT_TRUE(r.zero_in_numerical_range);
  EXPECT_EQ(r.bound, 1.0);
  EXPECT_LE(max_abs_diff(r.u * pad(x), pad(y)), 1e-10);
}

TEST(LemmaDistance, BoundChainOnRandomIsometries) {
  for (std::uint64_t t = 0; t < 30; ++t) {
    Rng rng = trial_rng(kSeed, t);
    const std::size_t m = 1 + t % 2, g = 2 * m + t % 3;
    const ComplexMatrix x = random_isometry(rng, g, m), y = random_isometry(rng, g, m);
    const UnitaryDistanceResult r = lemma_distance_unitary(x, y);
    EXPECT_LE(unitarity_defect(r.u), 1e-9);
    EXPECT_LE(max_abs_diff(r.u * pad(x), pad(y)), 1e-9);
    const double d = dist_to_scalars(r.u).distance;
    EXPECT_LE(2 * d, 2 * r.bound + 1e-5);
    // lower side: any unitary with U X = Y is at least this far from C
    double lower = 0.0;
    const cplx phase = std::polar(1.0, -r.theta);
    for (int k = 0; k < 64; ++k) {
      const ComplexVector v = random_unit_vector(rng, m);
      const ComplexVector xm = x * std::span<const cplx>(v), ym = y * std::span<const cplx>(v);
      const double re = (phase * inner(xm, ym)).real();
      lower = std::max(lower, std::sqrt(std::max(0.0, 1 - re * re)));
    }
    EXPECT_GE(2 * d, 2 * lower - 1e-5);
  }
}

TEST(SubfamilyRescale, ShrinksTheOverlap) {
  Rng rng = trial_rng(kSeed, 6);
  const ComplexMatrix x = random_isometry(rng, 3, 2), y = random_isometry(rng, 3, 2);
  const double r = 1 - 1e-4;
  const auto [xr, yr] = subfamily_rescale(x, y, r);
  EXPECT_LE(max_abs_diff(adjoint_times(xr, xr), ComplexMatrix::identity(2)), 1e-12);
  EXPECT_LE(max_abs_diff(adjoint_times(yr, yr), ComplexMatrix::identity(2)), 1e-12);
  EXPECT_LE(operator_norm(adjoint_times(xr, yr)), r + 1e-12);
}
