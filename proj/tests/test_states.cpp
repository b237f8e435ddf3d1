#include <gtest/gtest.h>

#include <cmath>

#include "cpmetric/error.hpp"
#include "cpmetric/linalg.hpp"
#include "cpmetric/random.hpp"
#include "cpmetric/states.hpp"
#include "cpmetric_cli/suites.hpp"

using namespace cpmetric;

namespace {

constexpr std::uint64_t kSeed = 31;

DensityState random_state(Rng& rng, std::size_t n) {
  return DensityState(random_density(rng, n, 1 + rng() % n));
}

}  // namespace

TEST(DensityState, ValidatesInvariants) {
  EXPECT_THROW(DensityState(ComplexMatrix::identity(2)), InvariantError);  // trace 2
  ComplexMatrix nonherm = {{0.5, 0.1}, {0.0, 0.5}};
  EXPECT_THROW(DensityState{nonherm}, InvariantError);
  const double d[] = {1.2, -0.2};
  EXPECT_THROW(DensityState(ComplexMatrix::diagonal(std::span<const double>(d))), InvariantError);
  EXPECT_THROW(DensityState(ComplexMatrix(2, 3)), DimensionError);
  EXPECT_NO_THROW(DensityState::maximally_mixed(4));
}

TEST(DensityState, PureNormalizesAndExpects) {
  const ComplexVector psi = {cplx(3.0, 0.0), cplx(0.0, 4.0)};
  const DensityState s = DensityState::pure(psi);
  EXPECT_NEAR(s.rho().trace().real(), 1.0, 1e-15);
  const ComplexMatrix z = {{1.0, 0.0}, {0.0, -1.0}};
  EXPECT_NEAR(s.expectation(z).real(), (9.0 - 16.0) / 25.0, 1e-15);
}

TEST(SqrtFidelity, TrivialCases) {
  Rng rng = trial_rng(kSeed, 0);
  const DensityState rho = random_state(rng, 3);
  EXPECT_NEAR(sqrt_fidelity(rho, rho), 1.0, 1e-9);
  const DensityState e0 = DensityState::pure(ComplexVector{1.0, 0.0});
  const DensityState e1 = DensityState::pure(ComplexVector{0.0, 1.0});
  EXPECT_NEAR(sqrt_fidelity(e0, e1), 0.0, 1e-15);
  EXPECT_NEAR(sqrt_fidelity(e0, DensityState::maximally_mixed(2)), 1.0 / std::sqrt(2.0), 1e-12);
}

TEST(SqrtFidelity, MatchesPurificationSearch) {
  for (std::uint64_t t = 0; t < 10; ++t) {
    Rng rng = trial_rng(kSeed, t);
    const DensityState rho = random_state(rng, 2 + t % 2), sigma = random_state(rng, 2 + t % 2);
    EXPECT_NEAR(sqrt_fidelity(rho, sigma), cli::purification_overlap_search(rho, sigma, rng, 200), 1e-6);
  }
  Rng rng = trial_rng(kSeed, 99);
  const DensityState e0 = DensityState::pure(ComplexVector{1.0, 0.0});
  EXPECT_NEAR(cli::purification_overlap_search(e0, DensityState::maximally_mixed(2), rng, 200), 1.0 / std::sqrt(2.0),
              1e-6);
}

TEST(SqrtFidelity, CommutingStatesGiveClassicalFidelity) {
  for (std::uint64_t t = 0; t < 20; ++t) {
    Rng rng = trial_rng(kSeed, t);
    const std::size_t n = 2 + t % 4;
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::vector<double> p(n), q(n);
    double sp = 0, sq = 0;
    for (std::size_t i = 0; i < n; ++i) sp += p[i] = u(rng), sq += q[i] = u(rng);
    double classical = 0;
    for (std::size_t i = 0; i < n; ++i) p[i] /= sp, q[i] /= sq, classical += std::sqrt(p[i] * q[i]);
    const ComplexMatrix w = random_unitary(rng, n);
    const DensityState a(w * ComplexMatrix::diagonal(std::span<const double>(p)) * w.adjoint());
    const DensityState b(w * ComplexMatrix::diagonal(std::span<const double>(q)) * w.adjoint());
    EXPECT_NEAR(sqrt_fidelity(a, b), classical, 1e-10);
  }
}

TEST(SqrtFidelity, SymmetricAndUnitarilyInvariant) {
  for (std::uint64_t t = 0; t < 50; ++t) {
    Rng rng = trial_rng(kSeed, t);
    const std::size_t n = 2 + t % 3;
    const DensityState a = random_state(rng, n), b = random_state(rng, n);
    EXPECT_EQ(sqrt_fidelity(a, b), sqrt_fidelity(b, a));
    EXPECT_NEAR(bures_states(a, b), bures_states(b, a), 1e-10);
    EXPECT_NEAR(functional_cb_distance(a, b), functional_cb_distance(b, a), 1e-10);
    const ComplexMatrix u = random_unitary(rng, n);
    const DensityState ua(u * a.rho() * u.adjoint()), ub(u * b.rho() * u.adjoint());
    EXPECT_NEAR(sqrt_fidelity(ua, ub), sqrt_fidelity(a, b), 1e-9);
  }
}

TEST(Bures, PureStateValues) {
  const DensityState e0 = DensityState::pure(ComplexVector{1.0, 0.0});
  const DensityState e1 = DensityState::pure(ComplexVector{0.0, 1.0});
  EXPECT_NEAR(bures_states(e0, e1), std::sqrt(2.0), 1e-12);
  EXPECT_NEAR(bures_states(e0, e0), 0.0, 1e-7);
  for (double th : {0.1, 0.7, 1.2}) {
    const ComplexVector x = {1.0, 0.0}, y = {std::cos(th), std::sin(th)};
    const double direct = std::sqrt(2 - 2 * std::abs(inner(x, y)));
    EXPECT_NEAR(bures_states(DensityState::pure(x), DensityState::pure(y)), direct, 1e-9);
    EXPECT_NEAR(direct, std::sqrt(2 - 2 * std::cos(th)), 1e-15);
  }
}

TEST(FunctionalCbDistance, Values) {
  const DensityState e0 = DensityState::pure(ComplexVector{1.0, 0.0});
  const DensityState e1 = DensityState::pure(ComplexVector{0.0, 1.0});
  EXPECT_NEAR(functional_cb_distance(e0, e1), 2.0, 1e-12);
  EXPECT_NEAR(functional_cb_distance(e0, e0), 0.0, 1e-15);
}

TEST(FunctionalCbDistance, CertifiedFromBelowByRandomSearch) {
  for (std::uint64_t t = 0; t < 10; ++t) {
    Rng rng = trial_rng(kSeed, t);
    const DensityState a = random_state(rng, 2), b = random_state(rng, 2);
    const ComplexMatrix diff = a.rho() - b.rho();
    double best = 0.0;
    for (int k = 0; k < 20000; ++k) {
      // reflections I - 2 v v^* are unit-norm elements of the ball
      const ComplexVector v = random_unit_vector(rng, 2);
      const ComplexMatrix a = ComplexMatrix::identity(2) - ComplexMatrix::outer(v, v) * cplx(2.0);
      best = std::max(best, std::abs((diff * a).trace()));
    }
    const double d = functional_cb_distance(a, b);
    EXPECT_LE(best, d + 1e-12);
    EXPECT_NEAR(best, d, 1e-3);
  }
}

TEST(StateDistances, SandwichAndTriangle) {
  for (std::uint64_t t = 0; t < 1000; ++t) {
    Rng rng = trial_rng(kSeed, t);
    const std::size_t n = 2 + t % 3;
    const DensityState a = random_state(rng, n), b = random_state(rng, n);
    const StateDistanceReport r = state_distances(a, b);
    EXPECT_NEAR(r.bures * r.bures, 2 - 2 * r.sqrt_fidelity, 1e-9);
    EXPECT_LE(r.bures * r.bures, r.functional_cb_distance + 1e-9);
    EXPECT_LE(r.functional_cb_distance, 2 * r.bures + 1e-9);
  }
  for (std::uint64_t t = 0; t < 300; ++t) {
    Rng rng = trial_rng(kSeed + 1, t);
    const DensityState a = random_state(rng, 2), b = random_state(rng, 2), c = random_state(rng, 2);
    EXPECT_LE(bures_states(a, c), bures_states(a, b) + bures_states(b, c) + 1e-9);
  }
}

TEST(ClampChecked, ClampsSmallExcursionsOnly) {
  EXPECT_EQ(clamp_checked(1.0 + 1e-12, 0.0, 1.0, "x"), 1.0);
  EXPECT_THROW(clamp_checked(1.0 + 1e-6, 0.0, 1.0, "x"), InvariantError);
}

TEST(States, DimensionMismatchThrows) {
  EXPECT_THROW(sqrt_fidelity(DensityState::maximally_mixed(2), DensityState::maximally_mixed(3)), DimensionError);
}
