#include "cpmetric/dilation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <string>

#include "cpmetric/error.hpp"
#include "cpmetric/linalg.hpp"
#include "cpmetric/operator_geometry.hpp"
#include "cpmetric/random.hpp"
#include "cpmetric/tolerance.hpp"

namespace cpmetric {

// ---------------------------------------------------------------------------
// Representations

Representation::Representation(std::size_t algebra_dimension, std::vector<ComplexMatrix> images)
    : n_(algebra_dimension), k_(0), images_(std::move(images)) {
  if (n_ == 0 || images_.size() != n_ * n_) {
    throw DimensionError("Representation: need n^2 images of the matrix units");
  }
  k_ = images_.front().rows();
  for (const auto& m : images_) {
    if (m.rows() != k_ || m.cols() != k_) throw DimensionError("Representation: images differ in shape");
  }
}

Representation Representation::ampliation(std::size_t n, std::size_t k) {
  std::vector<ComplexMatrix> im;
  im.reserve(n * n);
  const ComplexMatrix ik = ComplexMatrix::identity(k);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) im.push_back(kron(ComplexMatrix::unit(n, i, j), ik));
  return Representation(n, std::move(im));
}

ComplexMatrix Representation::apply(const ComplexMatrix& a) const {
  if (a.rows() != n_ || a.cols() != n_) throw DimensionError("Representation::apply: shape mismatch");
  ComplexMatrix out(k_, k_);
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = 0; j < n_; ++j)
      if (a(i, j) != 0.0) out += images_[i * n_ + j] * a(i, j);
  return out;
}

Representation Representation::conjugated(const ComplexMatrix& u) const {
  if (u.rows() != k_ || u.cols() != k_) throw DimensionError("Representation::conjugated: shape mismatch");
  std::vector<ComplexMatrix> im;
  im.reserve(images_.size());
  for (const auto& m : images_) im.push_back(adjoint_times(u, m * u));
  return Representation(n_, std::move(im));
}

double Representation::homomorphism_defect() const {
  double worst = 0.0;
  ComplexMatrix unit(k_, k_);
  for (std::size_t i = 0; i < n_; ++i) unit += image(i, i);
  worst = std::max(worst, max_abs_diff(unit, ComplexMatrix::identity(k_)));
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = 0; j < n_; ++j) {
      worst = std::max(worst, max_abs_diff(image(i, j).adjoint(), image(j, i)));
      for (std::size_t p = 0; p < n_; ++p)
        for (std::size_t q = 0; q < n_; ++q) {
          ComplexMatrix prod = image(i, j) * image(p, q);
          if (j == p) {
            worst = std::max(worst, max_abs_diff(prod, image(i, q)));
          } else {
            worst = std::max(worst, max_abs_diff(prod, ComplexMatrix(k_, k_)));
          }
        }
    }
  return worst;
}

double Representation::reproduction_error(std::span<const cplx> x, const DensityState& rho) const {
  if (rho.dimension() != n_ || x.size() != k_) throw DimensionError("reproduction_error: shape mismatch");
  double worst = 0.0;
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = 0; j < n_; ++j) {
      const cplx got = inner(x, image(i, j) * x);
      worst = std::max(worst, std::abs(got - rho.rho()(j, i)));
    }
  return worst;
}

Representation direct_sum(const Representation& a, const Representation& b) {
  if (a.algebra_dimension() != b.algebra_dimension()) {
    throw DimensionError("direct_sum: representations of different algebras");
  }
  std::vector<ComplexMatrix> im;
  for (std::size_t k = 0; k < a.images().size(); ++k) im.push_back(direct_sum(a.images()[k], b.images()[k]));
  return Representation(a.algebra_dimension(), std::move(im));
}

// ---------------------------------------------------------------------------
// GNS, Stinespring, common representations

namespace {

ComplexVector vec(const ComplexMatrix& m) {
  return ComplexVector(m.entries().begin(), m.entries().end());
}

void require_unit(std::span<const cplx> v, const char* what) {
  if (std::abs(norm(v) - 1.0) > 1e-10) throw InvariantError(std::string(what) + ": vector is not a unit vector");
}

}  // namespace

GnsTriple gns_state(const DensityState& rho) {
  const std::size_t n = rho.dimension();
  return {Representation::ampliation(n, n), vec(psd_sqrt(rho.rho()))};
}

StinespringDilation stinespring(const QuantumChannel& channel) {
  const std::size_t n = channel.input_dimension();
  const std::size_t m = channel.output_dimension();
  const auto& kraus = channel.kraus();
  const std::size_t d = kraus.size();
  ComplexMatrix v(n * d, m);
  for (std::size_t k = 0; k < d; ++k)
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t p = 0; p < m; ++p) v(i * d + k, p) = kraus[k](i, p);
  return {std::move(v), d};
}

CommonRepresentation common_representation(const DensityState& rho, const DensityState& sigma) {
  if (rho.dimension() != sigma.dimension()) throw DimensionError("common_representation: dimension mismatch");
  const std::size_t n = rho.dimension();
  const ComplexMatrix sr = psd_sqrt(rho.rho());
  const ComplexMatrix ss = psd_sqrt(sigma.rho());
  // sqrt(rho) sqrt(sigma) = P S Q^*; W = Q P^* gives tr(sqrt(rho) sqrt(sigma) W) = tr S.
  SingularValueDecomposition d = svd(sr * ss);
  const ComplexMatrix w = d.v * d.u.adjoint();
  CommonRepresentation c{Representation::ampliation(n, n), vec(sr), vec(ss * w), 0.0};
  c.overlap = inner(c.x, c.y);
  return c;
}

ComplexMatrix ad_unitary(std::span<const cplx> x, std::span<const cplx> y) {
  if (x.size() != y.size()) throw DimensionError("ad_unitary: vectors of different length");
  require_unit(x, "ad_unitary");
  require_unit(y, "ad_unitary");
  const std::size_t k = x.size();
  const cplx c = inner(x, y);
  const double mod = std::min(1.0, std::abs(c));
  const cplx phase = mod > 0.0 ? c / std::abs(c) : cplx(1.0);
  ComplexVector yp(k);
  for (std::size_t i = 0; i < k; ++i) yp[i] = std::conj(phase) * y[i];
  // w is the unit vector in span{x, y} orthogonal to x, oriented towards y.
  ComplexVector w(k);
  for (std::size_t i = 0; i < k; ++i) w[i] = yp[i] - mod * x[i];
  const double s = norm(w);
  ComplexMatrix r = ComplexMatrix::identity(k);
  if (s > 1e-14) {
    for (auto& z : w) z /= s;
    const ComplexMatrix xx = ComplexMatrix::outer(x, x);
    const ComplexMatrix ww = ComplexMatrix::outer(w, w);
    const ComplexMatrix wx = ComplexMatrix::outer(w, x);
    const ComplexMatrix xw = ComplexMatrix::outer(x, w);
    r += (xx + ww) * (mod - 1.0);
    r += (wx - xw) * s;
  }
  return r * phase;
}

JointRepresentationTuple joint_rep_direct_sum(const DensityState& rho, const DensityState& sigma) {
  if (rho.dimension() != sigma.dimension()) throw DimensionError("joint_rep_direct_sum: dimension mismatch");
  const GnsTriple g1 = gns_state(rho);
  const GnsTriple g2 = gns_state(sigma);
  const std::size_t k1 = g1.x.size();
  const std::size_t k2 = g2.x.size();
  ComplexVector e(k1 + k2), f(k1 + k2);
  std::copy(g1.x.begin(), g1.x.end(), e.begin());
  std::copy(g2.x.begin(), g2.x.end(), f.begin() + std::ptrdiff_t(k1));
  // U exchanges e = x1 (+) 0 and f = 0 (+) x2 and fixes their complement.
  ComplexMatrix u = ComplexMatrix::identity(k1 + k2);
  u -= ComplexMatrix::outer(e, e) + ComplexMatrix::outer(f, f);
  u += ComplexMatrix::outer(f, e) + ComplexMatrix::outer(e, f);
  Representation rep1 = direct_sum(g1.rep, g2.rep);
  Representation rep2 = rep1.conjugated(u);
  return {std::move(rep1), std::move(rep2), std::move(e), std::move(u)};
}

// ---------------------------------------------------------------------------
// Dilations

namespace {

void require_contraction(const ComplexMatrix& t, const char* what) {
  if (!t.is_square()) throw DimensionError(std::string(what) + ": T is not square");
  const double nt = operator_norm(t);
  if (nt > 1.0 + 1e-10) {
    throw InvariantError(std::string(what) + ": ||T|| = " + std::to_string(nt) + " exceeds 1");
  }
}

ComplexMatrix defect(const ComplexMatrix& a) {
  // (I - A)^{1/2} for 0 <= A <= I (up to rounding)
  return herm_function(hermitian_part(ComplexMatrix::identity(a.rows()) - a),
                       [](double x) { return std::sqrt(std::max(0.0, x)); });
}

ComplexMatrix cayley(const ComplexMatrix& omega) {
  const std::size_t n = omega.rows();
  const ComplexMatrix id = ComplexMatrix::identity(n);
  return solve(id - omega * 0.5, id + omega * 0.5);
}

// Dilation search for a fixed T. V(W) = [left | right W] with
// W = L diag(I_k, Q) R^* and Q ranging over U(n - k); the objective is the
// spectrum of P^*(V + V^*)P for an isometry P (the compression removes
// directions that are already pinned at the optimum).
struct DilationSearch {
  std::size_t n;
  std::size_t k;
  ComplexMatrix left;   // [T; D1]
  ComplexMatrix right;  // B = [-D2; T^*]
  ComplexMatrix l;
  ComplexMatrix r;
  ComplexMatrix p;

  ComplexMatrix w_of(const ComplexMatrix& q) const {
    ComplexMatrix mid = ComplexMatrix::identity(n);
    if (n > k) mid.set_block(k, k, q);
    return l * mid * r.adjoint();
  }
  ComplexMatrix hermitian_sum(const ComplexMatrix& w) const {
    ComplexMatrix v(2 * n, 2 * n);
    v.set_block(0, 0, left);
    v.set_block(0, n, right * w);
    return hermitian_part(v) * 2.0;
  }

  struct Eval {
    double value;       // soft-min of the compressed spectrum
    double lambda_min;  // exact lambda_min(V + V^*) of the full dilation
    ComplexMatrix omega;
  };
  Eval evaluate(const ComplexMatrix& q, double mu, bool with_gradient) const {
    const ComplexMatrix w = w_of(q);
    const ComplexMatrix h = hermitian_sum(w);
    SpectralDecomposition eig = herm_eig(hermitian_part(adjoint_times(p, h * p)));
    const double lmin = eig.min();
    double z = 0.0;
    RealVector wt(eig.eigenvalues.size());
    for (std::size_t i = 0; i < wt.size(); ++i) {
      wt[i] = std::exp(-(eig.eigenvalues[i] - lmin) / mu);
      z += wt[i];
    }
    Eval e{lmin - mu * std::log(z), lambda_min(h), {}};
    if (!with_gradient) return e;
    // G = P (sum_i w_i y_i y_i^*) P^*; only its bottom rows enter
    // d value = 2 Re tr(M dW) with M = G_bottom B.
    const ComplexMatrix py = p * eig.eigenvectors;
    ComplexMatrix gb(n, 2 * n);
    for (std::size_t i = 0; i < wt.size(); ++i) {
      const double c = wt[i] / z;
      if (c < 1e-300) continue;
      for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < 2 * n; ++b) gb(a, b) += c * py(n + a, i) * std::conj(py(b, i));
    }
    // dW = L diag(0, Q Omega) R^*, so d value = 2 Re tr(N22 Q Omega) with
    // N = R^* M L; the ascent direction is the skew-Hermitian part of (N22 Q)^*.
    const ComplexMatrix nn = adjoint_times(r, gb * right * l);
    const ComplexMatrix a = nn.block(k, k, n - k, n - k) * q;
    e.omega = (a.adjoint() - a) * 0.5;
    return e;
  }
};

// Riemannian ascent of the smoothed objective over U(n - k) from q.
// Returns the best W seen (by exact lambda_min of the full dilation).
std::pair<ComplexMatrix, double> ascend(const DilationSearch& s, ComplexMatrix q, std::size_t budget,
                                        double goal) {
  ComplexMatrix best_w = s.w_of(q);
  double best = lambda_min(s.hermitian_sum(best_w));
  if (s.n == s.k) return {best_w, best};
  double mu = 0.05;
  double step = 1.0;
  for (std::size_t it = 0; it < budget && best < goal; ++it) {
    auto cur = s.evaluate(q, mu, true);
    if (cur.lambda_min > best) {
      best = cur.lambda_min;
      best_w = s.w_of(q);
      if (best >= goal) break;
    }
    const double g2 = std::real(hs_inner(cur.omega, cur.omega));
    bool moved = false;
    if (g2 > 1e-32) {
      step = std::min(step * 2.0, 1e3);
      for (int ls = 0; ls < 60; ++ls) {
        ComplexMatrix cand = q * cayley(cur.omega * step);
        if (s.evaluate(cand, mu, false).value >= cur.value + 1e-4 * step * 2.0 * g2) {
          q = orthonormalize_columns(cand);
          moved = true;
          break;
        }
        step *= 0.5;
      }
    }
    if (!moved || 2.0 * g2 * step < 1e-3 * mu * mu) {
      if (mu < 1e-12) break;
      mu *= 0.3;
      step = 1.0;
    }
  }
  auto last = s.evaluate(q, mu, false);
  if (last.lambda_min > best) {
    best = last.lambda_min;
    best_w = s.w_of(q);
  }
  return {best_w, best};
}

// Pins W on the bottom eigenspace of T + T^*: if (T + T^*)u = 2r u then
// (u, 0) is a 2r-eigenvector of V + V^* exactly when W^* D2 u = D1 u.
// Vectors D2 u_j and D1 u_j have equal Gram matrices, so such W exist.
std::optional<DilationSearch> pinned_search(const ComplexMatrix& t, const ComplexMatrix& d1,
                                            const ComplexMatrix& d2) {
  const std::size_t n = t.rows();
  SpectralDecomposition eig = herm_eig(hermitian_part(t) * 2.0);
  const double scale = std::max(1.0, std::abs(eig.max()));
  std::size_t k = 1;
  while (k < n && eig.eigenvalues[k] - eig.eigenvalues[0] <= 1e-9 * scale) ++k;
  ComplexMatrix u = eig.eigenvectors.block(0, 0, n, k);
  const ComplexMatrix a = d2 * u;
  const ComplexMatrix b = d1 * u;
  const ComplexMatrix qa = orthonormalize_columns(a);
  const ComplexMatrix ra = adjoint_times(qa, a);
  for (std::size_t i = 0; i < k; ++i)
    if (std::abs(ra(i, i)) < 1e-8) return std::nullopt;
  const ComplexMatrix qb_raw = b * inverse(ra);
  if (unitarity_defect(qb_raw) > 1e-6) return std::nullopt;
  const ComplexMatrix qb = orthonormalize_columns(qb_raw);

  // W = L diag(I_k, Q) R^* with L = [qa ...], R = [qb ...] gives W^* qa = qb.
  DilationSearch s{n, k, ComplexMatrix(2 * n, n), ComplexMatrix(2 * n, n), complete_orthonormal(qa),
                   complete_orthonormal(qb), {}};
  s.left.set_block(0, 0, t);
  s.left.set_block(n, 0, d1);
  s.right.set_block(0, 0, -d2);
  s.right.set_block(n, 0, t.adjoint());
  ComplexMatrix pinned(2 * n, k);
  pinned.set_block(0, 0, u);
  const ComplexMatrix full = complete_orthonormal(pinned);
  s.p = full.block(0, k, 2 * n, 2 * n - k);
  return s;
}

}  // namespace

DilationResult halmos_dilation(const ComplexMatrix& t, const ComplexMatrix& w) {
  require_contraction(t, "halmos_dilation");
  const std::size_t n = t.rows();
  if (w.rows() != n || w.cols() != n) throw DimensionError("halmos_dilation: W must match T");
  if (unitarity_defect(w) > 1e-9) throw InvariantError("halmos_dilation: W is not unitary");
  DilationResult r;
  r.t = t;
  r.w = w;
  r.defect1 = defect(adjoint_times(t, t));
  r.defect2 = defect(t * t.adjoint());
  r.v = ComplexMatrix(2 * n, 2 * n);
  r.v.set_block(0, 0, t);
  r.v.set_block(0, n, -(r.defect2 * w));
  r.v.set_block(n, 0, r.defect1);
  r.v.set_block(n, n, t.adjoint() * w);
  r.half_gap = lambda_min(hermitian_part(t));
  r.achieved_lambda_min = lambda_min(hermitian_part(r.v) * 2.0);
  return r;
}

DilationResult choi_li_dilation(const ComplexMatrix& t, const ChoiLiOptions& options) {
  require_contraction(t, "choi_li_dilation");
  const std::size_t n = t.rows();
  const double target = lambda_min(hermitian_part(t) * 2.0);
  const double goal = target - options.accept_slack;

  DilationResult start = halmos_dilation(t, ComplexMatrix::identity(n));
  // W = I is optimal for normal T (each 2x2 block in the eigenbasis of T has
  // eigenvalues e^{+-i psi} with cos psi = Re t).
  if (start.achieved_lambda_min >= goal) return start;

  ComplexMatrix best_w = start.w;
  double best = start.achieved_lambda_min;
  std::size_t used = 0;
  auto consider = [&](const std::pair<ComplexMatrix, double>& cand) {
    if (cand.second > best) {
      best = cand.second;
      best_w = cand.first;
    }
  };

  const std::optional<DilationSearch> pinned = pinned_search(t, start.defect1, start.defect2);
  DilationSearch free_search{n, 0, ComplexMatrix(2 * n, n), ComplexMatrix(2 * n, n), ComplexMatrix::identity(n),
                             ComplexMatrix::identity(n), ComplexMatrix::identity(2 * n)};
  free_search.left.set_block(0, 0, t);
  free_search.left.set_block(n, 0, start.defect1);
  free_search.right.set_block(0, 0, -start.defect2);
  free_search.right.set_block(n, 0, t.adjoint());

  for (std::size_t restart = 0; restart < options.restarts && best < goal; ++restart) {
    ++used;
    Rng rng = trial_rng(options.seed, restart);
    if (pinned) {
      const std::size_t free_dim = n - pinned->k;
      ComplexMatrix q = restart == 0 || free_dim == 0 ? ComplexMatrix::identity(free_dim)
                                                      : random_unitary(rng, free_dim);
      consider(ascend(*pinned, q, options.steps, goal));
    } else {
      ComplexMatrix q = restart == 0 ? ComplexMatrix::identity(n) : random_unitary(rng, n);
      consider(ascend(free_search, q, options.steps, goal));
    }
  }

  DilationResult out = halmos_dilation(t, orthonormalize_columns(best_w));
  out.restarts_used = used;
  if (out.achieved_lambda_min < target - options.fail_slack) {
    throw DilationSearchFailed("choi_li_dilation: reached lambda_min(V+V^*) = " +
                                   std::to_string(out.achieved_lambda_min) + ", target " +
                                   std::to_string(target),
                               out.achieved_lambda_min, target);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Unitaries with prescribed action and small distance to the scalars

namespace {

void require_isometry(const ComplexMatrix& x, const char* what) {
  if (x.cols() > x.rows()) throw DimensionError(std::string(what) + ": more columns than rows");
  if (unitarity_defect(x) > 1e-9) throw InvariantError(std::string(what) + ": not an isometry");
}

ComplexMatrix pad_zero(const ComplexMatrix& a) {
  ComplexMatrix out(2 * a.rows(), a.cols());
  out.set_block(0, 0, a);
  return out;
}

// Unitary mapping the orthonormal columns of a onto those of b.
ComplexMatrix partial_isometry_completion(const ComplexMatrix& a, const ComplexMatrix& b) {
  const ComplexMatrix qa = complete_orthonormal(a);
  const ComplexMatrix qb = complete_orthonormal(b);
  return qb * qa.adjoint();
}

}  // namespace

UnitaryDistanceResult lemma_distance_unitary(const ComplexMatrix& x, const ComplexMatrix& y,
                                             const ChoiLiOptions& options) {
  if (x.rows() != y.rows() || x.cols() != y.cols()) throw DimensionError("lemma_distance_unitary: X and Y differ in shape");
  require_isometry(x, "lemma_distance_unitary: X");
  require_isometry(y, "lemma_distance_unitary: Y");
  const std::size_t g = x.rows();
  const std::size_t m = x.cols();
  const ComplexMatrix t = adjoint_times(x, y);
  UnitaryDistanceResult res;

  // Y = lambda X with |lambda| = 1: U = lambda I.
  const cplx lam = t.trace() / double(m);
  if (std::abs(std::abs(lam) - 1.0) <= 1e-12 && max_abs_diff(y, x * lam) <= 1e-12) {
    res.u = ComplexMatrix::identity(2 * g) * lam;
    res.r = 1.0;
    res.theta = std::arg(lam);
    res.identity_branch = true;
    return res;
  }

  const double nt = operator_norm(t);
  if (nt >= 1.0 - 1e-8) {
    throw InvariantError("lemma_distance_unitary: ||X^*Y|| = " + std::to_string(nt) +
                         " is not below 1; rescale with subfamily_rescale first");
  }

  const ComplexMatrix xh = pad_zero(x);
  const ComplexMatrix yh = pad_zero(y);
  const NumericalRangeSummary nr = numerical_range(t);
  if (nr.contains_zero) {
    res.u = partial_isometry_completion(xh, yh);
    res.bound = 1.0;
    res.zero_in_numerical_range = true;
    return res;
  }
  res.r = nr.min_modulus;
  res.theta = nr.min_modulus_angle;
  res.bound = std::sqrt(std::max(0.0, 1.0 - res.r * res.r));

  const cplx rot = std::polar(1.0, -res.theta);
  const ComplexMatrix yr = yh * rot;
  const ComplexMatrix tr = t * rot;
  const DilationResult dil = choi_li_dilation(tr, options);
  const ComplexMatrix delta_inv = inverse(dil.defect1);
  const ComplexMatrix c = (yr - xh * tr) * delta_inv;

  ComplexMatrix xc(2 * g, 2 * m);
  xc.set_block(0, 0, xh);
  xc.set_block(0, m, c);
  ComplexMatrix u = xc * dil.v * xc.adjoint();
  u += ComplexMatrix::identity(2 * g) - xc * xc.adjoint();
  res.u = u * std::polar(1.0, res.theta);
  return res;
}

std::pair<ComplexMatrix, ComplexMatrix> subfamily_rescale(const ComplexMatrix& x, const ComplexMatrix& y,
                                                           double r) {
  if (x.rows() != y.rows() || x.cols() != y.cols()) throw DimensionError("subfamily_rescale: shape mismatch");
  if (!(r > 0.0 && r < 1.0)) throw InvariantError("subfamily_rescale: r must lie in (0, 1)");
  const std::size_t g = x.rows();
  ComplexMatrix xr(2 * g, x.cols());
  xr.set_block(0, 0, x);
  ComplexMatrix yr(2 * g, y.cols());
  yr.set_block(0, 0, y * r);
  yr.set_block(g, 0, y * std::sqrt(1.0 - r * r));
  return {std::move(xr), std::move(yr)};
}

}  // namespace cpmetric
