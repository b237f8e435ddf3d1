#include "cpmetric/operator_geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <optional>
#include <string>

#include "cpmetric/error.hpp"
#include "cpmetric/linalg.hpp"
#include "cpmetric/random.hpp"
#include "cpmetric/tolerance.hpp"

namespace cpmetric {

// ---------------------------------------------------------------------------
// Presentations and subspaces

StarAlgebraPresentation::StarAlgebraPresentation(std::size_t dimension,
                                                 std::vector<ComplexMatrix> generators)
    : dimension_(dimension), generators_(std::move(generators)) {
  if (generators_.empty()) throw InvariantError("StarAlgebraPresentation: no generators");
  for (const auto& g : generators_) {
    if (g.rows() != dimension_ || g.cols() != dimension_) {
      throw DimensionError("StarAlgebraPresentation: generator is not " +
                           std::to_string(dimension_) + "x" + std::to_string(dimension_));
    }
  }
}

std::vector<ComplexMatrix> StarAlgebraPresentation::hermitian_generators() const {
  std::vector<ComplexMatrix> out;
  for (const auto& g : generators_) {
    const double scale = frobenius_norm(g);
    if (scale == 0.0) continue;
    ComplexMatrix a = g * (1.0 / scale);
    ComplexMatrix ad = a.adjoint();
    ComplexMatrix re = (a + ad) * 0.5;
    ComplexMatrix im = (a - ad) * cplx(0.0, -0.5);
    for (ComplexMatrix* h : {&re, &im}) {
      if (frobenius_norm(*h) > 1e-12) out.push_back(hermitian_part(*h));
    }
  }
  return out;
}

SubspaceBasis::SubspaceBasis(std::size_t dimension, const std::vector<ComplexMatrix>& spanning)
    : dimension_(dimension) {
  std::vector<ComplexMatrix> kept;
  for (const auto& m : spanning) {
    if (m.rows() != dimension || m.cols() != dimension) {
      throw DimensionError("SubspaceBasis: member has the wrong shape");
    }
    const double n0 = frobenius_norm(m);
    if (n0 == 0.0) continue;
    ComplexMatrix v = m;
    for (int pass = 0; pass < 2; ++pass)
      for (const auto& b : basis_) v -= b * hs_inner(b, v);
    const double nv = frobenius_norm(v);
    if (nv <= 1e-8 * n0) continue;
    kept.push_back(m);
    basis_.push_back(v * (1.0 / nv));
  }
  if (kept.size() > 1) {
    ComplexMatrix gram(kept.size(), kept.size());
    for (std::size_t i = 0; i < kept.size(); ++i)
      for (std::size_t j = 0; j < kept.size(); ++j)
        gram(i, j) = hs_inner(kept[i], kept[j]) /
                     (frobenius_norm(kept[i]) * frobenius_norm(kept[j]));
    RealVector ev = herm_eigenvalues(hermitian_part(gram));
    if (ev.front() <= 0.0 || ev.back() / ev.front() > 1e8) {
      throw InvariantError("SubspaceBasis: spanning set is too ill-conditioned");
    }
  }
}

SubspaceBasis SubspaceBasis::full(std::size_t dimension) {
  SubspaceBasis s;
  s.dimension_ = dimension;
  for (std::size_t i = 0; i < dimension; ++i)
    for (std::size_t j = 0; j < dimension; ++j)
      s.basis_.push_back(ComplexMatrix::unit(dimension, i, j));
  return s;
}

SubspaceBasis SubspaceBasis::scalars(std::size_t dimension) {
  SubspaceBasis s;
  s.dimension_ = dimension;
  s.basis_.push_back(ComplexMatrix::identity(dimension) * (1.0 / std::sqrt(double(dimension))));
  return s;
}

ComplexMatrix SubspaceBasis::project(const ComplexMatrix& x) const {
  if (x.rows() != dimension_ || x.cols() != dimension_) {
    throw DimensionError("SubspaceBasis::project: shape mismatch");
  }
  ComplexMatrix p(dimension_, dimension_);
  for (const auto& b : basis_) p += b * hs_inner(b, x);
  return p;
}

double SubspaceBasis::distance_hs(const ComplexMatrix& x) const {
  return frobenius_norm(x - project(x));
}

bool SubspaceBasis::contains(const ComplexMatrix& x, double tol) const {
  return distance_hs(x) <= tol * std::max(1.0, frobenius_norm(x));
}

// ---------------------------------------------------------------------------
// Commutant

namespace {

struct Cluster {
  std::size_t start;
  std::size_t size;
};

// Null space of the commutation constraints restricted to matrices that are
// block diagonal (blocks = clusters) in the eigenbasis q of a generic element.
// Gram entries use the closed form
//   <[E_kl, H], [E_pq, H]> = d_kp (H^2)_ql + d_lq (H^2)_kp - 2 H_kp H_ql
// for Hermitian H.
std::vector<ComplexMatrix> commutant_in_blocks(const std::vector<ComplexMatrix>& hermitian,
                                               const ComplexMatrix& q,
                                               const std::vector<Cluster>& clusters) {
  const std::size_t n = q.rows();
  std::vector<std::pair<std::size_t, std::size_t>> coords;
  for (const auto& c : clusters)
    for (std::size_t k = 0; k < c.size; ++k)
      for (std::size_t l = 0; l < c.size; ++l) coords.emplace_back(c.start + k, c.start + l);
  const std::size_t d = coords.size();

  ComplexMatrix gram(d, d);
  for (const auto& h : hermitian) {
    ComplexMatrix ht = hermitian_part(adjoint_times(q, h * q));
    ComplexMatrix h2 = ht * ht;
    for (std::size_t a = 0; a < d; ++a) {
      const auto [k, l] = coords[a];
      for (std::size_t b = 0; b < d; ++b) {
        const auto [p, r] = coords[b];
        cplx g = -2.0 * ht(k, p) * ht(r, l);
        if (k == p) g += h2(r, l);
        if (l == r) g += h2(k, p);
        gram(a, b) += g;
      }
    }
  }
  SpectralDecomposition eig = herm_eig(hermitian_part(gram));
  const double top = std::max(eig.max(), 1e-300);
  std::vector<ComplexMatrix> basis;
  for (std::size_t i = 0; i < d; ++i) {
    if (eig.eigenvalues[i] > 1e-9 * top) break;
    ComplexMatrix xt(n, n);
    for (std::size_t a = 0; a < d; ++a) xt(coords[a].first, coords[a].second) = eig.eigenvectors(a, i);
    basis.push_back(q * xt * q.adjoint());
  }
  return basis;
}

double commutation_residual(const ComplexMatrix& x, const std::vector<ComplexMatrix>& gens) {
  double worst = 0.0;
  for (const auto& a : gens) {
    const double scale = std::max(1.0, frobenius_norm(a));
    worst = std::max(worst, frobenius_norm(x * a - a * x) / scale);
    ComplexMatrix ad = a.adjoint();
    worst = std::max(worst, frobenius_norm(x * ad - ad * x) / scale);
  }
  return worst;
}

}  // namespace

SubspaceBasis commutant(const StarAlgebraPresentation& alg) {
  const std::size_t n = alg.dimension();
  const std::vector<ComplexMatrix> herm = alg.hermitian_generators();
  if (herm.empty()) return SubspaceBasis::full(n);

  // A random real combination of the Hermitian generators lies in the algebra;
  // the commutant is block diagonal in its eigenbasis.
  Rng rng = trial_rng(0x636f6d6dULL, n);
  std::normal_distribution<double> gauss;
  ComplexMatrix generic(n, n);
  for (const auto& h : herm) generic += h * gauss(rng);
  SpectralDecomposition eig = herm_eig(hermitian_part(generic));
  const double scale = std::max(1.0, std::max(std::abs(eig.min()), std::abs(eig.max())));
  std::vector<Cluster> clusters;
  for (std::size_t i = 0; i < n; ++i) {
    if (!clusters.empty() && eig.eigenvalues[i] - eig.eigenvalues[i - 1] <= 1e-8 * scale) {
      ++clusters.back().size;
    } else {
      clusters.push_back({i, 1});
    }
  }

  const double tol = tolerances().residual;
  auto verified = [&](const std::vector<ComplexMatrix>& basis) {
    return std::all_of(basis.begin(), basis.end(), [&](const ComplexMatrix& x) {
      return commutation_residual(x, alg.generators()) <= tol;
    });
  };

  std::vector<ComplexMatrix> basis = commutant_in_blocks(herm, eig.eigenvectors, clusters);
  if (basis.empty() || !verified(basis)) {
    // Unreduced problem over all of M_n.
    basis = commutant_in_blocks(herm, ComplexMatrix::identity(n), {{0, n}});
    if (basis.empty() || !verified(basis)) {
      throw InvariantError("commutant: null-space residual above tolerance");
    }
  }
  return SubspaceBasis(n, basis);
}

// ---------------------------------------------------------------------------
// Spectral-norm distance to a subspace: log-det barrier path following on
//   min t  s.t.  [[t I, T - X], [(T - X)^*, t I]] >= 0,  X in span(S).
// The dual point Z = F^{-1}/s yields M = -2 Z_12 with ||M||_1 <= 1 and
// M orthogonal to S, so Re tr(M^* T) / ||M||_1 is a certified lower bound.

namespace {

ComplexMatrix embed(const ComplexMatrix& a) {
  const std::size_t n = a.rows();
  ComplexMatrix e(2 * n, 2 * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      e(i, n + j) = a(i, j);
      e(n + j, i) = std::conj(a(i, j));
    }
  return e;
}

struct BarrierState {
  ComplexMatrix f;
  ComplexMatrix chol;
  double log_det = 0.0;
};

std::optional<BarrierState> evaluate(const ComplexMatrix& f0, const std::vector<ComplexMatrix>& dirs,
                                     const RealVector& z) {
  BarrierState st;
  st.f = f0;
  for (std::size_t j = 0; j < dirs.size(); ++j) {
    if (z[j] == 0.0) continue;
    auto fe = st.f.entries();
    auto de = dirs[j].entries();
    for (std::size_t k = 0; k < fe.size(); ++k) fe[k] += z[j] * de[k];
  }
  auto l = cholesky(st.f);
  if (!l) return std::nullopt;
  st.chol = std::move(*l);
  for (std::size_t i = 0; i < st.chol.rows(); ++i) st.log_det += 2.0 * std::log(st.chol(i, i).real());
  return st;
}

ComplexMatrix cholesky_inverse_factor(const ComplexMatrix& l) {
  const std::size_t n = l.rows();
  ComplexMatrix linv(n, n);
  for (std::size_t j = 0; j < n; ++j) {
    linv(j, j) = 1.0 / l(j, j);
    for (std::size_t i = j + 1; i < n; ++i) {
      cplx s = 0.0;
      for (std::size_t k = j; k < i; ++k) s += l(i, k) * linv(k, j);
      linv(i, j) = -s / l(i, i);
    }
  }
  return linv;
}

ComplexMatrix inverse_from_cholesky(const ComplexMatrix& l) {
  const ComplexMatrix linv = cholesky_inverse_factor(l);
  return hermitian_part(adjoint_times(linv, linv));
}

// Newton step for the barrier: the Hessian is the Gram matrix of the columns
// A_j = L^{-1} F_j L^{-*}, so solve (R^T R) x = b from a Householder QR of the
// stacked columns instead of forming the Gram matrix explicitly.
std::optional<RealVector> gram_solve(std::vector<RealVector> cols, const RealVector& b) {
  const std::size_t nv = cols.size();
  const std::size_t rows = cols.front().size();
  RealVector d(nv);
  for (std::size_t j = 0; j < nv; ++j) {
    double nn = 0.0;
    for (double v : cols[j]) nn += v * v;
    if (!(nn > 0.0)) return std::nullopt;
    d[j] = 1.0 / std::sqrt(nn);
    for (double& v : cols[j]) v *= d[j];
  }
  std::vector<double> r(nv * nv, 0.0);
  for (std::size_t k = 0; k < nv; ++k) {
    auto& ck = cols[k];
    double alpha = 0.0;
    for (std::size_t i = k; i < rows; ++i) alpha += ck[i] * ck[i];
    alpha = std::sqrt(alpha);
    if (ck[k] > 0.0) alpha = -alpha;
    RealVector v(ck.begin() + std::ptrdiff_t(k), ck.end());
    v[0] -= alpha;
    double vv = 0.0;
    for (double x : v) vv += x * x;
    r[k * nv + k] = alpha;
    if (vv == 0.0) continue;
    for (std::size_t j = k + 1; j < nv; ++j) {
      auto& cj = cols[j];
      double dot = 0.0;
      for (std::size_t i = 0; i < v.size(); ++i) dot += v[i] * cj[k + i];
      const double f = 2.0 * dot / vv;
      for (std::size_t i = 0; i < v.size(); ++i) cj[k + i] -= f * v[i];
      r[k * nv + j] = cj[k];
    }
  }
  double rmax = 0.0;
  for (std::size_t k = 0; k < nv; ++k) rmax = std::max(rmax, std::abs(r[k * nv + k]));
  for (std::size_t k = 0; k < nv; ++k)
    if (!(std::abs(r[k * nv + k]) > 1e-14 * rmax)) return std::nullopt;
  // R^T y = D b, R w = y, x = D w.
  RealVector y(nv);
  for (std::size_t i = 0; i < nv; ++i) {
    double acc = b[i] * d[i];
    for (std::size_t k = 0; k < i; ++k) acc -= r[k * nv + i] * y[k];
    y[i] = acc / r[i * nv + i];
  }
  RealVector x(nv);
  for (std::size_t i = nv; i-- > 0;) {
    double acc = y[i];
    for (std::size_t k = i + 1; k < nv; ++k) acc -= r[i * nv + k] * x[k];
    x[i] = acc / r[i * nv + i];
  }
  for (std::size_t i = 0; i < nv; ++i) x[i] *= d[i];
  return x;
}

DistanceResult barrier_distance(const ComplexMatrix& target, const std::vector<ComplexMatrix>& basis) {
  const std::size_t n = target.rows();
  DistanceResult result;
  const double scale = operator_norm(target);
  if (scale == 0.0) {
    result.witness = ComplexMatrix(n, n);
    return result;
  }
  const ComplexMatrix t = target * (1.0 / scale);
  const std::size_t big = 2 * n;
  const std::size_t kdim = basis.size();
  const std::size_t nv = 1 + 2 * kdim;

  const ComplexMatrix f0 = embed(t);
  std::vector<ComplexMatrix> dirs;
  dirs.reserve(nv);
  dirs.push_back(ComplexMatrix::identity(big));
  for (const auto& b : basis) {
    dirs.push_back(-embed(b));
    dirs.push_back(-embed(b * cplx(0.0, 1.0)));
  }

  RealVector z(nv, 0.0);
  z[0] = 2.0;  // ||t|| = 1 so t = 2 is strictly feasible at X = 0
  double s = 1.0;
  const double nu = double(big);
  const double gap_target = 1e-10;
  std::size_t newton_steps = 0;
  std::optional<BarrierState> st = evaluate(f0, dirs, z);

  auto objective = [&](const BarrierState& b, const RealVector& zz) { return s * zz[0] - b.log_det; };
  auto current_witness = [&] {
    ComplexMatrix x(n, n);
    for (std::size_t k = 0; k < kdim; ++k) x += basis[k] * cplx(z[1 + 2 * k], z[2 + 2 * k]);
    return x;
  };
  // M = -2 Z_12 with Z = F^{-1}/s, projected onto the orthogonal complement
  // of the subspace; Re tr(M^* T)/||M||_1 <= ||T - X|| for every admissible X.
  auto dual_bound = [&](const ComplexMatrix& finv) {
    ComplexMatrix m = finv.block(0, n, n, n) * (-2.0 / s);
    for (int pass = 0; pass < 2; ++pass)
      for (const auto& b : basis) m -= b * hs_inner(b, m);
    const double mnorm = trace_norm(m);
    return mnorm > 0.0 ? std::max(0.0, hs_inner(m, t).real() / mnorm) : 0.0;
  };
  double best_primal = std::numeric_limits<double>::infinity();
  double best_lower = 0.0;
  ComplexMatrix best_x(n, n);

  ComplexMatrix finv;
  for (int outer = 0; outer < 40; ++outer) {
    for (int it = 0; it < 40; ++it) {
      const ComplexMatrix linv = cholesky_inverse_factor(st->chol);
      std::vector<RealVector> cols(nv, RealVector(big * big));
      RealVector grad(nv);
      for (std::size_t j = 0; j < nv; ++j) {
        const ComplexMatrix aj = linv * dirs[j] * linv.adjoint();
        auto& c = cols[j];
        std::size_t pos = 0;
        double tr = 0.0;
        for (std::size_t p = 0; p < big; ++p) {
          c[pos++] = aj(p, p).real();
          tr += aj(p, p).real();
          for (std::size_t q = p + 1; q < big; ++q) {
            const cplx v = 0.5 * (aj(p, q) + std::conj(aj(q, p)));
            c[pos++] = std::sqrt(2.0) * v.real();
            c[pos++] = std::sqrt(2.0) * v.imag();
          }
        }
        grad[j] = (j == 0 ? s : 0.0) - tr;
      }
      RealVector neg(nv);
      for (std::size_t j = 0; j < nv; ++j) neg[j] = -grad[j];
      auto solved = gram_solve(std::move(cols), neg);
      if (!solved) break;
      const RealVector& step = *solved;
      double decrement = 0.0;
      for (std::size_t j = 0; j < nv; ++j) decrement -= grad[j] * step[j];
      ++newton_steps;
      if (decrement < 1e-9) break;

      const double f_now = objective(*st, z);
      double alpha = 1.0;
      bool moved = false;
      for (int ls = 0; ls < 60; ++ls) {
        RealVector trial = z;
        for (std::size_t j = 0; j < nv; ++j) trial[j] += alpha * step[j];
        auto cand = evaluate(f0, dirs, trial);
        if (cand && objective(*cand, trial) <= f_now - 0.25 * alpha * decrement) {
          z = std::move(trial);
          st = std::move(cand);
          moved = true;
          break;
        }
        alpha *= 0.5;
      }
      if (!moved) break;
    }
    // Every barrier iterate yields a valid dual certificate; keep the best
    // (late iterates lose accuracy to the conditioning of F^{-1}).
    ComplexMatrix x = current_witness();
    const double primal = operator_norm(t - x);
    const double lower = dual_bound(inverse_from_cholesky(st->chol));
    if (primal < best_primal) {
      best_primal = primal;
      best_x = x;
    }
    best_lower = std::max(best_lower, lower);
    if (nu / s < gap_target || best_primal - best_lower <= 1e-12) break;
    s *= 25.0;
  }
  // The orthogonal projection is exact when the target lies in the subspace,
  // where the barrier stalls (F tends to 0).
  {
    ComplexMatrix proj(n, n);
    for (const auto& b : basis) proj += b * hs_inner(b, t);
    const double primal = operator_norm(t - proj);
    if (primal < best_primal) {
      best_primal = primal;
      best_x = proj;
    }
  }
  const double lower = best_lower;
  const ComplexMatrix x = best_x;

  result.witness = x * scale;
  result.distance = operator_norm(target - result.witness);
  result.lower_bound = std::min(lower * scale, result.distance);
  result.certified_gap = std::max(0.0, result.distance - result.lower_bound);
  result.iterations = newton_steps;
  return result;
}

}  // namespace

DistanceResult dist_to_scalars(const ComplexMatrix& t) {
  if (!t.is_square()) throw DimensionError("dist_to_scalars: matrix is not square");
  const std::size_t n = t.rows();
  SubspaceBasis s = SubspaceBasis::scalars(n);
  DistanceResult r = barrier_distance(t, s.basis());
  r.scalar = n > 0 ? r.witness(0, 0) : cplx(0.0);
  return r;
}

DistanceResult dist_to_subspace(const ComplexMatrix& t, const SubspaceBasis& s) {
  if (!t.is_square()) throw DimensionError("dist_to_subspace: matrix is not square");
  if (s.ambient_dimension() != t.rows()) {
    throw DimensionError("dist_to_subspace: subspace lives in M_" +
                         std::to_string(s.ambient_dimension()) + ", target is " +
                         std::to_string(t.rows()) + "x" + std::to_string(t.cols()));
  }
  DistanceResult r = barrier_distance(t, s.basis());
  if (!s.basis().empty()) {
    // Report lambda when the witness is scalar.
    const ComplexMatrix& w = r.witness;
    const cplx lam = w.rows() ? w(0, 0) : cplx(0.0);
    if (frobenius_norm(w - ComplexMatrix::identity(w.rows()) * lam) <= 1e-9 * std::max(1.0, frobenius_norm(w)))
      r.scalar = lam;
  }
  return r;
}

// ---------------------------------------------------------------------------
// Numerical range

namespace {

using Point = std::pair<double, double>;

double cross(const Point& o, const Point& a, const Point& b) {
  return (a.first - o.first) * (b.second - o.second) - (a.second - o.second) * (b.first - o.first);
}

std::vector<Point> convex_hull(std::vector<Point> pts) {
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  if (pts.size() < 3) return pts;
  std::vector<Point> hull(2 * pts.size());
  std::size_t k = 0;
  for (const auto& p : pts) {
    while (k >= 2 && cross(hull[k - 2], hull[k - 1], p) <= 0) --k;
    hull[k++] = p;
  }
  for (std::size_t i = pts.size() - 1, t = k + 1; i-- > 0;) {
    while (k >= t && cross(hull[k - 2], hull[k - 1], pts[i]) <= 0) --k;
    hull[k++] = pts[i];
  }
  hull.resize(k - 1);
  return hull;
}

Point closest_on_segment(const Point& a, const Point& b) {
  const double dx = b.first - a.first, dy = b.second - a.second;
  const double len2 = dx * dx + dy * dy;
  if (len2 == 0.0) return a;
  double u = -(a.first * dx + a.second * dy) / len2;
  u = std::clamp(u, 0.0, 1.0);
  return {a.first + u * dx, a.second + u * dy};
}

// Point of the convex polygon (hull of pts) closest to the origin.
Point min_norm_point(const std::vector<Point>& pts, bool& contains_origin) {
  std::vector<Point> hull = convex_hull(pts);
  contains_origin = false;
  if (hull.size() == 1) return hull[0];
  if (hull.size() >= 3) {
    bool inside = true;
    const Point origin{0.0, 0.0};
    for (std::size_t i = 0; i < hull.size(); ++i) {
      const Point& a = hull[i];
      const Point& b = hull[(i + 1) % hull.size()];
      // near-duplicate support points give edges whose orientation is noise
      const double len = std::hypot(b.first - a.first, b.second - a.second);
      if (len <= 1e-12 * std::max(1.0, std::hypot(a.first, a.second))) continue;
      if (cross(a, b, origin) / len < -1e-15) {
        inside = false;
        break;
      }
    }
    if (inside) {
      contains_origin = true;
      return origin;
    }
  }
  Point best = hull[0];
  double best_d = std::hypot(best.first, best.second);
  const std::size_t edges = hull.size() == 2 ? 1 : hull.size();
  for (std::size_t i = 0; i < edges; ++i) {
    Point p = closest_on_segment(hull[i], hull[(i + 1) % hull.size()]);
    const double d = std::hypot(p.first, p.second);
    if (d < best_d) {
      best_d = d;
      best = p;
    }
  }
  return best;
}

// Extreme point of W(T) in direction theta: top eigenvector of Re(e^{-i theta} T).
std::pair<cplx, ComplexVector> support_point(const ComplexMatrix& t, double theta) {
  const cplx ph = std::polar(1.0, -theta);
  ComplexMatrix h = hermitian_part(t * ph);
  SpectralDecomposition eig = herm_eig(h);
  ComplexVector v = eig.eigenvectors.col(t.rows() - 1);
  return {inner(v, t * std::span<const cplx>(v)), v};
}

}  // namespace

NumericalRangeSummary numerical_range(const ComplexMatrix& t, std::size_t angle_count) {
  if (!t.is_square() || t.rows() == 0) throw DimensionError("numerical_range: matrix is not square");
  if (angle_count < 16) throw InvariantError("numerical_range: angle_count must be at least 16");
  NumericalRangeSummary out;
  std::vector<Point> pts;
  auto add = [&](double theta) {
    auto [z, v] = support_point(t, theta);
    out.boundary.push_back(z);
    out.vectors.push_back(std::move(v));
    out.angles.push_back(theta);
    pts.emplace_back(z.real(), z.imag());
  };
  for (std::size_t k = 0; k < angle_count; ++k) add(2.0 * std::numbers::pi * double(k) / double(angle_count));

  const double scale = std::max(1.0, operator_norm(t));
  const double zero_tol = 1e-12 * scale;
  // Cutting planes: the polygon is an inner approximation of W(T); the support
  // value in the direction of its closest point is a lower bound on dist(0, W).
  for (int iter = 0; iter < 500; ++iter) {
    bool inside = false;
    Point p = min_norm_point(pts, inside);
    const double upper = std::hypot(p.first, p.second);
    if (inside || upper <= zero_tol) {
      out.contains_zero = true;
      out.min_modulus = 0.0;
      out.min_modulus_point = 0.0;
      return out;
    }
    const double phi = std::atan2(p.second, p.first);
    const double lower = lambda_min(hermitian_part(t * std::polar(1.0, -phi)));
    out.min_modulus_point = cplx(p.first, p.second);
    out.min_modulus = upper;
    out.min_modulus_angle = phi;
    if (upper - lower <= 1e-13 * scale) break;
    add(phi + std::numbers::pi);
  }
  return out;
}

}  // namespace cpmetric
