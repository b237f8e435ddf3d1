#include "cpmetric/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "cpmetric/error.hpp"
#include "cpmetric/tolerance.hpp"

namespace cpmetric {

namespace {

constexpr int kMaxSweeps = 80;

void require_square(const ComplexMatrix& a, const char* op) {
  if (!a.is_square()) {
    throw DimensionError(std::string(op) + ": expected a square matrix, got " +
                         std::to_string(a.rows()) + "x" + std::to_string(a.cols()));
  }
}

void require_hermitian(const ComplexMatrix& h, const char* op) {
  const double scale = frobenius_norm(h);
  const double defect = hermiticity_defect(h) / std::sqrt(2.0);
  if (defect > tolerances().construction * std::max(scale, 1e-300) && defect > 1e-300) {
    throw InvariantError(std::string(op) + ": matrix is not Hermitian (defect " +
                         std::to_string(defect) + ")");
  }
}

// Cyclic Jacobi on a Hermitian copy of h. Eigenvectors are accumulated only if
// `vectors` is non-null.
RealVector jacobi(ComplexMatrix a, ComplexMatrix* vectors) {
  const std::size_t n = a.rows();
  if (vectors) *vectors = ComplexMatrix::identity(n);
  const double frob = frobenius_norm(a);
  if (n <= 1 || frob == 0.0) {
    RealVector ev(n);
    for (std::size_t i = 0; i < n; ++i) ev[i] = a(i, i).real();
    return ev;
  }
  const double skip = 1e-300 + frob * 1e-19;

  for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
    double off = 0.0;
    for (std::size_t p = 0; p < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q) off += std::norm(a(p, q));
    if (std::sqrt(off) <= 1e-16 * frob) break;

    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const cplx apq = a(p, q);
        const double b = std::abs(apq);
        if (b <= skip) continue;
        const cplx phase = apq / b;
        const double app = a(p, p).real();
        const double aqq = a(q, q).real();
        const double theta = (aqq - app) / (2.0 * b);
        double t;
        if (std::abs(theta) > 1e150) {
          t = 0.5 / theta;
        } else {
          t = (theta >= 0.0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        }
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        const cplx gpp = c;
        const cplx gpq = s;
        const cplx gqp = -s * std::conj(phase);
        const cplx gqq = c * std::conj(phase);

        for (std::size_t k = 0; k < n; ++k) {
          const cplx akp = a(k, p), akq = a(k, q);
          a(k, p) = akp * gpp + akq * gqp;
          a(k, q) = akp * gpq + akq * gqq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const cplx apk = a(p, k), aqk = a(q, k);
          a(p, k) = std::conj(gpp) * apk + std::conj(gqp) * aqk;
          a(q, k) = std::conj(gpq) * apk + std::conj(gqq) * aqk;
        }
        a(p, q) = 0.0;
        a(q, p) = 0.0;
        a(p, p) = a(p, p).real();
        a(q, q) = a(q, q).real();
        if (vectors) {
          ComplexMatrix& v = *vectors;
          for (std::size_t k = 0; k < n; ++k) {
            const cplx vkp = v(k, p), vkq = v(k, q);
            v(k, p) = vkp * gpp + vkq * gqp;
            v(k, q) = vkp * gpq + vkq * gqq;
          }
        }
      }
    }
  }
  RealVector ev(n);
  for (std::size_t i = 0; i < n; ++i) ev[i] = a(i, i).real();
  return ev;
}

ComplexMatrix hermitian_embedding(const ComplexMatrix& a) {
  const std::size_t m = a.rows(), n = a.cols();
  ComplexMatrix h(m + n, m + n);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      h(i, m + j) = a(i, j);
      h(m + j, i) = std::conj(a(i, j));
    }
  return h;
}

}  // namespace

ComplexMatrix SpectralDecomposition::reconstruct() const {
  const std::size_t n = eigenvalues.size();
  ComplexMatrix scaled = eigenvectors;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) scaled(i, j) *= eigenvalues[j];
  return scaled * eigenvectors.adjoint();
}

ComplexMatrix SingularValueDecomposition::reconstruct() const {
  ComplexMatrix s(u.cols(), v.cols());
  for (std::size_t i = 0; i < singular_values.size(); ++i) s(i, i) = singular_values[i];
  return u * s * v.adjoint();
}

SpectralDecomposition herm_eig(const ComplexMatrix& h) {
  require_square(h, "herm_eig");
  require_hermitian(h, "herm_eig");
  ComplexMatrix vectors;
  RealVector ev = jacobi(hermitian_part(h), &vectors);
  const std::size_t n = ev.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](auto i, auto j) { return ev[i] < ev[j]; });
  SpectralDecomposition out{RealVector(n), ComplexMatrix(n, n)};
  for (std::size_t k = 0; k < n; ++k) {
    out.eigenvalues[k] = ev[order[k]];
    for (std::size_t i = 0; i < n; ++i) out.eigenvectors(i, k) = vectors(i, order[k]);
  }
  return out;
}

RealVector herm_eigenvalues(const ComplexMatrix& h) {
  require_square(h, "herm_eigenvalues");
  require_hermitian(h, "herm_eigenvalues");
  RealVector ev = jacobi(hermitian_part(h), nullptr);
  std::sort(ev.begin(), ev.end());
  return ev;
}

double lambda_min(const ComplexMatrix& h) { return herm_eigenvalues(h).front(); }
double lambda_max(const ComplexMatrix& h) { return herm_eigenvalues(h).back(); }

SingularValueDecomposition svd(const ComplexMatrix& a) {
  if (!a.all_finite()) throw InvariantError("svd: non-finite entry");
  const std::size_t m = a.rows(), n = a.cols();
  const std::size_t k = std::min(m, n);
  SingularValueDecomposition out;
  out.singular_values.assign(k, 0.0);
  if (k == 0) {
    out.u = ComplexMatrix::identity(m);
    out.v = ComplexMatrix::identity(n);
    return out;
  }
  ComplexMatrix vectors;
  RealVector ev = jacobi(hermitian_embedding(a), &vectors);
  std::vector<std::size_t> order(ev.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](auto i, auto j) { return ev[i] > ev[j]; });

  const double top = std::max(ev[order[0]], 0.0);
  const double tol = 1e-13 * top;
  ComplexMatrix ucols(m, k), vcols(n, k);
  std::size_t accepted = 0;
  for (std::size_t r = 0; r < k; ++r) {
    const std::size_t idx = order[r];
    const double lam = ev[idx];
    if (!(lam > tol) || lam <= 0.0) break;
    ComplexVector up(m), vp(n);
    for (std::size_t i = 0; i < m; ++i) up[i] = vectors(i, idx);
    for (std::size_t j = 0; j < n; ++j) vp[j] = vectors(m + j, idx);
    const double nu = norm(up), nv = norm(vp);
    if (nu < 0.25 || nv < 0.25) break;
    for (auto& z : up) z /= nu;
    for (auto& z : vp) z /= nv;
    ucols.set_col(accepted, up);
    vcols.set_col(accepted, vp);
    out.singular_values[accepted] = lam;
    ++accepted;
  }
  ComplexMatrix ub = orthonormalize_columns(ucols.block(0, 0, m, accepted));
  ComplexMatrix vb = orthonormalize_columns(vcols.block(0, 0, n, accepted));
  out.u = complete_orthonormal(ub);
  out.v = complete_orthonormal(vb);
  return out;
}

RealVector singular_values(const ComplexMatrix& a) {
  if (!a.all_finite()) throw InvariantError("singular_values: non-finite entry");
  const std::size_t k = std::min(a.rows(), a.cols());
  RealVector ev = jacobi(hermitian_embedding(a), nullptr);
  std::sort(ev.begin(), ev.end(), std::greater<>());
  RealVector sv(k);
  for (std::size_t i = 0; i < k; ++i) sv[i] = std::max(ev[i], 0.0);
  return sv;
}

ComplexMatrix herm_function(const ComplexMatrix& h, const std::function<double(double)>& f) {
  SpectralDecomposition eig = herm_eig(h);
  for (auto& lam : eig.eigenvalues) lam = f(lam);
  ComplexMatrix r = eig.reconstruct();
  return hermitian_part(r);
}

ComplexMatrix psd_sqrt(const ComplexMatrix& p) {
  SpectralDecomposition eig = herm_eig(p);
  const double scale = std::max(1.0, std::abs(eig.max()));
  if (eig.min() < -tolerances().psd_clip * scale) {
    throw InvariantError("psd_sqrt: matrix is indefinite (lambda_min = " +
                         std::to_string(eig.min()) + ")");
  }
  // eigenvalues at roundoff level are zero; their square roots would not be
  const double floor = 8.0 * static_cast<double>(p.rows()) * std::numeric_limits<double>::epsilon() * scale;
  for (auto& lam : eig.eigenvalues) lam = lam <= floor ? 0.0 : std::sqrt(lam);
  return hermitian_part(eig.reconstruct());
}

PolarDecomposition polar(const ComplexMatrix& a) {
  require_square(a, "polar");
  SingularValueDecomposition s = svd(a);
  const std::size_t n = a.rows();
  ComplexMatrix sv(n, n);
  for (std::size_t i = 0; i < n; ++i) sv(i, i) = s.singular_values[i];
  PolarDecomposition out;
  out.unitary = s.u * s.v.adjoint();
  out.positive = hermitian_part(s.v * sv * s.v.adjoint());
  return out;
}

double operator_norm(const ComplexMatrix& a) {
  if (a.empty()) return 0.0;
  return singular_values(a).front();
}

double trace_norm(const ComplexMatrix& a) {
  RealVector sv = singular_values(a);
  return std::accumulate(sv.begin(), sv.end(), 0.0);
}

std::optional<ComplexMatrix> cholesky(const ComplexMatrix& a) {
  require_square(a, "cholesky");
  const std::size_t n = a.rows();
  ComplexMatrix l(n, n);
  for (std::size_t j = 0; j < n; ++j) {
    double d = a(j, j).real();
    for (std::size_t k = 0; k < j; ++k) d -= std::norm(l(j, k));
    if (!(d > 0.0) || !std::isfinite(d)) return std::nullopt;
    const double ljj = std::sqrt(d);
    l(j, j) = ljj;
    for (std::size_t i = j + 1; i < n; ++i) {
      cplx s = a(i, j);
      for (std::size_t k = 0; k < j; ++k) s -= l(i, k) * std::conj(l(j, k));
      l(i, j) = s / ljj;
    }
  }
  return l;
}

ComplexMatrix solve(const ComplexMatrix& a, const ComplexMatrix& b) {
  require_square(a, "solve");
  if (a.rows() != b.rows()) throw DimensionError("solve: right-hand side has wrong row count");
  const std::size_t n = a.rows(), m = b.cols();
  ComplexMatrix lu = a;
  ComplexMatrix x = b;
  double scale = 0.0;
  for (const auto& z : a.entries()) scale = std::max(scale, std::abs(z));
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t piv = k;
    double best = std::abs(lu(k, k));
    for (std::size_t i = k + 1; i < n; ++i) {
      if (std::abs(lu(i, k)) > best) {
        best = std::abs(lu(i, k));
        piv = i;
      }
    }
    if (best <= 1e-15 * scale || best == 0.0) throw InvariantError("solve: singular matrix");
    if (piv != k) {
      for (std::size_t j = 0; j < n; ++j) std::swap(lu(k, j), lu(piv, j));
      for (std::size_t j = 0; j < m; ++j) std::swap(x(k, j), x(piv, j));
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      const cplx f = lu(i, k) / lu(k, k);
      lu(i, k) = f;
      for (std::size_t j = k + 1; j < n; ++j) lu(i, j) -= f * lu(k, j);
      for (std::size_t j = 0; j < m; ++j) x(i, j) -= f * x(k, j);
    }
  }
  for (std::size_t kk = n; kk-- > 0;) {
    for (std::size_t j = 0; j < m; ++j) {
      cplx s = x(kk, j);
      for (std::size_t c = kk + 1; c < n; ++c) s -= lu(kk, c) * x(c, j);
      x(kk, j) = s / lu(kk, kk);
    }
  }
  return x;
}

ComplexMatrix inverse(const ComplexMatrix& a) {
  require_square(a, "inverse");
  return solve(a, ComplexMatrix::identity(a.rows()));
}

ComplexMatrix orthonormalize_columns(const ComplexMatrix& a) {
  ComplexMatrix q = a;
  for (std::size_t j = 0; j < q.cols(); ++j) {
    ComplexVector v = q.col(j);
    for (int pass = 0; pass < 2; ++pass) {
      for (std::size_t i = 0; i < j; ++i) {
        ComplexVector qi = q.col(i);
        const cplx c = inner(qi, v);
        for (std::size_t r = 0; r < v.size(); ++r) v[r] -= c * qi[r];
      }
    }
    const double nv = norm(v);
    if (nv < 1e-300) throw InvariantError("orthonormalize_columns: dependent columns");
    for (auto& z : v) z /= nv;
    q.set_col(j, v);
  }
  return q;
}

ComplexMatrix complete_orthonormal(const ComplexMatrix& basis) {
  const std::size_t n = basis.rows();
  const std::size_t k = basis.cols();
  if (k > n) throw DimensionError("complete_orthonormal: more columns than rows");
  ComplexMatrix q(n, n);
  q.set_block(0, 0, basis);
  std::size_t filled = k;
  std::vector<bool> used(n, false);
  while (filled < n) {
    // Pick the standard basis vector with the largest residual.
    std::size_t best_e = n;
    double best_norm = -1.0;
    ComplexVector best_v;
    for (std::size_t e = 0; e < n; ++e) {
      if (used[e]) continue;
      ComplexVector v(n, 0.0);
      v[e] = 1.0;
      for (int pass = 0; pass < 2; ++pass)
        for (std::size_t i = 0; i < filled; ++i) {
          ComplexVector qi = q.col(i);
          const cplx c = inner(qi, v);
          for (std::size_t r = 0; r < n; ++r) v[r] -= c * qi[r];
        }
      const double nv = norm(v);
      if (nv > best_norm) {
        best_norm = nv;
        best_e = e;
        best_v = std::move(v);
      }
    }
    used[best_e] = true;
    for (auto& z : best_v) z /= best_norm;
    q.set_col(filled, best_v);
    ++filled;
  }
  return q;
}

double unitarity_defect(const ComplexMatrix& a) {
  ComplexMatrix g = adjoint_times(a, a);
  g -= ComplexMatrix::identity(g.rows());
  return frobenius_norm(g);
}

}  // namespace cpmetric
