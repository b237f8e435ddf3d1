#include "oracles.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

namespace oracle {

std::vector<double> quadratic_eigenvalues(const ComplexMatrix& h) {
  const double a = h(0, 0).real(), d = h(1, 1).real();
  const double b2 = std::norm(h(0, 1));
  const double mean = 0.5 * (a + d);
  const double disc = std::sqrt(0.25 * (a - d) * (a - d) + b2);
  return {mean - disc, mean + disc};
}

namespace {

bool covers(cplx c, double r, const std::vector<cplx>& pts) {
  for (const cplx& p : pts)
    if (std::abs(p - c) > r * (1.0 + 1e-12) + 1e-14) return false;
  return true;
}

}  // namespace

double enclosing_radius(const std::vector<cplx>& pts) {
  if (pts.size() == 1) return 0.0;
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < pts.size(); ++i)
    for (std::size_t j = i + 1; j < pts.size(); ++j) {
      const cplx c = 0.5 * (pts[i] + pts[j]);
      const double r = 0.5 * std::abs(pts[i] - pts[j]);
      if (r < best && covers(c, r, pts)) best = r;
      for (std::size_t k = j + 1; k < pts.size(); ++k) {
        // circumcircle
        const cplx a = pts[i], b = pts[j], q = pts[k];
        const double dd = 2.0 * (a.real() * (b.imag() - q.imag()) + b.real() * (q.imag() - a.imag()) +
                                 q.real() * (a.imag() - b.imag()));
        if (std::abs(dd) < 1e-300) continue;
        const double ux = (std::norm(a) * (b.imag() - q.imag()) + std::norm(b) * (q.imag() - a.imag()) +
                           std::norm(q) * (a.imag() - b.imag())) / dd;
        const double uy = (std::norm(a) * (q.real() - b.real()) + std::norm(b) * (a.real() - q.real()) +
                           std::norm(q) * (b.real() - a.real())) / dd;
        const cplx cc(ux, uy);
        const double rr = std::abs(a - cc);
        if (rr < best && covers(cc, rr, pts)) best = rr;
      }
    }
  return best;
}

double chebyshev_radius_grid(const std::vector<cplx>& pts) {
  auto radius = [&](cplx l) {
    double m = 0.0;
    for (const cplx& p : pts) m = std::max(m, std::abs(p - l));
    return m;
  };
  double x0 = pts[0].real(), x1 = x0, y0 = pts[0].imag(), y1 = y0;
  for (const cplx& p : pts) {
    x0 = std::min(x0, p.real()), x1 = std::max(x1, p.real());
    y0 = std::min(y0, p.imag()), y1 = std::max(y1, p.imag());
  }
  cplx centre(0.5 * (x0 + x1), 0.5 * (y0 + y1));
  double half = 0.5 * std::max({x1 - x0, y1 - y0, 1e-12});
  double best = radius(centre);
  for (int level = 0; level < 40; ++level) {
    cplx next = centre;
    const int g = 20;
    for (int i = -g; i <= g; ++i)
      for (int j = -g; j <= g; ++j) {
        const cplx l = centre + cplx(half * i / g, half * j / g);
        const double r = radius(l);
        if (r < best) best = r, next = l;
      }
    centre = next;
    half *= 0.25;
  }
  return best;
}

double hull_distance_to_origin(const std::vector<cplx>& pts) {
  // 0 is in the hull iff it lies in some triangle or on some segment.
  auto cross = [](cplx a, cplx b) { return a.real() * b.imag() - a.imag() * b.real(); };
  const std::size_t n = pts.size();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      for (std::size_t k = j + 1; k < n; ++k) {
        if (std::abs(cross(pts[j] - pts[i], pts[k] - pts[i])) < 1e-14) continue;  // degenerate
        const double s1 = cross(pts[j] - pts[i], -pts[i]);
        const double s2 = cross(pts[k] - pts[j], -pts[j]);
        const double s3 = cross(pts[i] - pts[k], -pts[k]);
        if ((s1 >= 0 && s2 >= 0 && s3 >= 0) || (s1 <= 0 && s2 <= 0 && s3 <= 0)) return 0.0;
      }
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < n; ++i) {
    best = std::min(best, std::abs(pts[i]));
    for (std::size_t j = i + 1; j < n; ++j) {
      const cplx d = pts[j] - pts[i];
      const double len2 = std::norm(d);
      if (len2 == 0.0) continue;
      const double t = std::clamp(-(std::conj(d) * pts[i]).real() / len2, 0.0, 1.0);
      best = std::min(best, std::abs(pts[i] + t * d));
    }
  }
  return best;
}

std::size_t commutant_dimension(const std::vector<ComplexMatrix>& gens) {
  const std::size_t n = gens.front().rows();
  const std::size_t nn = n * n;
  std::vector<ComplexMatrix> all = gens;
  for (const auto& g : gens) all.push_back(g.adjoint());
  // rows: entries of [X, G] for each G; columns: entries of X
  std::vector<std::vector<cplx>> m;
  for (const auto& g : all) {
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        std::vector<cplx> row(nn, 0.0);
        // ([X, G])_ij = sum_k X_ik G_kj - G_ik X_kj
        for (std::size_t k = 0; k < n; ++k) {
          row[i * n + k] += g(k, j);
          row[k * n + j] -= g(i, k);
        }
        m.push_back(std::move(row));
      }
  }
  std::size_t rank = 0;
  std::vector<bool> used_col(nn, false);
  std::vector<bool> used_row(m.size(), false);
  double scale = 0.0;
  for (const auto& r : m)
    for (const cplx& v : r) scale = std::max(scale, std::abs(v));
  for (;;) {
    double piv = 0.0;
    std::size_t pr = 0, pc = 0;
    for (std::size_t r = 0; r < m.size(); ++r) {
      if (used_row[r]) continue;
      for (std::size_t c = 0; c < nn; ++c)
        if (!used_col[c] && std::abs(m[r][c]) > piv) piv = std::abs(m[r][c]), pr = r, pc = c;
    }
    if (piv <= 1e-9 * std::max(scale, 1.0)) break;
    used_row[pr] = used_col[pc] = true;
    ++rank;
    for (std::size_t r = 0; r < m.size(); ++r) {
      if (used_row[r]) continue;
      const cplx f = m[r][pc] / m[pr][pc];
      for (std::size_t c = 0; c < nn; ++c) m[r][c] -= f * m[pr][c];
    }
  }
  return nn - rank;
}

double sampled_operator_norm(const ComplexMatrix& a, std::size_t samples, unsigned seed) {
  std::mt19937 gen(seed);
  std::normal_distribution<double> g;
  double best = 0.0;
  for (std::size_t s = 0; s < samples; ++s) {
    std::vector<cplx> v(a.cols());
    double nv = 0.0;
    for (auto& x : v) x = cplx(g(gen), g(gen)), nv += std::norm(x);
    double nav = 0.0;
    for (std::size_t i = 0; i < a.rows(); ++i) {
      cplx acc = 0.0;
      for (std::size_t j = 0; j < a.cols(); ++j) acc += a(i, j) * v[j];
      nav += std::norm(acc);
    }
    best = std::max(best, std::sqrt(nav / nv));
  }
  return best;
}

}  // namespace oracle
