#include "core/eigen.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "core/error.hpp"
#include "core/tsv.hpp"

namespace semmap {

namespace {

constexpr int kMaxSweeps = 100;
constexpr double kOffDiagTol = 1e-12;  // relative to the Frobenius norm
constexpr double kSymTol = 1e-12;

double off_diag_frobenius(const Matrix& a) {
  const std::size_t n = a.rows();
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) s += 2.0 * a(i, j) * a(i, j);
  return std::sqrt(s);
}

void check_symmetric(const Matrix& m) {
  if (m.rows() != m.cols() || m.rows() == 0)
    throw ValidationError("sym_eigen: need a nonempty square matrix, got " +
                          std::to_string(m.rows()) + "x" + std::to_string(m.cols()));
  double worst = 0.0;
  std::size_t wi = 0, wj = 0;
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = i + 1; j < m.cols(); ++j) {
      const double dev = std::abs(m(i, j) - m(j, i));
      if (dev > worst) {
        worst = dev;
        wi = i;
        wj = j;
      }
    }
  }
  if (worst > kSymTol)
    throw ValidationError("sym_eigen: input not symmetric, worst deviation " +
                          format_double(worst) + " at (" + std::to_string(wi) +
                          "," + std::to_string(wj) + ")");
}

}  // namespace

EigenResult sym_eigen(const Matrix& m) {
  check_symmetric(m);
  const std::size_t n = m.rows();

  // Work on a symmetrized copy; vt holds the eigenvectors as rows so the
  // rotation updates stay contiguous.
  Matrix a(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) a(i, j) = 0.5 * (m(i, j) + m(j, i));
  Matrix vt = Matrix::identity(n);

  double fro = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) fro += a(i, j) * a(i, j);
  fro = std::sqrt(fro);
  const double tol = kOffDiagTol * std::max(fro, 1e-300);

  int sweep = 0;
  for (; sweep < kMaxSweeps; ++sweep) {
    if (off_diag_frobenius(a) <= tol) break;
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const double apq = a(p, q);
        // Skip rotations that cannot move anything at double precision.
        if (std::abs(apq) <= 1e-300 ||
            std::abs(apq) <= 1e-18 * (std::abs(a(p, p)) + std::abs(a(q, q))))
          continue;
        const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
        const double t = (theta >= 0 ? 1.0 : -1.0) /
                         (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;

        double* arow_p = a.data() + p * n;
        double* arow_q = a.data() + q * n;
        for (std::size_t r = 0; r < n; ++r) {
          const double arp = arow_p[r];
          const double arq = arow_q[r];
          arow_p[r] = c * arp - s * arq;
          arow_q[r] = s * arp + c * arq;
        }
        for (std::size_t r = 0; r < n; ++r) {
          const double apr = a(r, p);
          const double aqr = a(r, q);
          a(r, p) = c * apr - s * aqr;
          a(r, q) = s * apr + c * aqr;
        }
        // Clean residual asymmetry in the rotated pair.
        a(p, q) = 0.0;
        a(q, p) = 0.0;

        double* vrow_p = vt.data() + p * n;
        double* vrow_q = vt.data() + q * n;
        for (std::size_t r = 0; r < n; ++r) {
          const double vp = vrow_p[r];
          const double vq = vrow_q[r];
          vrow_p[r] = c * vp - s * vq;
          vrow_q[r] = s * vp + c * vq;
        }
      }
    }
  }
  const double achieved = off_diag_frobenius(a);
  if (achieved > tol)
    throw NumericError("sym_eigen: no convergence after " +
                       std::to_string(kMaxSweeps) + " sweeps, off-diagonal " +
                       format_double(achieved));

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t x, std::size_t y) { return a(x, x) > a(y, y); });

  EigenResult res;
  res.eigenvalues.resize(n);
  res.eigenvectors = Matrix(n, n);
  for (std::size_t k = 0; k < n; ++k) {
    const std::size_t src = order[k];
    res.eigenvalues[k] = a(src, src);
    // Sign fix: the entry of largest magnitude becomes non-negative.
    double best = 0.0;
    for (std::size_t r = 0; r < n; ++r)
      if (std::abs(vt(src, r)) > std::abs(best)) best = vt(src, r);
    const double sgn = (best < 0.0) ? -1.0 : 1.0;
    for (std::size_t r = 0; r < n; ++r) res.eigenvectors(r, k) = sgn * vt(src, r);
  }
  return res;
}

Matrix double_center(const DissimilarityMatrix& delta) {
  const std::size_t n = delta.size();
  Matrix sq(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) sq(i, j) = delta.at(i, j) * delta.at(i, j);

  std::vector<double> row_mean(n, 0.0);
  double grand = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    double s = 0.0;
    for (std::size_t j = 0; j < n; ++j) s += sq(i, j);
    row_mean[i] = s / static_cast<double>(n);
    grand += s;
  }
  grand /= static_cast<double>(n) * static_cast<double>(n);

  // Column means equal row means: sq is symmetric.
  Matrix b(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      b(i, j) = -0.5 * (sq(i, j) - row_mean[i] - row_mean[j] + grand);
  return b;
}

}  // namespace semmap
