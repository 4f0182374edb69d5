#include <algorithm>
#include <cmath>
#include <numeric>

#include "tightproj/error.hpp"
#include "tightproj/linalg.hpp"

namespace tightproj {
namespace {

double off_diagonal_norm(const Matrix& a) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < i; ++j) s += 2.0 * a(i, j) * a(i, j);
  return std::sqrt(s);
}

// Zeroes a(p, q) with the rotation J^T A J and accumulates V <- V J.
void rotate(Matrix& a, Matrix& v, std::size_t p, std::size_t q) {
  const double apq = a(p, q);
  const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
  double t;
  if (std::abs(theta) > 1e150) {
    t = 0.5 / theta;
  } else {
    t = 1.0 / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
    if (theta < 0.0) t = -t;
  }
  const double c = 1.0 / std::sqrt(t * t + 1.0);
  const double s = t * c;
  const double tau = s / (1.0 + c);

  a(p, p) -= t * apq;
  a(q, q) += t * apq;
  a(p, q) = 0.0;
  a(q, p) = 0.0;
  const std::size_t n = a.rows();
  for (std::size_t k = 0; k < n; ++k) {
    if (k == p || k == q) continue;
    const double akp = a(k, p);
    const double akq = a(k, q);
    const double new_kp = akp - s * (akq + tau * akp);
    const double new_kq = akq + s * (akp - tau * akq);
    a(k, p) = a(p, k) = new_kp;
    a(k, q) = a(q, k) = new_kq;
  }
  for (std::size_t k = 0; k < n; ++k) {
    const double vkp = v(k, p);
    const double vkq = v(k, q);
    v(k, p) = vkp - s * (vkq + tau * vkp);
    v(k, q) = vkq + s * (vkp - tau * vkq);
  }
}

}  // namespace

EigenDecomp jacobi_eigh(const SymMatrix& s, double tol, int max_sweeps) {
  if (!(tol > 0.0)) throw Error(ErrorKind::invalid_input, "jacobi_eigh: tol must be positive");
  const std::size_t n = s.dim();
  Matrix a = s.dense();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (!std::isfinite(a(i, j))) {
        throw Error(ErrorKind::invalid_input, "jacobi_eigh: non-finite matrix entry");
      }
  Matrix v = Matrix::identity(n);
  const double threshold = tol * s.frobenius();

  int sweep = 0;
  double off = off_diagonal_norm(a);
  while (off > threshold) {
    if (sweep == max_sweeps) throw ConvergenceError(off, sweep);
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const double apq = a(p, q);
        if (apq == 0.0) continue;
        // Once an entry is below the rounding level of both diagonal entries
        // a rotation cannot change the diagonal; drop it.
        const double g = 100.0 * std::abs(apq);
        if (sweep > 3 && std::abs(a(p, p)) + g == std::abs(a(p, p)) &&
            std::abs(a(q, q)) + g == std::abs(a(q, q))) {
          a(p, q) = a(q, p) = 0.0;
          continue;
        }
        rotate(a, v, p, q);
      }
    }
    ++sweep;
    off = off_diagonal_norm(a);
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t x, std::size_t y) { return a(x, x) < a(y, y); });

  EigenDecomp out;
  out.eigenvalues.resize(n);
  out.eigenvectors = Matrix(n, n);
  for (std::size_t k = 0; k < n; ++k) {
    out.eigenvalues[k] = a(order[k], order[k]);
    for (std::size_t i = 0; i < n; ++i) out.eigenvectors(i, k) = v(i, order[k]);
  }
  out.sweeps = sweep;
  out.off_norm = off;
  return out;
}

}  // namespace tightproj
