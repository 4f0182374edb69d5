#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include <doctest.h>

#include "tightproj/error.hpp"
#include "tightproj/linalg.hpp"
#include "tightproj/random.hpp"

namespace testsupport {

using tightproj::FrameSpec;
using tightproj::Matrix;
using tightproj::SymMatrix;
using tightproj::uniform_index;

inline std::vector<double> random_vector(std::mt19937_64& rng, std::size_t d, double lo = -1.0,
                                         double hi = 1.0) {
  std::vector<double> v(d);
  for (double& x : v) x = tightproj::uniform(rng, lo, hi);
  return v;
}

inline FrameSpec random_frame(std::mt19937_64& rng, std::size_t d, std::size_t m) {
  std::vector<std::vector<double>> vs;
  for (std::size_t i = 0; i < m; ++i) vs.push_back(random_vector(rng, d));
  return FrameSpec(d, std::move(vs));
}

inline SymMatrix random_symmetric(std::mt19937_64& rng, std::size_t d) {
  SymMatrix s(d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j <= i; ++j) s.set(i, j, tightproj::uniform(rng, -1.0, 1.0));
  return s;
}

// Modified Gram-Schmidt on random columns, done twice for good measure.
inline Matrix random_orthonormal(std::mt19937_64& rng, std::size_t d, std::size_t r) {
  Matrix q(d, r);
  for (std::size_t k = 0; k < r; ++k) {
    std::vector<double> v = random_vector(rng, d);
    for (int pass = 0; pass < 2; ++pass) {
      for (std::size_t j = 0; j < k; ++j) {
        double c = 0.0;
        for (std::size_t i = 0; i < d; ++i) c += q(i, j) * v[i];
        for (std::size_t i = 0; i < d; ++i) v[i] -= c * q(i, j);
      }
    }
    const double n = tightproj::norm2(v);
    for (std::size_t i = 0; i < d; ++i) q(i, k) = v[i] / n;
  }
  return q;
}

inline FrameSpec transform(const Matrix& u, const FrameSpec& frame) {
  std::vector<std::vector<double>> vs;
  for (const auto& f : frame.vectors()) {
    std::vector<double> g(u.rows(), 0.0);
    for (std::size_t i = 0; i < u.rows(); ++i)
      for (std::size_t j = 0; j < u.cols(); ++j) g[i] += u(i, j) * f[j];
    vs.push_back(std::move(g));
  }
  return FrameSpec(u.rows(), std::move(vs));
}

inline FrameSpec scaled(const FrameSpec& frame, double c) {
  auto vs = frame.vectors();
  for (auto& v : vs)
    for (double& x : v) x *= c;
  return FrameSpec(frame.dim(), std::move(vs));
}

// sqrt(lambda_n) e_n: frame operator diag(lambda).
inline FrameSpec diagonal_frame(const std::vector<double>& lambda) {
  std::vector<std::vector<double>> vs;
  for (std::size_t i = 0; i < lambda.size(); ++i) {
    std::vector<double> v(lambda.size(), 0.0);
    v[i] = std::sqrt(lambda[i]);
    vs.push_back(std::move(v));
  }
  return FrameSpec(lambda.size(), std::move(vs));
}

// Dense P S P - alpha P computed the long way, as an independent oracle.
inline double compression_residual_oracle(const Matrix& basis, const SymMatrix& s, double alpha) {
  const std::size_t d = basis.rows();
  Matrix p(d, d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j)
      for (std::size_t k = 0; k < basis.cols(); ++k) p(i, j) += basis(i, k) * basis(j, k);
  const Matrix psp = tightproj::multiply(tightproj::multiply(p, s.dense()), p);
  double worst = 0.0;
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) worst = std::max(worst, std::abs(psp(i, j) - alpha * p(i, j)));
  return worst;
}

template <class F>
tightproj::ErrorKind error_kind_of(F&& f) {
  try {
    f();
  } catch (const tightproj::Error& e) {
    return e.kind();
  }
  FAIL("expected a tightproj::Error");
  return tightproj::ErrorKind::contract;
}

}  // namespace testsupport
