#include "tightproj/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "tightproj/error.hpp"

namespace tightproj {

Matrix Matrix::identity(std::size_t n) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

std::vector<double> Matrix::column(std::size_t j) const {
  std::vector<double> c(rows_);
  for (std::size_t i = 0; i < rows_; ++i) c[i] = (*this)(i, j);
  return c;
}

Matrix multiply(const Matrix& a, const Matrix& b) {
  if (a.cols() != b.rows()) {
    throw Error(ErrorKind::dimension_mismatch, "multiply: inner dimensions differ");
  }
  Matrix c(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const double aik = a(i, k);
      if (aik == 0.0) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) c(i, j) += aik * b(k, j);
    }
  }
  return c;
}

Matrix transpose(const Matrix& a) {
  Matrix t(a.cols(), a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) t(j, i) = a(i, j);
  return t;
}

double max_abs(const Matrix& a) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (double v : a.row(i)) m = std::max(m, std::abs(v));
  return m;
}

double max_abs_diff(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw Error(ErrorKind::dimension_mismatch, "max_abs_diff: shapes differ");
  }
  double m = 0.0;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) m = std::max(m, std::abs(a(i, j) - b(i, j)));
  return m;
}

double dot(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

double norm2(std::span<const double> a) { return std::sqrt(dot(a, a)); }

SymMatrix SymMatrix::diagonal(std::span<const double> values) {
  SymMatrix s(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) s.set(i, i, values[i]);
  return s;
}

SymMatrix SymMatrix::identity(std::size_t dim) {
  SymMatrix s(dim);
  for (std::size_t i = 0; i < dim; ++i) s.set(i, i, 1.0);
  return s;
}

SymMatrix SymMatrix::from_dense(const Matrix& a) {
  if (a.rows() != a.cols()) {
    throw Error(ErrorKind::dimension_mismatch, "SymMatrix::from_dense: matrix is not square");
  }
  SymMatrix s(a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j <= i; ++j) s.set(i, j, 0.5 * (a(i, j) + a(j, i)));
  return s;
}

Matrix SymMatrix::dense() const {
  Matrix m(dim_, dim_);
  for (std::size_t i = 0; i < dim_; ++i)
    for (std::size_t j = 0; j < dim_; ++j) m(i, j) = (*this)(i, j);
  return m;
}

double SymMatrix::max_abs() const {
  double m = 0.0;
  for (double v : packed_) m = std::max(m, std::abs(v));
  return m;
}

double SymMatrix::frobenius() const {
  double s = 0.0;
  for (std::size_t i = 0; i < dim_; ++i) {
    for (std::size_t j = 0; j < i; ++j) s += 2.0 * (*this)(i, j) * (*this)(i, j);
    s += (*this)(i, i) * (*this)(i, i);
  }
  return std::sqrt(s);
}

double max_abs_diff(const SymMatrix& a, const SymMatrix& b) {
  if (a.dim() != b.dim()) {
    throw Error(ErrorKind::dimension_mismatch, "max_abs_diff: dimensions differ");
  }
  double m = 0.0;
  for (std::size_t i = 0; i < a.dim(); ++i)
    for (std::size_t j = 0; j <= i; ++j) m = std::max(m, std::abs(a(i, j) - b(i, j)));
  return m;
}

FrameSpec::FrameSpec(std::size_t dim, std::vector<std::vector<double>> vectors)
    : dim_(dim), vectors_(std::move(vectors)) {
  if (dim_ == 0) throw Error(ErrorKind::invalid_input, "frame: dim must be positive");
  if (vectors_.empty()) throw Error(ErrorKind::invalid_input, "frame: needs at least one vector");
  for (std::size_t i = 0; i < vectors_.size(); ++i) {
    if (vectors_[i].size() != dim_) {
      throw Error(ErrorKind::invalid_input, "frame: vector " + std::to_string(i) + " has " +
                                                std::to_string(vectors_[i].size()) +
                                                " entries, expected " + std::to_string(dim_));
    }
    for (double v : vectors_[i]) {
      if (!std::isfinite(v)) {
        throw Error(ErrorKind::invalid_input,
                    "frame: vector " + std::to_string(i) + " has a non-finite entry");
      }
    }
  }
}

Projection Projection::from_basis(Matrix basis) {
  const std::size_t r = basis.cols();
  for (std::size_t a = 0; a < r; ++a) {
    for (std::size_t b = 0; b <= a; ++b) {
      double g = 0.0;
      for (std::size_t i = 0; i < basis.rows(); ++i) {
        if (!std::isfinite(basis(i, a))) {
          throw Error(ErrorKind::invalid_input, "projection: non-finite basis entry");
        }
        g += basis(i, a) * basis(i, b);
      }
      const double expected = a == b ? 1.0 : 0.0;
      if (std::abs(g - expected) > kOrthonormalityTol) {
        throw Error(ErrorKind::invalid_input,
                    "projection: basis columns " + std::to_string(b) + ", " + std::to_string(a) +
                        " are not orthonormal (Gram entry " + std::to_string(g) + ")");
      }
    }
  }
  return Projection(std::move(basis));
}

Projection Projection::identity(std::size_t dim) { return Projection(Matrix::identity(dim)); }

Projection Projection::zero(std::size_t dim) { return Projection(Matrix(dim, 0)); }

SymMatrix Projection::dense() const {
  const std::size_t d = dim();
  SymMatrix p(d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j <= i; ++j) p.set(i, j, dot(basis_.row(i), basis_.row(j)));
  return p;
}

std::vector<double> Projection::apply(std::span<const double> v) const {
  if (v.size() != dim()) throw Error(ErrorKind::dimension_mismatch, "projection: vector size");
  std::vector<double> coeff(rank(), 0.0);
  for (std::size_t i = 0; i < dim(); ++i)
    for (std::size_t k = 0; k < rank(); ++k) coeff[k] += basis_(i, k) * v[i];
  std::vector<double> out(dim(), 0.0);
  for (std::size_t i = 0; i < dim(); ++i)
    for (std::size_t k = 0; k < rank(); ++k) out[i] += basis_(i, k) * coeff[k];
  return out;
}

ProjectionCheck check_projection(const Projection& p) {
  const Matrix dense = p.dense().dense();
  const Matrix squared = multiply(dense, dense);
  double trace = 0.0;
  for (std::size_t i = 0; i < p.dim(); ++i) trace += dense(i, i);
  const double idem = max_abs_diff(squared, dense);
  const bool pass = idem <= 1e-10 && std::abs(trace - static_cast<double>(p.rank())) <= 1e-8;
  return {idem, trace, pass};
}

SymMatrix frame_operator(const FrameSpec& frame) {
  SymMatrix s(frame.dim());
  for (const auto& f : frame.vectors()) {
    for (std::size_t i = 0; i < frame.dim(); ++i) {
      if (f[i] == 0.0) continue;
      for (std::size_t j = 0; j <= i; ++j) s.add(i, j, f[i] * f[j]);
    }
  }
  return s;
}

FrameBounds frame_bounds(const FrameSpec& frame) {
  const EigenDecomp eig = jacobi_eigh(frame_operator(frame));
  return {eig.eigenvalues.front(), eig.eigenvalues.back()};
}

SymMatrix compress(const Projection& p, const SymMatrix& e) {
  if (p.dim() != e.dim()) {
    throw Error(ErrorKind::dimension_mismatch, "compress: projection and operator dimensions differ");
  }
  const std::size_t d = p.dim();
  const std::size_t r = p.rank();
  const Matrix& q = p.basis();
  // C = Q0^T E Q0 (r x r), then P E P = Q0 C Q0^T.
  Matrix eq(d, r);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t k = 0; k < d; ++k) {
      const double eik = e(i, k);
      if (eik == 0.0) continue;
      for (std::size_t c = 0; c < r; ++c) eq(i, c) += eik * q(k, c);
    }
  Matrix core(r, r);
  for (std::size_t a = 0; a < r; ++a)
    for (std::size_t b = 0; b < r; ++b) {
      double s = 0.0;
      for (std::size_t i = 0; i < d; ++i) s += q(i, a) * eq(i, b);
      core(a, b) = s;
    }
  Matrix qc = multiply(q, core);
  SymMatrix out(d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j <= i; ++j) out.set(i, j, dot(qc.row(i), q.row(j)));
  return out;
}

FrameSpec project_frame(const Projection& p, const FrameSpec& frame) {
  if (p.dim() != frame.dim()) {
    throw Error(ErrorKind::dimension_mismatch, "project_frame: dimensions differ");
  }
  std::vector<std::vector<double>> out;
  out.reserve(frame.size());
  for (std::size_t i = 0; i < frame.size(); ++i) out.push_back(p.apply(frame.vector(i)));
  return FrameSpec(frame.dim(), std::move(out));
}

}  // namespace tightproj
