#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "tightproj/random.hpp"

namespace tightproj {

/// Dense row-major real matrix.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, double fill = 0.0)
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  static Matrix identity(std::size_t n);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }

  double& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  double operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  std::span<const double> row(std::size_t i) const {
    return {data_.data() + i * cols_, cols_};
  }
  std::vector<double> column(std::size_t j) const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

Matrix multiply(const Matrix& a, const Matrix& b);
Matrix transpose(const Matrix& a);
double max_abs(const Matrix& a);
double max_abs_diff(const Matrix& a, const Matrix& b);

double dot(std::span<const double> a, std::span<const double> b);
double norm2(std::span<const double> a);

/// Real symmetric matrix. Only the lower triangle is stored, so
/// `(i, j)` and `(j, i)` read the same slot and symmetry is exact.
class SymMatrix {
 public:
  SymMatrix() = default;
  explicit SymMatrix(std::size_t dim) : dim_(dim), packed_(dim * (dim + 1) / 2, 0.0) {}

  static SymMatrix diagonal(std::span<const double> values);
  static SymMatrix identity(std::size_t dim);
  /// Symmetrizes by averaging mirrored entries.
  static SymMatrix from_dense(const Matrix& a);

  std::size_t dim() const noexcept { return dim_; }

  double operator()(std::size_t i, std::size_t j) const { return packed_[slot(i, j)]; }
  void set(std::size_t i, std::size_t j, double v) { packed_[slot(i, j)] = v; }
  void add(std::size_t i, std::size_t j, double v) { packed_[slot(i, j)] += v; }

  Matrix dense() const;
  double max_abs() const;
  double frobenius() const;

 private:
  static std::size_t slot(std::size_t i, std::size_t j) {
    return i >= j ? i * (i + 1) / 2 + j : j * (j + 1) / 2 + i;
  }

  std::size_t dim_ = 0;
  std::vector<double> packed_;
};

double max_abs_diff(const SymMatrix& a, const SymMatrix& b);

/// A finite list of vectors in R^d.
class FrameSpec {
 public:
  /// Throws invalid-input unless M >= 1, every vector has `dim` entries and
  /// every entry is finite.
  FrameSpec(std::size_t dim, std::vector<std::vector<double>> vectors);

  std::size_t dim() const noexcept { return dim_; }
  std::size_t size() const noexcept { return vectors_.size(); }
  std::span<const double> vector(std::size_t i) const { return vectors_[i]; }
  const std::vector<std::vector<double>>& vectors() const noexcept { return vectors_; }

 private:
  std::size_t dim_;
  std::vector<std::vector<double>> vectors_;
};

/// Ascending eigenvalues with matching orthonormal eigenvector columns.
struct EigenDecomp {
  std::vector<double> eigenvalues;
  Matrix eigenvectors;
  int sweeps = 0;
  double off_norm = 0.0;
};

inline constexpr double kDefaultEighTol = 1e-14;
inline constexpr int kDefaultMaxSweeps = 100;

/// Cyclic-by-row Jacobi. Stops once the off-diagonal Frobenius norm is at
/// most tol * ||S||_F; ties in the sorted output keep the solver's order.
EigenDecomp jacobi_eigh(const SymMatrix& s, double tol = kDefaultEighTol,
                        int max_sweeps = kDefaultMaxSweeps);

/// Orthogonal projection stored through an orthonormal basis of its range.
class Projection {
 public:
  static constexpr double kOrthonormalityTol = 1e-12;

  /// `basis` is d x r; throws invalid-input if its columns are not
  /// orthonormal to kOrthonormalityTol.
  static Projection from_basis(Matrix basis);
  static Projection identity(std::size_t dim);
  static Projection zero(std::size_t dim);

  std::size_t dim() const noexcept { return basis_.rows(); }
  std::size_t rank() const noexcept { return basis_.cols(); }
  const Matrix& basis() const noexcept { return basis_; }

  /// P = Q0 Q0^T.
  SymMatrix dense() const;
  std::vector<double> apply(std::span<const double> v) const;

 private:
  explicit Projection(Matrix basis) : basis_(std::move(basis)) {}
  Matrix basis_;
};

struct ProjectionCheck {
  double idempotence_residual;  // ||P^2 - P||_max
  double trace;
  bool pass;                    // idempotence <= 1e-10 and |trace - rank| <= 1e-8
};

ProjectionCheck check_projection(const Projection& p);

SymMatrix frame_operator(const FrameSpec& frame);

struct FrameBounds {
  double lower;
  double upper;

  bool is_frame(double tol = 1e-12) const { return lower > tol * (1.0 + upper); }
  bool is_tight(double tol = 1e-10) const { return upper - lower <= tol * (1.0 + upper); }
};

FrameBounds frame_bounds(const FrameSpec& frame);

/// Full d x d matrix P E P.
SymMatrix compress(const Projection& p, const SymMatrix& e);

/// {P f_i} in ambient coordinates.
FrameSpec project_frame(const Projection& p, const FrameSpec& frame);

struct TightnessCertificate {
  double alpha = 0.0;
  std::size_t rank = 0;
  double residual_compression = 0.0;     // ||PSP - alpha P||_max
  double residual_reconstruction = 0.0;  // max_f ||(1/alpha) sum <f,g_i> g_i - f||_2
  double tolerance = 0.0;
  std::size_t random_probes = 0;
  std::uint64_t seed = 0;
  bool compression_pass = false;
  bool reconstruction_pass = false;
  bool pass = false;
};

inline constexpr std::size_t kDefaultRandomProbes = 8;

/// Checks that {P f_i} is a tight frame for ran P with bound alpha, once
/// through the compression PSP and once through the reconstruction formula
/// on the basis columns of P plus `random_probes` seeded unit vectors in ran P.
TightnessCertificate verify_tight(const FrameSpec& frame, const Projection& p, double alpha,
                                  double tol, std::size_t random_probes = kDefaultRandomProbes,
                                  std::uint64_t seed = kDefaultProbeSeed);

}  // namespace tightproj
