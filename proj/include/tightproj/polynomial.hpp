#pragma once

#include <cstddef>
#include <utility>
#include <vector>

namespace tightproj {

/// Real polynomial c0 + c1 x + ... + ck x^k.
class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(std::vector<double> coeffs);

  const std::vector<double>& coeffs() const noexcept { return coeffs_; }
  /// Degree after trimming trailing zeros; the zero polynomial has degree 0.
  std::size_t degree() const noexcept { return coeffs_.empty() ? 0 : coeffs_.size() - 1; }
  bool is_constant() const noexcept { return coeffs_.size() <= 1; }

  double operator()(double x) const;
  Polynomial derivative() const;
  /// Coefficients of t -> p(a + t).
  Polynomial taylor_shift(double a) const;
  /// Integral over [a, b], evaluated in the local variable t = x - a so
  /// short intervals far from the origin do not cancel.
  double integral(double a, double b) const;

  /// Sorted real roots in the open interval (lo, hi). Roots of even
  /// multiplicity that do not change sign are reported only if they are
  /// also critical points found by the recursion.
  std::vector<double> roots(double lo, double hi) const;
  /// Sorted roots of p - value in (lo, hi), given the sorted critical points
  /// of p in (lo, hi).
  std::vector<double> level_crossings(double value, double lo, double hi,
                                      const std::vector<double>& critical) const;

  /// min and max over the closed interval [lo, hi].
  std::pair<double, double> range(double lo, double hi) const;

 private:
  std::vector<double> coeffs_;
};

}  // namespace tightproj
