#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "tightproj/linalg.hpp"
#include "tightproj/spectrum.hpp"

namespace tightproj {

/// dim ran(E - alpha); std::nullopt stands for an infinite rank.
using TranslateRank = std::optional<std::size_t>;

inline constexpr double kDefaultRankTol = 1e-10;

/// Number of eigenvalues with |lambda - alpha| > tol * (1 + ||E||_max).
TranslateRank rank_of_translate(const SymMatrix& e, double alpha, double tol = kDefaultRankTol);

/// Finite only for a constant tail equal to alpha: the head terms that differ
/// from alpha.
TranslateRank rank_of_translate(const SpectrumModel& model, double alpha, double tol = kDefaultRankTol);

struct FiniteCodimProjection {
  Projection projection;  // onto ker(E - alpha)
  std::size_t codim;      // dim ker P = dim ran(E - alpha)
  double residual;        // ||PEP - alpha P||_max
  double rank_threshold;  // tol * (1 + ||E||_max)
};

/// Projection with dim ker P <= 2N and PEP = alpha P, or an obstruction error
/// when dim ran(E - alpha) > 2N.
FiniteCodimProjection finite_codim_projection(const SymMatrix& e, double alpha, std::size_t n,
                                              double tol = kDefaultRankTol);

/// Model counterpart. The range of P is infinite dimensional, so it is
/// described by its kernel: P = I - sum_{i in kernel} e_i e_i^T.
struct ModelKernelProjection {
  std::vector<std::size_t> kernel_indices;  // 1-based sequence positions
  std::size_t codim;
};

ModelKernelProjection finite_codim_projection(const SpectrumModel& model, double alpha,
                                              std::size_t n, double tol = kDefaultRankTol);

}  // namespace tightproj
