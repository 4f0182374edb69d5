#pragma once

#include <cmath>
#include <cstddef>
#include <optional>
#include <span>
#include <variant>
#include <vector>

#include "tightproj/linalg.hpp"

namespace tightproj {

// Indices in plans are 0-based positions into the eigenvalue list they were
// built from.

/// f = weight_lower * e_lower + weight_upper * e_upper, with
/// weight_lower^2 + weight_upper^2 = 1 and
/// weight_lower^2 * lambda_lower + weight_upper^2 * lambda_upper = alpha.
struct Pair {
  std::size_t lower;
  std::size_t upper;
  double weight_lower;
  double weight_upper;
};

/// f = e_index, with lambda_index = alpha.
struct Singleton {
  std::size_t index;
};

using PlanEntry = std::variant<Pair, Singleton>;

struct PairingPlan {
  double alpha = 0.0;
  std::vector<PlanEntry> entries;

  std::size_t rank() const noexcept { return entries.size(); }
  std::vector<std::size_t> consumed_indices() const;
};

/// Relative slack used for every "lambda equals alpha" decision.
inline double alpha_slack(double alpha) { return 1e-12 * (1.0 + std::abs(alpha)); }

/// Default alpha for the symmetric pairing of an ascending spectrum: the
/// midpoint of the central gap for even length, the median for odd length.
/// An override is accepted only if the symmetric pairing can reach it
/// (infeasible-alpha otherwise, naming the offending pair).
double choose_alpha(std::span<const double> ascending, std::optional<double> alpha_override = {});

/// Symmetric pairing j <-> d-1-j of an ascending spectrum. For odd d the
/// Singleton is the lowest index whose eigenvalue equals alpha and the
/// remaining indices are paired symmetrically.
PairingPlan build_pairing(std::span<const double> ascending, double alpha);

struct OrderPreservingPlan {
  PairingPlan plan;
  std::size_t below = 0;     // |{i : lambda_i < alpha}|
  std::size_t at_or_above = 0;
  std::size_t surplus = 0;   // terms left unpaired
};

/// Pairs the j-th term below alpha with the j-th term at-or-above alpha, in
/// sequence order; unsorted input is expected. Throws
/// insufficient-truncation if either side is empty.
OrderPreservingPlan order_preserving_pairing(std::span<const double> values, double alpha);

/// max_j |a_n^2 lambda_n + a_m^2 lambda_m - alpha| (Singletons: |lambda_i - alpha|).
double plan_residual(std::span<const double> eigenvalues, const PairingPlan& plan);

/// Projection onto span{f_j} with f_j = a_n Q[:,n] + a_m Q[:,m].
Projection pairing_projection(const EigenDecomp& eig, const PairingPlan& plan);

/// Projection onto the eigenvectors with |lambda_i - alpha| <= tol; rank may be 0.
Projection eigenspace_projection(const EigenDecomp& eig, double alpha, double tol);

struct TightenOptions {
  std::optional<double> alpha;
  /// Absolute certificate tolerance; defaults to 1e-9 * (1 + ||S||_max).
  std::optional<double> tol;
  std::size_t random_probes = kDefaultRandomProbes;
  std::uint64_t seed = kDefaultProbeSeed;
  /// When false a failing certificate is returned instead of thrown.
  bool throw_on_failure = true;
};

struct TightenResult {
  Projection projection;
  double alpha;
  TightnessCertificate certificate;
  PairingPlan plan;
  EigenDecomp eig;
  bool already_tight;  // all eigenvalues equal: P = I
};

/// frame_operator -> jacobi_eigh -> choose_alpha -> build_pairing ->
/// pairing_projection -> verify_tight.
TightenResult tighten(const FrameSpec& frame, const TightenOptions& options = {});

}  // namespace tightproj
