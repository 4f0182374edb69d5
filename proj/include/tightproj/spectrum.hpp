#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "tightproj/pairing.hpp"

namespace tightproj {

// Eigenvalue sequences lambda_1, lambda_2, ... (1-based n) standing in for
// positive operators on an infinite dimensional space.

/// lambda_n = head[n-1] for n <= head.size(), tail afterwards (tail has
/// infinite multiplicity).
struct ExplicitTail {
  std::vector<double> head;
  double tail;
};

/// lambda_n = beta - c / n^p.
struct HarmonicShift {
  double beta;
  double c;
  double p;
};

/// lambda_n = beta + (-1)^n c / n^p.
struct Alternating {
  double beta;
  double c;
  double p;
};

/// Interleaved clusters, k = 1, 2, ...:
/// lambda_{2k-1} = beta2 - c2 / k and lambda_{2k} = beta1 + c1 / k, beta1 < beta2.
struct TwoCluster {
  double beta1;
  double c1;
  double beta2;
  double c2;
};

/// lambda_n = c * r^n with c > 0 and 0 < r < 1.
struct CompactDecay {
  double c;
  double r;
};

using SequenceFamily = std::variant<ExplicitTail, HarmonicShift, Alternating, TwoCluster, CompactDecay>;

enum class SideCount { finite, infinite };

/// A declared limit point with global side counts: how many terms of the
/// whole sequence are < value and >= value.
struct LimitPoint {
  double value;
  SideCount below;
  SideCount at_or_above;
};

class SpectrumModel {
 public:
  static constexpr std::size_t kValidationLength = 10000;
  static constexpr double kClusterRadius = 1e-3;
  static constexpr std::size_t kClusterMinTerms = 100;
  static constexpr std::size_t kTailWindow = 1000;
  static constexpr double kTailRadius = 1e-2;

  /// Validates parameters and the declaration against a truncation of
  /// length kValidationLength; throws a model error on any mismatch.
  static SpectrumModel make(SequenceFamily family, std::vector<LimitPoint> limit_points);

  const SequenceFamily& family() const noexcept { return family_; }
  const std::vector<LimitPoint>& limit_points() const noexcept { return limit_points_; }
  std::string family_name() const;

  /// 1-based.
  double eigenvalue(std::size_t n) const;
  std::vector<double> truncation(std::size_t length) const;

  /// True when `x` is an eigenvalue of infinite multiplicity.
  bool infinite_multiplicity(double x) const;

  /// lambda_n + beta for every n (re-validated).
  SpectrumModel shifted(double beta) const;
  /// c * lambda_n for c > 0 (re-validated).
  SpectrumModel scaled(double c) const;

 private:
  SpectrumModel(SequenceFamily family, std::vector<LimitPoint> limit_points)
      : family_(std::move(family)), limit_points_(std::move(limit_points)) {}
  void validate() const;

  SequenceFamily family_;
  std::vector<LimitPoint> limit_points_;
};

enum class Verdict {
  projectable_eigenspace,
  projectable_two_limit_points,
  projectable_one_limit_point,
  not_projectable_fk,
  not_applicable_compact,
};

const char* to_string(Verdict v) noexcept;
inline bool is_projectable(Verdict v) {
  return v == Verdict::projectable_eigenspace || v == Verdict::projectable_two_limit_points ||
         v == Verdict::projectable_one_limit_point;
}

struct Witness {
  std::vector<LimitPoint> limit_points;
  /// E = beta + K with K compact, when there is a single limit point.
  std::optional<double> beta;
  /// Sign counts of the eigenvalues of K = E - beta.
  std::optional<SideCount> nonnegative;
  std::optional<SideCount> nonpositive;
  std::string summary;
};

struct Classification {
  Verdict verdict;
  std::optional<double> alpha;  // present iff projectable
  Witness witness;
};

Classification classify(const SpectrumModel& model);

/// The alpha of a projectable classification; contract error otherwise.
double find_alpha_infinite(const SpectrumModel& model);

/// Whether K = E - shift is in FK: finitely many nonnegative or finitely many
/// nonpositive eigenvalues. Requires a single limit point equal to `shift`.
bool fk_membership(double shift, const SpectrumModel& model);

struct TruncatedPlan {
  PairingPlan plan;
  std::size_t rank = 0;
  std::size_t surplus = 0;
  double diagonal_residual = 0.0;
};

/// Evaluates lambda_1..lambda_N and applies the infinite construction to the
/// prefix: the eigenspace of alpha for constant tails, otherwise the
/// order-preserving pairing of terms < alpha with terms >= alpha.
TruncatedPlan truncated_plan(const SpectrumModel& model, std::size_t length);

/// ||P D P - alpha P||_max for D = diag(values) and P built from `plan` on
/// the standard basis.
double diagonal_compression_residual(std::span<const double> values, const PairingPlan& plan);

}  // namespace tightproj
