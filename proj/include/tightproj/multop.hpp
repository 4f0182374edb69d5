#pragma once

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "tightproj/interval_set.hpp"
#include "tightproj/pairing.hpp"
#include "tightproj/polynomial.hpp"

namespace tightproj {

// Multiplication operators (M_phi f)(x) = phi(x) f(x) on L^2[a, b) with
// Lebesgue measure and a piecewise-polynomial symbol phi.

struct SymbolPiece {
  double start;
  double end;
  Polynomial poly;  // in the global variable x
};

class MultOpSpec {
 public:
  static constexpr std::size_t kMaxDegree = 8;

  struct PieceInput {
    double end;
    std::vector<double> coeffs;  // c0, c1, ... in x
  };

  /// Pieces cover [a, b): piece i is [end_{i-1}, end_i) with end_{-1} = a and
  /// the last end equal to b. Throws invalid-input otherwise.
  static MultOpSpec make(double a, double b, std::vector<PieceInput> pieces);

  double lo() const noexcept { return lo_; }
  double hi() const noexcept { return hi_; }
  const std::vector<SymbolPiece>& pieces() const noexcept { return pieces_; }
  const std::vector<PieceInput>& inputs() const noexcept { return inputs_; }

  double operator()(double x) const;
  double integral(const IntervalSet& set) const;
  /// Closed hull of phi over the closure of `set`.
  std::pair<double, double> range(const IntervalSet& set) const;
  std::pair<double, double> range() const;

  bool nonnegative() const noexcept { return nonnegative_; }
  /// Some piece is a constant polynomial, i.e. phi is constant on a set of
  /// positive measure.
  bool has_constant_piece() const;

 private:
  MultOpSpec() = default;

  double lo_ = 0.0;
  double hi_ = 0.0;
  std::vector<SymbolPiece> pieces_;
  std::vector<PieceInput> inputs_;
  bool nonnegative_ = false;
};

/// Open value interval (lo, hi).
struct ValueBall {
  double lo;
  double hi;
};

struct RangePair {
  double x;  // essential infimum
  double y;  // essential supremum
  ValueBall ball_x;
  ValueBall ball_y;
};

/// Representatives at the bottom and top of the essential range with balls
/// of radius (y - x) / 4. Throws not-applicable when phi has a constant piece.
RangePair essential_range_pair(const MultOpSpec& spec);

struct PartitionScheme {
  std::vector<IntervalSet> sets;
  std::vector<double> measures;
  /// Preimage of the innermost unused ball: sets and residual together make
  /// up the queried preimage.
  IntervalSet residual;
};

inline constexpr std::size_t kMaxShrinkSteps = 64;

/// Preimages of the annuli B_n \ B_{n+1} of balls shrinking by 1/2 toward
/// `target` (default: the center of `ball`). Annuli with empty preimage are
/// skipped. Throws partition-exhausted if fewer than `count` nonempty annuli
/// appear within kMaxShrinkSteps.
PartitionScheme partition_preimage(const MultOpSpec& spec, ValueBall ball, std::size_t count,
                                   std::optional<double> target = {});

/// Wraps caller-supplied sets; throws invalid-input unless they are pairwise
/// disjoint, inside the domain and of positive measure.
PartitionScheme make_partition(const MultOpSpec& spec, std::vector<IntervalSet> sets);

struct BlockFunction {
  IntervalSet support;
  double coefficient;  // measure^{-1/2}
};

struct BlockSystem {
  std::vector<BlockFunction> functions;
  std::vector<double> eigenvalues;  // eta_i = mean of phi over the support
};

BlockSystem block_eigenvalues(const MultOpSpec& spec, const PartitionScheme& parts);

/// <f_i, f_j> for every pair of block functions.
Matrix gram_matrix(const BlockSystem& blocks);

struct MultOpCertificate {
  double alpha = 0.0;
  std::size_t rank = 0;
  double diagonal_residual = 0.0;  // max_j |<phi h_j, h_j> - alpha|
  double cross_term_max = 0.0;     // max_{j != k} |<phi h_j, h_k>|
  double gram_residual = 0.0;      // max_{j,k} |<h_j, h_k> - delta_jk|
  double tolerance = 0.0;
  bool pass = false;
};

/// Certifies P M_phi P = alpha P on span{h_j}, where h_j is the combination
/// of block functions named by plan entry j. Every inner product is
/// integrated from the symbol over support intersections.
MultOpCertificate certify_plan(const MultOpSpec& spec, const BlockSystem& blocks,
                               const PairingPlan& plan, double tol);

struct MultOpTightening {
  BlockSystem stage1;
  PairingPlan stage2;  // indices refer to stage1 functions
  double alpha = 0.0;
  MultOpCertificate certificate;
  std::optional<RangePair> range_pair;
};

/// Second stage only: pair the block eigenvalues of `blocks`.
MultOpTightening tighten_blocks(const MultOpSpec& spec, BlockSystem blocks, double tol);

/// Both stages: n blocks from each ball, then the pairing.
MultOpTightening tighten_multop(const MultOpSpec& spec, std::size_t n, double tol);

}  // namespace tightproj
