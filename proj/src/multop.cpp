#include "tightproj/multop.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "tightproj/error.hpp"

namespace tightproj {
namespace {

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

[[noreturn]] void invalid(const std::string& what) {
  throw Error(ErrorKind::invalid_input, "multiplication operator: " + what);
}

// (weight, block index) components of plan entry j.
std::vector<std::pair<double, std::size_t>> components(const PlanEntry& e) {
  if (const auto* p = std::get_if<Pair>(&e)) {
    return {{p->weight_lower, p->lower}, {p->weight_upper, p->upper}};
  }
  return {{1.0, std::get<Singleton>(e).index}};
}

}  // namespace

MultOpSpec MultOpSpec::make(double a, double b, std::vector<PieceInput> pieces) {
  if (!std::isfinite(a) || !std::isfinite(b) || !(a < b)) invalid("domain must be a finite [a, b) with a < b");
  if (pieces.empty()) invalid("symbol needs at least one piece");
  MultOpSpec spec;
  spec.lo_ = a;
  spec.hi_ = b;
  double start = a;
  for (std::size_t i = 0; i < pieces.size(); ++i) {
    const PieceInput& in = pieces[i];
    if (!std::isfinite(in.end) || !(in.end > start)) {
      invalid("piece " + std::to_string(i) + " end " + fmt(in.end) + " must exceed its start " + fmt(start));
    }
    if (in.coeffs.empty()) invalid("piece " + std::to_string(i) + " has no coefficients");
    if (in.coeffs.size() > kMaxDegree + 1) {
      invalid("piece " + std::to_string(i) + " exceeds degree " + std::to_string(kMaxDegree));
    }
    spec.pieces_.push_back({start, in.end, Polynomial(in.coeffs)});
    start = in.end;
  }
  if (start != b) invalid("last piece ends at " + fmt(start) + ", domain ends at " + fmt(b));
  spec.inputs_ = std::move(pieces);
  spec.nonnegative_ = spec.range().first >= 0.0;
  return spec;
}

double MultOpSpec::operator()(double x) const {
  for (const SymbolPiece& p : pieces_)
    if (x >= p.start && x < p.end) return p.poly(x);
  invalid("point " + fmt(x) + " outside the domain");
}

double MultOpSpec::integral(const IntervalSet& set) const {
  double total = 0.0;
  for (const Interval& iv : set.parts()) {
    for (const SymbolPiece& p : pieces_) {
      const double lo = std::max(iv.lo, p.start);
      const double hi = std::min(iv.hi, p.end);
      if (hi > lo) total += p.poly.integral(lo, hi);
    }
  }
  return total;
}

std::pair<double, double> MultOpSpec::range(const IntervalSet& set) const {
  double mn = INFINITY;
  double mx = -INFINITY;
  for (const Interval& iv : set.parts()) {
    for (const SymbolPiece& p : pieces_) {
      const double lo = std::max(iv.lo, p.start);
      const double hi = std::min(iv.hi, p.end);
      if (!(hi > lo)) continue;
      const auto [a, b] = p.poly.range(lo, hi);
      mn = std::min(mn, a);
      mx = std::max(mx, b);
    }
  }
  return {mn, mx};
}

std::pair<double, double> MultOpSpec::range() const { return range(IntervalSet({{lo_, hi_}})); }

bool MultOpSpec::has_constant_piece() const {
  return std::any_of(pieces_.begin(), pieces_.end(),
                     [](const SymbolPiece& p) { return p.poly.is_constant(); });
}

RangePair essential_range_pair(const MultOpSpec& spec) {
  if (spec.has_constant_piece()) {
    throw Error(ErrorKind::not_applicable,
                "essential_range_pair: the symbol is constant on a piece of positive measure; that "
                "value is an eigenvalue and belongs to the diagonal (eigenvalue) pathway");
  }
  const auto [x, y] = spec.range();
  if (!(y > x)) {
    throw Error(ErrorKind::not_applicable, "essential_range_pair: essential range is a single point");
  }
  const double r = 0.25 * (y - x);
  return {x, y, {x - r, x + r}, {y - r, y + r}};
}

PartitionScheme partition_preimage(const MultOpSpec& spec, ValueBall ball, std::size_t count,
                                   std::optional<double> target) {
  if (count == 0) invalid("partition count must be positive");
  if (!std::isfinite(ball.lo) || !std::isfinite(ball.hi) || !(ball.lo < ball.hi)) {
    invalid("ball must be a finite open interval (lo, hi) with lo < hi");
  }
  const double y = target.value_or(0.5 * (ball.lo + ball.hi));
  if (!(y >= ball.lo && y <= ball.hi)) invalid("shrink target " + fmt(y) + " outside the ball");

  // B_n = (y - left[n], y + right[n]), n = 1 .. K + 1.
  constexpr std::size_t K = kMaxShrinkSteps;
  std::vector<double> left(K + 2);
  std::vector<double> right(K + 2);
  for (std::size_t n = 1; n <= K + 1; ++n) {
    const double scale = std::ldexp(1.0, -static_cast<int>(n - 1));
    left[n] = (y - ball.lo) * scale;
    right[n] = (ball.hi - y) * scale;
  }
  left[1] = y - ball.lo;
  right[1] = ball.hi - y;

  auto inside = [&](double v, std::size_t n) { return v > y - left[n] && v < y + right[n]; };
  // 0: outside B; n in 1..K: annulus B_n \ B_{n+1}; K + 1: innermost ball.
  auto annulus = [&](double v) -> std::size_t {
    if (!(v > ball.lo && v < ball.hi)) return 0;
    for (std::size_t n = 1; n <= K; ++n)
      if (!inside(v, n + 1)) return n;
    return K + 1;
  };

  std::vector<double> levels;
  for (std::size_t n = 1; n <= K + 1; ++n) {
    levels.push_back(y - left[n]);
    levels.push_back(y + right[n]);
  }
  std::sort(levels.begin(), levels.end());
  levels.erase(std::unique(levels.begin(), levels.end()), levels.end());

  std::vector<std::vector<Interval>> buckets(K + 2);
  for (const SymbolPiece& piece : spec.pieces()) {
    const auto [pmin, pmax] = piece.poly.range(piece.start, piece.end);
    const std::vector<double> critical = piece.poly.derivative().roots(piece.start, piece.end);
    std::vector<double> cuts = {piece.start, piece.end};
    cuts.insert(cuts.end(), critical.begin(), critical.end());
    for (double v : levels) {
      if (v < pmin || v > pmax) continue;
      const auto xs = piece.poly.level_crossings(v, piece.start, piece.end, critical);
      cuts.insert(cuts.end(), xs.begin(), xs.end());
    }
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
    for (std::size_t k = 0; k + 1 < cuts.size(); ++k) {
      const double a = cuts[k];
      const double b = cuts[k + 1];
      const std::size_t id = annulus(piece.poly(a + 0.5 * (b - a)));
      if (id != 0) buckets[id].push_back({a, b});
    }
  }

  PartitionScheme out;
  std::size_t last = 0;
  for (std::size_t n = 1; n <= K && out.sets.size() < count; ++n) {
    IntervalSet s(buckets[n]);
    if (s.empty()) continue;
    out.measures.push_back(s.measure());
    out.sets.push_back(std::move(s));
    last = n;
  }
  if (out.sets.size() < count) {
    throw Error(ErrorKind::partition_exhausted,
                "partition_preimage: only " + std::to_string(out.sets.size()) +
                    " annuli with positive-measure preimage in " + std::to_string(K) +
                    " shrink steps toward " + fmt(y) + " (need " + std::to_string(count) +
                    "); the target may not be a limit point of the essential range");
  }
  std::vector<Interval> rest;
  for (std::size_t n = last + 1; n <= K + 1; ++n) rest.insert(rest.end(), buckets[n].begin(), buckets[n].end());
  out.residual = IntervalSet(std::move(rest));
  return out;
}

PartitionScheme make_partition(const MultOpSpec& spec, std::vector<IntervalSet> sets) {
  const IntervalSet domain({{spec.lo(), spec.hi()}});
  PartitionScheme out;
  for (std::size_t i = 0; i < sets.size(); ++i) {
    const double m = sets[i].measure();
    if (!(m > 0.0)) invalid("partition set " + std::to_string(i) + " has zero measure");
    if (domain.intersect(sets[i]) != sets[i]) {
      invalid("partition set " + std::to_string(i) + " leaves the domain");
    }
    for (std::size_t j = 0; j < i; ++j) {
      if (sets[i].intersects(sets[j])) {
        invalid("partition sets " + std::to_string(j) + " and " + std::to_string(i) + " overlap");
      }
    }
    out.measures.push_back(m);
  }
  out.sets = std::move(sets);
  return out;
}

BlockSystem block_eigenvalues(const MultOpSpec& spec, const PartitionScheme& parts) {
  const PartitionScheme checked = make_partition(spec, parts.sets);
  BlockSystem out;
  for (std::size_t i = 0; i < checked.sets.size(); ++i) {
    const double m = checked.measures[i];
    out.functions.push_back({checked.sets[i], 1.0 / std::sqrt(m)});
    out.eigenvalues.push_back(spec.integral(checked.sets[i]) / m);
  }
  return out;
}

Matrix gram_matrix(const BlockSystem& blocks) {
  const std::size_t n = blocks.functions.size();
  Matrix g(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const auto& fi = blocks.functions[i];
      const auto& fj = blocks.functions[j];
      g(i, j) = fi.coefficient * fj.coefficient * fi.support.intersect(fj.support).measure();
    }
  return g;
}

MultOpCertificate certify_plan(const MultOpSpec& spec, const BlockSystem& blocks,
                               const PairingPlan& plan, double tol) {
  if (!(tol > 0.0)) invalid("certificate tolerance must be positive");
  const std::size_t nf = blocks.functions.size();
  std::vector<std::vector<std::pair<double, std::size_t>>> comps;
  for (const PlanEntry& e : plan.entries) {
    comps.push_back(components(e));
    for (const auto& [w, idx] : comps.back()) {
      if (idx >= nf) invalid("plan index " + std::to_string(idx) + " out of range");
    }
  }

  // <phi f_a, f_b> and <f_a, f_b> for block functions, over support intersections.
  auto moments = [&](std::size_t a, std::size_t b) {
    const auto& fa = blocks.functions[a];
    const auto& fb = blocks.functions[b];
    const IntervalSet common = fa.support.intersect(fb.support);
    const double cc = fa.coefficient * fb.coefficient;
    return std::pair{cc * spec.integral(common), cc * common.measure()};
  };

  MultOpCertificate cert;
  cert.alpha = plan.alpha;
  cert.rank = plan.rank();
  cert.tolerance = tol;
  for (std::size_t j = 0; j < comps.size(); ++j) {
    for (std::size_t k = 0; k <= j; ++k) {
      double form = 0.0;
      double inner = 0.0;
      for (const auto& [wa, a] : comps[j])
        for (const auto& [wb, b] : comps[k]) {
          const auto [m_phi, m_one] = moments(a, b);
          form += wa * wb * m_phi;
          inner += wa * wb * m_one;
        }
      if (j == k) {
        cert.diagonal_residual = std::max(cert.diagonal_residual, std::abs(form - plan.alpha));
        cert.gram_residual = std::max(cert.gram_residual, std::abs(inner - 1.0));
      } else {
        cert.cross_term_max = std::max(cert.cross_term_max, std::abs(form));
        cert.gram_residual = std::max(cert.gram_residual, std::abs(inner));
      }
    }
  }
  cert.pass = cert.diagonal_residual <= tol && cert.cross_term_max <= tol && cert.gram_residual <= tol;
  return cert;
}

MultOpTightening tighten_blocks(const MultOpSpec& spec, BlockSystem blocks, double tol) {
  const std::size_t n = blocks.eigenvalues.size();
  if (n == 0) invalid("no block functions to pair");
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return blocks.eigenvalues[a] < blocks.eigenvalues[b];
  });
  std::vector<double> sorted(n);
  for (std::size_t i = 0; i < n; ++i) sorted[i] = blocks.eigenvalues[order[i]];

  const double alpha = choose_alpha(sorted);
  PairingPlan plan;
  if (sorted.back() - sorted.front() <= 1e-12 * (1.0 + std::abs(sorted.back()))) {
    plan.alpha = alpha;
    for (std::size_t i = 0; i < n; ++i) plan.entries.emplace_back(Singleton{i});
  } else {
    plan = build_pairing(sorted, alpha);
  }
  for (PlanEntry& e : plan.entries) {
    if (auto* p = std::get_if<Pair>(&e)) {
      p->lower = order[p->lower];
      p->upper = order[p->upper];
    } else {
      auto& s = std::get<Singleton>(e);
      s.index = order[s.index];
    }
  }

  MultOpTightening out;
  out.certificate = certify_plan(spec, blocks, plan, tol);
  out.alpha = alpha;
  out.stage1 = std::move(blocks);
  out.stage2 = std::move(plan);
  return out;
}

MultOpTightening tighten_multop(const MultOpSpec& spec, std::size_t n, double tol) {
  if (n < 2) invalid("tighten_multop needs n >= 2");
  if (!spec.nonnegative()) invalid("the symbol must be nonnegative");
  const RangePair rp = essential_range_pair(spec);
  PartitionScheme px = partition_preimage(spec, rp.ball_x, n);
  PartitionScheme py = partition_preimage(spec, rp.ball_y, n);
  PartitionScheme both;
  both.sets = std::move(px.sets);
  both.sets.insert(both.sets.end(), py.sets.begin(), py.sets.end());
  BlockSystem blocks = block_eigenvalues(spec, both);

  for (std::size_t i = 0; i < blocks.eigenvalues.size(); ++i) {
    const ValueBall& b = i < n ? rp.ball_x : rp.ball_y;
    const double eta = blocks.eigenvalues[i];
    if (eta < b.lo || eta > b.hi) {
      throw Error(ErrorKind::contract, "tighten_multop: block eigenvalue " + fmt(eta) +
                                           " escaped its ball [" + fmt(b.lo) + ", " + fmt(b.hi) + "]");
    }
  }
  MultOpTightening out = tighten_blocks(spec, std::move(blocks), tol);
  out.range_pair = rp;
  return out;
}

}  // namespace tightproj
