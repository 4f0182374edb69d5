#include "tightproj/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "tightproj/error.hpp"

namespace tightproj {
namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

[[noreturn]] void model_error(const std::string& what) {
  throw Error(ErrorKind::model, "spectrum model: " + what);
}

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

const char* side_name(SideCount s) { return s == SideCount::finite ? "finite" : "infinite"; }

void require_finite(std::initializer_list<double> values) {
  for (double v : values)
    if (!std::isfinite(v)) model_error("parameters must be finite");
}

}  // namespace

const char* to_string(Verdict v) noexcept {
  switch (v) {
    case Verdict::projectable_eigenspace: return "ProjectableEigenspace";
    case Verdict::projectable_two_limit_points: return "ProjectableTwoLimitPoints";
    case Verdict::projectable_one_limit_point: return "ProjectableOneLimitPoint";
    case Verdict::not_projectable_fk: return "NotProjectable_FK";
    case Verdict::not_applicable_compact: return "NotApplicable_Compact";
  }
  return "unknown";
}

SpectrumModel SpectrumModel::make(SequenceFamily family, std::vector<LimitPoint> limit_points) {
  std::sort(limit_points.begin(), limit_points.end(),
            [](const LimitPoint& a, const LimitPoint& b) { return a.value < b.value; });
  SpectrumModel m(std::move(family), std::move(limit_points));
  m.validate();
  return m;
}

std::string SpectrumModel::family_name() const {
  return std::visit(overloaded{
                        [](const ExplicitTail&) { return "ExplicitTail"; },
                        [](const HarmonicShift&) { return "HarmonicShift"; },
                        [](const Alternating&) { return "Alternating"; },
                        [](const TwoCluster&) { return "TwoCluster"; },
                        [](const CompactDecay&) { return "CompactDecay"; },
                    },
                    family_);
}

double SpectrumModel::eigenvalue(std::size_t n) const {
  if (n == 0) throw Error(ErrorKind::invalid_input, "spectrum model: eigenvalues are 1-based");
  const double nd = static_cast<double>(n);
  return std::visit(
      overloaded{
          [&](const ExplicitTail& f) { return n <= f.head.size() ? f.head[n - 1] : f.tail; },
          [&](const HarmonicShift& f) { return f.beta - f.c / std::pow(nd, f.p); },
          [&](const Alternating& f) {
            return f.beta + (n % 2 == 0 ? f.c : -f.c) / std::pow(nd, f.p);
          },
          [&](const TwoCluster& f) {
            const double k = static_cast<double>((n + 1) / 2);
            return n % 2 == 1 ? f.beta2 - f.c2 / k : f.beta1 + f.c1 / k;
          },
          [&](const CompactDecay& f) { return f.c * std::pow(f.r, nd); },
      },
      family_);
}

std::vector<double> SpectrumModel::truncation(std::size_t length) const {
  std::vector<double> out(length);
  for (std::size_t n = 1; n <= length; ++n) out[n - 1] = eigenvalue(n);
  return out;
}

bool SpectrumModel::infinite_multiplicity(double x) const {
  const auto* tail = std::get_if<ExplicitTail>(&family_);
  return tail != nullptr && std::abs(tail->tail - x) <= alpha_slack(tail->tail);
}

void SpectrumModel::validate() const {
  std::visit(overloaded{
                 [](const ExplicitTail& f) {
                   require_finite({f.tail});
                   for (double h : f.head) require_finite({h});
                   if (f.head.size() > kValidationLength - kTailWindow) {
                     model_error("explicit head longer than " +
                                 std::to_string(kValidationLength - kTailWindow) + " terms");
                   }
                 },
                 [](const HarmonicShift& f) {
                   require_finite({f.beta, f.c, f.p});
                   if (f.c == 0.0) model_error("HarmonicShift needs c != 0");
                   if (!(f.p > 0.0)) model_error("HarmonicShift needs p > 0");
                 },
                 [](const Alternating& f) {
                   require_finite({f.beta, f.c, f.p});
                   if (f.c == 0.0) model_error("Alternating needs c != 0");
                   if (!(f.p > 0.0)) model_error("Alternating needs p > 0");
                 },
                 [](const TwoCluster& f) {
                   require_finite({f.beta1, f.c1, f.beta2, f.c2});
                   if (!(f.beta1 < f.beta2)) model_error("TwoCluster needs beta1 < beta2");
                   if (f.c1 == 0.0 || f.c2 == 0.0) model_error("TwoCluster needs c1, c2 != 0");
                 },
                 [](const CompactDecay& f) {
                   require_finite({f.c, f.r});
                   if (!(f.c > 0.0)) model_error("CompactDecay needs c > 0");
                   if (!(f.r > 0.0 && f.r < 1.0)) model_error("CompactDecay needs 0 < r < 1");
                 },
             },
             family_);

  if (limit_points_.empty()) model_error("at least one limit point must be declared");
  for (std::size_t i = 0; i < limit_points_.size(); ++i) {
    require_finite({limit_points_[i].value});
    if (i > 0 && limit_points_[i].value == limit_points_[i - 1].value) {
      model_error("duplicate limit point " + fmt(limit_points_[i].value));
    }
  }

  const std::vector<double> t = truncation(kValidationLength);
  for (std::size_t n = 0; n < t.size(); ++n) {
    if (!std::isfinite(t[n])) model_error("lambda_" + std::to_string(n + 1) + " is not finite");
    if (t[n] < 0.0) {
      model_error("not positive: lambda_" + std::to_string(n + 1) + " = " + fmt(t[n]));
    }
  }

  for (const LimitPoint& lp : limit_points_) {
    const auto near = std::count_if(t.begin(), t.end(), [&](double v) {
      return std::abs(v - lp.value) <= kClusterRadius;
    });
    if (static_cast<std::size_t>(near) < kClusterMinTerms) {
      model_error("declared limit point " + fmt(lp.value) + " has only " + std::to_string(near) +
                  " of the first " + std::to_string(kValidationLength) + " terms within " +
                  fmt(kClusterRadius));
    }
  }

  // Late terms far from every declared point indicate an undeclared cluster;
  // late terms on a side declared finite contradict the declaration.
  const auto tail_begin = t.end() - static_cast<std::ptrdiff_t>(kTailWindow);
  for (auto it = tail_begin; it != t.end(); ++it) {
    const double v = *it;
    const bool covered = std::any_of(limit_points_.begin(), limit_points_.end(),
                                     [&](const LimitPoint& lp) {
                                       return std::abs(v - lp.value) <= kTailRadius;
                                     });
    if (!covered) {
      model_error("undeclared cluster: lambda_" + std::to_string(it - t.begin() + 1) + " = " +
                  fmt(v) + " is farther than " + fmt(kTailRadius) + " from every declared limit point");
    }
  }
  for (const LimitPoint& lp : limit_points_) {
    const auto below = std::count_if(tail_begin, t.end(), [&](double v) { return v < lp.value; });
    const auto above = static_cast<std::ptrdiff_t>(kTailWindow) - below;
    auto check = [&](SideCount declared, std::ptrdiff_t late, const char* side) {
      if ((declared == SideCount::finite) != (late == 0)) {
        model_error("limit point " + fmt(lp.value) + " declares " + side_name(declared) +
                    " terms " + side + " it, but " + std::to_string(late) + " of the last " +
                    std::to_string(kTailWindow) + " truncation terms are " + side + " it");
      }
    };
    check(lp.below, below, "below");
    check(lp.at_or_above, above, "at or above");
  }
}

SpectrumModel SpectrumModel::shifted(double beta) const {
  SequenceFamily f = std::visit(
      overloaded{
          [&](ExplicitTail g) -> SequenceFamily {
            for (double& h : g.head) h += beta;
            g.tail += beta;
            return g;
          },
          [&](HarmonicShift g) -> SequenceFamily {
            g.beta += beta;
            return g;
          },
          [&](Alternating g) -> SequenceFamily {
            g.beta += beta;
            return g;
          },
          [&](TwoCluster g) -> SequenceFamily {
            g.beta1 += beta;
            g.beta2 += beta;
            return g;
          },
          [&](const CompactDecay&) -> SequenceFamily {
            throw Error(ErrorKind::contract,
                        "spectrum model: translates of CompactDecay are not in any family");
          },
      },
      family_);
  std::vector<LimitPoint> lps = limit_points_;
  for (auto& lp : lps) lp.value += beta;
  return make(std::move(f), std::move(lps));
}

SpectrumModel SpectrumModel::scaled(double c) const {
  if (!(c > 0.0)) throw Error(ErrorKind::invalid_input, "spectrum model: scale must be positive");
  SequenceFamily f = std::visit(overloaded{
                                    [&](ExplicitTail g) -> SequenceFamily {
                                      for (double& h : g.head) h *= c;
                                      g.tail *= c;
                                      return g;
                                    },
                                    [&](HarmonicShift g) -> SequenceFamily {
                                      g.beta *= c;
                                      g.c *= c;
                                      return g;
                                    },
                                    [&](Alternating g) -> SequenceFamily {
                                      g.beta *= c;
                                      g.c *= c;
                                      return g;
                                    },
                                    [&](TwoCluster g) -> SequenceFamily {
                                      g.beta1 *= c;
                                      g.c1 *= c;
                                      g.beta2 *= c;
                                      g.c2 *= c;
                                      return g;
                                    },
                                    [&](CompactDecay g) -> SequenceFamily {
                                      g.c *= c;
                                      return g;
                                    },
                                },
                                family_);
  std::vector<LimitPoint> lps = limit_points_;
  for (auto& lp : lps) lp.value *= c;
  return make(std::move(f), std::move(lps));
}

bool fk_membership(double shift, const SpectrumModel& model) {
  const auto& lps = model.limit_points();
  if (lps.size() != 1 || std::abs(lps.front().value - shift) > alpha_slack(shift)) {
    throw Error(ErrorKind::contract, "fk_membership: " + fmt(shift) +
                                         " is not the single limit point of the model, so E - " +
                                         fmt(shift) + " is not compact");
  }
  const LimitPoint& lp = lps.front();
  // Eigenvalues of K = E - shift are lambda_n - shift.
  const bool nonnegative_finite = lp.at_or_above == SideCount::finite;
  const bool nonpositive_finite =
      lp.below == SideCount::finite && !model.infinite_multiplicity(shift);
  return nonnegative_finite || nonpositive_finite;
}

Classification classify(const SpectrumModel& model) {
  Classification out;
  out.witness.limit_points = model.limit_points();
  const auto& lps = model.limit_points();

  if (const auto* tail = std::get_if<ExplicitTail>(&model.family())) {
    out.witness.beta = tail->tail;
    out.witness.nonnegative = SideCount::infinite;
    out.witness.nonpositive = SideCount::infinite;
    if (tail->tail > 0.0) {
      out.verdict = Verdict::projectable_eigenspace;
      out.alpha = tail->tail;
      out.witness.summary = "eigenvalue " + fmt(tail->tail) +
                            " has infinite multiplicity; P projects onto ker(E - " +
                            fmt(tail->tail) + ")";
    } else {
      out.verdict = Verdict::not_applicable_compact;
      out.witness.summary = "E has finite rank, hence is compact";
    }
    return out;
  }

  if (lps.size() >= 2) {
    const double x = lps[0].value;
    const double y = lps[1].value;
    out.verdict = Verdict::projectable_two_limit_points;
    out.alpha = 0.5 * (x + y);
    out.witness.summary = "limit points " + fmt(x) + " < " + fmt(y) + "; alpha = " +
                          fmt(*out.alpha) + " has infinitely many terms on each side";
    return out;
  }

  const LimitPoint& lp = lps.front();
  const double x = lp.value;
  out.witness.beta = x;
  out.witness.nonnegative = lp.at_or_above;
  out.witness.nonpositive =
      (lp.below == SideCount::infinite || model.infinite_multiplicity(x)) ? SideCount::infinite
                                                                          : SideCount::finite;
  if (x <= 0.0) {
    out.verdict = Verdict::not_applicable_compact;
    out.witness.summary = "single limit point 0: E is compact";
    return out;
  }
  if (fk_membership(x, model)) {
    out.verdict = Verdict::not_projectable_fk;
    out.witness.summary = "E = " + fmt(x) + " + K with K compact; K has " +
                          side_name(*out.witness.nonnegative) + "ly many nonnegative and " +
                          side_name(*out.witness.nonpositive) +
                          "ly many nonpositive eigenvalues, so K is in FK";
  } else {
    out.verdict = Verdict::projectable_one_limit_point;
    out.alpha = x;
    out.witness.summary = "single limit point " + fmt(x) +
                          " approached from both sides; K = E - " + fmt(x) + " is not in FK";
  }
  return out;
}

double find_alpha_infinite(const SpectrumModel& model) {
  const Classification c = classify(model);
  if (!c.alpha) {
    throw Error(ErrorKind::contract, std::string("find_alpha_infinite: model classified ") +
                                         to_string(c.verdict) + " has no admissible alpha");
  }
  return *c.alpha;
}

TruncatedPlan truncated_plan(const SpectrumModel& model, std::size_t length) {
  if (length < 2) throw Error(ErrorKind::invalid_input, "truncated_plan: length must be at least 2");
  const Classification c = classify(model);
  if (!c.alpha) {
    throw Error(ErrorKind::contract, std::string("truncated_plan: model classified ") +
                                         to_string(c.verdict) + " is not projectable");
  }
  const double alpha = *c.alpha;
  const std::vector<double> values = model.truncation(length);

  TruncatedPlan out;
  if (c.verdict == Verdict::projectable_eigenspace) {
    out.plan.alpha = alpha;
    for (std::size_t i = 0; i < values.size(); ++i)
      if (std::abs(values[i] - alpha) <= alpha_slack(alpha)) out.plan.entries.emplace_back(Singleton{i});
    if (out.plan.entries.empty()) {
      throw Error(ErrorKind::insufficient_truncation,
                  "truncated_plan: no term equal to alpha within the first " +
                      std::to_string(length) + " terms");
    }
    out.surplus = length - out.plan.rank();
  } else {
    OrderPreservingPlan op = order_preserving_pairing(values, alpha);
    out.plan = std::move(op.plan);
    out.surplus = op.surplus;
  }
  out.rank = out.plan.rank();
  out.diagonal_residual = plan_residual(values, out.plan);
  return out;
}

double diagonal_compression_residual(std::span<const double> values, const PairingPlan& plan) {
  EigenDecomp standard;
  standard.eigenvalues.assign(values.begin(), values.end());
  standard.eigenvectors = Matrix::identity(values.size());
  const Projection p = pairing_projection(standard, plan);
  const SymMatrix pdp = compress(p, SymMatrix::diagonal(values));
  const SymMatrix pd = p.dense();
  double worst = 0.0;
  for (std::size_t i = 0; i < values.size(); ++i)
    for (std::size_t j = 0; j <= i; ++j)
      worst = std::max(worst, std::abs(pdp(i, j) - plan.alpha * pd(i, j)));
  return worst;
}

}  // namespace tightproj
