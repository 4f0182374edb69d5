#include "tightproj/pairing.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <string>

#include "tightproj/error.hpp"

namespace tightproj {
namespace {

void require_ascending(std::span<const double> values, const char* who) {
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (!std::isfinite(values[i])) {
      throw Error(ErrorKind::invalid_input, std::string(who) + ": non-finite eigenvalue");
    }
    if (i > 0 && values[i] < values[i - 1]) {
      throw Error(ErrorKind::invalid_input, std::string(who) + ": eigenvalues must be ascending");
    }
  }
}

[[noreturn]] void infeasible_pair(std::size_t n, std::size_t m, double ln, double lm, double alpha) {
  std::ostringstream os;
  os.precision(17);
  os << "pair (" << n << ", " << m << ") with eigenvalues (" << ln << ", " << lm
     << ") cannot reach alpha = " << alpha;
  throw Error(ErrorKind::infeasible_alpha, os.str());
}

// Weights for lambda_n <= alpha <= lambda_m, solving
// a_n^2 + a_m^2 = 1 and a_n^2 lambda_n + a_m^2 lambda_m = alpha.
Pair solve_pair(std::span<const double> values, std::size_t n, std::size_t m, double alpha) {
  const double ln = values[n];
  const double lm = values[m];
  const double slack = alpha_slack(alpha);
  if (ln > alpha + slack || lm < alpha - slack) infeasible_pair(n, m, ln, lm, alpha);
  if (ln == lm) {
    if (std::abs(ln - alpha) > slack) infeasible_pair(n, m, ln, lm, alpha);
    return {n, m, 1.0, 0.0};
  }
  const double w = std::clamp((alpha - ln) / (lm - ln), 0.0, 1.0);
  return {n, m, std::sqrt(1.0 - w), std::sqrt(w)};
}

void require_positive_alpha(double alpha) {
  if (!std::isfinite(alpha) || !(alpha > 0.0)) {
    std::ostringstream os;
    os.precision(17);
    os << "alpha must be positive and finite, got " << alpha;
    throw Error(ErrorKind::infeasible_alpha, os.str());
  }
}

}  // namespace

std::vector<std::size_t> PairingPlan::consumed_indices() const {
  std::vector<std::size_t> out;
  for (const auto& e : entries) {
    if (const auto* p = std::get_if<Pair>(&e)) {
      out.push_back(p->lower);
      out.push_back(p->upper);
    } else {
      out.push_back(std::get<Singleton>(e).index);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

double choose_alpha(std::span<const double> ascending, std::optional<double> alpha_override) {
  if (ascending.empty()) throw Error(ErrorKind::invalid_input, "choose_alpha: empty spectrum");
  require_ascending(ascending, "choose_alpha");
  const std::size_t d = ascending.size();
  double alpha;
  if (alpha_override) {
    alpha = *alpha_override;
  } else if (d % 2 == 0) {
    alpha = 0.5 * (ascending[d / 2 - 1] + ascending[d / 2]);
  } else {
    alpha = ascending[d / 2];
  }
  require_positive_alpha(alpha);
  if (alpha_override) build_pairing(ascending, alpha);
  return alpha;
}

PairingPlan build_pairing(std::span<const double> ascending, double alpha) {
  if (ascending.empty()) throw Error(ErrorKind::invalid_input, "build_pairing: empty spectrum");
  require_ascending(ascending, "build_pairing");
  require_positive_alpha(alpha);

  const std::size_t d = ascending.size();
  std::vector<std::size_t> remaining;
  remaining.reserve(d);
  std::optional<std::size_t> singleton;
  if (d % 2 == 1) {
    const double slack = alpha_slack(alpha);
    for (std::size_t i = 0; i < d; ++i) {
      if (std::abs(ascending[i] - alpha) <= slack) {
        singleton = i;
        break;
      }
    }
    if (!singleton) {
      std::ostringstream os;
      os.precision(17);
      os << "odd dimension " << d << " needs an eigenvalue equal to alpha = " << alpha
         << " for the unpaired index (median is " << ascending[d / 2] << ")";
      throw Error(ErrorKind::infeasible_alpha, os.str());
    }
  }
  for (std::size_t i = 0; i < d; ++i)
    if (!singleton || i != *singleton) remaining.push_back(i);

  PairingPlan plan;
  plan.alpha = alpha;
  const std::size_t k = remaining.size();
  for (std::size_t j = 0; j < k / 2; ++j) {
    plan.entries.emplace_back(solve_pair(ascending, remaining[j], remaining[k - 1 - j], alpha));
  }
  if (singleton) plan.entries.emplace_back(Singleton{*singleton});
  return plan;
}

OrderPreservingPlan order_preserving_pairing(std::span<const double> values, double alpha) {
  require_positive_alpha(alpha);
  std::vector<std::size_t> below;
  std::vector<std::size_t> above;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (!std::isfinite(values[i])) {
      throw Error(ErrorKind::invalid_input, "order_preserving_pairing: non-finite value");
    }
    (values[i] < alpha ? below : above).push_back(i);
  }
  if (below.empty() || above.empty()) {
    throw Error(ErrorKind::insufficient_truncation,
                "truncation of length " + std::to_string(values.size()) + " has " +
                    std::to_string(below.size()) + " terms below alpha and " +
                    std::to_string(above.size()) + " at or above; both sides need at least one");
  }
  OrderPreservingPlan out;
  out.plan.alpha = alpha;
  out.below = below.size();
  out.at_or_above = above.size();
  const std::size_t k = std::min(below.size(), above.size());
  for (std::size_t j = 0; j < k; ++j) {
    out.plan.entries.emplace_back(solve_pair(values, below[j], above[j], alpha));
  }
  out.surplus = values.size() - 2 * k;
  return out;
}

double plan_residual(std::span<const double> eigenvalues, const PairingPlan& plan) {
  double worst = 0.0;
  for (const auto& e : plan.entries) {
    double eta;
    if (const auto* p = std::get_if<Pair>(&e)) {
      eta = p->weight_lower * p->weight_lower * eigenvalues[p->lower] +
            p->weight_upper * p->weight_upper * eigenvalues[p->upper];
    } else {
      eta = eigenvalues[std::get<Singleton>(e).index];
    }
    worst = std::max(worst, std::abs(eta - plan.alpha));
  }
  return worst;
}

Projection pairing_projection(const EigenDecomp& eig, const PairingPlan& plan) {
  const Matrix& q = eig.eigenvectors;
  const std::size_t d = q.rows();
  auto check = [&](std::size_t i) {
    if (i >= q.cols()) {
      throw Error(ErrorKind::invalid_input, "pairing_projection: plan index " + std::to_string(i) +
                                                " out of range for dimension " + std::to_string(d));
    }
  };
  Matrix basis(d, plan.rank());
  for (std::size_t j = 0; j < plan.entries.size(); ++j) {
    if (const auto* p = std::get_if<Pair>(&plan.entries[j])) {
      check(p->lower);
      check(p->upper);
      for (std::size_t i = 0; i < d; ++i) {
        basis(i, j) = p->weight_lower * q(i, p->lower) + p->weight_upper * q(i, p->upper);
      }
    } else {
      const std::size_t idx = std::get<Singleton>(plan.entries[j]).index;
      check(idx);
      for (std::size_t i = 0; i < d; ++i) basis(i, j) = q(i, idx);
    }
  }
  return Projection::from_basis(std::move(basis));
}

Projection eigenspace_projection(const EigenDecomp& eig, double alpha, double tol) {
  if (!(tol > 0.0)) throw Error(ErrorKind::invalid_input, "eigenspace_projection: tol must be positive");
  const Matrix& q = eig.eigenvectors;
  std::vector<std::size_t> keep;
  for (std::size_t k = 0; k < eig.eigenvalues.size(); ++k)
    if (std::abs(eig.eigenvalues[k] - alpha) <= tol) keep.push_back(k);
  Matrix basis(q.rows(), keep.size());
  for (std::size_t c = 0; c < keep.size(); ++c)
    for (std::size_t i = 0; i < q.rows(); ++i) basis(i, c) = q(i, keep[c]);
  return Projection::from_basis(std::move(basis));
}

TightenResult tighten(const FrameSpec& frame, const TightenOptions& options) {
  const SymMatrix s = frame_operator(frame);
  EigenDecomp eig = jacobi_eigh(s);
  const std::vector<double>& lam = eig.eigenvalues;
  const double tol = options.tol.value_or(1e-9 * (1.0 + s.max_abs()));
  if (!(tol > 0.0)) throw Error(ErrorKind::invalid_input, "tighten: tol must be positive");

  const bool flat = lam.back() - lam.front() <= 1e-12 * (1.0 + std::abs(lam.back()));
  bool already_tight = false;
  double alpha = 0.0;
  PairingPlan plan;
  std::optional<Projection> p;
  if (flat) {
    const double common = choose_alpha(lam);
    if (!options.alpha || std::abs(*options.alpha - common) <= alpha_slack(common)) {
      already_tight = true;
      alpha = options.alpha.value_or(common);
      plan.alpha = alpha;
      for (std::size_t i = 0; i < lam.size(); ++i) plan.entries.emplace_back(Singleton{i});
      p = Projection::identity(frame.dim());
    }
  }
  if (!already_tight) {
    alpha = choose_alpha(lam, options.alpha);
    plan = build_pairing(lam, alpha);
    p = pairing_projection(eig, plan);
  }

  TightnessCertificate cert =
      verify_tight(frame, *p, alpha, tol, options.random_probes, options.seed);
  if (!cert.pass && options.throw_on_failure) {
    std::ostringstream os;
    os.precision(17);
    os << "tighten: certificate failed at tol " << tol << " (compression residual "
       << cert.residual_compression << ", reconstruction residual " << cert.residual_reconstruction
       << ")";
    throw Error(ErrorKind::certificate_failure, os.str());
  }
  return {std::move(*p), alpha, cert, std::move(plan), std::move(eig), already_tight};
}

}  // namespace tightproj
