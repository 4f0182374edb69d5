#include "tightproj/polynomial.hpp"

#include <algorithm>
#include <cmath>

#include "tightproj/error.hpp"

namespace tightproj {
namespace {

// Bisection on a bracket where p - value changes sign; runs until the
// midpoint is no longer strictly inside the bracket.
double bisect(const Polynomial& p, double value, double lo, double hi) {
  double flo = p(lo) - value;
  for (int it = 0; it < 2200; ++it) {
    const double mid = lo + 0.5 * (hi - lo);
    if (mid <= lo || mid >= hi) break;
    const double fm = p(mid) - value;
    if (fm == 0.0) return mid;
    if ((fm < 0.0) == (flo < 0.0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  return lo + 0.5 * (hi - lo);
}

}  // namespace

Polynomial::Polynomial(std::vector<double> coeffs) : coeffs_(std::move(coeffs)) {
  for (double c : coeffs_)
    if (!std::isfinite(c)) throw Error(ErrorKind::invalid_input, "polynomial: non-finite coefficient");
  while (coeffs_.size() > 1 && coeffs_.back() == 0.0) coeffs_.pop_back();
  if (coeffs_.empty()) coeffs_.push_back(0.0);
}

double Polynomial::operator()(double x) const {
  double acc = 0.0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + *it;
  return acc;
}

Polynomial Polynomial::derivative() const {
  if (coeffs_.size() <= 1) return Polynomial({0.0});
  std::vector<double> d(coeffs_.size() - 1);
  for (std::size_t k = 1; k < coeffs_.size(); ++k) d[k - 1] = static_cast<double>(k) * coeffs_[k];
  return Polynomial(std::move(d));
}

Polynomial Polynomial::taylor_shift(double a) const {
  // Repeated synthetic division by (x - a).
  std::vector<double> c = coeffs_;
  const std::size_t n = c.size();
  for (std::size_t i = 0; i + 1 < n; ++i)
    for (std::size_t k = n - 1; k > i; --k) c[k - 1] += a * c[k];
  return Polynomial(std::move(c));
}

double Polynomial::integral(double a, double b) const {
  const Polynomial local = taylor_shift(a);
  const double h = b - a;
  double acc = 0.0;
  const auto& c = local.coeffs();
  for (std::size_t k = c.size(); k-- > 0;) acc = acc * h + c[k] / static_cast<double>(k + 1);
  return acc * h;
}

std::vector<double> Polynomial::level_crossings(double value, double lo, double hi,
                                                const std::vector<double>& critical) const {
  std::vector<double> knots;
  knots.reserve(critical.size() + 2);
  knots.push_back(lo);
  knots.insert(knots.end(), critical.begin(), critical.end());
  knots.push_back(hi);

  std::vector<double> out;
  for (std::size_t i = 0; i + 1 < knots.size(); ++i) {
    const double a = knots[i];
    const double b = knots[i + 1];
    const double fa = (*this)(a) - value;
    const double fb = (*this)(b) - value;
    if (fa == 0.0 && a > lo) out.push_back(a);
    if ((fa < 0.0 && fb > 0.0) || (fa > 0.0 && fb < 0.0)) out.push_back(bisect(*this, value, a, b));
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  std::erase_if(out, [&](double x) { return !(x > lo && x < hi); });
  return out;
}

std::vector<double> Polynomial::roots(double lo, double hi) const {
  if (is_constant()) return {};
  if (degree() == 1) {
    const double x = -coeffs_[0] / coeffs_[1];
    if (x > lo && x < hi) return {x};
    return {};
  }
  return level_crossings(0.0, lo, hi, derivative().roots(lo, hi));
}

std::pair<double, double> Polynomial::range(double lo, double hi) const {
  double mn = std::min((*this)(lo), (*this)(hi));
  double mx = std::max((*this)(lo), (*this)(hi));
  for (double x : derivative().roots(lo, hi)) {
    const double v = (*this)(x);
    mn = std::min(mn, v);
    mx = std::max(mx, v);
  }
  return {mn, mx};
}

}  // namespace tightproj
