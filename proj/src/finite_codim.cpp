#include "tightproj/finite_codim.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "tightproj/error.hpp"

namespace tightproj {
namespace {

void require_nonnegative_alpha(double alpha, double tol) {
  if (!std::isfinite(alpha) || alpha < 0.0) {
    throw Error(ErrorKind::invalid_input, "finite codimension: alpha must be finite and >= 0");
  }
  if (!(tol > 0.0)) throw Error(ErrorKind::invalid_input, "finite codimension: tol must be positive");
}

[[noreturn]] void obstruction(const std::string& rank, std::size_t n) {
  throw Error(ErrorKind::obstruction, "no projection with dim ker P <= " + std::to_string(n) +
                                          " and PEP = alpha P: need dim ran(E - alpha) <= 2N = " +
                                          std::to_string(2 * n) + ", found " + rank);
}

}  // namespace

TranslateRank rank_of_translate(const SymMatrix& e, double alpha, double tol) {
  require_nonnegative_alpha(alpha, tol);
  const double threshold = tol * (1.0 + e.max_abs());
  const EigenDecomp eig = jacobi_eigh(e);
  return static_cast<std::size_t>(std::count_if(eig.eigenvalues.begin(), eig.eigenvalues.end(),
                                                [&](double l) { return std::abs(l - alpha) > threshold; }));
}

TranslateRank rank_of_translate(const SpectrumModel& model, double alpha, double tol) {
  require_nonnegative_alpha(alpha, tol);
  const auto* f = std::get_if<ExplicitTail>(&model.family());
  const double threshold = tol * (1.0 + std::abs(alpha));
  if (f == nullptr || std::abs(f->tail - alpha) > threshold) return std::nullopt;
  return static_cast<std::size_t>(std::count_if(f->head.begin(), f->head.end(),
                                                [&](double l) { return std::abs(l - alpha) > threshold; }));
}

FiniteCodimProjection finite_codim_projection(const SymMatrix& e, double alpha, std::size_t n,
                                              double tol) {
  require_nonnegative_alpha(alpha, tol);
  if (n == 0) throw Error(ErrorKind::invalid_input, "finite codimension: N must be positive");
  const double threshold = tol * (1.0 + e.max_abs());
  const EigenDecomp eig = jacobi_eigh(e);
  const auto r = static_cast<std::size_t>(std::count_if(
      eig.eigenvalues.begin(), eig.eigenvalues.end(),
      [&](double l) { return std::abs(l - alpha) > threshold; }));
  if (r > 2 * n) obstruction(std::to_string(r), n);

  Projection p = eigenspace_projection(eig, alpha, threshold);
  const SymMatrix pep = compress(p, e);
  const SymMatrix pd = p.dense();
  double residual = 0.0;
  for (std::size_t i = 0; i < e.dim(); ++i)
    for (std::size_t j = 0; j <= i; ++j) residual = std::max(residual, std::abs(pep(i, j) - alpha * pd(i, j)));
  const std::size_t codim = e.dim() - p.rank();
  return {std::move(p), codim, residual, threshold};
}

ModelKernelProjection finite_codim_projection(const SpectrumModel& model, double alpha,
                                              std::size_t n, double tol) {
  if (n == 0) throw Error(ErrorKind::invalid_input, "finite codimension: N must be positive");
  const TranslateRank r = rank_of_translate(model, alpha, tol);
  if (!r) {
    std::ostringstream os;
    os.precision(17);
    os << "infinite (" << model.family_name() << " has infinitely many eigenvalues different from "
       << alpha << ")";
    obstruction(os.str(), n);
  }
  if (*r > 2 * n) obstruction(std::to_string(*r), n);
  const auto& f = std::get<ExplicitTail>(model.family());
  const double threshold = tol * (1.0 + std::abs(alpha));
  ModelKernelProjection out;
  for (std::size_t i = 0; i < f.head.size(); ++i)
    if (std::abs(f.head[i] - alpha) > threshold) out.kernel_indices.push_back(i + 1);
  out.codim = out.kernel_indices.size();
  return out;
}

}  // namespace tightproj
