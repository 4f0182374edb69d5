#include <algorithm>
#include <cmath>

#include "tightproj/error.hpp"
#include "tightproj/linalg.hpp"

namespace tightproj {
namespace {

// ||(1/alpha) sum_i <f, g_i> g_i - f||_2, summed over the projected vectors
// directly so this route never forms S.
double reconstruction_error(const std::vector<std::vector<double>>& projected, double alpha,
                            std::span<const double> f) {
  std::vector<double> acc(f.size(), 0.0);
  for (const auto& g : projected) {
    const double c = dot(f, g);
    if (c == 0.0) continue;
    for (std::size_t i = 0; i < f.size(); ++i) acc[i] += c * g[i];
  }
  double s = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i) {
    const double r = acc[i] / alpha - f[i];
    s += r * r;
  }
  return std::sqrt(s);
}

}  // namespace

TightnessCertificate verify_tight(const FrameSpec& frame, const Projection& p, double alpha,
                                  double tol, std::size_t random_probes, std::uint64_t seed) {
  if (!(alpha > 0.0) || !std::isfinite(alpha)) {
    throw Error(ErrorKind::invalid_input, "verify_tight: alpha must be positive and finite");
  }
  if (!(tol > 0.0)) throw Error(ErrorKind::invalid_input, "verify_tight: tol must be positive");
  if (p.dim() != frame.dim()) {
    throw Error(ErrorKind::dimension_mismatch, "verify_tight: projection and frame dimensions differ");
  }

  TightnessCertificate cert;
  cert.alpha = alpha;
  cert.rank = p.rank();
  cert.tolerance = tol;
  cert.random_probes = random_probes;
  cert.seed = seed;

  const SymMatrix psp = compress(p, frame_operator(frame));
  const SymMatrix pd = p.dense();
  double comp = 0.0;
  for (std::size_t i = 0; i < p.dim(); ++i)
    for (std::size_t j = 0; j <= i; ++j) comp = std::max(comp, std::abs(psp(i, j) - alpha * pd(i, j)));
  cert.residual_compression = comp;

  std::vector<std::vector<double>> projected;
  projected.reserve(frame.size());
  for (std::size_t i = 0; i < frame.size(); ++i) projected.push_back(p.apply(frame.vector(i)));

  const Matrix& q = p.basis();
  const std::size_t d = p.dim();
  const std::size_t r = p.rank();
  double recon = 0.0;
  for (std::size_t k = 0; k < r; ++k) {
    recon = std::max(recon, reconstruction_error(projected, alpha, q.column(k)));
  }
  if (r > 0) {
    std::mt19937_64 rng(seed);
    for (std::size_t t = 0; t < random_probes; ++t) {
      std::vector<double> coeff(r);
      for (double& c : coeff) c = uniform(rng, -1.0, 1.0);
      std::vector<double> f(d, 0.0);
      for (std::size_t i = 0; i < d; ++i)
        for (std::size_t k = 0; k < r; ++k) f[i] += q(i, k) * coeff[k];
      const double nf = norm2(f);
      if (nf == 0.0) continue;
      for (double& x : f) x /= nf;
      recon = std::max(recon, reconstruction_error(projected, alpha, f));
    }
  }
  cert.residual_reconstruction = recon;

  cert.compression_pass = comp <= tol;
  cert.reconstruction_pass = recon <= tol;
  cert.pass = cert.compression_pass && cert.reconstruction_pass;
  return cert;
}

}  // namespace tightproj
