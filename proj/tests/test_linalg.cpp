#include <algorithm>
#include <cmath>

#include "support.hpp"
#include "tightproj/linalg.hpp"

using namespace tightproj;
using testsupport::error_kind_of;

namespace {

Matrix reconstruct(const EigenDecomp& e) {
  const std::size_t d = e.eigenvalues.size();
  Matrix out(d, d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j)
      for (std::size_t k = 0; k < d; ++k)
        out(i, j) += e.eigenvectors(i, k) * e.eigenvalues[k] * e.eigenvectors(j, k);
  return out;
}

double orthonormality(const Matrix& q) {
  const Matrix g = multiply(transpose(q), q);
  return max_abs_diff(g, Matrix::identity(q.cols()));
}

}  // namespace

TEST_CASE("SymMatrix stores one triangle") {
  SymMatrix s(3);
  s.set(2, 0, 4.0);
  CHECK(s(0, 2) == 4.0);
  s.add(0, 2, 1.0);
  CHECK(s(2, 0) == 5.0);
  Matrix a(2, 2);
  a(0, 1) = 1.0;
  a(1, 0) = 3.0;
  CHECK(SymMatrix::from_dense(a)(0, 1) == 2.0);
  CHECK(error_kind_of([] { SymMatrix::from_dense(Matrix(2, 3)); }) == ErrorKind::dimension_mismatch);
}

TEST_CASE("FrameSpec validation") {
  CHECK(error_kind_of([] { FrameSpec(0, {{}}); }) == ErrorKind::invalid_input);
  CHECK(error_kind_of([] { FrameSpec(2, {}); }) == ErrorKind::invalid_input);
  CHECK(error_kind_of([] { FrameSpec(2, {{1.0}}); }) == ErrorKind::invalid_input);
  CHECK(error_kind_of([] { FrameSpec(2, {{1.0, NAN}}); }) == ErrorKind::invalid_input);
  CHECK(error_kind_of([] { FrameSpec(1, {{INFINITY}}); }) == ErrorKind::invalid_input);
  CHECK(FrameSpec(2, {{1.0, 0.0}}).size() == 1);
}

TEST_CASE("frame operator examples") {
  CHECK(max_abs_diff(frame_operator(FrameSpec(2, {{1, 0}, {0, 1}})), SymMatrix::identity(2)) == 0.0);

  const SymMatrix s = frame_operator(FrameSpec(2, {{1, 0}, {1, 0}, {0, 1}}));
  CHECK(s(0, 0) == 2.0);
  CHECK(s(1, 1) == 1.0);
  CHECK(s(0, 1) == 0.0);

  std::vector<double> lambda;
  for (int n = 1; n <= 8; ++n) lambda.push_back(2.0 - 1.0 / n);
  const SymMatrix t = frame_operator(testsupport::diagonal_frame(lambda));
  for (std::size_t i = 0; i < 8; ++i) CHECK(t(i, i) == doctest::Approx(lambda[i]).epsilon(1e-15));
}

TEST_CASE("jacobi on small fixed matrices") {
  const EigenDecomp a = jacobi_eigh(SymMatrix::diagonal(std::vector<double>{2.0, 1.0}));
  CHECK(a.eigenvalues == std::vector<double>{1.0, 2.0});
  CHECK(a.eigenvectors(1, 0) == 1.0);
  CHECK(a.eigenvectors(0, 1) == 1.0);

  SymMatrix flip(2);
  flip.set(0, 1, 1.0);
  const EigenDecomp b = jacobi_eigh(flip);
  CHECK(b.eigenvalues[0] == doctest::Approx(-1.0).epsilon(1e-15));
  CHECK(b.eigenvalues[1] == doctest::Approx(1.0).epsilon(1e-15));
  const double r = 1.0 / std::sqrt(2.0);
  CHECK(std::abs(b.eigenvectors(0, 0)) == doctest::Approx(r));
  CHECK(b.eigenvectors(0, 0) * b.eigenvectors(1, 0) == doctest::Approx(-0.5));
  CHECK(b.eigenvectors(0, 1) * b.eigenvectors(1, 1) == doctest::Approx(0.5));
}

TEST_CASE("jacobi keeps ties in solver order") {
  const EigenDecomp e = jacobi_eigh(SymMatrix::identity(3));
  for (std::size_t i = 0; i < 3; ++i) CHECK(e.eigenvectors(i, i) == 1.0);
}

TEST_CASE("jacobi errors") {
  CHECK(error_kind_of([] { jacobi_eigh(SymMatrix::identity(2), 0.0); }) == ErrorKind::invalid_input);
  SymMatrix bad(2);
  bad.set(0, 1, NAN);
  CHECK(error_kind_of([&] { jacobi_eigh(bad); }) == ErrorKind::invalid_input);

  std::mt19937_64 rng(5);
  const SymMatrix s = testsupport::random_symmetric(rng, 12);
  try {
    jacobi_eigh(s, 1e-14, 1);
    FAIL("one sweep should not converge");
  } catch (const ConvergenceError& e) {
    CHECK(e.kind() == ErrorKind::convergence);
    CHECK(e.sweeps() == 1);
    CHECK(e.off_norm() > 0.0);
  }
}

TEST_CASE("property: jacobi residuals on random symmetric matrices") {
  std::mt19937_64 rng(101);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t d = testsupport::uniform_index(rng, 1, 64);
    const SymMatrix s = testsupport::random_symmetric(rng, d);
    const EigenDecomp e = jacobi_eigh(s);
    CHECK(std::is_sorted(e.eigenvalues.begin(), e.eigenvalues.end()));
    CHECK(orthonormality(e.eigenvectors) <= 1e-12);
    CHECK(max_abs_diff(reconstruct(e), s.dense()) <= 1e-10 * (1.0 + s.max_abs()));
  }
}

TEST_CASE("jacobi is deterministic") {
  std::mt19937_64 rng(7);
  const SymMatrix s = testsupport::random_symmetric(rng, 20);
  const EigenDecomp a = jacobi_eigh(s);
  const EigenDecomp b = jacobi_eigh(s);
  CHECK(a.eigenvalues == b.eigenvalues);
  CHECK(max_abs_diff(a.eigenvectors, b.eigenvectors) == 0.0);
}

TEST_CASE("projection construction") {
  CHECK(Projection::identity(3).rank() == 3);
  CHECK(Projection::zero(3).rank() == 0);
  CHECK(Projection::zero(3).dense().max_abs() == 0.0);
  Matrix skew(2, 2);
  skew(0, 0) = 1.0;
  skew(0, 1) = 1.0;
  skew(1, 1) = 1.0;
  CHECK(error_kind_of([&] { Projection::from_basis(skew); }) == ErrorKind::invalid_input);
  CHECK(error_kind_of([] { Projection::identity(2).apply(std::vector<double>{1.0}); }) ==
        ErrorKind::dimension_mismatch);
}

TEST_CASE("property: random projections are idempotent with trace equal to rank") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t d = testsupport::uniform_index(rng, 1, 16);
    const std::size_t r = testsupport::uniform_index(rng, 0, d);
    const Projection p = Projection::from_basis(testsupport::random_orthonormal(rng, d, r));
    const ProjectionCheck c = check_projection(p);
    CHECK(c.pass);
    CHECK(c.idempotence_residual <= 1e-10);
    CHECK(std::abs(c.trace - static_cast<double>(r)) <= 1e-8);
  }
}

TEST_CASE("frame bounds examples") {
  const FrameBounds a = frame_bounds(FrameSpec(3, {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}));
  CHECK(a.lower == doctest::Approx(1.0));
  CHECK(a.upper == doctest::Approx(1.0));
  CHECK(a.is_tight());

  const FrameBounds b = frame_bounds(FrameSpec(2, {{1, 0}, {1, 0}, {0, 1}}));
  CHECK(b.lower == doctest::Approx(1.0));
  CHECK(b.upper == doctest::Approx(2.0));
  CHECK_FALSE(b.is_tight());

  std::vector<double> lambda;
  for (int n = 1; n <= 8; ++n) lambda.push_back(2.0 - 1.0 / n);
  const FrameBounds c = frame_bounds(testsupport::diagonal_frame(lambda));
  CHECK(c.lower == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(c.upper == doctest::Approx(15.0 / 8.0).epsilon(1e-14));

  const FrameBounds degenerate = frame_bounds(FrameSpec(2, {{1, 0}}));
  CHECK(degenerate.lower == doctest::Approx(0.0));
  CHECK_FALSE(degenerate.is_frame());
}

TEST_CASE("property: frame operator is PSD and bounds sandwich the frame sum") {
  std::mt19937_64 rng(13);
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t d = testsupport::uniform_index(rng, 1, 12);
    const std::size_t m = testsupport::uniform_index(rng, 1, 2 * d);
    const FrameSpec frame = testsupport::random_frame(rng, d, m);
    const SymMatrix s = frame_operator(frame);
    const EigenDecomp e = jacobi_eigh(s);
    CHECK(e.eigenvalues.front() >= -1e-12 * s.max_abs());
    const FrameBounds fb = frame_bounds(frame);
    for (int probe = 0; probe < 100; ++probe) {
      std::vector<double> f = testsupport::random_vector(rng, d);
      const double n = norm2(f);
      for (double& x : f) x /= n;
      double sum = 0.0;
      for (std::size_t i = 0; i < m; ++i) sum += dot(f, frame.vector(i)) * dot(f, frame.vector(i));
      CHECK(sum >= fb.lower - 1e-8);
      CHECK(sum <= fb.upper + 1e-8);
    }
  }
}

TEST_CASE("compress examples") {
  std::mt19937_64 rng(17);
  const SymMatrix e = testsupport::random_symmetric(rng, 5);
  CHECK(max_abs_diff(compress(Projection::identity(5), e), e) <= 1e-15);
  CHECK(compress(Projection::zero(5), e).max_abs() == 0.0);

  Matrix q(2, 1);
  q(0, 0) = q(1, 0) = 1.0 / std::sqrt(2.0);
  const SymMatrix c = compress(Projection::from_basis(q), SymMatrix::diagonal(std::vector<double>{1.0, 3.0}));
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j) CHECK(c(i, j) == doctest::Approx(1.0).epsilon(1e-15));

  CHECK(error_kind_of([&] { compress(Projection::identity(3), e); }) == ErrorKind::dimension_mismatch);
}

TEST_CASE("project_frame examples") {
  const FrameSpec frame(2, {{1, 0}, {0, 1}});
  const FrameSpec same = project_frame(Projection::identity(2), frame);
  CHECK(same.vectors() == frame.vectors());

  Matrix q(2, 1);
  q(0, 0) = 1.0;
  const FrameSpec cut = project_frame(Projection::from_basis(q), frame);
  CHECK(cut.vectors() == std::vector<std::vector<double>>{{1, 0}, {0, 0}});
  CHECK(error_kind_of([&] { project_frame(Projection::identity(3), frame); }) == ErrorKind::dimension_mismatch);
}

TEST_CASE("verify_tight examples") {
  const FrameSpec onb(3, {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}});
  const TightnessCertificate ok = verify_tight(onb, Projection::identity(3), 1.0, 1e-12);
  CHECK(ok.pass);
  CHECK(ok.residual_compression <= 1e-15);
  CHECK(ok.residual_reconstruction <= 1e-15);
  CHECK(ok.seed == kDefaultProbeSeed);
  CHECK(ok.random_probes == kDefaultRandomProbes);

  const FrameSpec e112(2, {{1, 0}, {1, 0}, {0, 1}});
  for (double alpha : {0.5, 1.0, 1.5, 2.0, 3.0}) {
    const TightnessCertificate bad = verify_tight(e112, Projection::identity(2), alpha, 1e-10);
    CHECK_FALSE(bad.pass);
    CHECK(bad.compression_pass == bad.reconstruction_pass);
  }

  CHECK(error_kind_of([&] { verify_tight(onb, Projection::identity(3), 0.0, 1e-10); }) ==
        ErrorKind::invalid_input);
  CHECK(error_kind_of([&] { verify_tight(onb, Projection::identity(3), -1.0, 1e-10); }) ==
        ErrorKind::invalid_input);
  CHECK(error_kind_of([&] { verify_tight(onb, Projection::identity(3), 1.0, 0.0); }) ==
        ErrorKind::invalid_input);
  CHECK(error_kind_of([&] { verify_tight(onb, Projection::identity(2), 1.0, 1e-9); }) ==
        ErrorKind::dimension_mismatch);
}

TEST_CASE("verify_tight residual matches a dense oracle") {
  std::mt19937_64 rng(19);
  for (int trial = 0; trial < 30; ++trial) {
    const std::size_t d = testsupport::uniform_index(rng, 1, 10);
    const FrameSpec frame = testsupport::random_frame(rng, d, d + 2);
    const Matrix basis = testsupport::random_orthonormal(rng, d, testsupport::uniform_index(rng, 1, d));
    const double alpha = tightproj::uniform(rng, 0.1, 4.0);
    const TightnessCertificate c = verify_tight(frame, Projection::from_basis(basis), alpha, 1e-8);
    const double oracle = testsupport::compression_residual_oracle(basis, frame_operator(frame), alpha);
    CHECK(c.residual_compression == doctest::Approx(oracle).epsilon(1e-9).scale(1.0));
  }
}

TEST_CASE("verify_tight is deterministic in its seed") {
  std::mt19937_64 rng(23);
  const FrameSpec frame = testsupport::random_frame(rng, 6, 9);
  const Projection p = Projection::from_basis(testsupport::random_orthonormal(rng, 6, 3));
  const TightnessCertificate a = verify_tight(frame, p, 1.0, 1e-8, 8, 99);
  const TightnessCertificate b = verify_tight(frame, p, 1.0, 1e-8, 8, 99);
  CHECK(a.residual_reconstruction == b.residual_reconstruction);
  CHECK(a.seed == 99);
}
