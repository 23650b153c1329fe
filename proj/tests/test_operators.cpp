#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <numbers>

#include "seqforms/operators.hpp"
#include "support/oracles.hpp"

using namespace seqforms;

namespace {

double max_abs(const Matrix& m) { return m.size() ? m.cwiseAbs().maxCoeff() : 0.0; }

}  // namespace

TEST_CASE("operator shapes and adjoint relations") {
  oracle::Rng rng(1);
  const Tolerances tol;
  for (int t = 0; t < 30; ++t) {
    const Index dim = 1 + t % 5;
    const Index count = 1 + (t * 7) % 9;
    const Matrix x = oracle::random_matrix(rng, dim, count);
    const auto b = OperatorBundle::from_columns(x, tol);
    CHECK(b.analysis().rows() == count);
    CHECK(b.analysis().cols() == dim);
    CHECK(max_abs(b.analysis() - b.synthesis().adjoint()) == 0.0);
    CHECK(max_abs(b.frame_operator() - b.frame_operator().adjoint()) < 1e-12);
    CHECK(max_abs(b.gram() - b.gram().adjoint()) < 1e-12);

    // <C f, c> = <f, D c> for random f, c.
    const Vector f = oracle::random_vector(rng, dim);
    const Vector c = oracle::random_vector(rng, count);
    const Complex lhs = c.dot(b.analysis() * f);
    const Complex rhs = (b.synthesis() * c).dot(f);
    CHECK(std::abs(lhs - rhs) < 1e-12 * (1 + std::abs(lhs)));

    // <S f, f> = sum |<f, xi_n>|^2.
    const double energy = f.dot(b.frame_operator() * f).real();
    CHECK(std::abs(energy - oracle::analysis_energy(x, f)) < 1e-10 * (1 + energy));
  }
}

TEST_CASE("rank and injectivity") {
  const Tolerances tol;
  CHECK(OperatorBundle::from_columns(Matrix::Identity(3, 3), tol).injective());
  Matrix deficient(3, 4);
  deficient << 1, 0, 1, 0,
               0, 1, 1, 0,
               0, 0, 0, 0;
  const auto b = OperatorBundle::from_columns(deficient, tol);
  CHECK(b.rank() == 2);
  CHECK(!b.injective());
  CHECK(b.sigma_min() == doctest::Approx(0.0));
  CHECK(OperatorBundle::from_columns(Matrix::Identity(3, 2), tol).sigma_min() == 0.0);
}

TEST_CASE("principal angles") {
  const Tolerances tol;
  const SubspaceBasis e1(Matrix::Identity(2, 1), 2);
  Matrix diag(2, 1);
  diag << 1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0);
  const SubspaceBasis d(diag, 2);
  const auto a = principal_angles(e1, d);
  REQUIRE(a.size() == 1);
  CHECK(a[0] == doctest::Approx(std::numbers::pi / 4));
  const SubspaceBasis e2(Matrix::Identity(2, 2).col(1), 2);
  CHECK(principal_angles(e1, e2)[0] == doctest::Approx(std::numbers::pi / 2));
  (void)tol;
}

TEST_CASE("direct sum verdicts") {
  const Tolerances tol;
  Matrix a(3, 2);
  a << 1, 0,
       0, 1,
       0, 0;
  Matrix b(3, 1);
  b << 1, 1, 1;
  Matrix c(3, 1);
  c << 1, 1, 0;
  CHECK(direct_sum_check(range_basis(a, tol), range_basis(b, tol), tol) == DirectSum::Holds);
  CHECK(direct_sum_check(range_basis(a, tol), range_basis(c, tol), tol) == DirectSum::FailsIntersection);
  CHECK(direct_sum_check(range_basis(a.col(0), tol), range_basis(b, tol), tol) == DirectSum::FailsSpan);
  CHECK(to_string(DirectSum::Holds) == "holds");
}

TEST_CASE("direct sum agrees with the Gram-Schmidt oracle") {
  oracle::Rng rng(17);
  const Tolerances tol;
  for (int t = 0; t < 100; ++t) {
    const Index n = 2 + t % 4;
    const Index p = 1 + t % n;
    Matrix u = oracle::random_matrix(rng, n, p);
    Matrix w = oracle::random_matrix(rng, n, n - p + (t % 3 == 0 ? 1 : 0));
    if (t % 5 == 0 && w.cols() > 0) w.col(0) = u.col(0);  // force an intersection
    const bool expected = oracle::direct_sum_holds(u, w);
    CHECK((direct_sum_check(range_basis(u, tol), range_basis(w, tol), tol) == DirectSum::Holds) == expected);
  }
}

TEST_CASE("complement basis is orthogonal to the range") {
  oracle::Rng rng(2);
  const Tolerances tol;
  Matrix m = oracle::random_matrix(rng, 5, 3);
  m.col(2) = m.col(0) + m.col(1);
  const auto r = range_basis(m, tol);
  const auto c = complement_basis(m, tol);
  CHECK(r.dim() == 2);
  CHECK(c.dim() == 3);
  CHECK(max_abs(r.q().adjoint() * c.q()) < 1e-12);
  CHECK(max_abs(c.q().adjoint() * c.q() - Matrix::Identity(3, 3)) < 1e-12);
}

TEST_CASE("pseudo inverse satisfies the Penrose identities") {
  oracle::Rng rng(9);
  const Tolerances tol;
  for (int t = 0; t < 20; ++t) {
    Matrix m = oracle::random_matrix(rng, 4, 6);
    if (t % 2) m.row(3) = m.row(0);
    const Matrix p = pseudo_inverse(m, tol);
    CHECK(max_abs(m * p * m - m) < 1e-10);
    CHECK(max_abs(p * m * p - p) < 1e-10);
    CHECK(max_abs((m * p).adjoint() - m * p) < 1e-10);
  }
}

TEST_CASE("operator image families") {
  oracle::Rng rng(4);
  const Tolerances tol;
  for (int t = 0; t < 20; ++t) {
    const Matrix v = oracle::random_matrix(rng, 8, 8);
    const auto chk = operator_image_bundle(v, tol);
    CHECK(chk.analysis_error <= tol.eq_tol);
    CHECK(chk.frame_error <= tol.eq_tol);
    CHECK(max_abs(chk.bundle.analysis() - v.adjoint()) <= tol.eq_tol);
  }
}

TEST_CASE("frame bounds match the sampling oracle") {
  oracle::Rng rng(21);
  const Tolerances tol;
  for (int t = 0; t < 10; ++t) {
    const Index dim = 1 + t % 3;
    const Matrix x = oracle::random_matrix(rng, dim, dim + 1 + t % 3);
    const auto b = OperatorBundle::from_columns(x, tol);
    const auto s = oracle::sampled_frame_bounds(x, 20000, rng);
    const double lo = b.sigma_min() * b.sigma_min();
    const double hi = b.sigma_max() * b.sigma_max();
    CHECK(std::abs(s.lower - lo) <= 0.02 * hi);
    CHECK(std::abs(s.upper - hi) <= 0.02 * hi);
    CHECK(s.lower >= lo - 1e-9);
    CHECK(s.upper <= hi + 1e-9);
  }
}

TEST_CASE("frame extremes: dense and tridiagonal paths agree") {
  const Tolerances tol;
  const SequenceSpec fd = SequenceSpec::finite_difference();
  for (const Index n : {4, 16, 64}) {
    const auto fast = frame_extremes(fd, n, n, tol);
    const auto b = build_bundle(fd, n, n, tol);
    const Eigen::SelfAdjointEigenSolver<Matrix> eig(b.frame_operator());
    CHECK(fast.lower == doctest::Approx(eig.eigenvalues().minCoeff()).epsilon(1e-8));
    CHECK(fast.upper == doctest::Approx(eig.eigenvalues().maxCoeff()).epsilon(1e-8));
    CHECK(fast.complete);
  }
  const auto onb = frame_extremes(SequenceSpec::onb(), 64, 64, tol);
  CHECK(onb.lower == doctest::Approx(1.0));
  CHECK(onb.upper == doctest::Approx(1.0));
}

TEST_CASE("frame extremes at large size use the tridiagonal path") {
  const Tolerances tol;
  const auto big = frame_extremes(SequenceSpec::interleave(SequenceSpec::onb(), SequenceSpec::finite_difference()),
                                  5000, 10000, tol);
  CHECK(big.lower >= 1.0 - 1e-9);
  CHECK(big.complete);
}
