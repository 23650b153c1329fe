#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <numbers>

#include "seqforms/forms.hpp"
#include "support/oracles.hpp"

using namespace seqforms;
using Kind = ConvergenceVerdict::Kind;

namespace {

double max_abs(const Matrix& m) { return m.size() ? m.cwiseAbs().maxCoeff() : 0.0; }

// Random pairs, half of them made adversarial: rank-deficient, nearly
// orthogonal ranges, or fewer members than dims.
std::pair<Matrix, Matrix> random_pair(oracle::Rng& rng, int t) {
  const Index dim = 1 + t % 4;
  const Index count = dim + (t / 4) % 3;
  Matrix x = oracle::random_matrix(rng, dim, count);
  Matrix y = oracle::random_matrix(rng, dim, count);
  switch (t % 8) {
    case 0: y.row(0).setZero(); break;                           // eta not injective
    case 1: x.col(0) = x.col(count - 1); x.row(dim - 1).setZero(); break;
    case 2: y = x; break;                                        // xi = eta
    case 3: {                                                    // T = x y^* singular
      if (count > dim) break;
      y = x.adjoint().inverse().eval();
      y.col(0).setZero();
      break;
    }
    case 4: x = oracle::random_matrix(rng, dim, std::max<Index>(1, dim - 1)); y = oracle::random_matrix(rng, dim, x.cols()); break;
    default: break;
  }
  return {x, y};
}

}  // namespace

TEST_CASE("form pair of an orthonormal basis is the inner product") {
  const Tolerances tol;
  const CoeffVector f{1.0, Complex(0, 2), -1.0};
  const CoeffVector g{0.5, 1.0, Complex(1, 1)};
  const auto s = eval_form_pair(SequenceSpec::onb(), SequenceSpec::onb(), f, g, TruncationLadder({4, 8, 16}), tol);
  CHECK(s.probe.verdict.kind == Kind::Converged);
  CHECK(std::abs(s.value - inner_product(f, g)) < 1e-15);
}

TEST_CASE("weight and inverse weight form the inner product") {
  const Tolerances tol;
  oracle::Rng rng(40);
  const CoeffVector f(oracle::random_vector(rng, 10));
  const CoeffVector g(oracle::random_vector(rng, 10));
  const auto s = eval_form_pair(SequenceSpec::diagonal(ScalarRule::identity()),
                                SequenceSpec::diagonal(ScalarRule::reciprocal()), f, g,
                                TruncationLadder({16, 32, 64}), tol);
  CHECK(std::abs(s.value - inner_product(f, g)) < 1e-14);
}

TEST_CASE("Gram form equals the inner product of syntheses") {
  oracle::Rng rng(41);
  const Tolerances tol;
  const SequenceSpec xi = SequenceSpec::finite_difference();
  const Matrix x = materialize(xi, 6, 6);
  for (int t = 0; t < 10; ++t) {
    const Vector c = oracle::random_vector(rng, 6);
    const Vector d = oracle::random_vector(rng, 6);
    const std::vector<Complex> cv(c.data(), c.data() + 6), dv(d.data(), d.data() + 6);
    const Complex theta = eval_gram_form(xi, cv, dv, 6, 6, tol);
    CHECK(std::abs(theta - (x * d).dot(x * c)) < 1e-10);
    const Complex self = eval_gram_form(xi, cv, cv, 6, 6, tol);
    CHECK(self.real() >= -1e-12);
    CHECK(std::abs(self.imag()) < 1e-10);
  }
}

TEST_CASE("inf-sup constants match the sampling oracle") {
  oracle::Rng rng(50);
  const Tolerances tol;
  for (int t = 0; t < 10; ++t) {
    const Index dim = 1 + t % 4;
    const Index count = dim + 1 + t % 2;
    const Matrix x = oracle::random_matrix(rng, dim, count);
    const Matrix y = oracle::random_matrix(rng, dim, count);
    const auto bx = OperatorBundle::from_columns(x, tol);
    const auto by = OperatorBundle::from_columns(y, tol);
    const auto is = infsup_constants(bx, by, tol);
    const double c1 = oracle::sampled_infsup(bx.analysis(), by.analysis(), 4000, rng);
    const double c2 = oracle::sampled_infsup(by.analysis(), bx.analysis(), 4000, rng);
    CHECK(std::abs(is.c1 - c1) <= 0.02 * std::max(c1, 1e-3));
    CHECK(std::abs(is.c2 - c2) <= 0.02 * std::max(c2, 1e-3));
    CHECK(is.c1 >= 0.0);
    CHECK(is.c1 <= 1.0 + 1e-12);
  }
}

TEST_CASE("both zero-closed routes agree on random and adversarial pairs") {
  oracle::Rng rng(60);
  const Tolerances tol;
  for (int t = 0; t < 200; ++t) {
    const auto [x, y] = random_pair(rng, t);
    const auto a = zero_closed_check(OperatorBundle::from_columns(x, tol), OperatorBundle::from_columns(y, tol), tol);
    CHECK(a.routes_agree);
    CHECK(a.zero_closed == a.assoc_invertible);
    CHECK(max_abs(a.associated_operator - y * x.adjoint()) < 1e-12 * (1 + max_abs(y * x.adjoint())));
    if (a.zero_closed) {
      REQUIRE(a.assoc_inverse_norm);
      CHECK(a.null_dim_left == 0);
      CHECK(a.null_dim_right == 0);
    } else {
      CHECK(a.null_dim_left > 0);
    }
  }
}

TEST_CASE("zero-closedness is symmetric") {
  oracle::Rng rng(61);
  const Tolerances tol;
  for (int t = 0; t < 60; ++t) {
    const auto [x, y] = random_pair(rng, t);
    const auto bx = OperatorBundle::from_columns(x, tol);
    const auto by = OperatorBundle::from_columns(y, tol);
    CHECK(zero_closed_check(bx, by, tol).zero_closed == zero_closed_check(by, bx, tol).zero_closed);
  }
}

TEST_CASE("a complete family is zero-closed with itself") {
  const Tolerances tol;
  const auto a = zero_closed_check(SequenceSpec::triple(PatternKind::Xi), SequenceSpec::triple(PatternKind::Xi), 4, 12, tol);
  CHECK(a.zero_closed);
  CHECK(a.c1 == doctest::Approx(1.0));
  CHECK(a.max_principal_angle == doctest::Approx(0.0).epsilon(1e-6));
}

TEST_CASE("orthogonal ranges are not zero-closed") {
  const Tolerances tol;
  Matrix x(2, 2), y(2, 2);
  x << 1, 0,
       0, 0;
  y << 0, 0,
       0, 1;
  const auto a = zero_closed_check(OperatorBundle::from_columns(x, tol), OperatorBundle::from_columns(y, tol), tol);
  CHECK(!a.zero_closed);
  CHECK(a.routes_agree);
  CHECK(a.null_dim_left == 2);
  CHECK(!a.disclaimer.empty());
}

TEST_CASE("weighted Riesz pair: H has spectrum alpha") {
  oracle::Rng rng(70);
  const Tolerances tol;
  std::vector<Complex> alpha;
  for (int n = 1; n <= 16; ++n) alpha.push_back(double(n));
  const Matrix v = oracle::random_matrix(rng, 16, 16) + 4.0 * Matrix::Identity(16, 16);
  const auto pair = make_weighted_riesz(v, alpha, tol);
  CHECK(max_abs(pair.phi.adjoint() * pair.psi - Matrix::Identity(16, 16)) < 1e-10);
  const Eigen::ComplexEigenSolver<Matrix> eig(pair.associated());
  std::vector<double> ev;
  for (Index i = 0; i < 16; ++i) ev.push_back(eig.eigenvalues()(i).real());
  std::sort(ev.begin(), ev.end());
  for (int n = 0; n < 16; ++n) CHECK(std::abs(ev[static_cast<std::size_t>(n)] - (n + 1)) < 1e-8);
  CHECK(max_abs(pair.associated() - pair.eta() * pair.xi().adjoint()) < 1e-10);
}

TEST_CASE("lambda region of a weighted Riesz pair") {
  const Tolerances tol;
  std::vector<Complex> alpha;
  for (int n = 1; n <= 16; ++n) alpha.push_back(double(n));
  const std::vector<Complex> probes = {3.0, 3.5, Complex(2, 1), 0.0, 16.0, 17.0, Complex(0, -5)};
  const auto verdicts = lambda_region_weighted(alpha, probes, {}, tol);
  REQUIRE(verdicts.size() == probes.size());
  CHECK(!verdicts[0].lambda_closed);
  CHECK(verdicts[1].lambda_closed);
  CHECK(verdicts[1].distance == doctest::Approx(0.5));
  CHECK(verdicts[3].lambda_closed);
  CHECK(!verdicts[4].lambda_closed);
  for (const auto& v : verdicts) CHECK(v.agrees);
}

TEST_CASE("declared accumulation points are reported, not inferred") {
  const Tolerances tol;
  std::vector<Complex> alpha;
  for (int n = 1; n <= 12; ++n) alpha.push_back(1.0 / n);
  const std::vector<Complex> probes = {0.0};
  const std::vector<Complex> accum = {0.0};
  const auto with = lambda_region_weighted(alpha, probes, accum, tol);
  CHECK(!with[0].lambda_closed);
  CHECK(with[0].accumulation_hit);
  CHECK(with[0].truncation_invertible);
  CHECK(with[0].agrees);
  const auto without = lambda_region_weighted(alpha, probes, {}, tol);
  CHECK(without[0].lambda_closed);
}

TEST_CASE("solvability shift bounds the weights below") {
  const Tolerances tol;
  const std::vector<Complex> alpha = {0.0, 0.5, Complex(0, 0.3), 2.0, -3.0, Complex(0.2, -0.9)};
  const auto s = solvability_shift(alpha, tol);
  CHECK(s.bounded_below);
  CHECK(s.min_shifted_modulus >= 1.0 - 1e-15);
  CHECK(s.shifted_zero_closed);
  for (std::size_t n = 0; n < alpha.size(); ++n) {
    CHECK(s.shifted[n] == alpha[n] + s.sigma[n]);
    if (std::abs(alpha[n]) > 1.0) CHECK(s.sigma[n] == Complex(0.0));
  }
  CHECK(shift_table(alpha) == s.sigma);
}

TEST_CASE("weights from a rule") {
  const auto w = weights_from_rule(ScalarRule::identity(), 4);
  REQUIRE(w.size() == 4);
  CHECK(w[3] == Complex(4.0));
}
