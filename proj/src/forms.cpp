#include "seqforms/forms.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include <Eigen/LU>
#include <Eigen/SVD>

namespace seqforms {

FormSeries eval_form_pair(const SequenceSpec& xi, const SequenceSpec& eta, const CoeffVector& f,
                          const CoeffVector& g, const TruncationLadder& ladder, const Tolerances& tol) {
  if (f.dim() != g.dim()) throw Error(ErrorKind::DimensionMismatch, "form arguments differ in dim");
  const ScalarTerm term = [&](Index n) {
    return inner_product(f, term_entries(xi, n)) * std::conj(inner_product(g, term_entries(eta, n)));
  };
  ScalarSeriesProbe probe = probe_series(term, ladder, tol);
  const Complex value = probe.partial_sums.back();
  return {value, std::move(probe)};
}

Complex eval_gram_form(const SequenceSpec& xi, std::span<const Complex> c, std::span<const Complex> d,
                       Index dim, Index count, const Tolerances&) {
  if (static_cast<Index>(c.size()) != count || static_cast<Index>(d.size()) != count) {
    std::ostringstream msg;
    msg << "Gram form needs coefficient lists of length " << count;
    throw Error(ErrorKind::DimensionMismatch, msg.str());
  }
  const Matrix x = materialize(xi, dim, count);
  const Vector cv = Vector::Map(c.data(), count);
  const Vector dv = Vector::Map(d.data(), count);
  const Matrix gram = x.adjoint() * x;
  return dv.dot(gram * cv);
}

namespace {

void require_compatible(const OperatorBundle& xi, const OperatorBundle& eta) {
  if (xi.count() != eta.count() || xi.dim() != eta.dim()) {
    std::ostringstream msg;
    msg << "bundles must share dim and count: " << xi.dim() << "x" << xi.count() << " vs " << eta.dim()
        << "x" << eta.count();
    throw Error(ErrorKind::DimensionMismatch, msg.str());
  }
}

// inf over unit u in span(from) of |P_{span(onto)} u|.
double projection_infimum(const SubspaceBasis& from, const SubspaceBasis& onto) {
  if (from.dim() == 0 || onto.dim() < from.dim()) return 0.0;
  const Matrix cross = onto.q().adjoint() * from.q();
  const Eigen::VectorXd sv = Eigen::JacobiSVD<Matrix>(cross).singularValues();
  return sv(from.dim() - 1);
}

}  // namespace

InfSup infsup_constants(const OperatorBundle& xi, const OperatorBundle& eta, const Tolerances& tol) {
  require_compatible(xi, eta);
  const SubspaceBasis range_xi = range_basis(xi.analysis(), tol);
  const SubspaceBasis range_eta = range_basis(eta.analysis(), tol);
  InfSup out;
  out.c1 = projection_infimum(range_xi, range_eta);
  out.c2 = projection_infimum(range_eta, range_xi);
  out.angles = principal_angles(range_xi, range_eta);
  out.degenerate_norm = !xi.injective() || !eta.injective();
  return out;
}

Matrix associated_operator(const OperatorBundle& xi, const OperatorBundle& eta) {
  require_compatible(xi, eta);
  return eta.synthesis() * xi.analysis();
}

FormAssessment zero_closed_check(const OperatorBundle& xi, const OperatorBundle& eta, const Tolerances& tol) {
  require_compatible(xi, eta);
  FormAssessment a;
  a.dim = xi.dim();
  a.count = xi.count();
  a.lower_xi = xi.injective();
  a.lower_eta = eta.injective();

  const SubspaceBasis range_xi = range_basis(xi.analysis(), tol);
  const SubspaceBasis range_eta = range_basis(eta.analysis(), tol);
  const SubspaceBasis eta_perp = complement_basis(eta.analysis(), tol);
  a.direct_sum = direct_sum_check(range_xi, eta_perp, tol);
  a.route_b = a.lower_xi && a.lower_eta && a.direct_sum == DirectSum::Holds;

  a.associated_operator = associated_operator(xi, eta);
  const Eigen::VectorXd sv = Eigen::JacobiSVD<Matrix>(a.associated_operator).singularValues();
  const Index rank = numerical_rank(sv, tol.rank_tol);
  a.assoc_invertible = rank == a.dim;
  if (a.assoc_invertible) a.assoc_inverse_norm = 1.0 / sv(a.dim - 1);
  // N(Omega) = N(T) and N(Omega^*) = N(T^*); a square T has equal defects.
  a.null_dim_left = a.dim - rank;
  a.null_dim_right = a.dim - rank;

  const InfSup is = infsup_constants(xi, eta, tol);
  a.c1 = is.c1;
  a.c2 = is.c2;
  a.degenerate_norm = is.degenerate_norm;
  if (range_xi.dim() != range_eta.dim() || is.angles.empty()) {
    a.max_principal_angle = std::numbers::pi / 2;
  } else {
    a.max_principal_angle = is.angles.back();
  }

  a.zero_closed = a.route_b;
  a.routes_agree = a.route_b == a.assoc_invertible;
  return a;
}

FormAssessment zero_closed_check(const SequenceSpec& xi, const SequenceSpec& eta, Index dim, Index count,
                                 const Tolerances& tol) {
  return zero_closed_check(build_bundle(xi, dim, count, tol), build_bundle(eta, dim, count, tol), tol);
}

Matrix WeightedRieszPair::eta() const {
  const Vector a = Vector::Map(alpha.data(), static_cast<Index>(alpha.size()));
  return psi * a.asDiagonal();
}

Matrix WeightedRieszPair::associated() const { return eta() * phi.adjoint(); }

WeightedRieszPair make_weighted_riesz(const Matrix& v, std::vector<Complex> alpha, const Tolerances& tol) {
  if (v.rows() != v.cols()) throw Error(ErrorKind::DimensionMismatch, "weighted Riesz pair needs square V");
  if (static_cast<Index>(alpha.size()) != v.cols()) {
    throw Error(ErrorKind::DimensionMismatch, "one weight per basis vector is required");
  }
  const Eigen::VectorXd sv = Eigen::JacobiSVD<Matrix>(v).singularValues();
  if (numerical_rank(sv, tol.rank_tol) != v.rows()) {
    throw Error(ErrorKind::InvalidInput, "V must be invertible");
  }
  const Matrix psi = v.adjoint().partialPivLu().solve(Matrix::Identity(v.rows(), v.cols()));
  return {v, psi, std::move(alpha)};
}

std::vector<Complex> weights_from_rule(const ScalarRule& rule, Index count) {
  std::vector<Complex> out;
  out.reserve(static_cast<std::size_t>(count));
  for (Index n = 1; n <= count; ++n) out.push_back(rule(n));
  return out;
}

std::vector<LambdaVerdict> lambda_region_weighted(const WeightedRieszPair& pair, std::span<const Complex> probes,
                                                  std::span<const Complex> accumulation_points,
                                                  const Tolerances& tol) {
  const Matrix h = pair.associated();
  const Index dim = pair.dim();
  std::vector<LambdaVerdict> out;
  for (const Complex lambda : probes) {
    LambdaVerdict v;
    v.lambda = lambda;
    double to_alpha = std::numeric_limits<double>::infinity();
    for (const Complex a : pair.alpha) to_alpha = std::min(to_alpha, std::abs(lambda - a));
    double to_accum = std::numeric_limits<double>::infinity();
    for (const Complex a : accumulation_points) to_accum = std::min(to_accum, std::abs(lambda - a));
    v.distance = std::min(to_alpha, to_accum);
    v.lambda_closed = v.distance > tol.eq_tol;
    v.accumulation_hit = !v.lambda_closed && to_alpha > tol.eq_tol;

    const Matrix shifted = h - lambda * Matrix::Identity(dim, dim);
    const Eigen::VectorXd sv = Eigen::JacobiSVD<Matrix>(shifted).singularValues();
    v.truncation_invertible = numerical_rank(sv, tol.rank_tol) == dim;
    v.agrees = v.lambda_closed == v.truncation_invertible || v.accumulation_hit;
    out.push_back(v);
  }
  return out;
}

std::vector<LambdaVerdict> lambda_region_weighted(std::span<const Complex> alpha, std::span<const Complex> probes,
                                                  std::span<const Complex> accumulation_points,
                                                  const Tolerances& tol) {
  const auto n = static_cast<Index>(alpha.size());
  const WeightedRieszPair pair =
      make_weighted_riesz(Matrix::Identity(n, n), std::vector<Complex>(alpha.begin(), alpha.end()), tol);
  return lambda_region_weighted(pair, probes, accumulation_points, tol);
}

std::vector<Complex> shift_table(std::span<const Complex> alpha) {
  std::vector<Complex> sigma;
  sigma.reserve(alpha.size());
  for (const Complex a : alpha) sigma.push_back(std::abs(a) <= 1.0 ? 1.0 - a : Complex(0.0));
  return sigma;
}

SolvabilityShift solvability_shift(const WeightedRieszPair& pair, const Tolerances& tol) {
  SolvabilityShift out;
  out.sigma = shift_table(pair.alpha);
  out.min_shifted_modulus = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < pair.alpha.size(); ++i) {
    out.shifted.push_back(pair.alpha[i] + out.sigma[i]);
    out.min_shifted_modulus = std::min(out.min_shifted_modulus, std::abs(out.shifted.back()));
  }
  out.bounded_below = out.min_shifted_modulus >= 1.0 - tol.eq_tol;

  const Index dim = pair.dim();
  const Matrix eta = pair.eta();
  Matrix xi_shifted(dim, 2 * dim);
  Matrix eta_shifted(dim, 2 * dim);
  for (Index n = 0; n < dim; ++n) {
    xi_shifted.col(2 * n) = pair.phi.col(n);
    xi_shifted.col(2 * n + 1) = std::conj(out.sigma[static_cast<std::size_t>(n)]) * pair.phi.col(n);
    eta_shifted.col(2 * n) = eta.col(n);
    eta_shifted.col(2 * n + 1) = pair.psi.col(n);
  }
  const FormAssessment a = zero_closed_check(OperatorBundle::from_columns(xi_shifted, tol),
                                             OperatorBundle::from_columns(eta_shifted, tol), tol);
  out.shifted_zero_closed = a.zero_closed;
  return out;
}

SolvabilityShift solvability_shift(std::span<const Complex> alpha, const Tolerances& tol) {
  const auto n = static_cast<Index>(alpha.size());
  return solvability_shift(
      make_weighted_riesz(Matrix::Identity(n, n), std::vector<Complex>(alpha.begin(), alpha.end()), tol), tol);
}

}  // namespace seqforms
