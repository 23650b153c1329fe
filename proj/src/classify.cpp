#include "seqforms/classify.hpp"

#include <cmath>
#include <random>
#include <sstream>

#include <Eigen/Eigenvalues>

namespace seqforms {

std::string_view to_string(SequenceClass c) {
  switch (c) {
    case SequenceClass::Bessel: return "Bessel";
    case SequenceClass::UpperSemiFrame: return "UpperSemiFrame";
    case SequenceClass::LowerSemiFrame: return "LowerSemiFrame";
    case SequenceClass::Frame: return "Frame";
    case SequenceClass::RieszBasis: return "RieszBasis";
    case SequenceClass::None: return "None";
    case SequenceClass::Inconclusive: return "Inconclusive";
  }
  return "Inconclusive";
}

ClassificationReport classify_finite(const OperatorBundle& bundle, const Tolerances& tol) {
  ClassificationReport r;
  r.dim = bundle.dim();
  r.count = bundle.count();
  r.complete = bundle.injective();
  r.bessel_bound = bundle.sigma_max() * bundle.sigma_max();
  r.lower_bound = bundle.sigma_min() * bundle.sigma_min();
  // In finite dimensions a complete family is automatically a frame.
  r.frame = r.complete;

  const Eigen::VectorXd& sv = bundle.svd().singular_values;
  if (bundle.rank() > 0) r.riesz_fischer_bound = sv(bundle.rank() - 1) * sv(bundle.rank() - 1);
  r.overcomplete = bundle.count() > bundle.dim();
  r.riesz_fischer = !r.overcomplete && bundle.rank() == bundle.count();
  r.riesz_basis = bundle.count() == bundle.dim() && r.complete;
  if (r.frame && r.lower_bound > 0) {
    // ||S^{-1}|| from the spectrum of S, compared against 1 / A.
    const double lambda_min = Eigen::SelfAdjointEigenSolver<Matrix>(bundle.frame_operator(), Eigen::EigenvaluesOnly)
                                  .eigenvalues()
                                  .minCoeff();
    r.inverse_frame_norm = 1.0 / lambda_min;
    const bool within = *r.inverse_frame_norm <= (1.0 + tol.eq_tol) / r.lower_bound + tol.eq_tol;
    r.notes.push_back(within ? "||S^-1|| <= 1/A holds; the bound checked is 1/A, not A"
                             : "||S^-1|| exceeds 1/A at this truncation");
  }
  return r;
}

namespace {

bool decays_to_zero(const ConvergenceVerdict& v) {
  return v.kind == ConvergenceVerdict::Kind::Converged && v.limit_estimate && *v.limit_estimate == Complex(0.0);
}

}  // namespace

SequenceClass infer_class(const ConvergenceVerdict& bessel_trend, const ConvergenceVerdict& lower_trend,
                          bool complete, bool square, const Tolerances&) {
  using K = ConvergenceVerdict::Kind;
  if (bessel_trend.kind == K::Inconclusive || lower_trend.kind == K::Inconclusive) {
    return SequenceClass::Inconclusive;
  }
  const bool bounded = bessel_trend.kind == K::Converged;
  const bool lower_positive = !decays_to_zero(lower_trend);
  if (bounded && lower_positive) return square ? SequenceClass::RieszBasis : SequenceClass::Frame;
  if (bounded) return complete ? SequenceClass::UpperSemiFrame : SequenceClass::Bessel;
  if (lower_positive) return SequenceClass::LowerSemiFrame;
  return SequenceClass::None;
}

AsymptoticDiagnosis diagnose_asymptotic(const SequenceSpec& spec, const TruncationLadder& ladder,
                                        const Tolerances& tol) {
  AsymptoticDiagnosis d;
  const Index arity = spec.arity();
  bool all_complete = true;
  for (const Index n : ladder.sizes()) {
    const Index count = arity * n;
    const FrameExtremes ex = frame_extremes(spec, n, count, tol);
    d.dims.push_back(n);
    d.counts.push_back(count);
    d.lower_bounds.push_back(ex.complete ? ex.lower : 0.0);
    d.upper_bounds.push_back(ex.upper);
    d.complete.push_back(ex.complete);
    all_complete = all_complete && ex.complete;
  }
  d.bessel_trend = probe_trend(d.dims, d.upper_bounds, tol);
  d.lower_trend = probe_trend(d.dims, d.lower_bounds, tol);
  d.inferred_class = infer_class(d.bessel_trend, d.lower_trend, all_complete, arity == 1, tol);
  return d;
}

bool check_biorthogonal(const SequenceSpec& a, const SequenceSpec& b, Index dim, Index count,
                        const Tolerances& tol) {
  const Matrix xa = materialize(a, dim, count);
  const Matrix xb = materialize(b, dim, count);
  // cross(m, n) = <xi_n, eta_m>
  const Matrix cross = xb.adjoint() * xa;
  return (cross - Matrix::Identity(count, count)).cwiseAbs().maxCoeff() <= tol.eq_tol;
}

WeightedFrameBounds weighted_space_frame(const SequenceSpec& spec, const Matrix& r, Index dim, Index count,
                                         const Tolerances& tol, unsigned seed) {
  if (r.rows() != dim || r.cols() != dim) {
    std::ostringstream msg;
    msg << "inner-product operator must be " << dim << "x" << dim;
    throw Error(ErrorKind::DimensionMismatch, msg.str());
  }
  const Matrix rh = 0.5 * (r + r.adjoint());
  const Eigen::VectorXd r_eig = Eigen::SelfAdjointEigenSolver<Matrix>(rh, Eigen::EigenvaluesOnly).eigenvalues();
  if (!(r_eig(0) > tol.rank_tol * std::max(1.0, std::abs(r_eig(dim - 1))))) {
    throw Error(ErrorKind::NotPositiveDefinite, "inner-product operator is not positive definite");
  }

  const Matrix x = materialize(spec, dim, count);
  const Matrix s = x * x.adjoint();
  Eigen::GeneralizedSelfAdjointEigenSolver<Matrix> gen(0.5 * (s + s.adjoint()), rh, Eigen::EigenvaluesOnly);
  const Eigen::VectorXd lambda = gen.eigenvalues();

  WeightedFrameBounds out;
  out.lower = std::max(0.0, lambda(0));
  out.upper = std::max(0.0, lambda(dim - 1));
  out.dual_columns = rh.llt().solve(x);

  std::mt19937 rng(seed);
  std::normal_distribution<double> gauss;
  for (int trial = 0; trial < 16; ++trial) {
    Vector f(dim);
    for (Index i = 0; i < dim; ++i) f(i) = Complex(gauss(rng), gauss(rng));
    const Vector direct = x.adjoint() * f;                            // <f, xi_n>
    const Vector weighted = (rh * out.dual_columns).adjoint() * f;    // <f, R xi'_n>
    out.identity_error = std::max(out.identity_error, (direct - weighted).cwiseAbs().maxCoeff());
  }
  return out;
}

}  // namespace seqforms
