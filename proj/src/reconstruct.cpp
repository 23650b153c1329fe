#include "seqforms/reconstruct.hpp"

#include <sstream>

#include <Eigen/LU>
#include <Eigen/SVD>

namespace seqforms {

std::string_view to_string(DualKind kind) {
  switch (kind) {
    case DualKind::CanonicalLower: return "canonical_lower";
    case DualKind::ReproducingLeft: return "reproducing_left";
    case DualKind::ReproducingRight: return "reproducing_right";
  }
  return "canonical_lower";
}

namespace {

double squared_norm_bound(const Matrix& columns) {
  if (columns.size() == 0) return 0.0;
  const double s = Eigen::JacobiSVD<Matrix>(columns).singularValues()(0);
  return s * s;
}

}  // namespace

DualSystem canonical_dual(const OperatorBundle& bundle, const Tolerances&) {
  // Rank is decided on C when the bundle is built.
  if (!bundle.injective()) {
    throw Error(ErrorKind::NotLowerSemiFrame, "frame operator is singular at this truncation");
  }
  DualSystem out;
  out.kind = DualKind::CanonicalLower;
  out.primal = bundle.synthesis();
  out.dual = bundle.frame_operator().ldlt().solve(bundle.synthesis());
  // C_dual = C S^{-1}
  out.bessel_bound_of_dual = squared_norm_bound(out.dual);
  return out;
}

Reconstruction reconstruct_with(const DualSystem& system, const CoeffVector& f, const Tolerances&) {
  if (f.dim() != system.primal.rows() || system.primal.rows() != system.dual.rows() ||
      system.primal.cols() != system.dual.cols()) {
    std::ostringstream msg;
    msg << "cannot reconstruct a vector of dim " << f.dim() << " with a " << system.primal.rows() << "x"
        << system.primal.cols() << " / " << system.dual.rows() << "x" << system.dual.cols() << " system";
    throw Error(ErrorKind::DimensionMismatch, msg.str());
  }
  Reconstruction r;
  r.value = system.dual * (system.primal.adjoint() * f.coeffs());
  r.residual = (r.value - f.coeffs()).norm();
  return r;
}

std::pair<DualSystem, DualSystem> reproducing_pair_duals(const FormAssessment& assessment,
                                                         const OperatorBundle& xi,
                                                         const OperatorBundle& eta, const Tolerances& tol) {
  if (!assessment.zero_closed) throw Error(ErrorKind::NotZeroClosed, "the pair form is not 0-closed");
  const Matrix t = associated_operator(xi, eta);
  const Eigen::PartialPivLU<Matrix> lu(t);
  const Eigen::VectorXd sv = Eigen::JacobiSVD<Matrix>(t).singularValues();
  if (numerical_rank(sv, tol.rank_tol) != t.rows()) {
    throw Error(ErrorKind::NotZeroClosed, "associated operator is singular at this truncation");
  }

  DualSystem left;
  left.kind = DualKind::ReproducingLeft;
  left.primal = eta.synthesis();
  left.dual = t.adjoint().partialPivLu().solve(xi.synthesis());
  left.bessel_bound_of_dual = squared_norm_bound(left.dual);

  DualSystem right;
  right.kind = DualKind::ReproducingRight;
  right.primal = xi.synthesis();
  right.dual = lu.solve(eta.synthesis());
  right.bessel_bound_of_dual = squared_norm_bound(right.dual);
  return {std::move(left), std::move(right)};
}

}  // namespace seqforms
