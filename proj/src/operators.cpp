#include "seqforms/operators.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

namespace seqforms {

SvdData full_svd(const Matrix& m) {
  if (m.size() == 0) return {Eigen::VectorXd(0), Matrix::Identity(m.rows(), m.rows()), Matrix::Identity(m.cols(), m.cols())};
  Eigen::BDCSVD<Matrix> svd(m, Eigen::ComputeFullU | Eigen::ComputeFullV);
  return {svd.singularValues(), svd.matrixU(), svd.matrixV()};
}

Index numerical_rank(const Eigen::VectorXd& singular_values, double rank_tol) {
  if (singular_values.size() == 0 || singular_values(0) <= 0.0) return 0;
  const double cutoff = rank_tol * singular_values(0);
  return (singular_values.array() > cutoff).count();
}

OperatorBundle OperatorBundle::from_columns(Matrix columns, const Tolerances& tol) {
  OperatorBundle b;
  b.d_ = std::move(columns);
  b.c_ = b.d_.adjoint();
  b.s_ = b.d_ * b.c_;
  b.s_ = (0.5 * (b.s_ + b.s_.adjoint())).eval();
  b.g_ = b.c_ * b.d_;
  b.g_ = (0.5 * (b.g_ + b.g_.adjoint())).eval();
  b.svd_ = full_svd(b.c_);
  b.rank_ = numerical_rank(b.svd_.singular_values, tol.rank_tol);
  return b;
}

double OperatorBundle::sigma_max() const {
  return svd_.singular_values.size() ? svd_.singular_values(0) : 0.0;
}

double OperatorBundle::sigma_min() const {
  if (count() < dim()) return 0.0;
  return svd_.singular_values(dim() - 1);
}

OperatorBundle build_bundle(const SequenceSpec& spec, Index dim, Index count, const Tolerances& tol) {
  return OperatorBundle::from_columns(materialize(spec, dim, count), tol);
}

SubspaceBasis::SubspaceBasis(Matrix q, Index ambient_dim) : q_(std::move(q)), ambient_(ambient_dim) {
  if (q_.rows() != ambient_) throw Error(ErrorKind::DimensionMismatch, "basis rows differ from ambient dim");
}

SubspaceBasis range_basis(const Matrix& m, const Tolerances& tol) {
  const SvdData svd = full_svd(m);
  const Index r = numerical_rank(svd.singular_values, tol.rank_tol);
  return SubspaceBasis(svd.u.leftCols(r), m.rows());
}

SubspaceBasis complement_basis(const Matrix& m, const Tolerances& tol) {
  const SvdData svd = full_svd(m);
  const Index r = numerical_rank(svd.singular_values, tol.rank_tol);
  return SubspaceBasis(svd.u.rightCols(m.rows() - r), m.rows());
}

namespace {

void require_same_ambient(const SubspaceBasis& u, const SubspaceBasis& w) {
  if (u.ambient_dim() != w.ambient_dim()) {
    std::ostringstream msg;
    msg << "subspaces live in ambient dims " << u.ambient_dim() << " and " << w.ambient_dim();
    throw Error(ErrorKind::DimensionMismatch, msg.str());
  }
}

}  // namespace

std::vector<double> principal_angles(const SubspaceBasis& u, const SubspaceBasis& w) {
  require_same_ambient(u, w);
  if (u.dim() == 0 || w.dim() == 0) return {};
  const Matrix cross = u.q().adjoint() * w.q();
  const Eigen::VectorXd cosines = Eigen::JacobiSVD<Matrix>(cross).singularValues();
  std::vector<double> angles;
  angles.reserve(static_cast<std::size_t>(cosines.size()));
  for (Index i = 0; i < cosines.size(); ++i) angles.push_back(std::acos(std::clamp(cosines(i), 0.0, 1.0)));
  std::sort(angles.begin(), angles.end());
  return angles;
}

std::string_view to_string(DirectSum verdict) {
  switch (verdict) {
    case DirectSum::Holds: return "holds";
    case DirectSum::FailsIntersection: return "fails_intersection";
    case DirectSum::FailsSpan: return "fails_span";
  }
  return "fails_span";
}

DirectSum direct_sum_check(const SubspaceBasis& u, const SubspaceBasis& w, const Tolerances& tol) {
  require_same_ambient(u, w);
  const Index k = u.dim() + w.dim();
  const Index n = u.ambient_dim();
  if (k > n) return DirectSum::FailsIntersection;
  if (k == 0) return DirectSum::FailsSpan;
  Matrix stacked(n, k);
  stacked.leftCols(u.dim()) = u.q();
  stacked.rightCols(w.dim()) = w.q();
  const Eigen::VectorXd sv = Eigen::JacobiSVD<Matrix>(stacked).singularValues();
  if (sv(k - 1) <= tol.rank_tol) return DirectSum::FailsIntersection;
  return k < n ? DirectSum::FailsSpan : DirectSum::Holds;
}

Matrix pseudo_inverse(const Matrix& m, const Tolerances& tol) {
  const SvdData svd = full_svd(m);
  const Index r = numerical_rank(svd.singular_values, tol.rank_tol);
  const Eigen::VectorXd inv = svd.singular_values.head(r).cwiseInverse();
  return svd.v.leftCols(r) * inv.asDiagonal() * svd.u.leftCols(r).adjoint();
}

OperatorImageCheck operator_image_bundle(const Matrix& v, const Tolerances& tol) {
  if (v.rows() != v.cols()) {
    std::ostringstream msg;
    msg << "operator image needs square V, got " << v.rows() << "x" << v.cols();
    throw Error(ErrorKind::DimensionMismatch, msg.str());
  }
  OperatorBundle bundle = OperatorBundle::from_columns(v, tol);
  const double analysis_error = (bundle.analysis() - v.adjoint()).cwiseAbs().maxCoeff();
  const double frame_error = (bundle.frame_operator() - v * v.adjoint()).cwiseAbs().maxCoeff();
  return {std::move(bundle), analysis_error, frame_error};
}

FrameExtremes frame_extremes(const SequenceSpec& spec, Index dim, Index count, const Tolerances& tol) {
  if (dim < 1 || count < 1) throw Error(ErrorKind::InvalidInput, "dim and count must be positive");
  std::vector<SparseVector> terms;
  terms.reserve(static_cast<std::size_t>(count));
  Index bandwidth = 0;
  for (Index n = 1; n <= count; ++n) {
    SparseVector t = term_entries(spec, n);
    Index lo = dim, hi = -1;
    for (const auto& e : t) {
      if (e.index >= dim) {
        std::ostringstream msg;
        msg << spec.tag() << " member " << n << " does not fit in dim " << dim;
        throw Error(ErrorKind::SupportOverflow, msg.str());
      }
      lo = std::min(lo, e.index);
      hi = std::max(hi, e.index);
    }
    if (hi >= lo) bandwidth = std::max(bandwidth, hi - lo);
    terms.push_back(std::move(t));
  }

  Eigen::VectorXd eig;
  if (dim <= kDenseFrameLimit) {
    Matrix s = Matrix::Zero(dim, dim);
    for (const auto& t : terms) {
      for (const auto& a : t) {
        for (const auto& b : t) s(a.index, b.index) += a.value * std::conj(b.value);
      }
    }
    eig = Eigen::SelfAdjointEigenSolver<Matrix>(s, Eigen::EigenvaluesOnly).eigenvalues();
  } else if (bandwidth <= 1) {
    // A Hermitian tridiagonal matrix is unitarily similar to the real one
    // with the moduli of its off-diagonal entries.
    Eigen::VectorXd diag = Eigen::VectorXd::Zero(dim);
    Vector off = Vector::Zero(dim - 1);
    for (const auto& t : terms) {
      for (const auto& a : t) {
        diag(a.index) += std::norm(a.value);
        for (const auto& b : t) {
          if (b.index == a.index + 1) off(a.index) += b.value * std::conj(a.value);
        }
      }
    }
    const Eigen::VectorXd sub = off.cwiseAbs();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
    solver.computeFromTridiagonal(diag, sub, Eigen::EigenvaluesOnly);
    eig = solver.eigenvalues();
  } else {
    std::ostringstream msg;
    msg << "frame operator of dim " << dim << " with bandwidth " << bandwidth
        << " exceeds the dense limit " << kDenseFrameLimit;
    throw Error(ErrorKind::ResourceLimit, msg.str());
  }

  FrameExtremes out;
  out.upper = std::max(0.0, eig(eig.size() - 1));
  out.lower = count < dim ? 0.0 : std::max(0.0, eig(0));
  // Eigenvalues of S are squared singular values of C.
  out.complete = out.upper > 0 && std::sqrt(out.lower) > tol.rank_tol * std::sqrt(out.upper);
  return out;
}

}  // namespace seqforms
