#pragma once

// Materialized analysis / synthesis / frame / Gram operators of a truncated
// family, subspace geometry and SVD-based inverses.
//
// Conventions: for columns X (dim x count, column n-1 = xi_n)
//   C = X^*   (count x dim), (C f)_n = <f, xi_n>
//   D = X     (dim x count), D c = sum c_n xi_n
//   S = D C   (dim x dim)
//   G = C D   (count x count), G_ij = <xi_j, xi_i>
// Rank decisions keep singular values above rank_tol * sigma_max.

#include <vector>

#include "seqforms/core.hpp"
#include "seqforms/sequences.hpp"

namespace seqforms {

struct SvdData {
  Eigen::VectorXd singular_values;  // descending, length min(rows, cols)
  Matrix u;                         // rows x rows
  Matrix v;                         // cols x cols
};

SvdData full_svd(const Matrix& m);
Index numerical_rank(const Eigen::VectorXd& singular_values, double rank_tol);

class OperatorBundle {
 public:
  static OperatorBundle from_columns(Matrix columns, const Tolerances& tol);

  const Matrix& analysis() const { return c_; }
  const Matrix& synthesis() const { return d_; }
  const Matrix& frame_operator() const { return s_; }
  const Matrix& gram() const { return g_; }
  const SvdData& svd() const { return svd_; }

  Index dim() const { return d_.rows(); }
  Index count() const { return d_.cols(); }
  Index rank() const { return rank_; }
  double sigma_max() const;
  // Smallest of the dim singular values of C; 0 when count < dim.
  double sigma_min() const;
  // True when C is injective (numerical rank == dim).
  bool injective() const { return rank_ == dim(); }

 private:
  OperatorBundle() = default;
  Matrix c_, d_, s_, g_;
  SvdData svd_;
  Index rank_ = 0;
};

OperatorBundle build_bundle(const SequenceSpec& spec, Index dim, Index count, const Tolerances& tol);

class SubspaceBasis {
 public:
  SubspaceBasis(Matrix q, Index ambient_dim);

  const Matrix& q() const { return q_; }
  Index dim() const { return q_.cols(); }
  Index ambient_dim() const { return ambient_; }

 private:
  Matrix q_;
  Index ambient_;
};

SubspaceBasis range_basis(const Matrix& m, const Tolerances& tol);
// Orthonormal basis of R(M)^perp in the column space of M.
SubspaceBasis complement_basis(const Matrix& m, const Tolerances& tol);

// Angles in [0, pi/2] whose cosines are the singular values of U^* W,
// ascending.  There are min(dim U, dim W) of them.
std::vector<double> principal_angles(const SubspaceBasis& u, const SubspaceBasis& w);

enum class DirectSum { Holds, FailsIntersection, FailsSpan };
std::string_view to_string(DirectSum verdict);

// Whether U + W is a direct sum filling the ambient space.
DirectSum direct_sum_check(const SubspaceBasis& u, const SubspaceBasis& w, const Tolerances& tol);

Matrix pseudo_inverse(const Matrix& m, const Tolerances& tol);

struct OperatorImageCheck {
  OperatorBundle bundle;
  double analysis_error = 0;  // max |C - V^*|
  double frame_error = 0;     // max |S - V V^*|
};

// Family xi_n = V e_n for square V.
OperatorImageCheck operator_image_bundle(const Matrix& v, const Tolerances& tol);

// Extreme eigenvalues of the frame operator of the first `count` members in
// `dim` coordinates, without materializing C.  Dense for dim up to
// kDenseFrameLimit; tridiagonal frame operators are handled at any size.
struct FrameExtremes {
  double lower = 0;  // smallest eigenvalue of S
  double upper = 0;  // largest eigenvalue of S
  bool complete = false;
};

inline constexpr Index kDenseFrameLimit = 2048;

FrameExtremes frame_extremes(const SequenceSpec& spec, Index dim, Index count, const Tolerances& tol);

}  // namespace seqforms
