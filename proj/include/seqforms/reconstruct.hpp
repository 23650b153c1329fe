#pragma once

// Dual families and the reconstruction formulas they support.
//
// Every DualSystem reconstructs through
//   f ~ sum_n <f, primal_n> dual_n
// so the pairing order is fixed by which family is stored as `primal`:
//   canonical_lower     primal = xi,  dual = S^{-1} xi
//   reproducing_left    primal = eta, dual = (T^{-1})^* xi
//   reproducing_right   primal = xi,  dual = T^{-1} eta
// with T = C_eta^* C_xi the associated operator.

#include <string_view>
#include <utility>

#include "seqforms/core.hpp"
#include "seqforms/forms.hpp"
#include "seqforms/operators.hpp"

namespace seqforms {

enum class DualKind { CanonicalLower, ReproducingLeft, ReproducingRight };
std::string_view to_string(DualKind kind);

struct DualSystem {
  Matrix primal;
  Matrix dual;
  DualKind kind = DualKind::CanonicalLower;
  // Exact Bessel bound of the dual family at truncation, sigma_max(C_dual)^2.
  double bessel_bound_of_dual = 0;
};

// dual_n = S^{-1} xi_n.  Throws NotLowerSemiFrame when S is singular.
DualSystem canonical_dual(const OperatorBundle& bundle, const Tolerances& tol);

struct Reconstruction {
  Vector value;
  double residual = 0;  // |value - f|
};

Reconstruction reconstruct_with(const DualSystem& system, const CoeffVector& f, const Tolerances& tol);

// Left and right duals of a 0-closed pair.  Throws NotZeroClosed.
std::pair<DualSystem, DualSystem> reproducing_pair_duals(const FormAssessment& assessment,
                                                         const OperatorBundle& xi,
                                                         const OperatorBundle& eta, const Tolerances& tol);

}  // namespace seqforms
