#pragma once

// Sequence classification: exact verdicts at a fixed truncation plus a
// heuristic ladder diagnosis of the infinite-index class.

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "seqforms/core.hpp"
#include "seqforms/operators.hpp"
#include "seqforms/sequences.hpp"

namespace seqforms {

enum class SequenceClass { Bessel, UpperSemiFrame, LowerSemiFrame, Frame, RieszBasis, None, Inconclusive };
std::string_view to_string(SequenceClass c);

struct AsymptoticDiagnosis {
  std::vector<Index> dims;
  std::vector<Index> counts;
  std::vector<double> lower_bounds;  // A(N)
  std::vector<double> upper_bounds;  // B(N)
  std::vector<bool> complete;
  ConvergenceVerdict bessel_trend;
  ConvergenceVerdict lower_trend;
  SequenceClass inferred_class = SequenceClass::Inconclusive;
  bool heuristic = true;
};

struct ClassificationReport {
  Index dim = 0;
  Index count = 0;
  bool complete = false;
  double bessel_bound = 0;  // B = sigma_max(C)^2
  double lower_bound = 0;   // A = sigma_min(C)^2 over the dim singular values, 0 if count < dim
  bool frame = false;
  // Smallest nonzero singular value of D, squared.
  double riesz_fischer_bound = 0;
  bool riesz_fischer = false;
  bool overcomplete = false;  // count > dim: columns must be dependent
  bool riesz_basis = false;
  // ||S^{-1}|| = 1 / A when A > 0.
  std::optional<double> inverse_frame_norm;
  std::vector<std::string> notes;
  std::optional<bool> biorthogonal_partner_checked;
  std::optional<AsymptoticDiagnosis> asymptotic;
};

ClassificationReport classify_finite(const OperatorBundle& bundle, const Tolerances& tol);

// Ladder diagnosis with dim = N and count = arity * N at each rung.
AsymptoticDiagnosis diagnose_asymptotic(const SequenceSpec& spec, const TruncationLadder& ladder,
                                        const Tolerances& tol);

// Decision table from the two bound trends.
SequenceClass infer_class(const ConvergenceVerdict& bessel_trend, const ConvergenceVerdict& lower_trend,
                          bool complete, bool square, const Tolerances& tol);

// Cross-Gram <xi_n, eta_m> equals the identity on the leading count x count window.
bool check_biorthogonal(const SequenceSpec& a, const SequenceSpec& b, Index dim, Index count,
                        const Tolerances& tol);

struct WeightedFrameBounds {
  double lower = 0;  // A_+
  double upper = 0;  // B_+
  Matrix dual_columns;  // xi'_n = R^{-1} xi_n
  // max over sampled f and all n of |<f, xi_n> - <f, xi'_n>_+|
  double identity_error = 0;
};

// Frame bounds of {R^{-1} xi_n} in the inner product <f, g>_+ = <f, R g>.
WeightedFrameBounds weighted_space_frame(const SequenceSpec& spec, const Matrix& r, Index dim, Index count,
                                         const Tolerances& tol, unsigned seed = 7);

}  // namespace seqforms
