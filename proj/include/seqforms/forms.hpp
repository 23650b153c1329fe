#pragma once

// The sesquilinear forms of one or two sequences:
//   Omega_{xi,eta}(f, g) = sum_n <f, xi_n> <eta_n, g>
//   Theta_xi(c, d)       = sum_{i,j} c_i conj(d_j) <xi_i, xi_j>
// together with inf-sup constants, the 0-closedness decision (by the
// lower-semi-frame + direct-sum route and by invertibility of the
// associated operator C_eta^* C_xi) and lambda-closedness for weighted
// Riesz pairs.

#include <optional>
#include <string>
#include <vector>

#include "seqforms/core.hpp"
#include "seqforms/operators.hpp"
#include "seqforms/sequences.hpp"

namespace seqforms {

struct FormSeries {
  Complex value;  // partial sum at the top rung
  ScalarSeriesProbe probe;
};

// Ordered partial sums of Omega_{xi,eta}(f, g).  f and g are zero beyond their dim.
FormSeries eval_form_pair(const SequenceSpec& xi, const SequenceSpec& eta, const CoeffVector& f,
                          const CoeffVector& g, const TruncationLadder& ladder, const Tolerances& tol);

// Theta_xi(c, d) = <G c, d> = <D c, D d>.
Complex eval_gram_form(const SequenceSpec& xi, std::span<const Complex> c, std::span<const Complex> d,
                       Index dim, Index count, const Tolerances& tol);

struct InfSup {
  double c1 = 0;  // inf over unit u in R(C_xi) of |P_{R(C_eta)} u|
  double c2 = 0;  // inf over unit v in R(C_eta) of |P_{R(C_xi)} v|
  std::vector<double> angles;
  // C_xi or C_eta has a kernel, so |C f| is only a norm on the quotient.
  bool degenerate_norm = false;
};

InfSup infsup_constants(const OperatorBundle& xi, const OperatorBundle& eta, const Tolerances& tol);

// C_eta^* C_xi, i.e. f -> sum_n <f, xi_n> eta_n.
Matrix associated_operator(const OperatorBundle& xi, const OperatorBundle& eta);

struct FormAssessment {
  Index dim = 0;
  Index count = 0;
  Index null_dim_left = 0;   // dim N(Omega)
  Index null_dim_right = 0;  // dim N(Omega^*)
  double c1 = 0;
  double c2 = 0;
  double max_principal_angle = 0;
  bool degenerate_norm = false;
  bool lower_xi = false;   // C_xi injective
  bool lower_eta = false;  // C_eta injective
  DirectSum direct_sum = DirectSum::FailsSpan;  // R(C_xi) + R(C_eta)^perp
  bool route_b = false;
  bool assoc_invertible = false;
  bool zero_closed = false;
  bool routes_agree = false;
  Matrix associated_operator;
  std::optional<double> assoc_inverse_norm;
  std::string disclaimer = "finite truncation: verdicts are exact for the truncated families only";
};

FormAssessment zero_closed_check(const OperatorBundle& xi, const OperatorBundle& eta, const Tolerances& tol);
FormAssessment zero_closed_check(const SequenceSpec& xi, const SequenceSpec& eta, Index dim, Index count,
                                 const Tolerances& tol);

// phi_n = V e_n with invertible V, psi_n = (V^*)^{-1} e_n its biorthogonal
// dual, and the pair xi = phi, eta = {alpha_n psi_n}.  The associated
// operator is H = (V^*)^{-1} diag(alpha) V^*.
struct WeightedRieszPair {
  Matrix phi;
  Matrix psi;
  std::vector<Complex> alpha;

  Matrix xi() const { return phi; }
  Matrix eta() const;
  Matrix associated() const;
  Index dim() const { return phi.rows(); }
};

WeightedRieszPair make_weighted_riesz(const Matrix& v, std::vector<Complex> alpha, const Tolerances& tol);
std::vector<Complex> weights_from_rule(const ScalarRule& rule, Index count);

struct LambdaVerdict {
  Complex lambda;
  double distance = 0;  // to {alpha_n} union declared accumulation points
  bool lambda_closed = false;
  bool accumulation_hit = false;  // nearest point is a declared accumulation point only
  bool truncation_invertible = false;  // H - lambda I invertible at truncation
  bool agrees = false;  // truncation check matches, or the miss is an accumulation point
};

// Accumulation points of {alpha_n} are not inferred; pass them explicitly.
std::vector<LambdaVerdict> lambda_region_weighted(const WeightedRieszPair& pair, std::span<const Complex> probes,
                                                  std::span<const Complex> accumulation_points,
                                                  const Tolerances& tol);
// Same with V = I.
std::vector<LambdaVerdict> lambda_region_weighted(std::span<const Complex> alpha, std::span<const Complex> probes,
                                                  std::span<const Complex> accumulation_points,
                                                  const Tolerances& tol);

struct SolvabilityShift {
  std::vector<Complex> sigma;
  std::vector<Complex> shifted;  // alpha_n + sigma_n
  double min_shifted_modulus = 0;
  bool bounded_below = false;   // |alpha_n + sigma_n| >= 1 for all n
  bool shifted_zero_closed = false;
};

// sigma_n = 1 - alpha_n when |alpha_n| <= 1, else 0; the shifted form uses
// xi' = {xi_1, conj(sigma_1) xi_1, ...} and eta' = {eta_1, psi_1, ...}.
SolvabilityShift solvability_shift(const WeightedRieszPair& pair, const Tolerances& tol);
SolvabilityShift solvability_shift(std::span<const Complex> alpha, const Tolerances& tol);
std::vector<Complex> shift_table(std::span<const Complex> alpha);

}  // namespace seqforms
