#include "seqforms/scenarios.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <random>
#include <sstream>

#include <Eigen/Eigenvalues>
#include <Eigen/QR>

#include "seqforms/classify.hpp"
#include "seqforms/forms.hpp"
#include "seqforms/operators.hpp"
#include "seqforms/reconstruct.hpp"
#include "seqforms/sequences.hpp"

namespace seqforms {

std::string_view to_string(ClaimStatus status) {
  switch (status) {
    case ClaimStatus::Pass: return "pass";
    case ClaimStatus::Fail: return "fail";
    case ClaimStatus::Diagnostic: return "diagnostic";
  }
  return "fail";
}

bool ScenarioReport::all_passed() const {
  return std::none_of(claims.begin(), claims.end(), [](const Claim& c) { return c.status == ClaimStatus::Fail; });
}

const Claim& ScenarioReport::claim(std::string_view id) const {
  for (const auto& c : claims) {
    if (c.id == id) return c;
  }
  throw Error(ErrorKind::InvalidInput, "scenario " + scenario_id + " has no claim " + std::string(id));
}

std::optional<double> ScenarioReport::number(std::string_view claim_id, std::string_view evidence) const {
  for (const auto& e : claim(claim_id).evidence) {
    if (e.name == evidence) {
      if (const double* d = std::get_if<double>(&e.value)) return *d;
    }
  }
  return std::nullopt;
}

namespace {

using Kind = ConvergenceVerdict::Kind;
using Rng = std::mt19937_64;

// Coordinates of an infinite vector, 0-based.
using Coords = std::function<Complex(Index)>;

constexpr double kEps = std::numeric_limits<double>::epsilon();

Complex pair_with(const Coords& f, const SparseVector& v) {
  Complex s = 0.0;
  for (const auto& e : v) s += f(e.index) * std::conj(e.value);
  return s;
}

Vector random_unit(Rng& rng, Index dim) {
  std::normal_distribution<double> gauss;
  Vector v(dim);
  for (Index i = 0; i < dim; ++i) v(i) = Complex(gauss(rng), gauss(rng));
  return v / v.norm();
}

Matrix random_matrix(Rng& rng, Index rows, Index cols) {
  std::normal_distribution<double> gauss;
  Matrix m(rows, cols);
  for (Index j = 0; j < cols; ++j) {
    for (Index i = 0; i < rows; ++i) m(i, j) = Complex(gauss(rng), gauss(rng));
  }
  return m;
}

Matrix random_unitary(Rng& rng, Index dim) {
  const Matrix g = random_matrix(rng, dim, dim);
  Eigen::HouseholderQR<Matrix> qr(g);
  return qr.householderQ() * Matrix::Identity(dim, dim);
}

struct ClaimBuilder {
  Claim c;

  ClaimBuilder(std::string id, std::string description, std::string source) {
    c.id = std::move(id);
    c.description = std::move(description);
    c.source = std::move(source);
  }
  ClaimBuilder& num(std::string name, double v) {
    c.evidence.push_back({std::move(name), v});
    return *this;
  }
  ClaimBuilder& text(std::string name, std::string v) {
    c.evidence.push_back({std::move(name), std::move(v)});
    return *this;
  }
  ClaimBuilder& flag(std::string name, bool v) {
    c.evidence.push_back({std::move(name), v});
    return *this;
  }
  ClaimBuilder& verdict(const std::string& prefix, const ConvergenceVerdict& v) {
    text(prefix + "_verdict", std::string(to_string(v.kind)));
    if (v.limit_estimate) num(prefix + "_limit", std::abs(*v.limit_estimate));
    if (v.growth_exponent) num(prefix + "_growth_exponent", *v.growth_exponent);
    if (v.cauchy_gap) num(prefix + "_cauchy_gap", *v.cauchy_gap);
    return *this;
  }
  Claim required(bool ok) {
    c.status = ok ? ClaimStatus::Pass : ClaimStatus::Fail;
    c.witnessed = ok;
    return std::move(c);
  }
  Claim diagnostic(bool witnessed) {
    c.status = ClaimStatus::Diagnostic;
    c.witnessed = witnessed;
    return std::move(c);
  }
};

TruncationLadder vector_ladder(const ScenarioOptions& o) {
  return o.ladder ? *o.ladder : TruncationLadder({100, 1000, 10000});
}

TruncationLadder dense_ladder(const ScenarioOptions& o) {
  TruncationLadder l = o.dense_ladder ? *o.dense_ladder : o.ladder ? *o.ladder : TruncationLadder({8, 16, 32});
  if (l.top() > kMaxDenseScenarioDim) {
    std::ostringstream msg;
    msg << "dense scenario dim " << l.top() << " exceeds " << kMaxDenseScenarioDim;
    throw Error(ErrorKind::ResourceLimit, msg.str());
  }
  return l;
}

double series_verdict_gap(const ConvergenceVerdict& v) { return v.cauchy_gap.value_or(0.0); }

// ---------------------------------------------------------------------------

ScenarioReport finite_difference(const ScenarioOptions& o) {
  ScenarioReport r;
  const TruncationLadder ladder = vector_ladder(o);
  const SequenceSpec xi = SequenceSpec::finite_difference();
  const Coords f = [](Index i) { return Complex(1.0 / static_cast<double>(i + 1)); };
  const auto coeff = [&](Index n) { return pair_with(f, term_entries(xi, n)); };

  // |<f, xi_1>| = 1 and |<f, xi_n>| = 1/(n-1) afterwards.
  const double target = 1.0 + std::numbers::pi * std::numbers::pi / 6.0;
  const ScalarSeriesProbe norm_probe = probe_series([&](Index n) { return Complex(std::norm(coeff(n))); }, ladder, o.tol);
  const double limit = norm_probe.verdict.limit_estimate ? norm_probe.verdict.limit_estimate->real() : 0.0;
  r.claims.push_back(ClaimBuilder("analysis-norm-converges",
                                  "|C_xi f|^2 converges to 1 + pi^2/6 for f_n = 1/n",
                                  "f lies in the domain of T_xi")
                         .verdict("series", norm_probe.verdict)
                         .num("target", target)
                         .num("error", std::abs(limit - target))
                         .required(norm_probe.verdict.kind == Kind::Converged && std::abs(limit - target) < 1e-3));

  // S_xi partial sums: e_1 -> 3, e_j -> -1/(j(j-1)) for 1 < j < k, e_k -> -k/(k-1).
  double closed_form_error = 0.0;
  Vector top_sum;
  const VectorSeriesProbe s_probe = probe_vector_series(
      [&](Index n) {
        SparseVector t = term_entries(xi, n);
        const Complex c = coeff(n);
        for (auto& e : t) e.value *= c;
        return t;
      },
      ladder, o.tol,
      [&](Index k, const Vector& s) {
        Vector expected = Vector::Zero(k);
        expected(0) = k == 1 ? 1.0 : 3.0;
        for (Index j = 2; j < k; ++j) expected(j - 1) = -1.0 / (static_cast<double>(j) * (j - 1));
        if (k > 1) expected(k - 1) = -static_cast<double>(k) / static_cast<double>(k - 1);
        closed_form_error = std::max(closed_form_error, (s - expected).cwiseAbs().maxCoeff());
        top_sum = s;
      });
  const double gap = series_verdict_gap(s_probe.verdict);
  r.claims.push_back(ClaimBuilder("frame-operator-diverges",
                                  "partial sums of S_xi f oscillate with a persistent gap",
                                  "f lies outside the domain of S_xi")
                         .verdict("series", s_probe.verdict)
                         .num("closed_form_error", closed_form_error)
                         .num("top_coefficient", std::abs(top_sum(top_sum.size() - 1)))
                         .required(s_probe.verdict.kind == Kind::Diverged && gap >= 0.5 &&
                                   closed_form_error <= o.tol.eq_tol));

  // The weak functionals converge to <h, g> with h = 3 e_1 - sum_{n>1} e_n / (n(n-1)).
  long double h2 = 9.0L;
  for (Index n = 2; n <= 1000000; ++n) {
    const long double c = 1.0L / (static_cast<long double>(n) * (n - 1));
    h2 += c * c;
  }
  const double h_norm = std::sqrt(static_cast<double>(h2));
  Rng rng(o.seed);
  double sup = 0.0;
  for (const Index m : ladder.sizes()) {
    const Index support = std::min<Index>(m, top_sum.size() - 1);
    for (int trial = 0; trial < 32; ++trial) {
      const Vector g = random_unit(rng, support);
      sup = std::max(sup, std::abs(g.dot(top_sum.head(support))));
    }
  }
  r.claims.push_back(ClaimBuilder("weak-functional-bounded",
                                  "g -> sum <f, xi_n><xi_n, g> stays bounded on sampled unit g",
                                  "f lies in the domain of T_xi (weak form)")
                         .num("sampled_sup", sup)
                         .num("bound", h_norm)
                         .diagnostic(sup <= h_norm + o.tol.eq_tol));
  return r;
}

ScenarioReport interleaved_lower(const ScenarioOptions& o) {
  ScenarioReport r;
  const TruncationLadder ladder = vector_ladder(o);
  const SequenceSpec xi = SequenceSpec::finite_difference();
  const SequenceSpec xi_prime = SequenceSpec::interleave(SequenceSpec::onb(), xi);
  Rng rng(o.seed);

  double worst_identity = 0.0;
  double min_lower = std::numeric_limits<double>::infinity();
  double worst_lower_margin = std::numeric_limits<double>::infinity();
  for (const Index n : ladder.sizes()) {
    std::vector<SparseVector> base, inter;
    for (Index k = 1; k <= n; ++k) base.push_back(term_entries(xi, k));
    for (Index k = 1; k <= 2 * n; ++k) inter.push_back(term_entries(xi_prime, k));
    for (int trial = 0; trial < 100; ++trial) {
      const CoeffVector f(random_unit(rng, n));
      long double lhs = 0, rhs = 0;
      for (const auto& t : inter) lhs += std::norm(inner_product(f, t));
      for (const auto& t : base) rhs += std::norm(inner_product(f, t));
      rhs += static_cast<long double>(f.coeffs().squaredNorm());
      const double rel = static_cast<double>(std::abs(lhs - rhs) / std::max(lhs, 1.0L));
      worst_identity = std::max(worst_identity, rel);
    }
    const FrameExtremes ex = frame_extremes(xi_prime, n, 2 * n, o.tol);
    min_lower = std::min(min_lower, ex.lower);
    // Eigenvalues carry absolute error of order eps * |S|.
    worst_lower_margin = std::min(worst_lower_margin, ex.lower - (1.0 - 64.0 * kEps * ex.upper));
  }
  r.claims.push_back(ClaimBuilder("analysis-identity",
                                  "|C_xi' f|^2 = |C_xi f|^2 + |f|^2 at matched truncations (relative error)",
                                  "interleaving an orthonormal basis adds |f|^2")
                         .num("max_relative_error", worst_identity)
                         .required(worst_identity <= 1e-12));
  r.claims.push_back(ClaimBuilder("lower-bound-at-least-one", "A >= 1 at every rung",
                                  "the interleaved family is a lower semi-frame with bound 1")
                         .num("min_lower_bound", min_lower)
                         .required(worst_lower_margin >= 0.0));
  return r;
}

ScenarioReport dc_vs_s(const ScenarioOptions& o) {
  ScenarioReport r;
  const TruncationLadder ladder = vector_ladder(o);
  const SequenceSpec xi = SequenceSpec::paired_double(PatternKind::Xi);
  const SequenceSpec eta = SequenceSpec::paired_double(PatternKind::Eta);
  const Coords f = [](Index i) { return Complex(1.0 / static_cast<double>(i + 1)); };

  std::vector<double> distance;
  double worst_matched = 0.0;
  const long double zeta2 = std::numbers::pi_v<long double> * std::numbers::pi_v<long double> / 6.0L;
  const VectorSeriesProbe rec = probe_vector_series(
      [&](Index n) {
        SparseVector t = term_entries(eta, n);
        const Complex c = pair_with(f, term_entries(xi, n));
        for (auto& e : t) e.value *= c;
        return t;
      },
      ladder, o.tol,
      [&](Index n, const Vector& s) {
        const Index k = (n + 1) / 2;
        long double head = 0;
        double matched2 = 0;
        for (Index j = 0; j < k; ++j) {
          const double fj = 1.0 / static_cast<double>(j + 1);
          head += static_cast<long double>(fj) * fj;
          const Complex sj = j < s.size() ? s(j) : Complex(0.0);
          matched2 += std::norm(sj - fj);
        }
        worst_matched = std::max(worst_matched, std::sqrt(matched2));
        const double tail2 = static_cast<double>(std::max(zeta2 - head, 0.0L));
        distance.push_back(std::sqrt(matched2 + tail2));
      });
  const ConvergenceVerdict to_f = probe_trend(ladder.sizes(), distance, o.tol);
  const bool reaches_f = to_f.kind == Kind::Converged && to_f.limit_estimate && *to_f.limit_estimate == Complex(0.0);
  r.claims.push_back(ClaimBuilder("pair-reconstruction-converges",
                                  "sum <f, xi_n> eta_n converges to f for f_n = 1/n",
                                  "S_{xi,eta} is the identity")
                         .verdict("distance", to_f)
                         .num("top_distance", distance.back())
                         .num("max_matched_residual", worst_matched)
                         .verdict("series", rec.verdict)
                         .required(reaches_f && worst_matched <= o.tol.eq_tol));

  const ScalarSeriesProbe norm_probe = probe_series(
      [&](Index n) { return Complex(std::norm(pair_with(f, term_entries(xi, n)))); }, ladder, o.tol);
  const double p = norm_probe.verdict.growth_exponent.value_or(0.0);
  r.claims.push_back(ClaimBuilder("analysis-norm-diverges",
                                  "|C_xi f|^2 grows linearly (each pair adds 1)",
                                  "the domain of D_eta C_xi is that of C_xi, a proper subspace")
                         .verdict("series", norm_probe.verdict)
                         .required(norm_probe.verdict.kind == Kind::Diverged && std::abs(p - 1.0) <= 0.1));
  return r;
}

ScenarioReport telescoping_pair(const ScenarioOptions& o) {
  ScenarioReport r;
  const TruncationLadder ladder = vector_ladder(o);
  const SequenceSpec xi = SequenceSpec::triple(PatternKind::Xi);
  const SequenceSpec eta = SequenceSpec::triple(PatternKind::Eta);
  Rng rng(o.seed);

  double worst = 0.0;
  for (const Index n : ladder.sizes()) {
    std::vector<SparseVector> xs, es;
    for (Index k = 1; k <= 3 * n; ++k) {
      xs.push_back(term_entries(xi, k));
      es.push_back(term_entries(eta, k));
    }
    for (int trial = 0; trial < 8; ++trial) {
      const CoeffVector f(random_unit(rng, n));
      const CoeffVector g(random_unit(rng, n));
      Complex omega = 0.0;
      for (std::size_t k = 0; k < xs.size(); ++k) omega += inner_product(f, xs[k]) * std::conj(inner_product(g, es[k]));
      worst = std::max(worst, std::abs(omega - inner_product(f, g)));
    }
  }
  r.claims.push_back(ClaimBuilder("form-is-inner-product",
                                  "Omega partial sums at 3N terms equal the truncated <f, g>",
                                  "Omega_{xi,eta} is the identity form")
                         .num("max_error", worst)
                         .required(worst <= o.tol.eq_tol));

  const auto pair_stream = [&](Coords f) {
    return probe_vector_series(
        [&, f](Index n) {
          SparseVector t = term_entries(eta, n);
          const Complex c = pair_with(f, term_entries(xi, n));
          for (auto& e : t) e.value *= c;
          return t;
        },
        ladder, o.tol);
  };
  const VectorSeriesProbe on_e1 = pair_stream([](Index i) { return Complex(i == 0 ? 1.0 : 0.0); });
  const VectorSeriesProbe off_e1 = pair_stream([](Index i) {
    return Complex(i == 0 ? 0.0 : 1.0 / (static_cast<double>(i + 1) * static_cast<double>(i + 1)));
  });
  r.claims.push_back(ClaimBuilder("domain-defect",
                                  "S_{xi,eta} f diverges for f = e_1 and converges for f orthogonal to e_1",
                                  "the domain of S_{xi,eta} is the orthogonal complement of e_1")
                         .verdict("e1", on_e1.verdict)
                         .verdict("orthogonal", off_e1.verdict)
                         .required(on_e1.verdict.kind == Kind::Diverged && off_e1.verdict.kind == Kind::Converged));

  // Omega = identity and xi Bessel with bound B force A_eta >= 1/B (and symmetrically).
  bool holds = true;
  double worst_margin = std::numeric_limits<double>::infinity();
  for (const Index d : {Index{8}, Index{16}, Index{32}, Index{64}}) {
    const OperatorBundle bx = build_bundle(xi, d, 3 * d, o.tol);
    const OperatorBundle be = build_bundle(eta, d, 3 * d, o.tol);
    const double bxi = bx.sigma_max() * bx.sigma_max();
    const double beta = be.sigma_max() * be.sigma_max();
    const double axi = bx.sigma_min() * bx.sigma_min();
    const double aeta = be.sigma_min() * be.sigma_min();
    const double margin = std::min(aeta - 1.0 / bxi, axi - 1.0 / beta);
    worst_margin = std::min(worst_margin, margin);
    holds = holds && margin >= -o.tol.eq_tol;
  }
  r.claims.push_back(ClaimBuilder("dual-lower-bound",
                                  "A_eta >= 1/B_xi and A_xi >= 1/B_eta at truncations 8..64",
                                  "Bessel partner of an identity form is a lower semi-frame")
                         .num("min_margin", worst_margin)
                         .diagnostic(holds));
  return r;
}

ScenarioReport weight_inverse_pair(const ScenarioOptions& o) {
  ScenarioReport r;
  const TruncationLadder ladder = dense_ladder(o);
  const SequenceSpec xi = SequenceSpec::diagonal(ScalarRule::identity());
  const SequenceSpec eta = SequenceSpec::diagonal(ScalarRule::reciprocal());
  Rng rng(o.seed);

  double t_error = 0, left_error = 0, right_error = 0, residual = 0, canonical_error = 0;
  bool zero_closed = true;
  for (const Index d : ladder.sizes()) {
    const OperatorBundle bx = build_bundle(xi, d, d, o.tol);
    const OperatorBundle be = build_bundle(eta, d, d, o.tol);
    const FormAssessment a = zero_closed_check(bx, be, o.tol);
    zero_closed = zero_closed && a.zero_closed && a.routes_agree;
    t_error = std::max(t_error, (a.associated_operator - Matrix::Identity(d, d)).cwiseAbs().maxCoeff());
    if (!a.zero_closed) continue;
    const auto [left, right] = reproducing_pair_duals(a, bx, be, o.tol);
    left_error = std::max(left_error, (left.dual - bx.synthesis()).cwiseAbs().maxCoeff());
    right_error = std::max(right_error, (right.dual - be.synthesis()).cwiseAbs().maxCoeff());
    const DualSystem canon = canonical_dual(bx, o.tol);
    canonical_error = std::max(canonical_error, (canon.dual - be.synthesis()).cwiseAbs().maxCoeff());
    for (int trial = 0; trial < 16; ++trial) {
      const CoeffVector f(random_unit(rng, d));
      residual = std::max({residual, reconstruct_with(left, f, o.tol).residual,
                           reconstruct_with(right, f, o.tol).residual});
    }
  }
  r.claims.push_back(ClaimBuilder("associated-identity", "C_eta^* C_xi = I at every truncation",
                                  "weights n and 1/n cancel termwise")
                         .num("max_error", t_error)
                         .required(t_error <= 4 * kEps));
  r.claims.push_back(ClaimBuilder("zero-closed", "the pair form is 0-closed and both decision routes agree",
                                  "0-closedness via lower semi-frames and a direct sum")
                         .flag("zero_closed", zero_closed)
                         .required(zero_closed));
  r.claims.push_back(ClaimBuilder("reproducing-duals",
                                  "left dual = {n e_n}, right dual = {e_n / n}, both reconstruct f",
                                  "weak reconstruction formulas of a reproducing pair")
                         .num("left_dual_error", left_error)
                         .num("right_dual_error", right_error)
                         .num("max_residual", residual)
                         .required(zero_closed && left_error <= o.tol.eq_tol && right_error <= o.tol.eq_tol &&
                                   residual < 1e-12));
  r.claims.push_back(ClaimBuilder("canonical-dual", "canonical dual of {n e_n} is {e_n / n}",
                                  "canonical dual of a lower semi-frame")
                         .num("max_error", canonical_error)
                         .required(zero_closed && canonical_error <= o.tol.eq_tol));
  return r;
}

double multiset_distance(std::vector<Complex> expected, const Eigen::VectorXcd& found) {
  std::vector<bool> used(static_cast<std::size_t>(found.size()), false);
  double worst = 0.0;
  for (const Complex a : expected) {
    double best = std::numeric_limits<double>::infinity();
    Index pick = -1;
    for (Index i = 0; i < found.size(); ++i) {
      if (used[static_cast<std::size_t>(i)]) continue;
      const double d = std::abs(found(i) - a);
      if (d < best) {
        best = d;
        pick = i;
      }
    }
    if (pick < 0) return std::numeric_limits<double>::infinity();
    used[static_cast<std::size_t>(pick)] = true;
    worst = std::max(worst, best);
  }
  return worst;
}

ScenarioReport weighted_riesz(const ScenarioOptions& o) {
  ScenarioReport r;
  Rng rng(o.seed);
  Index d = o.dim.value_or(16);
  if (o.v) d = o.v->rows();
  else if (o.alpha) d = static_cast<Index>(o.alpha->size());
  if (d < 1 || d > kMaxDenseScenarioDim) throw Error(ErrorKind::InvalidInput, "weighted Riesz dim out of range");
  const Matrix v = o.v ? *o.v : random_unitary(rng, d);
  std::vector<Complex> alpha;
  if (o.alpha) {
    alpha = *o.alpha;
  } else {
    for (Index n = 1; n <= d; ++n) alpha.emplace_back(static_cast<double>(n));
  }
  const WeightedRieszPair pair = make_weighted_riesz(v, alpha, o.tol);
  const double unitary_error = (v.adjoint() * v - Matrix::Identity(d, d)).cwiseAbs().maxCoeff();
  const bool unitary = unitary_error <= o.tol.eq_tol * static_cast<double>(d);

  const Matrix h = pair.associated();
  const Eigen::VectorXcd eig = Eigen::ComplexEigenSolver<Matrix>(h, false).eigenvalues();
  const double spectrum_error = multiset_distance(alpha, eig);
  ClaimBuilder spectrum("spectrum", "eigenvalues of C_eta^* C_xi are {alpha_n} as a multiset",
                        "H is similar to diag(alpha)");
  spectrum.num("max_error", spectrum_error).flag("unitary_v", unitary);
  r.claims.push_back(unitary ? spectrum.required(spectrum_error <= 1e-8) : spectrum.diagnostic(spectrum_error <= 1e-8));

  std::vector<Complex> probes = {0.0, -1.0, Complex(0.0, 1.0), Complex(static_cast<double>(d) + 10.0, 0.0)};
  for (const Complex a : alpha) {
    probes.push_back(a);
    probes.push_back(a + 0.5);
  }
  const std::vector<LambdaVerdict> lambdas = lambda_region_weighted(pair, probes, {}, o.tol);
  const auto agreeing = std::count_if(lambdas.begin(), lambdas.end(), [](const LambdaVerdict& l) { return l.agrees; });
  r.claims.push_back(ClaimBuilder("lambda-region",
                                  "lambda-closedness matches invertibility of H - lambda I on every probe",
                                  "the resolvent set is the complement of the closure of {alpha_n}")
                         .num("probes", static_cast<double>(lambdas.size()))
                         .num("agreeing", static_cast<double>(agreeing))
                         .required(agreeing == static_cast<long>(lambdas.size())));

  const SolvabilityShift shift = solvability_shift(pair, o.tol);
  r.claims.push_back(ClaimBuilder("solvability-shift",
                                  "shift sigma makes |alpha_n + sigma_n| >= 1 and the shifted form 0-closed",
                                  "the form is solvable")
                         .num("min_shifted_modulus", shift.min_shifted_modulus)
                         .flag("shifted_zero_closed", shift.shifted_zero_closed)
                         .required(shift.bounded_below && shift.shifted_zero_closed));

  double inf_alpha = std::numeric_limits<double>::infinity();
  for (const Complex a : alpha) inf_alpha = std::min(inf_alpha, std::abs(a));
  const FormAssessment a = zero_closed_check(OperatorBundle::from_columns(pair.xi(), o.tol),
                                             OperatorBundle::from_columns(pair.eta(), o.tol), o.tol);
  const bool expect_closed = inf_alpha > o.tol.eq_tol;
  r.claims.push_back(ClaimBuilder("zero-closed-iff", "0-closed exactly when inf |alpha_n| > 0",
                                  "0-closedness of the weighted form")
                         .num("inf_alpha", inf_alpha)
                         .flag("zero_closed", a.zero_closed)
                         .required(a.zero_closed == expect_closed));

  ClaimBuilder rec("reconstruction",
                   "f = sum alpha_n <f, H^{-*} phi_n> psi_n and f = sum conj(alpha_n) <f, H^{-1} psi_n> phi_n",
                   "reconstruction through the weighted operator");
  if (!expect_closed) {
    r.claims.push_back(rec.text("skipped", "inf |alpha_n| = 0").diagnostic(false));
    return r;
  }
  const Eigen::PartialPivLU<Matrix> lu(h);
  const Eigen::PartialPivLU<Matrix> lu_adj(h.adjoint());
  const Matrix h_inv_psi = lu.solve(pair.psi);        // H^{-1} psi_n
  const Matrix h_adj_inv_phi = lu_adj.solve(pair.phi);  // H^{-*} phi_n
  double worst = 0.0;
  for (int trial = 0; trial < 16; ++trial) {
    const Vector f = random_unit(rng, d);
    Vector first = Vector::Zero(d), second = Vector::Zero(d);
    for (Index n = 0; n < d; ++n) {
      const auto k = static_cast<std::size_t>(n);
      first += alpha[k] * h_adj_inv_phi.col(n).dot(f) * pair.psi.col(n);
      second += std::conj(alpha[k]) * h_inv_psi.col(n).dot(f) * pair.phi.col(n);
    }
    worst = std::max({worst, (first - f).norm(), (second - f).norm()});
  }
  r.claims.push_back(rec.num("max_residual", worst).required(worst <= o.tol.eq_tol));
  return r;
}

ScenarioReport operator_image(const ScenarioOptions& o) {
  ScenarioReport r;
  Rng rng(o.seed);
  const Index d = o.dim.value_or(8);
  if (d < 1 || d > kMaxDenseScenarioDim) throw Error(ErrorKind::InvalidInput, "operator-image dim out of range");
  if (o.instances < 1) throw Error(ErrorKind::InvalidInput, "operator-image needs at least one instance");
  double c_err = 0, s_err = 0, t_err = 0;
  for (Index i = 0; i < o.instances; ++i) {
    const Matrix v = random_matrix(rng, d, d);
    const Matrix z = random_matrix(rng, d, d);
    const OperatorImageCheck check = operator_image_bundle(v, o.tol);
    c_err = std::max(c_err, check.analysis_error);
    s_err = std::max(s_err, check.frame_error);
    const OperatorBundle zb = operator_image_bundle(z, o.tol).bundle;
    t_err = std::max(t_err, (associated_operator(check.bundle, zb) - z * v.adjoint()).cwiseAbs().maxCoeff());
  }
  r.claims.push_back(ClaimBuilder("analysis-adjoint", "C = V^* for xi_n = V e_n", "image of an orthonormal basis")
                         .num("max_error", c_err)
                         .required(c_err <= o.tol.eq_tol));
  r.claims.push_back(ClaimBuilder("frame-operator", "S = V V^*", "image of an orthonormal basis")
                         .num("max_error", s_err)
                         .required(s_err <= o.tol.eq_tol));
  r.claims.push_back(ClaimBuilder("pair-operator", "C_eta^* C_xi = Z V^* for eta_n = Z e_n",
                                  "operator associated to a pair of images")
                         .num("max_error", t_err)
                         .required(t_err <= o.tol.eq_tol));
  return r;
}

using Runner = ScenarioReport (*)(const ScenarioOptions&);

struct Entry {
  ScenarioInfo info;
  Runner run;
};

const std::vector<Entry>& catalog() {
  static const std::vector<Entry> entries = {
      {{"finite-difference", "xi_n = n(e_n - e_{n-1}): T_xi defined where S_xi is not", false}, finite_difference},
      {{"interleaved-lower", "ONB interleaved with finite differences is a lower semi-frame", false},
       interleaved_lower},
      {{"dc-vs-s", "paired doubling: S_{xi,eta} = I while C_xi is unbounded", false}, dc_vs_s},
      {{"telescoping-pair", "identity form whose pair operator misses e_1", false}, telescoping_pair},
      {{"weight-inverse-pair", "xi = {n e_n}, eta = {e_n / n}: a reproducing pair", true}, weight_inverse_pair},
      {{"weighted-riesz", "Riesz basis with weights alpha: spectrum, lambda-closedness, shift", true},
       weighted_riesz},
      {{"operator-image", "images V e_n and Z e_n: C = V^*, S = V V^*, pair operator Z V^*", true},
       operator_image},
  };
  return entries;
}

const Entry& find_entry(std::string_view id) {
  for (const auto& e : catalog()) {
    if (e.info.id == id) return e;
  }
  throw Error(ErrorKind::UnknownScenario, "unknown scenario: " + std::string(id));
}

}  // namespace

const std::vector<ScenarioInfo>& list_scenarios() {
  static const std::vector<ScenarioInfo> infos = [] {
    std::vector<ScenarioInfo> out;
    for (const auto& e : catalog()) out.push_back(e.info);
    return out;
  }();
  return infos;
}

ScenarioReport run_scenario(std::string_view id, const ScenarioOptions& options) {
  const Entry& entry = find_entry(id);
  options.tol.validate();
  const auto start = std::chrono::steady_clock::now();
  ScenarioReport report = entry.run(options);
  report.scenario_id = entry.info.id;
  report.runtime_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return report;
}

ScenarioReport run_scenario(std::string_view id, const TruncationLadder& ladder, const Tolerances& tol) {
  const Entry& entry = find_entry(id);
  ScenarioOptions options;
  options.tol = tol;
  if (entry.info.dense) options.dense_ladder = ladder;
  else options.ladder = ladder;
  return run_scenario(id, options);
}

}  // namespace seqforms
