#pragma once

// Coefficient vectors over the canonical orthonormal basis, weighted l2
// norms, truncation ladders and partial-sum convergence diagnostics.
//
// Every vector in the library is expressed in the standard coordinate
// basis of the truncation window.  Coordinates are 0-based in storage;
// sequence members and ladder sizes are 1-based counts.

#include <complex>
#include <functional>
#include <initializer_list>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

namespace seqforms {

using Index = Eigen::Index;
using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

enum class ErrorKind {
  DimensionMismatch,
  SupportOverflow,
  NotPositiveDefinite,
  NotLowerSemiFrame,
  NotZeroClosed,
  UnknownScenario,
  InvalidInput,
  ResourceLimit,
};

std::string_view to_string(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what);
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

class CoeffVector {
 public:
  explicit CoeffVector(Vector coeffs);
  CoeffVector(std::initializer_list<Complex> coeffs);

  static CoeffVector zero(Index dim);
  // e_n for 1-based n.
  static CoeffVector unit(Index dim, Index n);

  Index dim() const { return coeffs_.size(); }
  const Vector& coeffs() const { return coeffs_; }
  Complex operator[](Index i) const { return coeffs_(i); }
  double norm() const { return coeffs_.norm(); }

 private:
  Vector coeffs_;
};

// sum_n f_n conj(g_n); linear in f, conjugate-linear in g.
Complex inner_product(const CoeffVector& f, const CoeffVector& g);

class WeightVector {
 public:
  explicit WeightVector(std::vector<Complex> weights);
  static WeightVector ones(Index size);

  std::span<const Complex> weights() const { return weights_; }
  Index size() const { return static_cast<Index>(weights_.size()); }

 private:
  std::vector<Complex> weights_;
};

// (sum |w_n| |c_n|^2)^(1/2)
double weighted_norm(std::span<const Complex> c, const WeightVector& w);

class TruncationLadder {
 public:
  explicit TruncationLadder(std::vector<Index> sizes);

  std::span<const Index> sizes() const { return sizes_; }
  Index rungs() const { return static_cast<Index>(sizes_.size()); }
  Index top() const { return sizes_.back(); }
  Index operator[](Index k) const { return sizes_[static_cast<std::size_t>(k)]; }
  TruncationLadder scaled(Index factor) const;

 private:
  std::vector<Index> sizes_;
};

struct Tolerances {
  double eq_tol = 1e-10;
  double rank_tol = 1e-10;  // relative to the largest singular value
  double cauchy_tol = 1e-6;
  double growth_min = 0.25;

  void validate() const;
};

struct SparseEntry {
  Index index;  // 0-based coordinate
  Complex value;
};
using SparseVector = std::vector<SparseEntry>;

// <f, v> for a sparse v; coordinates of v beyond f.dim() pair with zeros.
Complex inner_product(const CoeffVector& f, const SparseVector& v);
Vector densify(const SparseVector& v, Index dim);

struct ConvergenceVerdict {
  enum class Kind { Converged, Diverged, Inconclusive };

  Kind kind = Kind::Inconclusive;
  std::optional<Complex> limit_estimate;
  std::optional<double> growth_exponent;
  std::optional<double> cauchy_gap;
};

std::string_view to_string(ConvergenceVerdict::Kind kind);

// Diagnostics recorded at one ladder rung.  `gap` is the largest one-step
// increment |s_m - s_{m-1}| over the trailing window of the rung.
struct RungSample {
  Index size = 0;
  double norm = 0.0;
  double gap = 0.0;
};

inline constexpr Index kGapWindow = 8;

struct ScalarSeriesProbe {
  ConvergenceVerdict verdict;
  std::vector<RungSample> rungs;
  std::vector<Complex> partial_sums;
};

struct VectorSeriesProbe {
  ConvergenceVerdict verdict;
  std::vector<RungSample> rungs;
  Vector final_sum;
};

using ScalarTerm = std::function<Complex(Index)>;
using VectorTerm = std::function<SparseVector(Index)>;
using RungObserver = std::function<void(Index size, const Vector& partial_sum)>;

// Terms are requested in increasing 1-based index order, never reordered.
ScalarSeriesProbe probe_series(const ScalarTerm& term, const TruncationLadder& ladder,
                               const Tolerances& tol);
VectorSeriesProbe probe_vector_series(const VectorTerm& term, const TruncationLadder& ladder,
                                      const Tolerances& tol, const RungObserver& on_rung = {});

// Verdict rules shared by both probes.
//   Converged:  top-rung gap < cauchy_tol and the gaps do not increase.
//   Diverged:   fitted log|s| / log N slope >= growth_min, or every rung
//               gap >= cauchy_tol while the gaps decay slower than N^-growth_min.
ConvergenceVerdict classify_rungs(std::span<const RungSample> rungs,
                                  std::optional<Complex> top_value, const Tolerances& tol);

// Least-squares slope of log(value) against log(size) over positive values.
std::optional<double> loglog_slope(std::span<const Index> sizes, std::span<const double> values);

// Trend of a nonnegative quantity sampled once per rung (frame bounds and
// the like).  Diverged: grows like N^p with p >= growth_min.  Converged:
// flat (limit = top value) or decaying like N^-p (limit = 0).  The fitted
// exponent is always attached when it exists.
ConvergenceVerdict probe_trend(std::span<const Index> sizes, std::span<const double> values,
                               const Tolerances& tol);

}  // namespace seqforms
