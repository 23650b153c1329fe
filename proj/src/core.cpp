#include "seqforms/core.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace seqforms {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::SupportOverflow: return "SupportOverflow";
    case ErrorKind::NotPositiveDefinite: return "NotPositiveDefinite";
    case ErrorKind::NotLowerSemiFrame: return "NotLowerSemiFrame";
    case ErrorKind::NotZeroClosed: return "NotZeroClosed";
    case ErrorKind::UnknownScenario: return "UnknownScenario";
    case ErrorKind::InvalidInput: return "InvalidInput";
    case ErrorKind::ResourceLimit: return "ResourceLimit";
  }
  return "Unknown";
}

Error::Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}

CoeffVector::CoeffVector(Vector coeffs) : coeffs_(std::move(coeffs)) {
  if (coeffs_.size() == 0) throw Error(ErrorKind::InvalidInput, "coefficient vector must have dim >= 1");
}

CoeffVector::CoeffVector(std::initializer_list<Complex> coeffs)
    : CoeffVector(Vector::Map(coeffs.begin(), static_cast<Index>(coeffs.size()))) {}

CoeffVector CoeffVector::zero(Index dim) { return CoeffVector(Vector::Zero(dim)); }

CoeffVector CoeffVector::unit(Index dim, Index n) {
  if (n < 1 || n > dim) throw Error(ErrorKind::SupportOverflow, "unit vector index outside dim");
  Vector v = Vector::Zero(dim);
  v(n - 1) = 1.0;
  return CoeffVector(std::move(v));
}

Complex inner_product(const CoeffVector& f, const CoeffVector& g) {
  if (f.dim() != g.dim()) {
    std::ostringstream msg;
    msg << "inner product of vectors with dims " << f.dim() << " and " << g.dim();
    throw Error(ErrorKind::DimensionMismatch, msg.str());
  }
  // Eigen's dot conjugates its first operand.
  return g.coeffs().dot(f.coeffs());
}

Complex inner_product(const CoeffVector& f, const SparseVector& v) {
  Complex sum = 0.0;
  for (const auto& e : v) {
    if (e.index < f.dim()) sum += f[e.index] * std::conj(e.value);
  }
  return sum;
}

Vector densify(const SparseVector& v, Index dim) {
  Vector out = Vector::Zero(dim);
  for (const auto& e : v) {
    if (e.index >= dim) throw Error(ErrorKind::SupportOverflow, "sparse entry beyond dim");
    out(e.index) += e.value;
  }
  return out;
}

WeightVector::WeightVector(std::vector<Complex> weights) : weights_(std::move(weights)) {}

WeightVector WeightVector::ones(Index size) {
  return WeightVector(std::vector<Complex>(static_cast<std::size_t>(size), Complex(1.0)));
}

double weighted_norm(std::span<const Complex> c, const WeightVector& w) {
  if (static_cast<Index>(c.size()) > w.size()) {
    throw Error(ErrorKind::DimensionMismatch, "coefficient list longer than weight vector");
  }
  double sum = 0.0;
  for (std::size_t i = 0; i < c.size(); ++i) sum += std::abs(w.weights()[i]) * std::norm(c[i]);
  return std::sqrt(sum);
}

TruncationLadder::TruncationLadder(std::vector<Index> sizes) : sizes_(std::move(sizes)) {
  if (sizes_.size() < 3) throw Error(ErrorKind::InvalidInput, "truncation ladder needs at least 3 rungs");
  if (sizes_.front() < 1) throw Error(ErrorKind::InvalidInput, "ladder sizes must be positive");
  for (std::size_t k = 1; k < sizes_.size(); ++k) {
    if (sizes_[k] <= sizes_[k - 1]) {
      throw Error(ErrorKind::InvalidInput, "ladder sizes must be strictly increasing");
    }
  }
}

TruncationLadder TruncationLadder::scaled(Index factor) const {
  std::vector<Index> out(sizes_);
  for (auto& s : out) s *= factor;
  return TruncationLadder(std::move(out));
}

void Tolerances::validate() const {
  if (!(eq_tol > 0) || !(rank_tol > 0) || !(cauchy_tol > 0) || !(growth_min > 0)) {
    throw Error(ErrorKind::InvalidInput, "tolerances must be strictly positive");
  }
}

std::string_view to_string(ConvergenceVerdict::Kind kind) {
  switch (kind) {
    case ConvergenceVerdict::Kind::Converged: return "Converged";
    case ConvergenceVerdict::Kind::Diverged: return "Diverged";
    case ConvergenceVerdict::Kind::Inconclusive: return "Inconclusive";
  }
  return "Inconclusive";
}

std::optional<double> loglog_slope(std::span<const Index> sizes, std::span<const double> values) {
  std::vector<double> xs, ys;
  for (std::size_t k = 0; k < sizes.size() && k < values.size(); ++k) {
    if (values[k] > 0 && std::isfinite(values[k])) {
      xs.push_back(std::log(static_cast<double>(sizes[k])));
      ys.push_back(std::log(values[k]));
    }
  }
  if (xs.size() < 2) return std::nullopt;
  const double n = static_cast<double>(xs.size());
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    mx += xs[i];
    my += ys[i];
  }
  mx /= n;
  my /= n;
  double sxy = 0, sxx = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sxy += (xs[i] - mx) * (ys[i] - my);
    sxx += (xs[i] - mx) * (xs[i] - mx);
  }
  if (sxx == 0) return std::nullopt;
  return sxy / sxx;
}

ConvergenceVerdict classify_rungs(std::span<const RungSample> rungs, std::optional<Complex> top_value,
                                  const Tolerances& tol) {
  ConvergenceVerdict v;
  if (rungs.empty()) return v;

  std::vector<Index> sizes;
  std::vector<double> norms, gaps;
  for (const auto& r : rungs) {
    sizes.push_back(r.size);
    norms.push_back(r.norm);
    gaps.push_back(r.gap);
  }
  const double top_gap = gaps.back();
  v.cauchy_gap = top_gap;
  v.growth_exponent = loglog_slope(sizes, norms);

  if (top_gap < tol.cauchy_tol && top_gap <= gaps.front()) {
    v.kind = ConvergenceVerdict::Kind::Converged;
    v.limit_estimate = top_value.value_or(Complex(norms.back()));
    return v;
  }

  const bool grows = v.growth_exponent && *v.growth_exponent >= tol.growth_min;
  const double min_gap = *std::min_element(gaps.begin(), gaps.end());
  const auto gap_slope = loglog_slope(sizes, gaps);
  const bool persistent = min_gap >= tol.cauchy_tol && gap_slope && *gap_slope > -tol.growth_min;
  if (grows || persistent) v.kind = ConvergenceVerdict::Kind::Diverged;
  return v;
}

namespace {

class RungTracker {
 public:
  explicit RungTracker(const TruncationLadder& ladder) : ladder_(ladder) {}

  // Window of indices whose increments count toward rung k's gap.
  bool in_window(Index n) const {
    const Index size = ladder_[rung_];
    const Index prev = rung_ == 0 ? 0 : ladder_[rung_ - 1];
    const Index window = std::min(kGapWindow, size - prev);
    return n > size - window;
  }
  bool at_rung(Index n) const { return n == ladder_[rung_]; }
  void record_increment(double step) { window_gap_ = std::max(window_gap_, step); }
  double take_gap() {
    const double g = window_gap_;
    window_gap_ = 0.0;
    ++rung_;
    return g;
  }
  bool done() const { return rung_ >= ladder_.rungs(); }

 private:
  const TruncationLadder& ladder_;
  Index rung_ = 0;
  double window_gap_ = 0.0;
};

}  // namespace

ScalarSeriesProbe probe_series(const ScalarTerm& term, const TruncationLadder& ladder,
                               const Tolerances& tol) {
  ScalarSeriesProbe out;
  RungTracker tracker(ladder);
  Complex sum = 0.0;
  for (Index n = 1; !tracker.done(); ++n) {
    const Complex a = term(n);
    sum += a;
    if (tracker.in_window(n)) tracker.record_increment(std::abs(a));
    if (tracker.at_rung(n)) {
      out.partial_sums.push_back(sum);
      out.rungs.push_back({n, std::abs(sum), tracker.take_gap()});
    }
  }
  out.verdict = classify_rungs(out.rungs, out.partial_sums.back(), tol);
  return out;
}

VectorSeriesProbe probe_vector_series(const VectorTerm& term, const TruncationLadder& ladder,
                                      const Tolerances& tol, const RungObserver& on_rung) {
  VectorSeriesProbe out;
  RungTracker tracker(ladder);
  std::vector<Complex> sum;
  std::size_t used = 0;
  for (Index n = 1; !tracker.done(); ++n) {
    const SparseVector a = term(n);
    double step = 0.0;
    for (const auto& e : a) {
      const auto i = static_cast<std::size_t>(e.index);
      if (i >= sum.size()) sum.resize(std::max(i + 1, 2 * sum.size()), Complex(0.0));
      used = std::max(used, i + 1);
      sum[i] += e.value;
      step += std::norm(e.value);
    }
    if (tracker.in_window(n)) tracker.record_increment(std::sqrt(step));
    if (tracker.at_rung(n)) {
      const Vector s = Vector::Map(sum.data(), static_cast<Index>(used));
      if (on_rung) on_rung(n, s);
      out.rungs.push_back({n, s.norm(), tracker.take_gap()});
    }
  }
  out.final_sum = Vector::Map(sum.data(), static_cast<Index>(used));
  out.verdict = classify_rungs(out.rungs, std::nullopt, tol);
  return out;
}

ConvergenceVerdict probe_trend(std::span<const Index> sizes, std::span<const double> values,
                               const Tolerances& tol) {
  ConvergenceVerdict v;
  if (values.empty()) return v;
  const double top = values.back();
  const bool all_zero = std::all_of(values.begin(), values.end(), [](double x) { return x == 0.0; });
  if (all_zero || top == 0.0) {
    v.kind = ConvergenceVerdict::Kind::Converged;
    v.limit_estimate = 0.0;
    v.cauchy_gap = 0.0;
    return v;
  }
  v.growth_exponent = loglog_slope(sizes, values);
  if (!v.growth_exponent) return v;
  const double p = *v.growth_exponent;
  if (p >= tol.growth_min) {
    v.kind = ConvergenceVerdict::Kind::Diverged;
    v.cauchy_gap = std::abs(top - values[values.size() - 2]);
  } else if (p <= -tol.growth_min) {
    v.kind = ConvergenceVerdict::Kind::Converged;
    v.limit_estimate = 0.0;
    v.cauchy_gap = top;
  } else {
    v.kind = ConvergenceVerdict::Kind::Converged;
    v.limit_estimate = top;
    v.cauchy_gap = std::abs(top - values[values.size() - 2]);
  }
  return v;
}

}  // namespace seqforms
