#include "seqforms/sequences.hpp"

#include <algorithm>
#include <sstream>

namespace seqforms {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

[[noreturn]] void overflow(const std::string& what) { throw Error(ErrorKind::SupportOverflow, what); }

std::optional<Index> min_length(std::optional<Index> a, std::optional<Index> b) {
  if (!a) return b;
  if (!b) return a;
  return std::min(*a, *b);
}

SparseVector column_entries(const Matrix& m, Index col) {
  SparseVector out;
  for (Index i = 0; i < m.rows(); ++i) {
    if (m(i, col) != Complex(0.0)) out.push_back({i, m(i, col)});
  }
  return out;
}

}  // namespace

ScalarRule::ScalarRule(Kind kind, Complex value, std::vector<Complex> values)
    : kind_(kind), value_(value), values_(std::move(values)) {}

ScalarRule ScalarRule::constant(Complex value) { return {Kind::Constant, value, {}}; }
ScalarRule ScalarRule::identity() { return {Kind::Identity, 0.0, {}}; }
ScalarRule ScalarRule::reciprocal() { return {Kind::Reciprocal, 0.0, {}}; }
ScalarRule ScalarRule::table(std::vector<Complex> values) {
  if (values.empty()) throw Error(ErrorKind::InvalidInput, "scalar table must not be empty");
  return {Kind::Table, 0.0, std::move(values)};
}

Complex ScalarRule::operator()(Index n) const {
  if (n < 1) throw Error(ErrorKind::InvalidInput, "sequence indices start at 1");
  switch (kind_) {
    case Kind::Constant: return value_;
    case Kind::Identity: return static_cast<double>(n);
    case Kind::Reciprocal: return 1.0 / static_cast<double>(n);
    case Kind::Table:
      if (n > static_cast<Index>(values_.size())) {
        std::ostringstream msg;
        msg << "scalar table of length " << values_.size() << " has no entry " << n;
        overflow(msg.str());
      }
      return values_[static_cast<std::size_t>(n - 1)];
  }
  return 0.0;
}

std::optional<Index> ScalarRule::length() const {
  if (kind_ == Kind::Table) return static_cast<Index>(values_.size());
  return std::nullopt;
}

ScalarRule ScalarRule::inverse() const {
  switch (kind_) {
    case Kind::Constant: return constant(1.0 / value_);
    case Kind::Identity: return reciprocal();
    case Kind::Reciprocal: return identity();
    case Kind::Table: {
      std::vector<Complex> inv(values_.size());
      std::transform(values_.begin(), values_.end(), inv.begin(), [](Complex z) { return 1.0 / z; });
      return table(std::move(inv));
    }
  }
  return *this;
}

SequenceSpec SequenceSpec::explicit_columns(Matrix columns) {
  if (columns.rows() == 0 || columns.cols() == 0) {
    throw Error(ErrorKind::InvalidInput, "explicit column family must be non-empty");
  }
  return SequenceSpec(ExplicitColumns{std::move(columns)});
}
SequenceSpec SequenceSpec::diagonal(ScalarRule weight) { return SequenceSpec(DiagonalWeights{std::move(weight)}); }
SequenceSpec SequenceSpec::onb() { return diagonal(ScalarRule::constant(1.0)); }
SequenceSpec SequenceSpec::finite_difference() { return SequenceSpec(FiniteDifference{}); }
SequenceSpec SequenceSpec::interleave(SequenceSpec first, SequenceSpec second) {
  return SequenceSpec(Interleave{std::make_shared<const SequenceSpec>(std::move(first)),
                                 std::make_shared<const SequenceSpec>(std::move(second))});
}
SequenceSpec SequenceSpec::triple(PatternKind kind) { return SequenceSpec(TriplePattern{kind}); }
SequenceSpec SequenceSpec::paired_double(PatternKind kind) { return SequenceSpec(PairedDouble{kind}); }
SequenceSpec SequenceSpec::operator_image(Matrix v) {
  if (v.rows() == 0 || v.cols() == 0) throw Error(ErrorKind::InvalidInput, "operator image needs a non-empty V");
  return SequenceSpec(OperatorImage{std::move(v)});
}
SequenceSpec SequenceSpec::scaled(SequenceSpec base, ScalarRule scale) {
  return SequenceSpec(Scaled{std::make_shared<const SequenceSpec>(std::move(base)), std::move(scale)});
}

std::string_view SequenceSpec::tag() const {
  return std::visit(Overloaded{
                        [](const ExplicitColumns&) { return std::string_view("explicit"); },
                        [](const DiagonalWeights&) { return std::string_view("diagonal"); },
                        [](const FiniteDifference&) { return std::string_view("finite-difference"); },
                        [](const Interleave&) { return std::string_view("interleave"); },
                        [](const TriplePattern&) { return std::string_view("triple"); },
                        [](const PairedDouble&) { return std::string_view("paired-double"); },
                        [](const OperatorImage&) { return std::string_view("operator-image"); },
                        [](const Scaled&) { return std::string_view("scaled"); },
                    },
                    rule_);
}

Index SequenceSpec::arity() const {
  return std::visit(Overloaded{
                        [](const Interleave& r) { return 2 * std::max(r.first->arity(), r.second->arity()); },
                        [](const TriplePattern&) { return Index{3}; },
                        [](const PairedDouble&) { return Index{2}; },
                        [](const Scaled& r) { return r.base->arity(); },
                        [](const auto&) { return Index{1}; },
                    },
                    rule_);
}

std::optional<Index> SequenceSpec::length() const {
  return std::visit(Overloaded{
                        [](const ExplicitColumns& r) -> std::optional<Index> { return r.columns.cols(); },
                        [](const OperatorImage& r) -> std::optional<Index> { return r.v.cols(); },
                        [](const DiagonalWeights& r) { return r.weight.length(); },
                        [](const Interleave& r) -> std::optional<Index> {
                          const auto a = r.first->length();
                          const auto b = r.second->length();
                          return min_length(a ? std::optional<Index>(2 * *a) : std::nullopt,
                                            b ? std::optional<Index>(2 * *b + 1) : std::nullopt);
                        },
                        [](const Scaled& r) { return min_length(r.base->length(), r.scale.length()); },
                        [](const auto&) -> std::optional<Index> { return std::nullopt; },
                    },
                    rule_);
}

SparseVector term_entries(const SequenceSpec& spec, Index n) {
  if (n < 1) throw Error(ErrorKind::InvalidInput, "sequence indices start at 1");
  if (const auto len = spec.length(); len && n > *len) {
    std::ostringstream msg;
    msg << spec.tag() << " family has " << *len << " members; member " << n << " requested";
    overflow(msg.str());
  }
  using S = SequenceSpec;
  SparseVector out = std::visit(
      Overloaded{
          [n](const S::ExplicitColumns& r) { return column_entries(r.columns, n - 1); },
          [n](const S::OperatorImage& r) { return column_entries(r.v, n - 1); },
          [n](const S::DiagonalWeights& r) { return SparseVector{{n - 1, r.weight(n)}}; },
          [n](const S::FiniteDifference&) {
            if (n == 1) return SparseVector{{0, 1.0}};
            const double s = static_cast<double>(n);
            return SparseVector{{n - 2, -s}, {n - 1, s}};
          },
          [n](const S::Interleave& r) {
            return n % 2 == 1 ? term_entries(*r.first, (n + 1) / 2) : term_entries(*r.second, n / 2);
          },
          [n](const S::TriplePattern& r) {
            const Index k = (n - 1) / 3 + 1;
            const Index slot = (n - 1) % 3;
            if (r.kind == PatternKind::Eta || slot == 0) return SparseVector{{k - 1, 1.0}};
            return SparseVector{{0, slot == 1 ? 1.0 : -1.0}};
          },
          [n](const S::PairedDouble& r) {
            const Index k = (n + 1) / 2;
            if (n % 2 == 1) return SparseVector{{k - 1, 1.0}};
            if (r.kind == PatternKind::Eta) return SparseVector{};
            return SparseVector{{k - 1, static_cast<double>(k)}};
          },
          [n](const S::Scaled& r) {
            const Complex beta = r.scale(n);
            SparseVector base = term_entries(*r.base, n);
            for (auto& e : base) e.value *= beta;
            return base;
          },
      },
      spec.rule());
  std::erase_if(out, [](const SparseEntry& e) { return e.value == Complex(0.0); });
  return out;
}

CoeffVector term(const SequenceSpec& spec, Index n, Index dim) {
  if (dim < 1) throw Error(ErrorKind::InvalidInput, "dim must be positive");
  const SparseVector entries = term_entries(spec, n);
  for (const auto& e : entries) {
    if (e.index >= dim) {
      std::ostringstream msg;
      msg << spec.tag() << " member " << n << " has support at coordinate " << e.index + 1
          << " beyond dim " << dim;
      overflow(msg.str());
    }
  }
  return CoeffVector(densify(entries, dim));
}

Matrix materialize(const SequenceSpec& spec, Index dim, Index count) {
  if (dim < 1 || count < 1) throw Error(ErrorKind::InvalidInput, "dim and count must be positive");
  Matrix out(dim, count);
  for (Index n = 1; n <= count; ++n) out.col(n - 1) = term(spec, n, dim).coeffs();
  return out;
}

Index required_dim(const SequenceSpec& spec, Index count) {
  Index dim = 1;
  for (Index n = 1; n <= count; ++n) {
    for (const auto& e : term_entries(spec, n)) dim = std::max(dim, e.index + 1);
  }
  return dim;
}

}  // namespace seqforms
