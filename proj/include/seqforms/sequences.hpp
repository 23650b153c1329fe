#pragma once

// Rule-based sequence descriptions {xi_n} and their materialization into
// truncated column families.  Specs are immutable values; composite rules
// share their children.

#include <memory>
#include <optional>
#include <string_view>
#include <variant>
#include <vector>

#include "seqforms/core.hpp"

namespace seqforms {

// Closed vocabulary of index -> scalar maps: constant, n, 1/n, or a table.
class ScalarRule {
 public:
  enum class Kind { Constant, Identity, Reciprocal, Table };

  static ScalarRule constant(Complex value);
  static ScalarRule identity();
  static ScalarRule reciprocal();
  static ScalarRule table(std::vector<Complex> values);

  Kind kind() const { return kind_; }
  Complex value() const { return value_; }
  const std::vector<Complex>& values() const { return values_; }

  // n is 1-based.  Tables throw SupportOverflow past their end.
  Complex operator()(Index n) const;
  std::optional<Index> length() const;

  // The rule n -> 1 / rule(n).
  ScalarRule inverse() const;

 private:
  ScalarRule(Kind kind, Complex value, std::vector<Complex> values);

  Kind kind_;
  Complex value_;
  std::vector<Complex> values_;
};

enum class PatternKind { Xi, Eta };

class SequenceSpec {
 public:
  using Ptr = std::shared_ptr<const SequenceSpec>;

  struct ExplicitColumns {
    Matrix columns;  // column n-1 is xi_n
  };
  struct DiagonalWeights {
    ScalarRule weight;  // xi_n = w(n) e_n
  };
  struct FiniteDifference {};  // xi_1 = e_1, xi_n = n (e_n - e_{n-1})
  struct Interleave {
    Ptr first, second;  // {a_1, b_1, a_2, b_2, ...}
  };
  struct TriplePattern {
    // Xi:  {e_1, e_1, -e_1, e_2, e_1, -e_1, e_3, ...}
    // Eta: {e_1, e_1, e_1, e_2, e_2, e_2, ...}
    PatternKind kind;
  };
  struct PairedDouble {
    // Xi:  {e_1, e_1, e_2, 2 e_2, ..., e_n, n e_n, ...}
    // Eta: {e_1, 0, e_2, 0, ...}
    PatternKind kind;
  };
  struct OperatorImage {
    Matrix v;  // xi_n = V e_n
  };
  struct Scaled {
    Ptr base;
    ScalarRule scale;  // xi_n = scale(n) base_n
  };

  using Rule = std::variant<ExplicitColumns, DiagonalWeights, FiniteDifference, Interleave,
                            TriplePattern, PairedDouble, OperatorImage, Scaled>;

  static SequenceSpec explicit_columns(Matrix columns);
  static SequenceSpec diagonal(ScalarRule weight);
  static SequenceSpec onb();
  static SequenceSpec finite_difference();
  static SequenceSpec interleave(SequenceSpec first, SequenceSpec second);
  static SequenceSpec triple(PatternKind kind);
  static SequenceSpec paired_double(PatternKind kind);
  static SequenceSpec operator_image(Matrix v);
  static SequenceSpec scaled(SequenceSpec base, ScalarRule scale);

  const Rule& rule() const { return rule_; }
  std::string_view tag() const;

  // Members per basis index when sizing ladders (count = arity * N).
  Index arity() const;
  // Number of members for finite families, nullopt for infinite rules.
  std::optional<Index> length() const;

 private:
  explicit SequenceSpec(Rule rule) : rule_(std::move(rule)) {}
  Rule rule_;
};

// Nonzero coordinates of xi_n (n is 1-based, coordinates 0-based).
SparseVector term_entries(const SequenceSpec& spec, Index n);

// xi_n truncated to dim coordinates; SupportOverflow when it does not fit.
CoeffVector term(const SequenceSpec& spec, Index n, Index dim);

// dim x count matrix whose column n-1 is term(spec, n, dim).
Matrix materialize(const SequenceSpec& spec, Index dim, Index count);

// Smallest dim holding the first `count` members.
Index required_dim(const SequenceSpec& spec, Index count);

}  // namespace seqforms
