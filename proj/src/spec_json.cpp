#include <sstream>

#include "seqforms/serialize.hpp"

namespace seqforms {

namespace {

[[noreturn]] void bad(const std::string& what) { throw Error(ErrorKind::InvalidInput, what); }

const Json& field(const Json& obj, const char* key, const char* where) {
  if (!obj.is_object() || !obj.contains(key)) {
    std::ostringstream msg;
    msg << where << ": missing field \"" << key << "\"";
    bad(msg.str());
  }
  return obj.at(key);
}

PatternKind pattern_from_json(const Json& params) {
  const Json& k = field(params, "kind", "pattern");
  if (k == "xi") return PatternKind::Xi;
  if (k == "eta") return PatternKind::Eta;
  bad("pattern kind must be \"xi\" or \"eta\"");
}

Json pattern_to_json(PatternKind k) { return k == PatternKind::Xi ? "xi" : "eta"; }

}  // namespace

Json complex_to_json(Complex z) {
  if (z.imag() == 0.0) return z.real();
  return Json::array({z.real(), z.imag()});
}

Complex complex_from_json(const Json& j) {
  if (j.is_number()) return j.get<double>();
  if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number()) {
    return {j[0].get<double>(), j[1].get<double>()};
  }
  bad("expected a number or [re, im], got " + j.dump());
}

std::vector<Complex> complex_list_from_json(const Json& j) {
  if (!j.is_array()) bad("expected an array of numbers, got " + j.dump());
  std::vector<Complex> out;
  out.reserve(j.size());
  for (const auto& x : j) out.push_back(complex_from_json(x));
  return out;
}

Json matrix_to_json(const Matrix& m) {
  Json rows = Json::array();
  for (Index i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (Index k = 0; k < m.cols(); ++k) row.push_back(complex_to_json(m(i, k)));
    rows.push_back(std::move(row));
  }
  return rows;
}

Matrix matrix_from_json(const Json& rows) {
  if (!rows.is_array() || rows.empty()) bad("matrix must be a non-empty array of rows");
  const auto r = static_cast<Index>(rows.size());
  const Index c = rows[0].is_array() ? static_cast<Index>(rows[0].size()) : 0;
  if (c == 0) bad("matrix rows must be non-empty arrays");
  Matrix m(r, c);
  for (Index i = 0; i < r; ++i) {
    const std::vector<Complex> row = complex_list_from_json(rows[static_cast<std::size_t>(i)]);
    if (static_cast<Index>(row.size()) != c) bad("matrix rows differ in length");
    for (Index k = 0; k < c; ++k) m(i, k) = row[static_cast<std::size_t>(k)];
  }
  return m;
}

ScalarRule scalar_rule_from_json(const Json& j) {
  if (j.is_number() || j.is_array()) return ScalarRule::constant(complex_from_json(j));
  if (j.is_string()) {
    if (j == "n") return ScalarRule::identity();
    if (j == "1/n") return ScalarRule::reciprocal();
    bad("unknown scalar rule " + j.dump());
  }
  const Json& kind = field(j, "kind", "scalar rule");
  if (kind == "constant") return ScalarRule::constant(complex_from_json(field(j, "value", "constant rule")));
  if (kind == "n") return ScalarRule::identity();
  if (kind == "1/n") return ScalarRule::reciprocal();
  if (kind == "table") return ScalarRule::table(complex_list_from_json(field(j, "values", "table rule")));
  bad("unknown scalar rule kind " + kind.dump());
}

Json to_json(const ScalarRule& rule) {
  switch (rule.kind()) {
    case ScalarRule::Kind::Constant: return Json{{"kind", "constant"}, {"value", complex_to_json(rule.value())}};
    case ScalarRule::Kind::Identity: return Json{{"kind", "n"}};
    case ScalarRule::Kind::Reciprocal: return Json{{"kind", "1/n"}};
    case ScalarRule::Kind::Table: {
      Json values = Json::array();
      for (const Complex z : rule.values()) values.push_back(complex_to_json(z));
      return Json{{"kind", "table"}, {"values", std::move(values)}};
    }
  }
  return Json();
}

SequenceSpec spec_from_json(const Json& j) {
  const Json& rule = field(j, "rule", "sequence spec");
  if (!rule.is_string()) bad("sequence spec \"rule\" must be a string");
  const Json params = j.contains("params") ? j.at("params") : Json::object();
  if (!params.is_object()) bad("sequence spec \"params\" must be an object");
  const std::string tag = rule.get<std::string>();

  if (tag == "explicit") {
    // One inner array per column.
    const Matrix cols = matrix_from_json(field(params, "columns", "explicit spec"));
    return SequenceSpec::explicit_columns(cols.transpose());
  }
  if (tag == "diagonal") return SequenceSpec::diagonal(scalar_rule_from_json(field(params, "weight", "diagonal spec")));
  if (tag == "onb") return SequenceSpec::onb();
  if (tag == "finite-difference") return SequenceSpec::finite_difference();
  if (tag == "interleave") {
    return SequenceSpec::interleave(spec_from_json(field(params, "first", "interleave spec")),
                                    spec_from_json(field(params, "second", "interleave spec")));
  }
  if (tag == "triple") return SequenceSpec::triple(pattern_from_json(params));
  if (tag == "paired-double") return SequenceSpec::paired_double(pattern_from_json(params));
  if (tag == "operator-image") {
    return SequenceSpec::operator_image(matrix_from_json(field(params, "matrix", "operator-image spec")));
  }
  if (tag == "scaled") {
    return SequenceSpec::scaled(spec_from_json(field(params, "base", "scaled spec")),
                                scalar_rule_from_json(field(params, "scale", "scaled spec")));
  }
  bad("unknown sequence rule \"" + tag + "\"");
}

Json to_json(const SequenceSpec& spec) {
  Json params = Json::object();
  std::visit(
      [&](const auto& r) {
        using T = std::decay_t<decltype(r)>;
        if constexpr (std::is_same_v<T, SequenceSpec::ExplicitColumns>) {
          params["columns"] = matrix_to_json(r.columns.transpose());
        } else if constexpr (std::is_same_v<T, SequenceSpec::DiagonalWeights>) {
          params["weight"] = to_json(r.weight);
        } else if constexpr (std::is_same_v<T, SequenceSpec::Interleave>) {
          params["first"] = to_json(*r.first);
          params["second"] = to_json(*r.second);
        } else if constexpr (std::is_same_v<T, SequenceSpec::TriplePattern> ||
                             std::is_same_v<T, SequenceSpec::PairedDouble>) {
          params["kind"] = pattern_to_json(r.kind);
        } else if constexpr (std::is_same_v<T, SequenceSpec::OperatorImage>) {
          params["matrix"] = matrix_to_json(r.v);
        } else if constexpr (std::is_same_v<T, SequenceSpec::Scaled>) {
          params["base"] = to_json(*r.base);
          params["scale"] = to_json(r.scale);
        }
      },
      spec.rule());
  return Json{{"rule", spec.tag()}, {"params", std::move(params)}};
}

}  // namespace seqforms
