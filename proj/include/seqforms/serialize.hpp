#pragma once

// JSON encoding of sequence specs and reports.
//
// Complex numbers encode as a plain number when real and as [re, im]
// otherwise.  Matrices encode as arrays of rows.  Objects keep insertion
// order so serialized reports are byte-stable.

#include <string_view>

#include "json.hpp"

#include "seqforms/classify.hpp"
#include "seqforms/core.hpp"
#include "seqforms/forms.hpp"
#include "seqforms/reconstruct.hpp"
#include "seqforms/scenarios.hpp"
#include "seqforms/sequences.hpp"

namespace seqforms {

using Json = nlohmann::ordered_json;

inline constexpr std::string_view kSchema = "seqforms/1";

Json complex_to_json(Complex z);
Complex complex_from_json(const Json& j);
Json matrix_to_json(const Matrix& m);
Matrix matrix_from_json(const Json& rows);
std::vector<Complex> complex_list_from_json(const Json& j);

// {"kind": "constant", "value": z} | {"kind": "n"} | {"kind": "1/n"} |
// {"kind": "table", "values": [...]}; also the shorthands "n", "1/n" and a bare number.
ScalarRule scalar_rule_from_json(const Json& j);
Json to_json(const ScalarRule& rule);

// {"rule": "<tag>", "params": {...}}.  Malformed input throws InvalidInput.
SequenceSpec spec_from_json(const Json& j);
Json to_json(const SequenceSpec& spec);

Json to_json(const ConvergenceVerdict& v);
Json to_json(const AsymptoticDiagnosis& d);
Json to_json(const ClassificationReport& r);
Json to_json(const FormAssessment& a);
Json to_json(const DualSystem& s);
Json to_json(const ScenarioReport& r);

}  // namespace seqforms
