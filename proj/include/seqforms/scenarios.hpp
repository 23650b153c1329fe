#pragma once

// Catalog of worked examples.  Each scenario checks a set of claims on
// truncation ladders and reports one status per claim.
//
// Vector scenarios (finite-difference, interleaved-lower, dc-vs-s,
// telescoping-pair) stream sparse terms and use `ladder` as term counts.
// Matrix scenarios (weight-inverse-pair, weighted-riesz, operator-image)
// build dense operators and use `dense_ladder` as dims, falling back to
// `ladder` when only that is given.

#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "seqforms/core.hpp"

namespace seqforms {

enum class ClaimStatus { Pass, Fail, Diagnostic };
std::string_view to_string(ClaimStatus status);

struct Evidence {
  std::string name;
  std::variant<double, std::string, bool> value;
};

struct Claim {
  std::string id;
  std::string description;
  std::string source;  // which statement of the theory the claim instantiates
  ClaimStatus status = ClaimStatus::Fail;
  // Diagnostic claims: whether the expected behaviour was observed.
  bool witnessed = false;
  std::vector<Evidence> evidence;
};

struct ScenarioReport {
  std::string scenario_id;
  std::vector<Claim> claims;
  double runtime_seconds = 0;  // kept out of the serialized report body

  bool all_passed() const;
  const Claim& claim(std::string_view id) const;
  std::optional<double> number(std::string_view claim_id, std::string_view evidence) const;
};

struct ScenarioOptions {
  std::optional<TruncationLadder> ladder;
  std::optional<TruncationLadder> dense_ladder;
  Tolerances tol;
  unsigned seed = 20240611;
  std::optional<Index> dim;                    // weighted-riesz, operator-image
  std::optional<Matrix> v;                     // weighted-riesz basis operator
  std::optional<std::vector<Complex>> alpha;   // weighted-riesz weights
  Index instances = 20;                        // operator-image
};

inline constexpr Index kMaxDenseScenarioDim = 2048;

ScenarioReport run_scenario(std::string_view id, const ScenarioOptions& options);
ScenarioReport run_scenario(std::string_view id, const TruncationLadder& ladder, const Tolerances& tol);

struct ScenarioInfo {
  std::string id;
  std::string summary;
  bool dense = false;
};

const std::vector<ScenarioInfo>& list_scenarios();

}  // namespace seqforms
