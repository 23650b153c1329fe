#include <cmath>

#include "seqforms/serialize.hpp"

namespace seqforms {

namespace {

// JSON has no infinities or NaN; encode them as null.
Json real(double x) { return std::isfinite(x) ? Json(x) : Json(nullptr); }

template <class T>
Json optional_real(const std::optional<T>& x) {
  return x ? real(static_cast<double>(*x)) : Json(nullptr);
}

Json reals(const std::vector<double>& xs) {
  Json out = Json::array();
  for (const double x : xs) out.push_back(real(x));
  return out;
}

}  // namespace

Json to_json(const ConvergenceVerdict& v) {
  Json j;
  j["kind"] = to_string(v.kind);
  j["limit_estimate"] = v.limit_estimate ? complex_to_json(*v.limit_estimate) : Json(nullptr);
  j["growth_exponent"] = optional_real(v.growth_exponent);
  j["cauchy_gap"] = optional_real(v.cauchy_gap);
  return j;
}

Json to_json(const AsymptoticDiagnosis& d) {
  Json j;
  j["heuristic"] = d.heuristic;
  j["dims"] = d.dims;
  j["counts"] = d.counts;
  j["lower_bounds"] = reals(d.lower_bounds);
  j["upper_bounds"] = reals(d.upper_bounds);
  Json complete = Json::array();
  for (const bool c : d.complete) complete.push_back(c);
  j["complete"] = std::move(complete);
  j["bessel_trend"] = to_json(d.bessel_trend);
  j["lower_trend"] = to_json(d.lower_trend);
  j["inferred_class"] = to_string(d.inferred_class);
  return j;
}

Json to_json(const ClassificationReport& r) {
  Json j;
  j["dim"] = r.dim;
  j["count"] = r.count;
  j["complete"] = r.complete;
  j["bessel_bound"] = real(r.bessel_bound);
  j["lower_bound"] = real(r.lower_bound);
  j["frame"] = r.frame;
  j["riesz_fischer_bound"] = real(r.riesz_fischer_bound);
  j["riesz_fischer"] = r.riesz_fischer;
  j["overcomplete"] = r.overcomplete;
  j["riesz_basis"] = r.riesz_basis;
  j["inverse_frame_norm"] = optional_real(r.inverse_frame_norm);
  j["biorthogonal_partner_checked"] =
      r.biorthogonal_partner_checked ? Json(*r.biorthogonal_partner_checked) : Json(nullptr);
  j["asymptotic"] = r.asymptotic ? to_json(*r.asymptotic) : Json(nullptr);
  j["notes"] = r.notes;
  return j;
}

Json to_json(const FormAssessment& a) {
  Json j;
  j["dim"] = a.dim;
  j["count"] = a.count;
  j["null_dim_left"] = a.null_dim_left;
  j["null_dim_right"] = a.null_dim_right;
  j["c1"] = real(a.c1);
  j["c2"] = real(a.c2);
  j["max_principal_angle"] = real(a.max_principal_angle);
  j["degenerate_norm"] = a.degenerate_norm;
  j["lower_semi_frame_xi"] = a.lower_xi;
  j["lower_semi_frame_eta"] = a.lower_eta;
  j["direct_sum"] = to_string(a.direct_sum);
  j["route_b"] = a.route_b;
  j["associated_invertible"] = a.assoc_invertible;
  j["zero_closed"] = a.zero_closed;
  j["routes_agree"] = a.routes_agree;
  j["associated_inverse_norm"] = optional_real(a.assoc_inverse_norm);
  j["associated_operator"] = matrix_to_json(a.associated_operator);
  j["disclaimer"] = a.disclaimer;
  return j;
}

Json to_json(const DualSystem& s) {
  Json j;
  j["kind"] = to_string(s.kind);
  j["dim"] = s.primal.rows();
  j["count"] = s.primal.cols();
  j["bessel_bound_of_dual"] = real(s.bessel_bound_of_dual);
  // Columns are listed one per member.
  j["primal"] = matrix_to_json(s.primal.transpose());
  j["dual"] = matrix_to_json(s.dual.transpose());
  return j;
}

Json to_json(const ScenarioReport& r) {
  Json claims = Json::array();
  for (const auto& c : r.claims) {
    Json evidence = Json::object();
    for (const auto& e : c.evidence) {
      std::visit(
          [&](const auto& v) {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, double>) evidence[e.name] = real(v);
            else evidence[e.name] = v;
          },
          e.value);
    }
    Json cj;
    cj["id"] = c.id;
    cj["description"] = c.description;
    cj["source"] = c.source;
    cj["status"] = to_string(c.status);
    cj["witnessed"] = c.witnessed;
    cj["evidence"] = std::move(evidence);
    claims.push_back(std::move(cj));
  }
  Json j;
  j["scenario_id"] = r.scenario_id;
  j["all_passed"] = r.all_passed();
  j["claims"] = std::move(claims);
  return j;
}

}  // namespace seqforms
