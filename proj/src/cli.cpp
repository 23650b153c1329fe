#include "seqforms/cli.hpp"

#include <algorithm>
#include <chrono>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <random>
#include <sstream>

#include "CLI11.hpp"

#include "seqforms/classify.hpp"
#include "seqforms/forms.hpp"
#include "seqforms/reconstruct.hpp"
#include "seqforms/scenarios.hpp"
#include "seqforms/serialize.hpp"

namespace seqforms::cli {

namespace {

// Input problems detected before any computation: exit 2.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Job {
  std::string spec_path, left_path, right_path, partner_path, weight_matrix_path;
  std::string vector_path, weights_path, v_path;
  std::string id;
  std::optional<Index> dim, count;
  std::vector<Index> ladder, dense_ladder;
  std::vector<std::string> lambdas;
  std::optional<double> tol_eq, tol_rank;
  std::string format = "json";
  std::string out_path;
  unsigned seed = 20240611;
  Index samples = 100;
  Index instances = 20;
};

Json load_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open " + path);
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw UsageError(path + ": " + e.what());
  }
}

SequenceSpec load_spec(const std::string& path) {
  if (path.empty()) throw UsageError("a sequence spec path is required");
  try {
    return spec_from_json(load_json(path));
  } catch (const Error& e) {
    throw UsageError(path + ": " + e.what());
  } catch (const Json::exception& e) {
    throw UsageError(path + ": " + e.what());
  }
}

Tolerances tolerances(const Job& job) {
  Tolerances tol;
  if (job.tol_eq) tol.eq_tol = *job.tol_eq;
  if (job.tol_rank) tol.rank_tol = *job.tol_rank;
  try {
    tol.validate();
  } catch (const Error& e) {
    throw UsageError(e.what());
  }
  return tol;
}

std::optional<TruncationLadder> ladder_from(const std::vector<Index>& sizes) {
  if (sizes.empty()) return std::nullopt;
  try {
    return TruncationLadder(sizes);
  } catch (const Error& e) {
    throw UsageError(e.what());
  }
}

std::optional<Index> natural_dim(const SequenceSpec& spec) {
  if (const auto* e = std::get_if<SequenceSpec::ExplicitColumns>(&spec.rule())) return e->columns.rows();
  if (const auto* o = std::get_if<SequenceSpec::OperatorImage>(&spec.rule())) return o->v.rows();
  if (const auto* s = std::get_if<SequenceSpec::Scaled>(&spec.rule())) return natural_dim(*s->base);
  return std::nullopt;
}

Index resolve_dim(const Job& job, std::initializer_list<const SequenceSpec*> specs) {
  Index dim = 0;
  if (job.dim) {
    dim = *job.dim;
  } else {
    for (const SequenceSpec* s : specs) {
      if (const auto d = natural_dim(*s)) dim = std::max(dim, *d);
    }
    if (dim == 0) throw UsageError("--dim is required for this sequence rule");
  }
  if (dim < 1) throw UsageError("--dim must be positive");
  return dim;
}

// arity * dim members, capped by the length of finite families.
Index resolve_count(const Job& job, Index dim, std::initializer_list<const SequenceSpec*> specs) {
  if (job.count) {
    if (*job.count < 1) throw UsageError("--count must be positive");
    return *job.count;
  }
  Index count = 0;
  for (const SequenceSpec* s : specs) count = std::max(count, s->arity() * dim);
  for (const SequenceSpec* s : specs) {
    if (const auto len = s->length()) count = std::min(count, *len);
  }
  return count;
}

Json input_block(const Job& job, const Tolerances& tol) {
  Json j;
  j["eq_tol"] = tol.eq_tol;
  j["rank_tol"] = tol.rank_tol;
  j["cauchy_tol"] = tol.cauchy_tol;
  j["growth_min"] = tol.growth_min;
  if (!job.ladder.empty()) j["ladder"] = job.ladder;
  if (!job.dense_ladder.empty()) j["dense_ladder"] = job.dense_ladder;
  j["seed"] = job.seed;
  return j;
}

Complex parse_lambda(const std::string& text) {
  // "x" or "x:y" for x + iy
  const auto colon = text.find(':');
  try {
    if (colon == std::string::npos) return std::stod(text);
    return {std::stod(text.substr(0, colon)), std::stod(text.substr(colon + 1))};
  } catch (const std::exception&) {
    throw UsageError("cannot parse lambda value \"" + text + "\"");
  }
}

// ---------------------------------------------------------------------------

Json cmd_classify(const Job& job, const Tolerances& tol) {
  const SequenceSpec spec = load_spec(job.spec_path);
  const Index dim = resolve_dim(job, {&spec});
  const Index count = resolve_count(job, dim, {&spec});
  ClassificationReport report = classify_finite(build_bundle(spec, dim, count, tol), tol);
  if (const auto ladder = ladder_from(job.ladder)) report.asymptotic = diagnose_asymptotic(spec, *ladder, tol);
  if (!job.partner_path.empty()) {
    report.biorthogonal_partner_checked = check_biorthogonal(spec, load_spec(job.partner_path), dim, count, tol);
  }
  Json j;
  j["spec"] = to_json(spec);
  j["dim"] = dim;
  j["count"] = count;
  j["report"] = to_json(report);
  if (!job.weight_matrix_path.empty()) {
    Matrix r;
    try {
      r = matrix_from_json(load_json(job.weight_matrix_path));
    } catch (const Error& e) {
      throw UsageError(job.weight_matrix_path + ": " + e.what());
    }
    const WeightedFrameBounds w = weighted_space_frame(spec, r, dim, count, tol, job.seed);
    j["weighted"] = Json{{"lower", w.lower}, {"upper", w.upper}, {"identity_error", w.identity_error}};
  }
  return j;
}

Json cmd_form_assess(const Job& job, const Tolerances& tol) {
  const SequenceSpec left = load_spec(job.left_path);
  const SequenceSpec right = load_spec(job.right_path);
  const Index dim = resolve_dim(job, {&left, &right});
  const Index count = resolve_count(job, dim, {&left, &right});
  const FormAssessment a = zero_closed_check(left, right, dim, count, tol);
  Json j;
  j["left"] = to_json(left);
  j["right"] = to_json(right);
  j["report"] = to_json(a);
  if (!job.lambdas.empty()) {
    // Outside the weighted Riesz setting this is only a truncation check.
    Json probes = Json::array();
    for (const auto& text : job.lambdas) {
      const Complex lambda = parse_lambda(text);
      const Matrix shifted = a.associated_operator - lambda * Matrix::Identity(dim, dim);
      const Eigen::VectorXd sv = Eigen::JacobiSVD<Matrix>(shifted).singularValues();
      probes.push_back(Json{{"lambda", complex_to_json(lambda)},
                            {"truncation_invertible", numerical_rank(sv, tol.rank_tol) == dim},
                            {"heuristic", true}});
    }
    j["lambda_probes"] = std::move(probes);
  }
  return j;
}

Json cmd_reconstruct(const Job& job, const Tolerances& tol) {
  std::vector<DualSystem> systems;
  Json j;
  Index dim = 0;
  if (!job.spec_path.empty()) {
    const SequenceSpec spec = load_spec(job.spec_path);
    dim = resolve_dim(job, {&spec});
    const Index count = resolve_count(job, dim, {&spec});
    j["spec"] = to_json(spec);
    systems.push_back(canonical_dual(build_bundle(spec, dim, count, tol), tol));
  } else {
    const SequenceSpec left = load_spec(job.left_path);
    const SequenceSpec right = load_spec(job.right_path);
    dim = resolve_dim(job, {&left, &right});
    const Index count = resolve_count(job, dim, {&left, &right});
    j["left"] = to_json(left);
    j["right"] = to_json(right);
    const OperatorBundle bx = build_bundle(left, dim, count, tol);
    const OperatorBundle be = build_bundle(right, dim, count, tol);
    const FormAssessment a = zero_closed_check(bx, be, tol);
    auto [l, r] = reproducing_pair_duals(a, bx, be, tol);
    systems.push_back(std::move(l));
    systems.push_back(std::move(r));
  }

  std::mt19937_64 rng(job.seed);
  std::normal_distribution<double> gauss;
  Json out = Json::array();
  for (const auto& s : systems) {
    double worst = 0.0;
    for (Index t = 0; t < job.samples; ++t) {
      Vector f(dim);
      for (Index i = 0; i < dim; ++i) f(i) = Complex(gauss(rng), gauss(rng));
      f /= f.norm();
      worst = std::max(worst, reconstruct_with(s, CoeffVector(f), tol).residual);
    }
    Json sj = to_json(s);
    sj["samples"] = job.samples;
    sj["max_sampled_residual"] = worst;
    if (!job.vector_path.empty()) {
      std::vector<Complex> values;
      try {
        values = complex_list_from_json(load_json(job.vector_path));
      } catch (const Error& e) {
        throw UsageError(job.vector_path + ": " + e.what());
      }
      const Vector f = Vector::Map(values.data(), static_cast<Index>(values.size()));
      const Reconstruction rec = reconstruct_with(s, CoeffVector(f), tol);
      Json value = Json::array();
      for (Index i = 0; i < rec.value.size(); ++i) value.push_back(complex_to_json(rec.value(i)));
      sj["vector"] = Json{{"reconstruction", std::move(value)}, {"residual", rec.residual}};
    }
    out.push_back(std::move(sj));
  }
  j["dim"] = dim;
  j["systems"] = std::move(out);
  return j;
}

Json cmd_scenario(const Job& job, const Tolerances& tol) {
  if (job.id.empty()) throw UsageError("--id is required");
  ScenarioOptions o;
  o.tol = tol;
  o.seed = job.seed;
  o.ladder = ladder_from(job.ladder);
  o.dense_ladder = ladder_from(job.dense_ladder);
  if (job.dim) {
    if (*job.dim < 1) throw UsageError("--dim must be positive");
    o.dim = *job.dim;
  }
  o.instances = job.instances;
  try {
    if (!job.weights_path.empty()) o.alpha = complex_list_from_json(load_json(job.weights_path));
    if (!job.v_path.empty()) o.v = matrix_from_json(load_json(job.v_path));
  } catch (const Error& e) {
    throw UsageError(e.what());
  }
  return Json{{"report", to_json(run_scenario(job.id, o))}};
}

Json cmd_list() {
  Json list = Json::array();
  for (const auto& s : list_scenarios()) {
    list.push_back(Json{{"id", s.id}, {"summary", s.summary}, {"dense", s.dense}});
  }
  return Json{{"scenarios", std::move(list)}};
}

// ---------------------------------------------------------------------------

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (const char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

// Scalars only; arrays of scalars (matrices, per-rung lists) are JSON-only.
void flatten(const Json& j, const std::string& prefix, std::ostream& out) {
  if (j.is_object()) {
    for (const auto& [k, v] : j.items()) flatten(v, prefix.empty() ? k : prefix + "." + k, out);
  } else if (j.is_array()) {
    if (std::none_of(j.begin(), j.end(), [](const Json& x) { return x.is_object(); })) return;
    for (std::size_t i = 0; i < j.size(); ++i) flatten(j[i], prefix + "." + std::to_string(i), out);
  } else {
    out << csv_escape(prefix) << "," << csv_escape(j.is_string() ? j.get<std::string>() : j.dump()) << "\n";
  }
}

void write_error(std::ostream& err, std::string_view kind, const std::string& message) {
  Json e;
  e["schema"] = kSchema;
  e["error"] = Json{{"kind", kind}, {"message", message}};
  err << e.dump() << "\n";
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Job job;
  CLI::App app{"Sequences, sesquilinear forms and their associated operators", "seqforms"};
  app.require_subcommand(1);

  const auto add_common = [&](CLI::App* sub) {
    sub->add_option("--tol-eq", job.tol_eq, "equality tolerance");
    sub->add_option("--tol-rank", job.tol_rank, "relative rank cutoff");
    sub->add_option("--format", job.format, "output format")->check(CLI::IsMember({"json", "csv"}));
    sub->add_option("--out", job.out_path, "write the report here instead of stdout");
    sub->add_option("--seed", job.seed, "seed for sampled vectors");
  };
  const auto add_window = [&](CLI::App* sub) {
    sub->add_option("--dim", job.dim, "truncation dim");
    sub->add_option("--count", job.count, "number of members");
  };

  CLI::App* classify = app.add_subcommand("classify", "classify one sequence at a truncation");
  classify->add_option("--spec", job.spec_path, "sequence spec JSON")->required();
  add_window(classify);
  classify->add_option("--ladder", job.ladder, "ladder dims for the asymptotic diagnosis")->delimiter(',');
  classify->add_option("--partner", job.partner_path, "spec to test for biorthogonality");
  classify->add_option("--weight-matrix", job.weight_matrix_path, "positive definite R, rows as JSON");
  add_common(classify);

  CLI::App* form = app.add_subcommand("form-assess", "0-closedness of the pair form");
  form->add_option("--left", job.left_path, "xi spec JSON")->required();
  form->add_option("--right", job.right_path, "eta spec JSON")->required();
  add_window(form);
  form->add_option("--lambda", job.lambdas, "probe values x or x:y")->delimiter(',');
  add_common(form);

  CLI::App* rec = app.add_subcommand("reconstruct", "canonical or reproducing-pair duals");
  auto* spec_opt = rec->add_option("--spec", job.spec_path, "lower semi-frame spec (canonical dual)");
  auto* left_opt = rec->add_option("--left", job.left_path, "xi spec (reproducing pair)");
  auto* right_opt = rec->add_option("--right", job.right_path, "eta spec (reproducing pair)");
  spec_opt->excludes(left_opt)->excludes(right_opt);
  left_opt->needs(right_opt);
  right_opt->needs(left_opt);
  add_window(rec);
  rec->add_option("--vector", job.vector_path, "JSON list of coefficients to reconstruct");
  rec->add_option("--samples", job.samples, "random unit vectors for the residual check")
      ->check(CLI::NonNegativeNumber);
  add_common(rec);

  CLI::App* scen = app.add_subcommand("scenario", "run a catalogued scenario");
  scen->add_option("--id", job.id, "scenario id")->required();
  scen->add_option("--ladder", job.ladder, "ladder sizes")->delimiter(',');
  scen->add_option("--dense-ladder", job.dense_ladder, "ladder dims for dense scenarios")->delimiter(',');
  scen->add_option("--dim", job.dim, "dim for weighted-riesz and operator-image");
  scen->add_option("--weights", job.weights_path, "JSON list of weights alpha_n");
  scen->add_option("--v", job.v_path, "invertible V, rows as JSON");
  scen->add_option("--instances", job.instances, "random instances for operator-image")
      ->check(CLI::PositiveNumber);
  add_common(scen);

  CLI::App* list = app.add_subcommand("list", "list scenario ids");
  add_common(list);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    write_error(err, "usage", e.what());
    for (const CLI::App* sub : app.get_subcommands()) err << sub->help();
    return 2;
  }

  const std::string command = app.get_subcommands().front()->get_name();
  const auto start = std::chrono::steady_clock::now();
  Json doc;
  try {
    const Tolerances tol = tolerances(job);
    Json body;
    if (command == "classify") body = cmd_classify(job, tol);
    else if (command == "form-assess") body = cmd_form_assess(job, tol);
    else if (command == "reconstruct") body = cmd_reconstruct(job, tol);
    else if (command == "scenario") body = cmd_scenario(job, tol);
    else body = cmd_list();
    doc["schema"] = kSchema;
    doc["command"] = command;
    doc["input"] = input_block(job, tol);
    for (auto& [k, v] : body.items()) doc[k] = v;
  } catch (const UsageError& e) {
    write_error(err, "usage", e.what());
    return 2;
  } catch (const Error& e) {
    write_error(err, to_string(e.kind()), e.what());
    return e.kind() == ErrorKind::InvalidInput ? 2 : 1;
  } catch (const std::exception& e) {
    write_error(err, "internal", e.what());
    return 1;
  }

  std::ostringstream rendered;
  if (job.format == "csv") {
    rendered << "field,value\n";
    flatten(doc, "", rendered);
  } else {
    rendered << doc.dump(2) << "\n";
  }
  if (job.out_path.empty()) {
    out << rendered.str();
  } else {
    std::ofstream file(job.out_path);
    if (!file) {
      write_error(err, "usage", "cannot write " + job.out_path);
      return 2;
    }
    file << rendered.str();
  }

  // Runtime lives outside the report so the report bytes stay stable.
  const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  Json meta;
  meta["metadata"] = Json{{"command", command}, {"runtime_seconds", seconds}};
  err << meta.dump() << "\n";
  return 0;
}

}  // namespace seqforms::cli
