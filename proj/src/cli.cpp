#include "epiplex/cli.hpp"

#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "epiplex/distinguish.hpp"
#include "epiplex/dot_export.hpp"
#include "epiplex/duality.hpp"
#include "epiplex/json_io.hpp"
#include "epiplex/scenarios.hpp"
#include "epiplex/semantics.hpp"

namespace epiplex {

namespace {

struct CliContext {
  std::istream* in;
  std::ostream* out;
  std::ostream* err;
  bool json_output = false;
  std::uint64_t seed = 1;
  int exit_code = 0;
};

void write_output(CliContext& ctx, const std::string& path, const json& payload) {
  if (path.empty() || path == "-") {
    *ctx.out << payload.dump(2) << "\n";
    return;
  }
  std::ofstream file(path);
  if (!file) throw Error(Errc::BadInput, "cannot write " + path);
  file << payload.dump(2) << "\n";
}

void emit(CliContext& ctx, const json& machine, const std::string& human) {
  if (ctx.json_output)
    *ctx.out << machine.dump(2) << "\n";
  else
    *ctx.out << human << "\n";
}

struct LoadedModel {
  ModelKind kind;
  SimplicialModel simplicial;
  KripkeModel kripke;
  ActionModel action;
};

LoadedModel load_model(CliContext& ctx, const std::string& path,
                       bool require_valid = true) {
  json j = load_json_file(path, *ctx.in);
  LoadedModel m;
  m.kind = detect_kind(j);
  switch (m.kind) {
    case ModelKind::Simplicial: m.simplicial = simplicial_from_json(j); break;
    case ModelKind::Kripke: m.kripke = kripke_from_json(j, ctx.err); break;
    case ModelKind::Action: m.action = action_from_json(j); break;
  }
  if (require_valid) {
    ValidationReport report;
    if (m.kind == ModelKind::Simplicial) report = validate(m.simplicial);
    if (m.kind == ModelKind::Action) report = m.action.validate();
    if (!report.ok())
      throw Error(Errc::BadInput, "invalid model " + path + ": " +
                                      report.problems.front().kind + ": " +
                                      report.problems.front().detail);
  }
  return m;
}

ModelSignature signature_of(const KripkeModel& m) {
  return {m.agents, m.declared_atoms};
}

json example_model_json(const ExampleModel& model) {
  if (std::holds_alternative<SimplicialModel>(model))
    return to_json(std::get<SimplicialModel>(model));
  if (std::holds_alternative<KripkeModel>(model))
    return to_json(std::get<KripkeModel>(model));
  return to_json(std::get<ActionModel>(model));
}

std::string facet_label(const SimplicialModel& m, int facet) {
  std::string out = "F" + std::to_string(facet) + " {";
  for (std::size_t i = 0; i < m.facets[facet].size(); ++i) {
    if (i) out += ",";
    out += m.facets[facet][i];
  }
  return out + "}";
}

void cmd_validate(CliContext& ctx, const std::string& path) {
  auto model = load_model(ctx, path, /*require_valid=*/false);
  ValidationReport report;
  if (model.kind == ModelKind::Simplicial) report = validate(model.simplicial);
  else if (model.kind == ModelKind::Action) report = model.action.validate();
  // Kripke structure is checked during load.

  json problems = json::array();
  for (const auto& p : report.problems)
    problems.push_back({{"kind", p.kind}, {"detail", p.detail}});
  std::string human = report.ok() ? "valid" : "invalid";
  for (const auto& p : report.problems) human += "\n  " + p.kind + ": " + p.detail;
  emit(ctx, {{"valid", report.ok()}, {"problems", problems}}, human);
  ctx.exit_code = report.ok() ? 0 : 1;
}

void cmd_analyze(CliContext& ctx, const std::string& path) {
  auto model = load_model(ctx, path);
  if (model.kind != ModelKind::Kripke)
    throw Error(Errc::BadInput, "analyze expects a Kripke model");
  auto report = analyze(model.kripke);

  json atoms = json::object();
  std::ostringstream human;
  human << (report.is_local ? "local" : "not local") << ", "
        << (report.is_proper ? "proper" : "improper") << ", "
        << (report.is_factual ? "factual" : "not factual");
  for (const auto& [p, holders] : report.local_for) {
    atoms[p] = holders;
    human << "\n  " << p << " local for:";
    if (holders.empty()) human << " (nobody)";
    for (const auto& a : holders) human << " " << a;
  }
  emit(ctx,
       {{"local", report.is_local},
        {"proper", report.is_proper},
        {"factual", report.is_factual},
        {"atoms", atoms}},
       human.str());
}

void cmd_convert(CliContext& ctx, const std::string& path, const std::string& to,
                 const std::string& out_path, const std::string& map_path) {
  auto model = load_model(ctx, path);
  json sidecar = json::object();
  if (to == "simplicial") {
    if (model.kind != ModelKind::Kripke)
      throw Error(Errc::BadInput, "convert --to simplicial expects a Kripke model");
    auto result = sigma(model.kripke);
    json map = json::object();
    for (const auto& [state, facet] : result.facet_of_state) {
      std::string rendered;
      for (const auto& vid : result.model.facets[facet]) {
        if (!rendered.empty()) rendered += ",";
        rendered += vid;
      }
      map[state] = rendered;
    }
    sidecar["map"] = map;
    write_output(ctx, out_path, to_json(result.model));
  } else if (to == "kripke") {
    if (model.kind != ModelKind::Simplicial)
      throw Error(Errc::BadInput, "convert --to kripke expects a simplicial model");
    auto result = kappa(model.simplicial);
    json map = json::object();
    for (const auto& [facet, state] : result.state_of_facet) {
      std::string rendered;
      for (const auto& vid : model.simplicial.facets[facet]) {
        if (!rendered.empty()) rendered += ",";
        rendered += vid;
      }
      map[rendered] = state;
    }
    sidecar["map"] = map;
    write_output(ctx, out_path, to_json(result.model));
  } else {
    throw Error(Errc::BadInput, "convert --to must be simplicial or kripke");
  }
  if (!map_path.empty()) write_output(ctx, map_path, sidecar);
}

void cmd_check(CliContext& ctx, const std::string& path, const std::string& at,
               std::string mode, const std::string& formula_text,
               const std::string& belief_path) {
  auto model = load_model(ctx, path);
  auto formula = parse_formula(formula_text);

  bool result = false;
  if (model.kind == ModelKind::Kripke) {
    if (!mode.empty() && mode != "kripke")
      throw Error(Errc::BadInput, "Kripke models only support --mode kripke");
    auto bound = epiplex::bind(formula, signature_of(model.kripke));
    result = eval_kripke(model.kripke, at, bound);
  } else if (model.kind == ModelKind::Simplicial) {
    if (mode.empty()) mode = "facet";
    auto bound = epiplex::bind(formula, signature_of(model.simplicial));
    BeliefAssignment belief;
    const BeliefAssignment* belief_ptr = nullptr;
    if (!belief_path.empty()) {
      belief = belief_from_json(load_json_file(belief_path, *ctx.in));
      auto report = validate_assignment(model.simplicial, belief);
      if (!report.ok())
        throw Error(Errc::InvalidBeliefAssignment,
                    report.problems.front().kind + ": " + report.problems.front().detail);
      belief_ptr = &belief;
    }
    EvalContext evctx;
    evctx.point = parse_point(model.simplicial, at);
    evctx.belief = belief_ptr;
    if (mode == "facet") evctx.mode = EvalMode::Facet;
    else if (mode == "multipoint") evctx.mode = EvalMode::Multipoint;
    else if (mode == "restricted") evctx.mode = EvalMode::Restricted;
    else if (mode == "simplex") evctx.mode = EvalMode::Simplex;
    else throw Error(Errc::BadInput, "unknown mode " + mode);
    result = evaluate(model.simplicial, evctx, bound);
  } else {
    throw Error(Errc::BadInput, "check expects a simplicial or Kripke model");
  }

  emit(ctx, {{"result", result}}, result ? "true" : "false");
  ctx.exit_code = result ? 0 : 1;
}

void cmd_bisim(CliContext& ctx, const std::string& path1, const std::string& path2,
               const std::vector<std::string>& pointed, bool group, bool quotient,
               const std::string& relation_path, const std::string& covering_path,
               const std::string& out_path) {
  auto m1 = load_model(ctx, path1);
  auto m2 = load_model(ctx, path2);
  if (m1.kind != m2.kind)
    throw Error(Errc::BadInput, "bisim expects two models of the same kind");

  if (quotient) {
    // Same behaviour as the quotient subcommand, applied to the first model.
    if (m1.kind == ModelKind::Kripke)
      write_output(ctx, out_path, to_json(kripke_quotient(m1.kripke)));
    else if (m1.kind == ModelKind::Simplicial)
      write_output(ctx, out_path, to_json(simplicial_quotient(m1.simplicial)));
    else
      throw Error(Errc::BadInput, "quotient expects a simplicial or Kripke model");
    return;
  }

  if (!relation_path.empty()) {
    if (m1.kind != ModelKind::Simplicial)
      throw Error(Errc::BadInput, "--check-relation expects simplicial models");
    auto rel = relation_from_json(load_json_file(relation_path, *ctx.in), m1.simplicial,
                                  m2.simplicial);
    auto check = check_relation(m1.simplicial, m2.simplicial, rel);
    std::string verdict = check.verdict == RelationClass::Bisimulation ? "bisimulation"
                          : check.verdict == RelationClass::Simulation ? "simulation"
                                                                       : "neither";
    std::string human = verdict;
    if (check.verdict != RelationClass::Bisimulation)
      human += "\n  violated: " + check.violated_clause + "\n  witness: " + check.witness;
    emit(ctx,
         {{"verdict", verdict},
          {"violated", check.violated_clause},
          {"witness", check.witness}},
         human);
    ctx.exit_code = check.verdict == RelationClass::Bisimulation ? 0 : 1;
    return;
  }

  if (!covering_path.empty()) {
    if (m1.kind != ModelKind::Simplicial)
      throw Error(Errc::BadInput, "--covering expects simplicial models");
    auto map = vertex_map_from_json(load_json_file(covering_path, *ctx.in));
    auto report = is_covering(m1.simplicial, map, m2.simplicial);
    std::string human = report.ok ? "covering" : "not a covering: " + report.reason;
    emit(ctx,
         {{"covering", report.ok},
          {"reason", report.reason},
          {"witness", report.witness_simplex},
          {"total_bisimulation", report.induced_total_bisimulation}},
         human);
    ctx.exit_code = report.ok ? 0 : 1;
    return;
  }

  if (m1.kind == ModelKind::Kripke) {
    auto rel = group ? group_max_bisimulation(m1.kripke, m2.kripke)
                     : kripke_max_bisimulation(m1.kripke, m2.kripke);
    if (!pointed.empty()) {
      int s = m1.kripke.state_index(pointed[0]);
      int t = m2.kripke.state_index(pointed[1]);
      if (s < 0 || t < 0) throw Error(Errc::BadInput, "unknown pointed state");
      bool related = std::find(rel.pairs.begin(), rel.pairs.end(),
                               std::make_pair(s, t)) != rel.pairs.end();
      emit(ctx, {{"bisimilar", related}},
           related ? "bisimilar" : "not bisimilar");
      ctx.exit_code = related ? 0 : 1;
      return;
    }
    emit(ctx, {{"bisimilar", !rel.empty()}, {"pairs", rel.pairs.size()}},
         rel.empty() ? "not bisimilar" : "bisimilar");
    ctx.exit_code = rel.empty() ? 1 : 0;
    return;
  }

  if (m1.kind != ModelKind::Simplicial)
    throw Error(Errc::BadInput, "bisim expects simplicial or Kripke models");

  auto rel = group ? group_max_bisimulation(m1.simplicial, m2.simplicial)
                   : max_bisimulation(m1.simplicial, m2.simplicial);
  if (!pointed.empty()) {
    int f = parse_facet_ref(m1.simplicial, pointed[0]);
    int g = parse_facet_ref(m2.simplicial, pointed[1]);
    bool related = std::find(rel.pairs.begin(), rel.pairs.end(),
                             std::make_pair(f, g)) != rel.pairs.end();
    emit(ctx, {{"bisimilar", related}}, related ? "bisimilar" : "not bisimilar");
    ctx.exit_code = related ? 0 : 1;
    return;
  }

  // Bisimilar means some bisimulation exists, i.e. the maximal relation is
  // nonempty; facets without a partner are reported either way.
  auto left_unmatched = unmatched_facets(m1.simplicial, m2.simplicial);
  bool bisimilar = !rel.empty();
  json machine = {{"bisimilar", bisimilar},
                  {"total", left_unmatched.empty() && bisimilar},
                  {"pairs", rel.pairs.size()}};
  std::string human = bisimilar ? "bisimilar" : "not bisimilar";
  if (bisimilar && !left_unmatched.empty()) human += " (not total)";
  if (!left_unmatched.empty()) {
    machine["unmatched"] = json::array();
    for (int f : left_unmatched) {
      machine["unmatched"].push_back(facet_label(m1.simplicial, f));
      human += "\n  unmatched: " + facet_label(m1.simplicial, f);
    }
  }
  emit(ctx, machine, human);
  ctx.exit_code = bisimilar ? 0 : 1;
}

void cmd_quotient(CliContext& ctx, const std::string& path, const std::string& out_path) {
  auto model = load_model(ctx, path);
  if (model.kind == ModelKind::Kripke)
    write_output(ctx, out_path, to_json(kripke_quotient(model.kripke)));
  else if (model.kind == ModelKind::Simplicial)
    write_output(ctx, out_path, to_json(simplicial_quotient(model.simplicial)));
  else
    throw Error(Errc::BadInput, "quotient expects a simplicial or Kripke model");
}

void cmd_product(CliContext& ctx, const std::string& model_path,
                 const std::string& action_path, const std::string& out_path) {
  auto model = load_model(ctx, model_path);
  auto action = load_model(ctx, action_path);
  if (model.kind != ModelKind::Simplicial || action.kind != ModelKind::Action)
    throw Error(Errc::BadInput, "product expects a simplicial model and an action model");
  write_output(ctx, out_path, to_json(product(model.simplicial, action.action)));
}

void cmd_distinguish(CliContext& ctx, const std::string& path, const std::string& state,
                     bool local) {
  auto model = load_model(ctx, path);
  if (model.kind != ModelKind::Kripke)
    throw Error(Errc::BadInput, "distinguish expects a Kripke model");

  const KripkeModel* table_model = &model.kripke;
  DeltaTable table;
  bool is_bisim = false;
  KripkeModel localized;
  if (local) {
    auto result = delta_local(model.kripke);
    localized = std::move(result.localized);
    table = std::move(result.table);
    is_bisim = result.relation_is_bisimulation;
    table_model = &localized;
  } else {
    auto result = delta_global(model.kripke);
    table = std::move(result.table);
    is_bisim = result.relation_is_bisimulation;
  }

  json machine;
  machine["relation_is_bisimulation"] = is_bisim;
  machine["formulas"] = json::object();
  std::ostringstream human;
  human << "relation is " << (is_bisim ? "" : "NOT ") << "a bisimulation";
  for (std::size_t s = 0; s < table.state_ids.size(); ++s) {
    if (!state.empty() && table.state_ids[s] != state) continue;
    auto rendered = to_string(table.final_formula(static_cast<int>(s)));
    machine["formulas"][table.state_ids[s]] = rendered;
    human << "\ndelta_" << table.state_ids[s] << " = " << rendered;
  }
  if (local) machine["localized"] = to_json(*table_model);
  emit(ctx, machine, human.str());
}

void cmd_localize(CliContext& ctx, const std::string& path, const std::string& method,
                  const std::string& out_path) {
  auto model = load_model(ctx, path);
  if (model.kind != ModelKind::Kripke)
    throw Error(Errc::BadInput, "localize expects a Kripke model");
  if (method == "ledent")
    write_output(ctx, out_path, to_json(localize_ledent(model.kripke)));
  else if (method == "delta")
    write_output(ctx, out_path, to_json(delta_local(model.kripke).localized));
  else
    throw Error(Errc::BadInput, "localize --method must be ledent or delta");
}

void cmd_same_info(CliContext& ctx, const std::string& path1, const std::string& path2) {
  auto m1 = load_model(ctx, path1);
  auto m2 = load_model(ctx, path2);
  if (m1.kind != ModelKind::Kripke || m2.kind != ModelKind::Kripke)
    throw Error(Errc::BadInput, "same-info expects Kripke models");
  auto report = same_information(m1.kripke, m2.kripke);
  emit(ctx, {{"equal", report.equal}, {"witness", report.witness}},
       report.equal ? "equal" : "differs\n  witness block: " + report.witness);
  ctx.exit_code = report.equal ? 0 : 1;
}

void cmd_gen(CliContext& ctx, const std::string& name, int agents, int size,
             const std::string& policy, const std::string& from_path,
             const std::string& formula_text, const std::string& agent,
             const std::string& atom, const std::string& out_path) {
  json payload;
  if (name == "muddy-children") payload = to_json(muddy_children(agents));
  else if (name == "binary-inputs") payload = to_json(binary_inputs(agents));
  else if (name == "binary-inputs-kripke") payload = to_json(binary_inputs_kripke(agents));
  else if (name == "single-facet") payload = to_json(single_facet(agents));
  else if (name == "consensus-action")
    payload = to_json(binary_consensus_action(
        agents, policy == "majority" ? ConsensusPolicy::Majority : ConsensusPolicy::Reset));
  else if (name == "random-simplicial")
    payload = to_json(random_simplicial(agents, std::max(2, size), ctx.seed));
  else if (name == "random-kripke")
    payload = to_json(random_local_proper(agents, std::max(2, size), ctx.seed));
  else if (name == "subdivision") {
    if (from_path.empty()) throw Error(Errc::BadInput, "subdivision needs --from <model>");
    auto model = load_model(ctx, from_path);
    if (model.kind != ModelKind::Simplicial)
      throw Error(Errc::BadInput, "subdivision expects a simplicial model");
    payload = to_json(chromatic_subdivision(model.simplicial));
  } else if (name == "public-announcement") {
    if (from_path.empty() || formula_text.empty())
      throw Error(Errc::BadInput, "public-announcement needs --from and --formula");
    auto model = load_model(ctx, from_path);
    if (model.kind != ModelKind::Simplicial)
      throw Error(Errc::BadInput, "public-announcement expects a simplicial model");
    auto f = epiplex::bind(parse_formula(formula_text), signature_of(model.simplicial));
    payload = to_json(public_announcement(model.simplicial.agents, f));
  } else if (name == "public-assignment") {
    if (from_path.empty() || formula_text.empty() || agent.empty() || atom.empty())
      throw Error(Errc::BadInput,
                  "public-assignment needs --from, --agent, --atom and --formula");
    auto model = load_model(ctx, from_path);
    if (model.kind != ModelKind::Simplicial)
      throw Error(Errc::BadInput, "public-assignment expects a simplicial model");
    auto f = epiplex::bind(parse_formula(formula_text), signature_of(model.simplicial));
    payload = to_json(public_assignment(model.simplicial.agents, agent, atom, f));
  } else {
    payload = example_model_json(example_model(name));
  }
  write_output(ctx, out_path, payload);
}

void cmd_export(CliContext& ctx, const std::string& path, const std::string& format,
                const std::string& graph, const std::string& out_path) {
  auto model = load_model(ctx, path);
  if (format == "json") {
    if (model.kind == ModelKind::Simplicial)
      write_output(ctx, out_path, to_json(model.simplicial));
    else if (model.kind == ModelKind::Kripke)
      write_output(ctx, out_path, to_json(model.kripke));
    else
      write_output(ctx, out_path, to_json(model.action));
    return;
  }
  if (format != "dot") throw Error(Errc::BadInput, "export --format must be dot or json");
  std::string dot;
  if (model.kind == ModelKind::Simplicial)
    dot = to_dot(model.simplicial,
                 graph == "vertices" ? DotGraph::Vertices : DotGraph::Facets);
  else if (model.kind == ModelKind::Kripke)
    dot = to_dot(model.kripke);
  else
    throw Error(Errc::BadInput, "dot export expects a simplicial or Kripke model");
  if (out_path.empty() || out_path == "-") {
    *ctx.out << dot;
  } else {
    std::ofstream file(out_path);
    if (!file) throw Error(Errc::BadInput, "cannot write " + out_path);
    file << dot;
  }
}

void cmd_covering(CliContext& ctx, const std::string& path1, const std::string& path2,
                  const std::string& map_path) {
  auto m1 = load_model(ctx, path1);
  auto m2 = load_model(ctx, path2);
  if (m1.kind != ModelKind::Simplicial || m2.kind != ModelKind::Simplicial)
    throw Error(Errc::BadInput, "covering expects simplicial models");
  auto map = vertex_map_from_json(load_json_file(map_path, *ctx.in));
  auto report = is_covering(m1.simplicial, map, m2.simplicial);
  std::string human = report.ok
                          ? std::string("covering") +
                                (report.induced_total_bisimulation
                                     ? " (induced relation is a total bisimulation)"
                                     : "")
                          : "not a covering: " + report.reason;
  emit(ctx,
       {{"covering", report.ok},
        {"reason", report.reason},
        {"witness", report.witness_simplex},
        {"total_bisimulation", report.induced_total_bisimulation}},
       human);
  ctx.exit_code = report.ok ? 0 : 1;
}

}  // namespace

int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out,
        std::ostream& err) {
  CliContext ctx{&in, &out, &err};

  CLI::App app{"Epistemic logic on chromatic simplicial complexes"};
  app.require_subcommand(1);
  app.fallthrough();  // global flags may follow the subcommand
  app.add_flag("--json", ctx.json_output, "machine-readable output");
  app.add_option("--seed", ctx.seed, "seed for the random generators");

  std::string path, path2, out_path, map_path, mode, formula, at, belief, to, method;
  std::string relation_path, covering_path, format{"json"}, graph{"facets"}, state;
  std::string policy, from_path, gen_agent, gen_atom, name;
  std::vector<std::string> pointed;
  bool group = false, local = false, quotient = false;
  int agents = 3, size = 8;

  auto* validate_cmd = app.add_subcommand("validate", "validate a model file");
  validate_cmd->add_option("model", path)->required();

  auto* analyze_cmd = app.add_subcommand("analyze", "locality/properness report");
  analyze_cmd->add_option("model", path)->required();

  auto* convert_cmd = app.add_subcommand("convert", "translate between model classes");
  convert_cmd->add_option("model", path)->required();
  convert_cmd->add_option("--to", to)->required();
  convert_cmd->add_option("-o,--output", out_path);
  convert_cmd->add_option("--map", map_path);

  auto* check_cmd = app.add_subcommand("check", "evaluate a formula");
  check_cmd->add_option("model", path)->required();
  check_cmd->add_option("--at", at)->required();
  check_cmd->add_option("--mode", mode);
  check_cmd->add_option("--formula", formula)->required();
  check_cmd->add_option("--belief", belief);

  auto* bisim_cmd = app.add_subcommand("bisim", "bisimulation queries");
  bisim_cmd->add_option("model1", path)->required();
  bisim_cmd->add_option("model2", path2)->required();
  bisim_cmd->add_option("--pointed", pointed)->expected(2);
  bisim_cmd->add_flag("--group", group);
  bisim_cmd->add_flag("--quotient", quotient);
  bisim_cmd->add_option("--check-relation", relation_path);
  bisim_cmd->add_option("--covering", covering_path);
  bisim_cmd->add_option("-o,--output", out_path);

  auto* quotient_cmd = app.add_subcommand("quotient", "bisimulation quotient");
  quotient_cmd->add_option("model", path)->required();
  quotient_cmd->add_option("-o,--output", out_path);

  auto* product_cmd = app.add_subcommand("product", "restricted product with an action");
  product_cmd->add_option("model", path)->required();
  product_cmd->add_option("action", path2)->required();
  product_cmd->add_option("-o,--output", out_path);

  auto* distinguish_cmd = app.add_subcommand("distinguish", "distinguishing formulas");
  distinguish_cmd->add_option("model", path)->required();
  distinguish_cmd->add_option("--state", state);
  distinguish_cmd->add_flag("--local", local);

  auto* localize_cmd = app.add_subcommand("localize", "rewrite with local variables");
  localize_cmd->add_option("model", path)->required();
  localize_cmd->add_option("--method", method)->required();
  localize_cmd->add_option("-o,--output", out_path);

  auto* sameinfo_cmd = app.add_subcommand("same-info", "compare information content");
  sameinfo_cmd->add_option("model1", path)->required();
  sameinfo_cmd->add_option("model2", path2)->required();

  auto* gen_cmd = app.add_subcommand("gen", "generate a scenario model");
  gen_cmd->add_option("name", name)->required();
  gen_cmd->add_option("--agents", agents);
  gen_cmd->add_option("--size", size);
  gen_cmd->add_option("--policy", policy);
  gen_cmd->add_option("--from", from_path);
  gen_cmd->add_option("--formula", formula);
  gen_cmd->add_option("--agent", gen_agent);
  gen_cmd->add_option("--atom", gen_atom);
  gen_cmd->add_option("-o,--output", out_path);

  auto* export_cmd = app.add_subcommand("export", "write dot or canonical json");
  export_cmd->add_option("model", path)->required();
  export_cmd->add_option("--format", format);
  export_cmd->add_option("--graph", graph);
  export_cmd->add_option("-o,--output", out_path);

  auto* covering_cmd = app.add_subcommand("covering", "verify a covering map");
  covering_cmd->add_option("model1", path)->required();
  covering_cmd->add_option("model2", path2)->required();
  covering_cmd->add_option("--map", map_path)->required();

  std::vector<const char*> argv;
  argv.push_back("epiplex");
  for (const auto& a : args) argv.push_back(a.c_str());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      out << app.help();
      return 0;
    }
    err << "error: " << e.what() << "\n";
    return 2;
  }

  try {
    if (validate_cmd->parsed()) cmd_validate(ctx, path);
    else if (analyze_cmd->parsed()) cmd_analyze(ctx, path);
    else if (convert_cmd->parsed()) cmd_convert(ctx, path, to, out_path, map_path);
    else if (check_cmd->parsed()) cmd_check(ctx, path, at, mode, formula, belief);
    else if (bisim_cmd->parsed())
      cmd_bisim(ctx, path, path2, pointed, group, quotient, relation_path,
                covering_path, out_path);
    else if (quotient_cmd->parsed()) cmd_quotient(ctx, path, out_path);
    else if (product_cmd->parsed()) cmd_product(ctx, path, path2, out_path);
    else if (distinguish_cmd->parsed()) cmd_distinguish(ctx, path, state, local);
    else if (localize_cmd->parsed()) cmd_localize(ctx, path, method, out_path);
    else if (sameinfo_cmd->parsed()) cmd_same_info(ctx, path, path2);
    else if (gen_cmd->parsed())
      cmd_gen(ctx, name, agents, size, policy, from_path, formula, gen_agent, gen_atom,
              out_path);
    else if (export_cmd->parsed()) cmd_export(ctx, path, format, graph, out_path);
    else if (covering_cmd->parsed()) cmd_covering(ctx, path, path2, map_path);
  } catch (const Error& e) {
    if (ctx.json_output) {
      json payload = {{"error", e.code_name()}, {"message", e.what()}};
      err << payload.dump(2) << "\n";
    } else {
      err << "error:" << e.code_name() << ": " << e.what() << "\n";
    }
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
  return ctx.exit_code;
}

}  // namespace epiplex
