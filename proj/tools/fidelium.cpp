#include <iostream>
#include <memory>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "fidelium/eval.hpp"
#include "fidelium/files.hpp"
#include "fidelium/prop.hpp"
#include "fidelium/zf.hpp"
#include "json.hpp"

using namespace fidelium;
using Json = nlohmann::ordered_json;

namespace {

struct Inputs {
  std::string universe_path, algebra_path, structure_path;
  std::string ruleset, policy, swap_spec, at_name, var = "x", var2 = "y";
  std::vector<std::string> table_entries;
  int max_rank = -1, max_dom = -1;
  std::uint64_t budget = 200000;
  bool json = false;
};

void add_input_flags(CLI::App* cmd, Inputs& in) {
  cmd->add_option("--universe", in.universe_path, "universe file with the working names");
  cmd->add_option("--algebra", in.algebra_path, "algebra file (empty fragment)");
  cmd->add_option("--structure", in.structure_path, "structure file; sets the rule set");
  cmd->add_option("--max-rank", in.max_rank, "also enumerate all names up to this rank");
  cmd->add_option("--max-dom", in.max_dom, "cap domain size during enumeration");
  cmd->add_option("--budget", in.budget, "enumeration / construction budget");
}

void add_eval_flags(CLI::App* cmd, Inputs& in) {
  cmd->add_option("--ruleset", in.ruleset, "hv | n4 | c1 | comega | bv2 (bare algebras: hv, bv2)");
  cmd->add_option("--policy", in.policy, "constant-top | complement | swap | table");
  cmd->add_option("--swap", in.swap_spec, "the two names the swap policy exchanges, as 'u,v'");
  cmd->add_option("--table", in.table_entries, "policy table entry 'formula=element' (repeatable)")
      ->take_all();
}

void add_format_flag(CLI::App* cmd, Inputs& in) {
  cmd->add_flag_callback("--format-json", [&in] { in.json = true; },
                         "emit the report as JSON instead of text");
}

struct Resolved {
  std::shared_ptr<UniverseFragment> frag;
  std::optional<FidelStructure> structure;
};

Resolved resolve_inputs(const Inputs& in) {
  Resolved out;
  std::optional<FidelStructure> file_structure;
  if (!in.structure_path.empty()) file_structure = load_structure_file(in.structure_path);
  if (!in.universe_path.empty()) {
    LoadedUniverse lu = load_universe_file(in.universe_path);
    out.frag = lu.fragment;
    out.structure = lu.structure;
  } else if (!in.algebra_path.empty()) {
    out.frag = std::make_shared<UniverseFragment>(load_algebra_file(in.algebra_path));
  } else if (file_structure) {
    out.frag = std::make_shared<UniverseFragment>(file_structure->algebra);
  } else {
    fail(ErrorCode::io_error, "give --universe, --algebra, or --structure");
  }
  if (file_structure) {
    if (file_structure->algebra != out.frag->algebra()) {
      if (save_algebra(*file_structure->algebra) != save_algebra(*out.frag->algebra()))
        fail(ErrorCode::mixed_algebras,
             "the structure file and the fragment use different algebras");
      file_structure = FidelStructure::make(out.frag->algebra(), file_structure->kind,
                                            file_structure->n_family, file_structure->o_family,
                                            file_structure->strict);
    }
    out.structure = file_structure;
  }
  if (in.max_rank >= 0)
    out.frag->enumerate_names(in.max_rank,
                              in.max_dom >= 0 ? std::optional<int>(in.max_dom) : std::nullopt,
                              in.budget);
  return out;
}

NegationPolicy make_policy(const Inputs& in, UniverseFragment& frag, RuleSet rs) {
  std::string kind = in.policy;
  if (kind.empty())
    kind = rs == RuleSet::c1 || rs == RuleSet::comega ? "complement" : "constant-top";
  auto pk = policy_kind_from(kind);
  if (!pk) fail(ErrorCode::io_error, "unknown policy '" + kind + "'");
  switch (*pk) {
    case PolicyKind::constant_top: return NegationPolicy::constant_top();
    case PolicyKind::complement: return NegationPolicy::complement();
    case PolicyKind::swap: {
      auto comma = in.swap_spec.find(',');
      if (comma == std::string::npos)
        fail(ErrorCode::io_error, "the swap policy needs --swap 'u,v'");
      NameId a = parse_name_expr(frag, in.swap_spec.substr(0, comma));
      NameId b = parse_name_expr(frag, in.swap_spec.substr(comma + 1));
      return NegationPolicy::swap(a, b);
    }
    case PolicyKind::table: {
      std::vector<std::pair<std::string, std::string>> entries;
      for (const std::string& e : in.table_entries) {
        auto eq = e.rfind('=');
        if (eq == std::string::npos)
          fail(ErrorCode::io_error, "table entries look like 'formula=element', got '" + e + "'");
        entries.emplace_back(e.substr(0, eq), e.substr(eq + 1));
      }
      return NegationPolicy::from_table(std::move(entries));
    }
  }
  fail(ErrorCode::io_error, "unknown policy");
}

EvalContext make_context(Resolved& r, const Inputs& in) {
  RuleSet rs = RuleSet::hv;
  if (!in.ruleset.empty()) {
    auto o = rule_set_from(in.ruleset);
    if (!o) fail(ErrorCode::io_error, "unknown rule set '" + in.ruleset + "'");
    rs = *o;
  }
  if (r.structure) {
    RuleSet from_kind = r.structure->kind == FidelKind::n4   ? RuleSet::n4
                        : r.structure->kind == FidelKind::c1 ? RuleSet::c1
                                                             : RuleSet::comega;
    if (!in.ruleset.empty() && rs != from_kind)
      fail(ErrorCode::kind_mismatch, std::string("--ruleset ") + rule_set_name(rs) +
                                         " conflicts with the structure kind " +
                                         fidel_kind_name(r.structure->kind));
    return EvalContext(*r.structure, *r.frag, make_policy(in, *r.frag, from_kind));
  }
  return EvalContext(*r.frag, rs, make_policy(in, *r.frag, rs));
}

FormulaPtr parse_in_fragment(const std::string& text, UniverseFragment& frag) {
  ParseEnv env;
  env.lookup_name = [&frag](const std::string& s) { return frag.lookup(s); };
  return parse_formula(text, env);
}

void emit(const Inputs& in, const std::string& text, const Json& j) {
  if (in.json)
    std::cout << j.dump(2) << "\n";
  else
    std::cout << text;
}

int cmd_algebra_check(const std::string& path, const std::string& save_path, const Inputs& in) {
  AlgebraHandle a = load_algebra_file(path);
  const HeytingStructure& h = a->heyting;
  std::string text;
  Json j;
  j["command"] = "algebra check";
  j["elements"] = h.lattice().names();
  j["class"] = algebra_class_name(a->classification());
  j["chain"] = h.lattice().is_chain();
  text += "elements: " + std::to_string(h.size()) + "\n";
  text += std::string("class: ") + algebra_class_name(a->classification()) + "\n";
  text += std::string("chain: ") + (h.lattice().is_chain() ? "yes" : "no") + "\n";
  text += "top: " + h.name(h.top()) + "\n";
  if (h.bottom()) text += "bottom: " + h.name(*h.bottom()) + "\n";
  Json imp;
  text += "implies:\n";
  for (Elem x = 0; x < h.size(); ++x)
    for (Elem y = 0; y < h.size(); ++y) {
      text += "  " + h.name(x) + " -> " + h.name(y) + " = " + h.name(h.implies(x, y)) + "\n";
      imp[h.name(x)][h.name(y)] = h.name(h.implies(x, y));
    }
  j["implies"] = std::move(imp);
  if (h.has_neg()) {
    Json neg;
    text += "neg:\n";
    for (Elem x = 0; x < h.size(); ++x) {
      text += "  ~" + h.name(x) + " = " + h.name(h.neg(x)) + "\n";
      neg[h.name(x)] = h.name(h.neg(x));
    }
    j["neg"] = std::move(neg);
  }
  if (!save_path.empty()) write_file(save_path, save_algebra(*a));
  emit(in, text, j);
  return 0;
}

int cmd_structure_check(const std::string& path, const Inputs& in) {
  FidelStructure s = load_structure_file(path);
  StructureReport r = verify_structure(s);
  Json j;
  j["command"] = "structure check";
  j["kind"] = fidel_kind_name(r.kind);
  j["valid"] = r.valid;
  j["saturated"] = s.is_saturated();
  Json viols = Json::array();
  for (const auto& v : r.violations) viols.push_back({{"condition", v.condition}, {"detail", v.detail}});
  j["violations"] = std::move(viols);
  emit(in, r.to_text() + (s.is_saturated() ? "saturated: yes\n" : "saturated: no\n"), j);
  return r.valid ? 0 : 1;
}

int cmd_prop(const std::string& formula_text, const std::string& logic_text, int max_size,
             bool want_countermodel, const Inputs& in) {
  auto logic = logic_from(logic_text);
  if (!logic) fail(ErrorCode::io_error, "unknown logic '" + logic_text + "'");
  FormulaPtr f = parse_formula(formula_text);
  PropVerdict v = prop_validity(f, *logic, max_size);
  Json j;
  j["command"] = want_countermodel ? "prop countermodel" : "prop validate";
  j["formula"] = print_formula(f);
  j["logic"] = logic_name(*logic);
  j["valid"] = v.valid;
  j["structures_checked"] = v.structures_checked;
  j["valuations_checked"] = v.valuations_checked;
  std::string text;
  text += "formula: " + print_formula(f) + "\n";
  text += std::string("valid over ") + logic_name(*logic) + " up to size " +
          std::to_string(max_size) + ": " + (v.valid ? "yes" : "no") + "\n";
  text += "structures checked: " + std::to_string(v.structures_checked) +
          ", valuations: " + std::to_string(v.valuations_checked) + "\n";
  if (v.countermodel) {
    text += v.countermodel->to_text();
    Json cm;
    cm["value"] = v.countermodel->value;
    Json val = Json::array();
    for (const auto& [ftext, e] : v.countermodel->valuation)
      val.push_back({{"formula", ftext}, {"element", e}});
    cm["valuation"] = std::move(val);
    j["countermodel"] = std::move(cm);
  }
  emit(in, text, j);
  if (want_countermodel) return v.countermodel ? 0 : 1;
  return v.valid ? 0 : 1;
}

int cmd_prop_derive(const std::string& path, const Inputs& in) {
  Json j = Json::parse(read_file(path));
  auto logic = logic_from(j.value("logic", std::string("n4")));
  if (!logic) fail(ErrorCode::io_error, "unknown logic in the derivation file");
  std::vector<FormulaPtr> premises;
  for (const auto& p : j.value("premises", Json::array())) premises.push_back(parse_formula(p));
  std::vector<DerivationStep> steps;
  for (const auto& s : j.at("steps")) {
    DerivationStep st;
    st.formula = parse_formula(s.at("formula").get<std::string>());
    std::string just = s.value("just", std::string("premise"));
    if (just == "premise") st.just = DerivationStep::Just::premise;
    else if (just == "axiom") st.just = DerivationStep::Just::axiom;
    else if (just == "mp") st.just = DerivationStep::Just::mp;
    else fail(ErrorCode::bad_justification, "unknown justification '" + just + "'");
    st.axiom_id = s.value("axiom", std::string());
    st.imp_step = s.value("imp", -1);
    st.ant_step = s.value("ant", -1);
    steps.push_back(std::move(st));
  }
  DerivationVerdict v = check_derivation(premises, steps, *logic);
  Json out;
  out["command"] = "prop derive";
  out["valid"] = v.valid;
  std::string text = std::string("derivation: ") + (v.valid ? "valid" : "invalid") + "\n";
  if (!v.valid) {
    out["bad_step"] = v.bad_step;
    out["reason"] = v.reason;
    text += "step " + std::to_string(v.bad_step) + ": " + v.reason + "\n";
  }
  emit(in, text, out);
  return v.valid ? 0 : 1;
}

int cmd_name_eval(const std::string& expr, Inputs& in) {
  Resolved r = resolve_inputs(in);
  NameId id = parse_name_expr(*r.frag, expr);
  const Name& n = r.frag->name(id);
  Json j;
  j["command"] = "name eval";
  j["name"] = r.frag->describe(id);
  j["label"] = r.frag->label_of(id);
  j["rank"] = n.rank;
  j["domain_size"] = n.graph.size();
  std::string text = "name: " + r.frag->describe(id) + "\n";
  text += "label: " + r.frag->label_of(id) + "\n";
  text += "rank: " + std::to_string(n.rank) +
          ", domain size: " + std::to_string(n.graph.size()) + "\n";
  emit(in, text, j);
  return 0;
}

int cmd_eval(const std::string& formula_text, bool audit, bool trace, Inputs& in) {
  Resolved r = resolve_inputs(in);
  EvalContext ctx = make_context(r, in);
  ctx.set_trace(trace);
  FormulaPtr f = parse_in_fragment(formula_text, *r.frag);
  Json j;
  j["command"] = "eval";
  j["formula"] = ctx.formula_text(f);
  j["ruleset"] = rule_set_name(ctx.rule_set());
  j["policy"] = ctx.policy().describe();
  std::string text = "formula: " + ctx.formula_text(f) + "\n";
  text += std::string("ruleset: ") + rule_set_name(ctx.rule_set()) +
          ", policy: " + ctx.policy().describe() + "\n";
  bool have_value = true;
  EvalResult res;
  if (!in.at_name.empty()) {
    res = ctx.eval_at(f, in.var, parse_name_expr(*r.frag, in.at_name));
  } else {
    try {
      res = ctx.eval_sentence(f);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::open_formula || !audit) throw;
      have_value = false;
    }
  }
  if (have_value) {
    j["value"] = ctx.element_name(res.value);
    j["exact"] = res.exact;
    text += "value: " + ctx.element_name(res.value) +
            (res.exact ? "" : "  (fragment-relative)") + "\n";
  }
  int code = 0;
  if (audit) {
    LeibnizReport lr = ctx.check_leibniz({{in.var, f}});
    j["audit_pairs"] = lr.pairs_checked;
    j["audit_ok"] = lr.ok();
    text += lr.to_text(*r.frag);
    if (!lr.ok()) code = 1;
  }
  if (trace) {
    Json t = Json::array();
    for (const auto& line : ctx.trace()) {
      text += line + "\n";
      t.push_back(line);
    }
    j["trace"] = std::move(t);
  }
  emit(in, text, j);
  return code;
}

int cmd_universe_enumerate(bool list, Inputs& in) {
  if (in.max_rank < 0) in.max_rank = 2;
  Resolved r = resolve_inputs(in);
  std::vector<NameId> ids = r.frag->all_ids();
  Json j;
  j["command"] = "universe enumerate";
  j["max_rank"] = in.max_rank;
  if (in.max_dom >= 0) j["max_dom"] = in.max_dom;
  j["count"] = ids.size();
  std::string text = "names: " + std::to_string(ids.size()) + "\n";
  if (list) {
    Json names = Json::array();
    for (NameId id : ids) {
      text += "  " + r.frag->describe(id) + "\n";
      names.push_back(r.frag->describe(id));
    }
    j["names"] = std::move(names);
  }
  emit(in, text, j);
  return 0;
}

Json axiom_report_json(const AxiomReport& r, const EvalContext& ctx) {
  Json j;
  j["axiom"] = zf_axiom_name(r.axiom);
  j["value"] = ctx.element_name(r.value);
  j["holds"] = r.holds;
  j["exact"] = r.exact;
  Json w = Json::array();
  for (NameId id : r.witnesses) w.push_back(ctx.fragment().describe(id));
  j["witnesses"] = std::move(w);
  Json d = Json::array();
  for (const auto& c : r.details)
    d.push_back({{"what", c.what}, {"value", ctx.element_name(c.value)}, {"holds", c.holds}});
  j["details"] = std::move(d);
  j["note"] = r.note;
  return j;
}

int cmd_zf_check(const std::string& axiom_text, const std::string& names_spec,
                 const std::string& phi_text, const std::string& candidate, int steps,
                 Inputs& in) {
  auto axiom = zf_axiom_from(axiom_text);
  if (!axiom) {
    if (axiom_text == "choice" || axiom_text == "zorn")
      fail(ErrorCode::unsupported_axiom,
           axiom_text + " is not finitely checkable here; see the axiom list in --help");
    fail(ErrorCode::unsupported_axiom, "unknown axiom '" + axiom_text + "'");
  }
  Resolved r = resolve_inputs(in);
  EvalContext ctx = make_context(r, in);
  AxiomParams params;
  params.var = in.var;
  params.var2 = in.var2;
  params.steps = steps;
  params.budget = in.budget;
  if (!names_spec.empty()) {
    size_t start = 0;
    while (start <= names_spec.size()) {
      size_t comma = names_spec.find(',', start);
      std::string one = names_spec.substr(start, comma == std::string::npos ? std::string::npos
                                                                            : comma - start);
      if (!one.empty()) params.names.push_back(parse_name_expr(*r.frag, one));
      if (comma == std::string::npos) break;
      start = comma + 1;
    }
  }
  if (!phi_text.empty()) params.phi = parse_in_fragment(phi_text, *r.frag);
  if (!candidate.empty()) params.candidate = parse_name_expr(*r.frag, candidate);
  AxiomReport rep = check_axiom(ctx, *axiom, std::move(params));
  emit(in, rep.to_text(ctx), axiom_report_json(rep, ctx));
  return rep.holds ? 0 : 1;
}

int cmd_zf_repro(const std::string& which, Inputs& in) {
  if (which != "h3-leibniz")
    fail(ErrorCode::unsupported_axiom, "unknown reproduction '" + which + "'");
  if (in.algebra_path.empty()) fail(ErrorCode::io_error, "give --algebra (the 0 < half < 1 chain)");
  H3LeibnizReport r = repro_h3_leibniz(load_algebra_file(in.algebra_path));
  Json j;
  j["command"] = "zf repro";
  j["which"] = which;
  j["equality"] = r.equality;
  j["psi_u"] = r.psi_u;
  j["psi_v"] = r.psi_v;
  j["neg_psi_u"] = r.neg_psi_u;
  j["neg_psi_v"] = r.neg_psi_v;
  j["failure_as_documented"] = r.failure_as_documented;
  j["swap_contrast_ok"] = r.swap_contrast_ok;
  emit(in, r.text, j);
  return r.failure_as_documented && r.swap_contrast_ok ? 0 : 1;
}

int cmd_zf_demo(const std::string& which, Inputs& in) {
  if (which != "paraconsistency")
    fail(ErrorCode::unsupported_axiom, "unknown demonstration '" + which + "'");
  if (in.ruleset.empty() && in.structure_path.empty()) in.ruleset = "bv2";
  Resolved r = resolve_inputs(in);
  EvalContext ctx = make_context(r, in);
  ParaconsistencyReport rep = demo_paraconsistency(ctx);
  Json j;
  j["command"] = "zf demo";
  j["alpha"] = rep.alpha;
  j["alpha_value"] = ctx.element_name(rep.alpha_value);
  j["neg_alpha_value"] = ctx.element_name(rep.neg_alpha_value);
  j["circ_alpha_value"] = ctx.element_name(rep.circ_alpha_value);
  j["beta"] = rep.beta;
  j["beta_value"] = ctx.element_name(rep.beta_value);
  j["audit_ok"] = rep.audit_ok;
  j["demonstrates"] = rep.demonstrates;
  std::string text = rep.to_text(ctx.heyting());
  if (ctx.rule_set() == RuleSet::hv)
    text += "note: the hv rule set has no clause for negation; the values above are the "
            "policy's alone\n";
  emit(in, text, j);
  return rep.demonstrates ? 0 : 1;
}

int cmd_zf_mixing(const std::vector<std::string>& part_specs, bool enforce, Inputs& in) {
  Resolved r = resolve_inputs(in);
  EvalContext ctx = make_context(r, in);
  std::vector<std::pair<Elem, NameId>> parts;
  for (const std::string& spec : part_specs) {
    auto colon = spec.find(':');
    if (colon == std::string::npos)
      fail(ErrorCode::io_error, "parts look like 'element:name', got '" + spec + "'");
    Elem a = ctx.heyting().elem(spec.substr(0, colon));
    parts.emplace_back(a, parse_name_expr(*r.frag, spec.substr(colon + 1)));
  }
  MixingReport rep = check_mixing(ctx, parts, enforce);
  Json j;
  j["command"] = "zf mixing";
  j["hypothesis_met"] = rep.hypothesis_met;
  j["conclusion_holds"] = rep.conclusion_holds;
  j["holds"] = rep.holds;
  j["mixture"] = r.frag->describe(rep.mixture_name);
  emit(in, rep.to_text(*r.frag), j);
  return rep.holds ? 0 : 1;
}

int cmd_zf_maximum(const std::string& psi_text, Inputs& in) {
  Resolved r = resolve_inputs(in);
  EvalContext ctx = make_context(r, in);
  FormulaPtr psi = parse_in_fragment(psi_text, *r.frag);
  MaximumReport rep = maximum_principle(ctx, psi, in.var);
  Json j;
  j["command"] = "zf maximum";
  j["exists_value"] = ctx.element_name(rep.exists_value);
  j["witness"] = r.frag->describe(rep.witness);
  j["witness_value"] = ctx.element_name(rep.witness_value);
  j["holds"] = rep.holds;
  emit(in, rep.to_text(*r.frag), j);
  return rep.holds ? 0 : 1;
}

int cmd_zf_core(const std::string& name_expr, Inputs& in) {
  Resolved r = resolve_inputs(in);
  EvalContext ctx = make_context(r, in);
  CoreReport rep = compute_core(ctx, parse_name_expr(*r.frag, name_expr));
  Json j;
  j["command"] = "zf core";
  j["subject"] = r.frag->describe(rep.subject);
  Json members = Json::array();
  for (NameId m : rep.members) members.push_back(r.frag->describe(m));
  j["members"] = std::move(members);
  j["nonempty"] = rep.nonempty;
  j["holds"] = rep.holds();
  emit(in, rep.to_text(*r.frag), j);
  return rep.holds() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"fidelium: finite lattice-valued models of paraconsistent set theories"};
  app.require_subcommand(1);

  Inputs in;
  std::string path, save_path, formula, logic = "n4", which, names_spec, candidate;
  std::vector<std::string> part_specs;
  int max_size = 3, steps = 3;
  bool audit = false, trace = false, list = false, enforce = false;

  CLI::App* alg = app.add_subcommand("algebra", "algebra files");
  alg->require_subcommand(1);
  CLI::App* alg_check = alg->add_subcommand("check", "load, validate, print the tables");
  alg_check->add_option("file", path, "algebra file")->required();
  alg_check->add_option("--save", save_path, "write the canonical form here");
  add_format_flag(alg_check, in);

  CLI::App* str = app.add_subcommand("structure", "structure files");
  str->require_subcommand(1);
  CLI::App* str_check = str->add_subcommand("check", "verify the family conditions");
  str_check->add_option("file", path, "structure file")->required();
  add_format_flag(str_check, in);

  CLI::App* prop = app.add_subcommand("prop", "propositional layer");
  prop->require_subcommand(1);
  CLI::App* prop_validate = prop->add_subcommand("validate", "exhaustive validity sweep");
  prop_validate->add_option("formula", formula, "formula text")->required();
  prop_validate->add_option("--logic", logic, "n4 | c1 | comega");
  prop_validate->add_option("--max-size", max_size, "largest algebra carrier swept");
  add_format_flag(prop_validate, in);
  CLI::App* prop_counter = prop->add_subcommand("countermodel", "search for a countermodel");
  prop_counter->add_option("formula", formula, "formula text")->required();
  prop_counter->add_option("--logic", logic, "n4 | c1 | comega");
  prop_counter->add_option("--max-size", max_size, "largest algebra carrier swept");
  add_format_flag(prop_counter, in);
  CLI::App* prop_derive = prop->add_subcommand("derive", "check a Hilbert style derivation file");
  prop_derive->add_option("file", path, "derivation file")->required();
  add_format_flag(prop_derive, in);

  CLI::App* name = app.add_subcommand("name", "names over a fragment");
  name->require_subcommand(1);
  CLI::App* name_eval = name->add_subcommand("eval", "parse and canonicalize a name expression");
  name_eval->add_option("expr", formula, "name expression")->required();
  add_input_flags(name_eval, in);
  add_format_flag(name_eval, in);

  CLI::App* eval_cmd = app.add_subcommand("eval", "evaluate a formula over a fragment");
  eval_cmd->add_option("formula", formula, "formula text")->required();
  add_input_flags(eval_cmd, in);
  add_eval_flags(eval_cmd, in);
  eval_cmd->add_option("--at", in.at_name, "bind the free variable to this name");
  eval_cmd->add_option("--var", in.var, "the free variable (default x)");
  eval_cmd->add_flag("--audit", audit, "run the replacement audit over all name pairs");
  eval_cmd->add_flag("--trace", trace, "print the recursion tree");
  add_format_flag(eval_cmd, in);

  CLI::App* uni = app.add_subcommand("universe", "name universes");
  uni->require_subcommand(1);
  CLI::App* uni_enum = uni->add_subcommand("enumerate", "count or list names up to a rank");
  add_input_flags(uni_enum, in);
  uni_enum->add_flag("--list", list, "print every name");
  add_format_flag(uni_enum, in);

  CLI::App* zf = app.add_subcommand("zf", "set theoretic checks");
  zf->require_subcommand(1);
  CLI::App* zf_check = zf->add_subcommand("check", "check one axiom over the fragment");
  zf_check->add_option("--axiom", which, "extensionality | pairing | union | separation | "
                                         "powerset | empty-set | infinity-approx | "
                                         "collection-bounded | induction-instance")
      ->required();
  zf_check->add_option("--names", names_spec, "subject names, comma separated");
  zf_check->add_option("--formula", formula, "property formula (separation, collection, induction)");
  zf_check->add_option("--var2", in.var2, "collection's second variable (default y)");
  zf_check->add_option("--var", in.var, "the property's variable (default x)");
  zf_check->add_option("--steps", steps, "infinity-approx stage");
  zf_check->add_option("--candidate", candidate, "collection's bounding name");
  add_input_flags(zf_check, in);
  add_eval_flags(zf_check, in);
  add_format_flag(zf_check, in);

  CLI::App* zf_repro = zf->add_subcommand("repro", "replay a documented counterexample");
  zf_repro->add_option("which", which, "h3-leibniz")->required();
  add_input_flags(zf_repro, in);
  add_format_flag(zf_repro, in);

  CLI::App* zf_demo = zf->add_subcommand("demo", "replay a documented model");
  zf_demo->add_option("which", which, "paraconsistency")->required();
  add_input_flags(zf_demo, in);
  add_eval_flags(zf_demo, in);
  add_format_flag(zf_demo, in);

  CLI::App* zf_mixing = zf->add_subcommand("mixing", "check the mixing construction");
  zf_mixing->add_option("--part", part_specs, "'element:name' (repeatable)")->take_all();
  zf_mixing->add_flag("--enforce", enforce, "shrink weights until the hypothesis holds");
  add_input_flags(zf_mixing, in);
  add_eval_flags(zf_mixing, in);
  add_format_flag(zf_mixing, in);

  CLI::App* zf_maximum = zf->add_subcommand("maximum", "build a witness name for psi");
  zf_maximum->add_option("formula", formula, "psi, open in --var")->required();
  zf_maximum->add_option("--var", in.var, "the free variable (default x)");
  add_input_flags(zf_maximum, in);
  add_eval_flags(zf_maximum, in);
  add_format_flag(zf_maximum, in);

  CLI::App* zf_core = zf->add_subcommand("core", "core of a name over the two element algebra");
  zf_core->add_option("name", formula, "subject name expression")->required();
  add_input_flags(zf_core, in);
  add_eval_flags(zf_core, in);
  add_format_flag(zf_core, in);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (*alg_check) return cmd_algebra_check(path, save_path, in);
    if (*str_check) return cmd_structure_check(path, in);
    if (*prop_validate) return cmd_prop(formula, logic, max_size, false, in);
    if (*prop_counter) return cmd_prop(formula, logic, max_size, true, in);
    if (*prop_derive) return cmd_prop_derive(path, in);
    if (*name_eval) return cmd_name_eval(formula, in);
    if (*eval_cmd) return cmd_eval(formula, audit, trace, in);
    if (*uni_enum) return cmd_universe_enumerate(list, in);
    if (*zf_check) return cmd_zf_check(which, names_spec, formula, candidate, steps, in);
    if (*zf_repro) return cmd_zf_repro(which, in);
    if (*zf_demo) return cmd_zf_demo(which, in);
    if (*zf_mixing) return cmd_zf_mixing(part_specs, enforce, in);
    if (*zf_maximum) return cmd_zf_maximum(formula, in);
    if (*zf_core) return cmd_zf_core(formula, in);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
