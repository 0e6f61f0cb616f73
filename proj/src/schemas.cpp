#include "fidelium/schemas.hpp"

namespace fidelium {

const char* logic_name(Logic l) {
  switch (l) {
    case Logic::n4: return "n4";
    case Logic::n3: return "n3";
    case Logic::c1: return "c1";
    case Logic::comega: return "comega";
  }
  return "?";
}

std::optional<Logic> logic_from(const std::string& s) {
  for (Logic l : {Logic::n4, Logic::n3, Logic::c1, Logic::comega})
    if (s == logic_name(l)) return l;
  return std::nullopt;
}

const std::vector<Schema>& axiom_schemas() {
  static const std::vector<Schema> schemas = [] {
    std::vector<Schema> out;
    auto add = [&](const char* id, const char* text) {
      out.push_back({id, text, parse_formula(text)});
    };
    add("Ax1", "a -> (b -> a)");
    add("Ax2", "(a -> (b -> c)) -> ((a -> b) -> (a -> c))");
    add("Ax3", "a & b -> a");
    add("Ax4", "a & b -> b");
    add("Ax5", "a -> (b -> a & b)");
    add("Ax6", "a -> a | b");
    add("Ax7", "b -> a | b");
    add("Ax8", "(a -> c) -> ((b -> c) -> (a | b -> c))");
    add("PN1", "~~a <-> a");
    add("PN2", "~(a | b) <-> ~a & ~b");
    add("PN3", "~(a & b) <-> ~a | ~b");
    add("PN4", "~(a -> b) <-> a & ~b");
    add("N3-EXP", "a -> (~a -> b)");
    add("C1", "a | ~a");
    add("C2", "~~a -> a");
    add("C3", "a | (a -> b)");
    add("C4", "o a -> (a -> (~a -> b))");
    add("C5", "o a & o b -> o (a & b) & o (a | b) & o (a -> b)");
    return out;
  }();
  return schemas;
}

const Schema* find_schema(const std::string& id) {
  for (const auto& s : axiom_schemas())
    if (s.id == id) return &s;
  return nullptr;
}

std::vector<Schema> schemas_for(Logic l) {
  std::vector<std::string> ids = {"Ax1", "Ax2", "Ax3", "Ax4", "Ax5", "Ax6", "Ax7", "Ax8"};
  switch (l) {
    case Logic::n4:
      for (const char* id : {"PN1", "PN2", "PN3", "PN4"}) ids.push_back(id);
      break;
    case Logic::n3:
      for (const char* id : {"PN1", "PN2", "PN3", "PN4", "N3-EXP"}) ids.push_back(id);
      break;
    case Logic::comega:
      for (const char* id : {"C1", "C2"}) ids.push_back(id);
      break;
    case Logic::c1:
      for (const char* id : {"C1", "C2", "C3", "C4", "C5"}) ids.push_back(id);
      break;
  }
  std::vector<Schema> out;
  for (const auto& id : ids) out.push_back(*find_schema(id));
  return out;
}

static bool match_rec(const FormulaPtr& pat, const FormulaPtr& f, Substitution& sub) {
  if (pat->kind == Conn::prop) {
    for (const auto& [v, bound] : sub)
      if (v == pat->label) return equal(bound, f);
    sub.emplace_back(pat->label, f);
    return true;
  }
  if (pat->kind != f->kind) return false;
  switch (pat->kind) {
    case Conn::conj:
    case Conn::disj:
    case Conn::imp:
      return match_rec(pat->a, f->a, sub) && match_rec(pat->b, f->b, sub);
    case Conn::neg:
    case Conn::circ: return match_rec(pat->a, f->a, sub);
    default: return false;  // schema patterns are propositional
  }
}

std::optional<Substitution> match_schema(const Schema& s, const FormulaPtr& f) {
  Substitution sub;
  if (match_rec(s.pattern, f, sub)) return sub;
  return std::nullopt;
}

FormulaPtr apply_substitution(const FormulaPtr& pattern, const Substitution& sub) {
  switch (pattern->kind) {
    case Conn::prop:
      for (const auto& [v, f] : sub)
        if (v == pattern->label) return f;
      return pattern;
    case Conn::conj:
      return Formula::conj(apply_substitution(pattern->a, sub), apply_substitution(pattern->b, sub));
    case Conn::disj:
      return Formula::disj(apply_substitution(pattern->a, sub), apply_substitution(pattern->b, sub));
    case Conn::imp:
      return Formula::imp(apply_substitution(pattern->a, sub), apply_substitution(pattern->b, sub));
    case Conn::neg: return Formula::neg(apply_substitution(pattern->a, sub));
    case Conn::circ: return Formula::circ(apply_substitution(pattern->a, sub));
    default: return pattern;
  }
}

DerivationVerdict check_derivation(const std::vector<FormulaPtr>& premises,
                                   const std::vector<DerivationStep>& steps, Logic logic) {
  const std::vector<Schema> schemas = schemas_for(logic);
  for (std::size_t k = 0; k < steps.size(); ++k) {
    const DerivationStep& st = steps[k];
    const int here = static_cast<int>(k) + 1;
    auto bad = [&](const std::string& why) {
      return DerivationVerdict{false, here, "BadJustification: " + why};
    };
    switch (st.just) {
      case DerivationStep::Just::premise: {
        bool found = false;
        for (const auto& p : premises)
          if (equal(p, st.formula)) { found = true; break; }
        if (!found) return bad("step is not among the premises");
        break;
      }
      case DerivationStep::Just::axiom: {
        const Schema* schema = nullptr;
        for (const auto& s : schemas)
          if (s.id == st.axiom_id) { schema = &s; break; }
        if (!schema) {
          if (find_schema(st.axiom_id))
            return bad("schema " + st.axiom_id + " does not belong to " + logic_name(logic));
          return bad("unknown schema '" + st.axiom_id + "'");
        }
        if (!match_schema(*schema, st.formula))
          return bad("step is not an instance of " + st.axiom_id);
        break;
      }
      case DerivationStep::Just::mp: {
        if (st.imp_step < 1 || st.imp_step > static_cast<int>(k) || st.ant_step < 1 ||
            st.ant_step > static_cast<int>(k))
          return bad("modus ponens must cite earlier steps");
        const FormulaPtr& imp = steps[st.imp_step - 1].formula;
        const FormulaPtr& ant = steps[st.ant_step - 1].formula;
        if (imp->kind != Conn::imp || !equal(imp->a, ant) || !equal(imp->b, st.formula))
          return bad("step " + std::to_string(st.imp_step) + " is not (step " +
                     std::to_string(st.ant_step) + " -> this step)");
        break;
      }
    }
  }
  return {};
}

}  // namespace fidelium
