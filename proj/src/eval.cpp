#include "fidelium/eval.hpp"

#include <algorithm>
#include <set>

namespace fidelium {

const char* rule_set_name(RuleSet r) {
  switch (r) {
    case RuleSet::hv: return "hv";
    case RuleSet::n4: return "n4";
    case RuleSet::c1: return "c1";
    case RuleSet::comega: return "comega";
    case RuleSet::bv2: return "bv2";
  }
  return "?";
}

std::optional<RuleSet> rule_set_from(const std::string& s) {
  if (s == "hv") return RuleSet::hv;
  if (s == "n4") return RuleSet::n4;
  if (s == "c1") return RuleSet::c1;
  if (s == "comega") return RuleSet::comega;
  if (s == "bv2") return RuleSet::bv2;
  return std::nullopt;
}

std::optional<PolicyKind> policy_kind_from(const std::string& s) {
  if (s == "constant-top") return PolicyKind::constant_top;
  if (s == "complement") return PolicyKind::complement;
  if (s == "swap") return PolicyKind::swap;
  if (s == "table") return PolicyKind::table;
  return std::nullopt;
}

std::string NegationPolicy::describe() const {
  switch (kind) {
    case PolicyKind::constant_top: return "constant-top";
    case PolicyKind::complement: return "complement";
    case PolicyKind::swap:
      return "swap(#" + std::to_string(swap_a) + ", #" + std::to_string(swap_b) + ")";
    case PolicyKind::table: return "table(" + std::to_string(table.size()) + " entries)";
  }
  return "?";
}

std::string LeibnizReport::to_text(const UniverseFragment& frag) const {
  std::string out = "pairs checked: " + std::to_string(pairs_checked) + "\n";
  if (violations.empty()) {
    out += "every pair satisfies u ~ v <= f(u) -> f(v)\n";
    return out;
  }
  const HeytingStructure& h = frag.heyting();
  for (const auto& v : violations) {
    out += "violated by " + v.formula + " at u = " + frag.describe(v.u) + ", v = " +
           frag.describe(v.v) + ": [[u ~ v]] = " + h.name(v.equality) +
           " but [[f(u)]] -> [[f(v)]] = " + h.name(v.implication) + "\n";
  }
  return out;
}

namespace {

struct BoundedQ {
  bool is_forall = true;
  NameId bound = -1;
  FormulaPtr body;  // quantified variable still free
  std::string var;
};

std::optional<BoundedQ> match_bounded(const FormulaPtr& f) {
  if (f->kind == Conn::forall && f->a->kind == Conn::imp) {
    const FormulaPtr& guard = f->a->a;
    if (guard->kind == Conn::mem && guard->lhs.is_var && guard->lhs.var == f->label &&
        !guard->rhs.is_var)
      return BoundedQ{true, guard->rhs.name, f->a->b, f->label};
  }
  if (f->kind == Conn::exists && f->a->kind == Conn::conj) {
    const FormulaPtr& guard = f->a->a;
    if (guard->kind == Conn::mem && guard->lhs.is_var && guard->lhs.var == f->label &&
        !guard->rhs.is_var)
      return BoundedQ{false, guard->rhs.name, f->a->b, f->label};
  }
  return std::nullopt;
}

}  // namespace

bool is_restricted(const FormulaPtr& f) {
  switch (f->kind) {
    case Conn::prop:
    case Conn::mem:
    case Conn::eq: return true;
    case Conn::conj:
    case Conn::disj:
    case Conn::imp: return is_restricted(f->a) && is_restricted(f->b);
    case Conn::neg:
    case Conn::circ: return is_restricted(f->a);
    case Conn::forall:
    case Conn::exists: return match_bounded(f).has_value() && is_restricted(f->a);
  }
  return false;
}

EvalContext::EvalContext(UniverseFragment& frag, RuleSet rs, NegationPolicy policy)
    : frag_(frag), rs_(rs), policy_(std::move(policy)) {
  if (rs_ == RuleSet::n4 || rs_ == RuleSet::c1 || rs_ == RuleSet::comega)
    fail(ErrorCode::kind_mismatch,
         std::string(rule_set_name(rs_)) + " evaluation needs a Fidel structure");
  if (rs_ == RuleSet::bv2) {
    if (!frag_.algebra()->boolean || frag_.heyting().size() != 2)
      fail(ErrorCode::kind_mismatch, "bv2 evaluation needs the two element Boolean algebra");
  }
  if (policy_.kind == PolicyKind::swap) {
    frag_.name(policy_.swap_a);
    frag_.name(policy_.swap_b);
    if (policy_.swap_a == policy_.swap_b)
      fail(ErrorCode::policy_violation, "the swap policy needs two distinct names");
  }
}

EvalContext::EvalContext(FidelStructure structure, UniverseFragment& frag, NegationPolicy policy)
    : frag_(frag), structure_(std::move(structure)), rs_(RuleSet::hv), policy_(std::move(policy)) {
  if (structure_->algebra != frag_.algebra())
    fail(ErrorCode::mixed_algebras, "the structure and the fragment carry different algebras");
  switch (structure_->kind) {
    case FidelKind::n4: rs_ = RuleSet::n4; break;
    case FidelKind::c1: rs_ = RuleSet::c1; break;
    case FidelKind::comega: rs_ = RuleSet::comega; break;
  }
  if (rs_ == RuleSet::n4 && !structure_->is_saturated())
    fail(ErrorCode::kind_mismatch,
         "n4 evaluation needs a saturated structure: forced negation values of compound "
         "formulas land outside smaller families");
  if (policy_.kind == PolicyKind::swap) {
    frag_.name(policy_.swap_a);
    frag_.name(policy_.swap_b);
    if (policy_.swap_a == policy_.swap_b)
      fail(ErrorCode::policy_violation, "the swap policy needs two distinct names");
  }
}

std::string EvalContext::formula_text(const FormulaPtr& f) const {
  return print_formula(f, [this](NameId id) { return frag_.label_of(id); });
}

void EvalContext::note(const std::string& line) {
  if (trace_on_) trace_.push_back(std::string(static_cast<size_t>(depth_) * 2, ' ') + line);
}

Elem EvalContext::eval_equality(NameId u, NameId v) {
  if (u > v) std::swap(u, v);  // the clause is symmetric in u and v
  auto key = std::make_pair(u, v);
  if (auto it = eq_memo_.find(key); it != eq_memo_.end()) {
    ++hits_;
    return it->second;
  }
  ++misses_;
  const HeytingStructure& h = heyting();
  const std::vector<std::pair<NameId, Elem>> gu = frag_.name(u).graph;
  const std::vector<std::pair<NameId, Elem>> gv = frag_.name(v).graph;
  Elem acc = h.top();
  for (const auto& [x, w] : gu) acc = h.meet(acc, h.implies(w, eval_membership(x, v)));
  for (const auto& [y, w] : gv) acc = h.meet(acc, h.implies(w, eval_membership(y, u)));
  eq_memo_.emplace(key, acc);
  if (trace_on_)
    note("[[" + frag_.label_of(u) + " ~ " + frag_.label_of(v) + "]] = " + h.name(acc));
  return acc;
}

Elem EvalContext::eval_membership(NameId u, NameId v) {
  auto key = std::make_pair(u, v);
  if (auto it = mem_memo_.find(key); it != mem_memo_.end()) {
    ++hits_;
    return it->second;
  }
  ++misses_;
  const HeytingStructure& h = heyting();
  const std::vector<std::pair<NameId, Elem>> gv = frag_.name(v).graph;
  std::vector<Elem> parts;
  parts.reserve(gv.size());
  for (const auto& [x, w] : gv) parts.push_back(h.meet(w, eval_equality(x, u)));
  Elem acc = h.big_join(parts);
  mem_memo_.emplace(key, acc);
  if (trace_on_)
    note("[[" + frag_.label_of(u) + " in " + frag_.label_of(v) + "]] = " + h.name(acc));
  return acc;
}

std::pair<Elem, bool> EvalContext::policy_neg(const FormulaPtr& whole) {
  const std::string key = formula_text(whole);
  if (auto it = policy_memo_.find(key); it != policy_memo_.end()) {
    ++hits_;
    return it->second;
  }
  ++misses_;
  const HeytingStructure& h = heyting();
  const FormulaPtr& body = whole->a;
  Elem value = -1;
  bool exact = true;
  switch (policy_.kind) {
    case PolicyKind::constant_top: value = h.top(); break;
    case PolicyKind::complement: {
      EvalResult p = eval_rec(body);
      exact = p.exact;
      if (h.has_neg()) value = h.neg(p.value);
      else if (frag_.algebra()->boolean) value = frag_.algebra()->boolean->complement(p.value);
      else
        fail(ErrorCode::policy_violation,
             "the complement policy needs a negation table or a Boolean algebra");
      if (structure_ && !structure_->in_n(p.value, value)) {
        if (structure_->in_n(p.value, h.top())) {
          note("complement of " + h.name(p.value) + " is inadmissible for " + key +
               "; falling back to top");
          value = h.top();
        } else {
          fail(ErrorCode::policy_violation, "no admissible complement value for " + key);
        }
      }
      break;
    }
    case PolicyKind::swap: {
      EvalResult r = eval_rec(swap_names(body, policy_.swap_a, policy_.swap_b));
      value = r.value;
      exact = r.exact;
      break;
    }
    case PolicyKind::table: {
      for (const auto& [k, v] : policy_.table) {
        if (k == key) {
          value = h.elem(v);
          break;
        }
      }
      if (value < 0)
        fail(ErrorCode::policy_violation, "the table policy has no entry for '" + key + "'");
      break;
    }
  }
  note("policy: " + key + " = " + h.name(value));
  policy_memo_.emplace(key, std::make_pair(value, exact));
  return {value, exact};
}

std::pair<Elem, bool> EvalContext::policy_circ(const FormulaPtr& whole) {
  const std::string key = formula_text(whole);
  if (auto it = policy_memo_.find(key); it != policy_memo_.end()) {
    ++hits_;
    return it->second;
  }
  ++misses_;
  const HeytingStructure& h = heyting();
  const FormulaPtr& body = whole->a;
  Elem value = -1;
  bool exact = true;
  switch (policy_.kind) {
    case PolicyKind::constant_top:
      if (!h.has_bottom())
        fail(ErrorCode::policy_violation,
             "the constant-top policy sends consistency claims to bottom, which this algebra "
             "does not designate");
      value = *h.bottom();
      break;
    case PolicyKind::complement: {
      // o f as the complement of f & ~f
      EvalResult p = eval_rec(body);
      EvalResult np = eval_rec(Formula::neg(body));
      exact = p.exact && np.exact;
      Elem m = h.meet(p.value, np.value);
      if (h.has_neg()) value = h.neg(m);
      else if (frag_.algebra()->boolean) value = frag_.algebra()->boolean->complement(m);
      else
        fail(ErrorCode::policy_violation,
             "the complement policy needs a negation table or a Boolean algebra");
      break;
    }
    case PolicyKind::swap: {
      // the macro ~(f & ~f) under the swap reading of both negations
      EvalResult p = eval_rec(body);
      EvalResult s = eval_rec(swap_names(body, policy_.swap_a, policy_.swap_b));
      exact = p.exact && s.exact;
      value = h.meet(p.value, s.value);
      break;
    }
    case PolicyKind::table: {
      for (const auto& [k, v] : policy_.table) {
        if (k == key) {
          value = h.elem(v);
          break;
        }
      }
      if (value < 0)
        fail(ErrorCode::policy_violation, "the table policy has no entry for '" + key + "'");
      break;
    }
  }
  note("policy: " + key + " = " + h.name(value));
  policy_memo_.emplace(key, std::make_pair(value, exact));
  return {value, exact};
}

EvalResult EvalContext::eval_rec(const FormulaPtr& f) {
  const HeytingStructure& h = heyting();
  switch (f->kind) {
    case Conn::prop:
      fail(ErrorCode::kind_mismatch,
           "propositional atom '" + f->label + "' has no value over a universe");
    case Conn::mem: {
      if (f->lhs.is_var || f->rhs.is_var)
        fail(ErrorCode::open_formula, "unbound variable in " + formula_text(f));
      return {eval_membership(f->lhs.name, f->rhs.name), true};
    }
    case Conn::eq: {
      if (f->lhs.is_var || f->rhs.is_var)
        fail(ErrorCode::open_formula, "unbound variable in " + formula_text(f));
      return {eval_equality(f->lhs.name, f->rhs.name), true};
    }
    case Conn::conj: {
      EvalResult x = eval_rec(f->a), y = eval_rec(f->b);
      return {h.meet(x.value, y.value), x.exact && y.exact};
    }
    case Conn::disj: {
      EvalResult x = eval_rec(f->a), y = eval_rec(f->b);
      return {h.join(x.value, y.value), x.exact && y.exact};
    }
    case Conn::imp: {
      EvalResult x = eval_rec(f->a), y = eval_rec(f->b);
      return {h.implies(x.value, y.value), x.exact && y.exact};
    }
    case Conn::forall:
    case Conn::exists: {
      if (auto bq = match_bounded(f)) {
        const std::vector<std::pair<NameId, Elem>> graph = frag_.name(bq->bound).graph;
        bool exact = true;
        if (bq->is_forall) {
          Elem acc = h.top();
          for (const auto& [y, w] : graph) {
            EvalResult r = eval_rec(substitute(bq->body, bq->var, Term::make_name(y)));
            acc = h.meet(acc, h.implies(w, r.value));
            exact = exact && r.exact;
          }
          return {acc, exact};
        }
        std::vector<Elem> parts;
        parts.reserve(graph.size());
        for (const auto& [y, w] : graph) {
          EvalResult r = eval_rec(substitute(bq->body, bq->var, Term::make_name(y)));
          parts.push_back(h.meet(w, r.value));
          exact = exact && r.exact;
        }
        return {h.big_join(parts), exact};
      }
      // fragment-relative approximation of an unbounded quantifier
      note(std::string(f->kind == Conn::forall ? "forall" : "exists") + " " + f->label +
           " ranges over the fragment (" + std::to_string(frag_.size()) + " names)");
      const std::vector<NameId> snapshot = frag_.all_ids();
      std::vector<Elem> parts;
      parts.reserve(snapshot.size());
      for (NameId y : snapshot)
        parts.push_back(eval_rec(substitute(f->a, f->label, Term::make_name(y))).value);
      Elem acc = f->kind == Conn::forall ? h.big_meet(parts) : h.big_join(parts);
      return {acc, false};
    }
    case Conn::neg: {
      const FormulaPtr& body = f->a;
      if (rs_ == RuleSet::n4) {
        switch (body->kind) {
          case Conn::conj: {
            EvalResult x = eval_rec(Formula::neg(body->a));
            EvalResult y = eval_rec(Formula::neg(body->b));
            return {h.join(x.value, y.value), x.exact && y.exact};
          }
          case Conn::disj: {
            EvalResult x = eval_rec(Formula::neg(body->a));
            EvalResult y = eval_rec(Formula::neg(body->b));
            return {h.meet(x.value, y.value), x.exact && y.exact};
          }
          case Conn::imp: {
            EvalResult x = eval_rec(body->a);
            EvalResult y = eval_rec(Formula::neg(body->b));
            return {h.meet(x.value, y.value), x.exact && y.exact};
          }
          case Conn::neg: return eval_rec(body->a);
          case Conn::circ: return eval_rec(Formula::neg(expand_circ(body)));
          default: {
            auto [q, qe] = policy_neg(f);
            EvalResult p = eval_rec(body);
            if (structure_ && !structure_->in_n(p.value, q))
              fail(ErrorCode::policy_violation,
                   "value " + h.name(q) + " for " + formula_text(f) + " is not in N_" +
                       h.name(p.value));
            return {q, qe && p.exact};
          }
        }
      }
      if (rs_ == RuleSet::hv) {
        auto [q, qe] = policy_neg(f);
        return {q, qe};
      }
      if (rs_ == RuleSet::bv2) {
        auto [q, qe] = policy_neg(f);
        EvalResult p = eval_rec(body);
        if (p.value == *h.bottom() && q != h.top())
          fail(ErrorCode::policy_violation,
               "a refuted formula must have its negation at top: " + formula_text(f));
        if (body->kind == Conn::neg && q == h.top()) {
          EvalResult inner = eval_rec(body->a);
          if (inner.value != h.top())
            fail(ErrorCode::policy_violation,
                 "an affirmed double negation needs an affirmed body: " + formula_text(f));
          qe = qe && inner.exact;
        }
        return {q, qe && p.exact};
      }
      // c1 / comega
      auto [q, qe] = policy_neg(f);
      EvalResult p = eval_rec(body);
      bool exact = qe && p.exact;
      if (!structure_->in_n(p.value, q))
        fail(ErrorCode::policy_violation, "value " + h.name(q) + " for " + formula_text(f) +
                                              " is not in N_" + h.name(p.value));
      if (body->kind == Conn::neg) {
        EvalResult inner = eval_rec(body->a);
        exact = exact && inner.exact;
        if (!h.leq(q, inner.value))
          fail(ErrorCode::policy_violation,
               "a double negation may not exceed its body: " + formula_text(f) + " = " +
                   h.name(q) + " but " + formula_text(body->a) + " = " + h.name(inner.value));
      }
      return {q, exact};
    }
    case Conn::circ: {
      const FormulaPtr& body = f->a;
      if (rs_ == RuleSet::hv || rs_ == RuleSet::n4 || rs_ == RuleSet::comega)
        return eval_rec(Formula::neg(Formula::conj(body, Formula::neg(body))));
      auto [q, qe] = policy_circ(f);
      EvalResult p = eval_rec(body);
      bool exact = qe && p.exact;
      if (rs_ == RuleSet::c1) {
        if (!structure_->in_o(p.value, q))
          fail(ErrorCode::policy_violation, "value " + h.name(q) + " for " + formula_text(f) +
                                                " is not in O_" + h.name(p.value));
        if (body->kind == Conn::conj || body->kind == Conn::disj || body->kind == Conn::imp) {
          EvalResult ca = eval_rec(Formula::circ(body->a));
          EvalResult cb = eval_rec(Formula::circ(body->b));
          exact = exact && ca.exact && cb.exact;
          if (!h.leq(h.meet(ca.value, cb.value), q))
            fail(ErrorCode::policy_violation,
                 "consistency must distribute over compounds: [[o a]] & [[o b]] > " +
                     formula_text(f));
        }
        return {q, exact};
      }
      // bv2
      if (q == h.top()) {
        EvalResult nb = eval_rec(Formula::neg(body));
        exact = exact && nb.exact;
        if (p.value != *h.bottom() && nb.value != *h.bottom())
          fail(ErrorCode::policy_violation,
               "an affirmed consistency claim needs a refuted body or a refuted negation: " +
                   formula_text(f));
      }
      if (q == *h.bottom() &&
          (body->kind == Conn::conj || body->kind == Conn::disj || body->kind == Conn::imp)) {
        EvalResult a0 = eval_rec(body->a);
        EvalResult ca = eval_rec(Formula::circ(body->a));
        EvalResult cb = eval_rec(Formula::circ(body->b));
        exact = exact && a0.exact && ca.exact && cb.exact;
        if (a0.value != *h.bottom() && ca.value != *h.bottom() && cb.value != *h.bottom())
          fail(ErrorCode::policy_violation,
               "a refuted compound consistency claim needs a refuted side: " + formula_text(f));
      }
      return {q, exact};
    }
  }
  fail(ErrorCode::kind_mismatch, "unreachable formula kind");
}

EvalResult EvalContext::eval_sentence(const FormulaPtr& f) {
  if (!is_closed(f)) {
    std::string vars;
    for (const auto& v : free_vars(f)) vars += (vars.empty() ? "" : ", ") + v;
    fail(ErrorCode::open_formula, "not a sentence; free: " + vars);
  }
  const FormulaPtr g =
      (rs_ == RuleSet::c1 || rs_ == RuleSet::bv2) ? f : expand_circ(f);
  EvalResult r = eval_rec(g);
  note("[[" + formula_text(f) + "]] = " + heyting().name(r.value) +
       (r.exact ? "" : " (fragment-relative)"));
  return r;
}

EvalResult EvalContext::eval_at(const FormulaPtr& f, const std::string& var, NameId u) {
  for (const auto& v : free_vars(f))
    if (v != var)
      fail(ErrorCode::open_formula, "unexpected free variable '" + v + "'");
  return eval_sentence(substitute(f, var, Term::make_name(u)));
}

LeibnizReport EvalContext::check_leibniz(
    const std::vector<std::pair<std::string, FormulaPtr>>& formulas) {
  const HeytingStructure& h = heyting();
  const std::vector<NameId> ids = frag_.all_ids();
  LeibnizReport report;
  for (const auto& [var, f] : formulas) {
    const std::string text = formula_text(f);
    for (NameId u : ids) {
      for (NameId v : ids) {
        Elem eq = eval_equality(u, v);
        Elem fu = eval_at(f, var, u).value;
        Elem fv = eval_at(f, var, v).value;
        Elem imp = h.implies(fu, fv);
        ++report.pairs_checked;
        if (!h.leq(eq, imp) && report.violations.size() < 25)
          report.violations.push_back({text, u, v, eq, imp});
      }
    }
  }
  return report;
}

NameId mixture(EvalContext& ctx, const std::vector<std::pair<Elem, NameId>>& parts) {
  UniverseFragment& frag = ctx.fragment();
  const HeytingStructure& h = ctx.heyting();
  std::set<NameId> dom;
  for (const auto& [a, u] : parts) {
    if (a < 0 || a >= h.size()) fail(ErrorCode::unknown_element, "mixture weight outside carrier");
    for (const auto& [x, w] : frag.name(u).graph) dom.insert(x);
  }
  std::vector<std::pair<NameId, Elem>> entries;
  for (NameId x : dom) {
    std::vector<Elem> vals;
    vals.reserve(parts.size());
    for (const auto& [a, u] : parts) vals.push_back(h.meet(a, ctx.eval_membership(x, u)));
    entries.emplace_back(x, h.big_join(vals));
  }
  return frag.make_name(std::move(entries));
}

SubalgebraVerdict check_subalgebra_invariance(EvalContext& ctx,
                                              const std::vector<std::string>& sub_elements,
                                              const FormulaPtr& f) {
  const HeytingStructure& h = ctx.heyting();
  if (mentions_neg_or_circ(f))
    fail(ErrorCode::kind_mismatch, "the invariance check covers negation free formulas only");
  if (!is_restricted(f))
    fail(ErrorCode::kind_mismatch, "the invariance check needs bounded quantifiers");

  std::vector<Elem> sub;
  for (const auto& n : sub_elements) sub.push_back(h.elem(n));
  std::sort(sub.begin(), sub.end());
  sub.erase(std::unique(sub.begin(), sub.end()), sub.end());
  const int n = static_cast<int>(sub.size());
  std::vector<int> pos(static_cast<size_t>(h.size()), -1);
  for (int i = 0; i < n; ++i) pos[static_cast<size_t>(sub[i])] = i;
  auto in_sub = [&](Elem e) { return pos[static_cast<size_t>(e)] >= 0; };

  if (!in_sub(h.top())) fail(ErrorCode::not_a_subalgebra, "the subset misses top");
  if (h.has_bottom() && !in_sub(*h.bottom()))
    fail(ErrorCode::not_a_subalgebra, "the subset misses the designated bottom");
  for (Elem a : sub) {
    for (Elem b : sub) {
      for (auto [op, val] : {std::pair<const char*, Elem>{"meet", h.meet(a, b)},
                             {"join", h.join(a, b)},
                             {"implies", h.implies(a, b)}}) {
        if (!in_sub(val))
          fail(ErrorCode::not_a_subalgebra, std::string(op) + "(" + h.name(a) + ", " + h.name(b) +
                                                ") = " + h.name(val) + " leaves the subset");
      }
    }
  }

  std::vector<std::string> names;
  std::vector<char> leq(static_cast<size_t>(n) * n);
  std::vector<Elem> imp(static_cast<size_t>(n) * n);
  for (int i = 0; i < n; ++i) names.push_back(h.name(sub[i]));
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      leq[static_cast<size_t>(i) * n + j] = h.leq(sub[i], sub[j]) ? 1 : 0;
      imp[static_cast<size_t>(i) * n + j] = pos[static_cast<size_t>(h.implies(sub[i], sub[j]))];
    }
  }
  HeytingStructure sh =
      HeytingStructure::build(FiniteLattice::from_matrix(names, leq), h.has_bottom(), imp);
  std::optional<BooleanStructure> sb;
  if (sh.has_bottom() && sh.is_boolean()) sb = BooleanStructure::build(sh);
  auto handle = std::make_shared<const LoadedAlgebra>(LoadedAlgebra{sh, std::move(sb)});
  UniverseFragment sfrag(handle);

  // hereditary closure of the sentence's names, reindexed into the subalgebra
  std::vector<NameId> todo = formula_names(f);
  std::set<NameId> closure(todo.begin(), todo.end());
  while (!todo.empty()) {
    NameId id = todo.back();
    todo.pop_back();
    for (const auto& [d, w] : ctx.fragment().name(id).graph)
      if (closure.insert(d).second) todo.push_back(d);
  }
  std::map<NameId, NameId> remap;
  for (NameId id : closure) {  // ascending: domains precede their parents
    std::vector<std::pair<NameId, Elem>> entries;
    for (const auto& [d, w] : ctx.fragment().name(id).graph) {
      if (!in_sub(w))
        fail(ErrorCode::not_a_subalgebra, "name " + ctx.fragment().describe(id) +
                                              " carries weight " + h.name(w) +
                                              " outside the subset");
      entries.emplace_back(remap.at(d), pos[static_cast<size_t>(w)]);
    }
    remap[id] = sfrag.make_name(std::move(entries));
  }

  EvalContext sctx(sfrag, RuleSet::hv, NegationPolicy::constant_top());
  EvalResult rs = sctx.eval_sentence(map_names(f, [&](NameId x) { return remap.at(x); }));
  EvalResult rf = ctx.eval_sentence(f);
  return {sub[rs.value] == rf.value, sub[rs.value], rf.value};
}

}  // namespace fidelium
