#include "fidelium/zf.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace fidelium {

const char* zf_axiom_name(ZfAxiom a) {
  switch (a) {
    case ZfAxiom::extensionality: return "extensionality";
    case ZfAxiom::pairing: return "pairing";
    case ZfAxiom::union_set: return "union";
    case ZfAxiom::separation: return "separation";
    case ZfAxiom::power_set: return "powerset";
    case ZfAxiom::empty_set: return "empty-set";
    case ZfAxiom::infinity_approx: return "infinity-approx";
    case ZfAxiom::collection_bounded: return "collection-bounded";
    case ZfAxiom::induction_instance: return "induction-instance";
  }
  return "?";
}

std::optional<ZfAxiom> zf_axiom_from(const std::string& s) {
  for (ZfAxiom a : {ZfAxiom::extensionality, ZfAxiom::pairing, ZfAxiom::union_set,
                    ZfAxiom::separation, ZfAxiom::power_set, ZfAxiom::empty_set,
                    ZfAxiom::infinity_approx, ZfAxiom::collection_bounded,
                    ZfAxiom::induction_instance})
    if (s == zf_axiom_name(a)) return a;
  return std::nullopt;
}

namespace {

FormulaPtr mem_nn(NameId u, NameId v) {
  return Formula::mem(Term::make_name(u), Term::make_name(v));
}

void add_detail(AxiomReport& r, std::string what, Elem value, bool holds) {
  if (r.details.size() < 12) r.details.push_back({std::move(what), value, holds});
}

void require_names(const AxiomParams& p, size_t n, const char* axiom) {
  if (p.names.size() != n)
    fail(ErrorCode::kind_mismatch,
         std::string(axiom) + " needs exactly " + std::to_string(n) + " subject name(s)");
}

}  // namespace

std::string AxiomReport::to_text(const EvalContext& ctx) const {
  const UniverseFragment& frag = ctx.fragment();
  std::string out = "axiom: " + std::string(zf_axiom_name(axiom)) + "\n";
  out += "value: " + ctx.element_name(value) + (holds ? " (holds)" : " (does not hold)") + "\n";
  out += std::string("exact: ") + (exact ? "yes" : "no, fragment-relative") + "\n";
  for (NameId w : witnesses) out += "witness: " + frag.describe(w) + "\n";
  for (const auto& d : details)
    out += "  " + d.what + " = " + ctx.element_name(d.value) + (d.holds ? "" : "  <- violated") +
           "\n";
  if (!note.empty()) out += "note: " + note + "\n";
  return out;
}

NameId witness_pairing(EvalContext& ctx, NameId u, NameId v) {
  Elem top = ctx.heyting().top();
  return ctx.fragment().make_name({{u, top}, {v, top}});
}

NameId witness_union(EvalContext& ctx, NameId u) {
  UniverseFragment& frag = ctx.fragment();
  const HeytingStructure& h = ctx.heyting();
  const auto parent = frag.name(u).graph;
  std::map<NameId, Elem> weights;
  for (const auto& [v, wv] : parent) {
    for (const auto& [x, wx] : frag.name(v).graph) {
      auto [it, fresh] = weights.emplace(x, wx);
      if (!fresh) it->second = h.join(it->second, wx);
    }
  }
  std::vector<std::pair<NameId, Elem>> entries(weights.begin(), weights.end());
  return frag.make_name(std::move(entries));
}

NameId witness_separation(EvalContext& ctx, NameId u, const FormulaPtr& phi,
                          const std::string& var) {
  UniverseFragment& frag = ctx.fragment();
  const HeytingStructure& h = ctx.heyting();
  std::vector<std::pair<NameId, Elem>> entries;
  for (const auto& [x, w] : frag.name(u).graph) {
    Elem val = h.meet(ctx.eval_membership(x, u), ctx.eval_at(phi, var, x).value);
    entries.emplace_back(x, val);
  }
  return frag.make_name(std::move(entries));
}

NameId witness_powerset(EvalContext& ctx, NameId u, std::uint64_t budget) {
  UniverseFragment& frag = ctx.fragment();
  const HeytingStructure& h = ctx.heyting();
  const auto parent = frag.name(u).graph;
  const size_t d = parent.size();
  std::uint64_t count = 1;
  for (size_t i = 0; i < d; ++i) {
    count *= static_cast<std::uint64_t>(h.size());
    if (count > budget)
      fail(ErrorCode::budget_exceeded, "the function space over a domain of " +
                                           std::to_string(d) + " names exceeds the budget of " +
                                           std::to_string(budget));
  }
  std::vector<std::pair<NameId, Elem>> fn(d);
  for (size_t i = 0; i < d; ++i) fn[i] = {parent[i].first, 0};
  std::vector<std::pair<NameId, Elem>> entries;
  while (true) {
    NameId f = frag.make_name(fn);
    Elem w = h.top();
    for (const auto& [y, fw] : frag.name(f).graph) w = h.meet(w, h.implies(fw, ctx.eval_membership(y, u)));
    entries.emplace_back(f, w);
    size_t i = 0;
    for (; i < d; ++i) {
      if (fn[i].second + 1 < h.size()) {
        ++fn[i].second;
        break;
      }
      fn[i].second = 0;
    }
    if (i == d) break;
  }
  return frag.make_name(std::move(entries));
}

NameId witness_empty(EvalContext& ctx, NameId anchor) {
  FormulaPtr ne = Formula::neg(Formula::eq(Term::make_name(anchor), Term::make_name(anchor)));
  Elem w = ctx.eval_sentence(ne).value;
  return ctx.fragment().make_name({{anchor, w}});
}

namespace {

AxiomReport ax_extensionality(EvalContext& ctx) {
  const HeytingStructure& h = ctx.heyting();
  UniverseFragment& frag = ctx.fragment();
  AxiomReport r;
  r.axiom = ZfAxiom::extensionality;
  r.value = h.top();
  const std::vector<NameId> ids = frag.all_ids();
  for (NameId x : ids) {
    for (NameId y : ids) {
      std::set<NameId> zs;
      for (const auto& [z, w] : frag.name(x).graph) zs.insert(z);
      for (const auto& [z, w] : frag.name(y).graph) zs.insert(z);
      Elem lhs = h.top();
      for (NameId z : zs) {
        Elem zx = ctx.eval_membership(z, x), zy = ctx.eval_membership(z, y);
        lhs = h.meet(lhs, h.meet(h.implies(zx, zy), h.implies(zy, zx)));
      }
      Elem cert = h.implies(lhs, ctx.eval_equality(x, y));
      if (cert != h.top())
        add_detail(r, "same members below [[" + frag.label_of(x) + " ~ " + frag.label_of(y) + "]]",
                   cert, false);
      r.value = h.meet(r.value, cert);
    }
  }
  r.holds = r.value == h.top();
  r.note =
      "the antecedent meets only over the two domains, which bounds the class quantifier from "
      "above, so top certifies every instance outright";
  return r;
}

AxiomReport ax_pairing(EvalContext& ctx, const AxiomParams& p) {
  require_names(p, 2, "pairing");
  const HeytingStructure& h = ctx.heyting();
  UniverseFragment& frag = ctx.fragment();
  NameId u = p.names[0], v = p.names[1];
  NameId w = witness_pairing(ctx, u, v);
  AxiomReport r;
  r.axiom = ZfAxiom::pairing;
  r.witnesses = {w};
  r.value = h.top();
  for (NameId z : frag.all_ids()) {
    Elem in = ctx.eval_membership(z, w);
    Elem either = h.join(ctx.eval_equality(z, u), ctx.eval_equality(z, v));
    Elem cert = h.meet(h.implies(in, either), h.implies(either, in));
    if (cert != h.top())
      add_detail(r, "[[" + frag.label_of(z) + " in w]] against [[~u]] v [[~v]]", cert, false);
    r.value = h.meet(r.value, cert);
  }
  r.holds = r.value == h.top();
  r.note = "element level identity [[z in w]] = [[z ~ u]] v [[z ~ v]], checked for every z here";
  return r;
}

AxiomReport ax_union(EvalContext& ctx, const AxiomParams& p) {
  require_names(p, 1, "union");
  const HeytingStructure& h = ctx.heyting();
  UniverseFragment& frag = ctx.fragment();
  NameId u = p.names[0];
  NameId w = witness_union(ctx, u);
  AxiomReport r;
  r.axiom = ZfAxiom::union_set;
  r.witnesses = {w};
  r.value = h.top();
  const auto parent = frag.name(u).graph;
  bool flat = true;
  for (const auto& [v, wv] : parent) flat = flat && wv == h.top();
  for (NameId y : frag.all_ids()) {
    Elem in_w = ctx.eval_membership(y, w);
    std::vector<Elem> collected, weighted;
    for (const auto& [v, wv] : parent) {
      Elem yv = ctx.eval_membership(y, v);
      weighted.push_back(h.meet(wv, yv));
      for (const auto& [x, wx] : frag.name(v).graph)
        collected.push_back(h.meet(wx, ctx.eval_equality(x, y)));
    }
    Elem direct = h.big_join(collected);          // members of members, weights of u ignored
    Elem exists_in = h.big_join(weighted);        // [[exists v in u . y in v]]
    Elem ident = h.meet(h.implies(in_w, direct), h.implies(direct, in_w));
    Elem bound = h.implies(exists_in, in_w);
    if (ident != h.top())
      add_detail(r, "collected members at " + frag.label_of(y), ident, false);
    if (bound != h.top())
      add_detail(r, "[[exists v in u . y in v]] <= [[y in w]] at " + frag.label_of(y), bound,
                 false);
    r.value = h.meet(r.value, h.meet(ident, bound));
    if (flat) {
      Elem eq2 = h.implies(in_w, exists_in);
      if (eq2 != h.top())
        add_detail(r, "flat equality at " + frag.label_of(y), eq2, false);
      r.value = h.meet(r.value, eq2);
    }
  }
  r.holds = r.value == h.top();
  r.note = flat ? "all member weights are top, so the bound sharpens to an equality"
                : "[[exists v in u . y in v]] can drop below [[y in w]] when member weights "
                  "are partial; only the inequality is claimed";
  return r;
}

AxiomReport ax_separation(EvalContext& ctx, const AxiomParams& p) {
  require_names(p, 1, "separation");
  if (!p.phi) fail(ErrorCode::kind_mismatch, "separation needs a property formula");
  const HeytingStructure& h = ctx.heyting();
  UniverseFragment& frag = ctx.fragment();
  NameId u = p.names[0];
  NameId w = witness_separation(ctx, u, p.phi, p.var);
  AxiomReport r;
  r.axiom = ZfAxiom::separation;
  r.witnesses = {w};
  r.value = h.top();
  for (NameId z : frag.all_ids()) {
    Elem in_w = ctx.eval_membership(z, w);
    EvalResult pz = ctx.eval_at(p.phi, p.var, z);
    r.exact = r.exact && pz.exact;
    Elem rhs = h.meet(ctx.eval_membership(z, u), pz.value);
    Elem upper = h.implies(in_w, rhs), lower = h.implies(rhs, in_w);
    if (upper != h.top())
      add_detail(r, "[[z in w]] <= [[z in u]] & [[phi(z)]] at " + frag.label_of(z), upper, false);
    if (lower != h.top())
      add_detail(r, "[[z in u]] & [[phi(z)]] <= [[z in w]] at " + frag.label_of(z), lower, false);
    r.value = h.meet(r.value, h.meet(upper, lower));
  }
  r.holds = r.value == h.top();
  r.note =
      "both inequalities lean on the replacement law for phi; a policy that breaks it shows up "
      "right here";
  return r;
}

AxiomReport ax_powerset(EvalContext& ctx, const AxiomParams& p) {
  require_names(p, 1, "powerset");
  const HeytingStructure& h = ctx.heyting();
  UniverseFragment& frag = ctx.fragment();
  NameId u = p.names[0];
  NameId w = witness_powerset(ctx, u, p.budget);
  AxiomReport r;
  r.axiom = ZfAxiom::power_set;
  r.witnesses = {w};
  r.value = h.top();
  for (NameId v : frag.all_ids()) {
    Elem in_w = ctx.eval_membership(v, w);
    Elem sub = h.top();  // [[forall y in v . y in u]]
    for (const auto& [y, wy] : frag.name(v).graph)
      sub = h.meet(sub, h.implies(wy, ctx.eval_membership(y, u)));
    Elem cert = h.meet(h.implies(in_w, sub), h.implies(sub, in_w));
    if (cert != h.top())
      add_detail(r, "[[v in w]] against [[forall y in v . y in u]] at " + frag.label_of(v), cert,
                 false);
    r.value = h.meet(r.value, cert);
  }
  r.holds = r.value == h.top();
  r.note = "dom(w) carries every weighting of dom(u); membership in w measures inclusion in u";
  return r;
}

AxiomReport ax_empty(EvalContext& ctx, const AxiomParams& p) {
  const HeytingStructure& h = ctx.heyting();
  UniverseFragment& frag = ctx.fragment();
  NameId anchor = p.names.empty() ? frag.empty_name() : p.names[0];
  if (p.names.size() > 1) fail(ErrorCode::kind_mismatch, "empty-set takes at most one anchor");
  NameId w = witness_empty(ctx, anchor);
  AxiomReport r;
  r.axiom = ZfAxiom::empty_set;
  r.witnesses = {w};
  FormulaPtr ne = Formula::neg(Formula::eq(Term::make_name(anchor), Term::make_name(anchor)));
  EvalResult nv = ctx.eval_sentence(ne);
  r.exact = nv.exact;
  Elem in_w = ctx.eval_membership(anchor, w);
  r.value = h.meet(h.implies(in_w, nv.value), h.implies(nv.value, in_w));
  add_detail(r, "[[anchor in w]]", in_w, in_w == nv.value);
  add_detail(r, "[[~(anchor ~ anchor)]]", nv.value, in_w == nv.value);
  NameId hat_empty = frag.empty_name();
  bool control = true;
  for (NameId z : frag.all_ids()) {
    if (!h.has_bottom()) break;
    control = control && ctx.eval_membership(z, hat_empty) == *h.bottom();
  }
  r.holds = r.value == h.top();
  r.note = std::string("the witness absorbs whatever the policy assigns to a negated identity; ") +
           (control ? "the literal empty name stays memberless as a control"
                    : "unexpectedly, the literal empty name gained members");
  return r;
}

AxiomReport ax_infinity(EvalContext& ctx, const AxiomParams& p) {
  const HeytingStructure& h = ctx.heyting();
  UniverseFragment& frag = ctx.fragment();
  if (p.steps < 0) fail(ErrorCode::kind_mismatch, "infinity-approx needs a nonnegative stage");
  AxiomReport r;
  r.axiom = ZfAxiom::infinity_approx;
  NameId stage = frag.hat_embed(hf_numeral(p.steps));
  r.witnesses = {stage};
  NameId zero = frag.hat_embed(Hf{});
  Elem c0 = ctx.eval_membership(zero, stage);
  add_detail(r, "the empty set is a member", c0, c0 == h.top());
  r.value = c0;
  for (int k = 0; k < p.steps; ++k) {
    NameId succ = frag.hat_embed(hf_numeral(k + 1));
    Elem ck = ctx.eval_membership(succ, stage);
    add_detail(r, "the successor of " + std::to_string(k) + " is a member", ck, ck == h.top());
    r.value = h.meet(r.value, ck);
  }
  r.holds = r.value == h.top();
  r.note = "stage " + std::to_string(p.steps) +
           " of the inductive set; every finite stage refutes its own closure, so a failure at "
           "the last conjunct is the expected outcome";
  return r;
}

AxiomReport ax_collection(EvalContext& ctx, const AxiomParams& p) {
  require_names(p, 1, "collection-bounded");
  if (!p.phi) fail(ErrorCode::kind_mismatch, "collection-bounded needs a property formula");
  const HeytingStructure& h = ctx.heyting();
  UniverseFragment& frag = ctx.fragment();
  NameId u = p.names[0];
  NameId v;
  if (p.candidate) {
    v = *p.candidate;
    frag.name(v);
  } else {
    std::vector<std::pair<NameId, Elem>> entries;
    for (NameId id : frag.all_ids()) entries.emplace_back(id, h.top());
    v = frag.make_name(std::move(entries));
  }
  AxiomReport r;
  r.axiom = ZfAxiom::collection_bounded;
  r.witnesses = {v};
  r.value = h.top();
  for (const auto& [x, wx] : frag.name(u).graph) {
    FormulaPtr inst = substitute(p.phi, p.var, Term::make_name(x));
    FormulaPtr ex = Formula::exists(
        p.var2, Formula::conj(Formula::mem(Term::make_var(p.var2), Term::make_name(v)), inst));
    EvalResult er = ctx.eval_sentence(ex);
    r.exact = r.exact && er.exact;
    Elem cert = h.implies(wx, er.value);
    add_detail(r, "[[exists y in v . phi]] at x = " + frag.label_of(x), er.value,
               cert == h.top());
    r.value = h.meet(r.value, cert);
  }
  r.holds = r.value == h.top();
  r.note = p.candidate
               ? "bounded variant against the supplied candidate; the class form is out of scope"
               : "bounded variant against the whole-fragment name at weight top; the class form "
                 "is out of scope";
  return r;
}

AxiomReport ax_induction(EvalContext& ctx, const AxiomParams& p) {
  if (!p.phi) fail(ErrorCode::kind_mismatch, "induction-instance needs a property formula");
  const HeytingStructure& h = ctx.heyting();
  const std::string inner = p.var == "y" ? "z" : "y";
  FormulaPtr below = Formula::forall(
      inner, Formula::imp(Formula::mem(Term::make_var(inner), Term::make_var(p.var)),
                          substitute(p.phi, p.var, Term::make_var(inner))));
  FormulaPtr step = Formula::forall(p.var, Formula::imp(below, p.phi));
  FormulaPtr all = Formula::forall(p.var, p.phi);
  AxiomReport r;
  r.axiom = ZfAxiom::induction_instance;
  EvalResult sr = ctx.eval_sentence(step);
  EvalResult ar = ctx.eval_sentence(all);
  r.exact = false;
  r.value = h.implies(sr.value, ar.value);
  add_detail(r, "[[forall x . (forall below . phi) -> phi]]", sr.value, true);
  add_detail(r, "[[forall x . phi]]", ar.value, true);
  r.holds = r.value == h.top();
  r.note =
      "both quantifiers range over the fragment; domain closure still forces the implication to "
      "top by induction on rank";
  return r;
}

}  // namespace

AxiomReport check_axiom(EvalContext& ctx, ZfAxiom axiom, AxiomParams params) {
  switch (axiom) {
    case ZfAxiom::extensionality: return ax_extensionality(ctx);
    case ZfAxiom::pairing: return ax_pairing(ctx, params);
    case ZfAxiom::union_set: return ax_union(ctx, params);
    case ZfAxiom::separation: return ax_separation(ctx, params);
    case ZfAxiom::power_set: return ax_powerset(ctx, params);
    case ZfAxiom::empty_set: return ax_empty(ctx, params);
    case ZfAxiom::infinity_approx: return ax_infinity(ctx, params);
    case ZfAxiom::collection_bounded: return ax_collection(ctx, params);
    case ZfAxiom::induction_instance: return ax_induction(ctx, params);
  }
  fail(ErrorCode::unsupported_axiom, "unknown axiom tag");
}

std::string MixingReport::to_text(const UniverseFragment& frag) const {
  const HeytingStructure& h = frag.heyting();
  std::string out;
  for (const auto& [a, u] : parts_used)
    out += "part: weight " + h.name(a) + " on " + frag.describe(u) + "\n";
  out += std::string("hypothesis: ") + (hypothesis_met ? "met" : "not met") + "\n";
  if (mixture_name >= 0) out += "mixture: " + frag.describe(mixture_name) + "\n";
  out += std::string("conclusion a_i <= [[u_i ~ m]]: ") + (conclusion_holds ? "holds" : "fails") +
         "\n";
  for (const auto& n : notes) out += "note: " + n + "\n";
  return out;
}

MixingReport check_mixing(EvalContext& ctx, std::vector<std::pair<Elem, NameId>> parts,
                          bool enforce_hypothesis) {
  const HeytingStructure& h = ctx.heyting();
  MixingReport r;
  if (enforce_hypothesis) {
    for (size_t j = 1; j < parts.size(); ++j)
      for (size_t i = 0; i < j; ++i)
        parts[j].first =
            h.meet(parts[j].first,
                   h.implies(parts[i].first, ctx.eval_equality(parts[i].second, parts[j].second)));
    r.notes.push_back("weights shrunk against earlier parts to enforce compatibility");
  }
  r.parts_used = parts;
  r.hypothesis_met = true;
  for (size_t i = 0; i < parts.size(); ++i)
    for (size_t j = i + 1; j < parts.size(); ++j)
      if (!h.leq(h.meet(parts[i].first, parts[j].first),
                 ctx.eval_equality(parts[i].second, parts[j].second)))
        r.hypothesis_met = false;
  r.mixture_name = mixture(ctx, parts);
  r.conclusion_holds = true;
  for (const auto& [a, u] : parts)
    if (!h.leq(a, ctx.eval_equality(u, r.mixture_name))) r.conclusion_holds = false;
  if (!r.hypothesis_met)
    r.notes.push_back("incompatible parts; the conclusion is reported but nothing is claimed");
  r.holds = !r.hypothesis_met || r.conclusion_holds;
  return r;
}

std::string MaximumReport::to_text(const UniverseFragment& frag) const {
  const HeytingStructure& h = frag.heyting();
  std::string out = "[[exists x . psi]] over the fragment: " + h.name(exists_value) + "\n";
  for (const auto& [b, u] : parts)
    out += "part: weight " + h.name(b) + " on " + frag.describe(u) + "\n";
  out += "witness: " + frag.describe(witness) + "\n";
  out += "[[psi(witness)]] = " + h.name(witness_value) + (holds ? " (top reached)" : "") + "\n";
  return out;
}

MaximumReport maximum_principle(EvalContext& ctx, const FormulaPtr& psi, const std::string& var) {
  const HeytingStructure& h = ctx.heyting();
  if (!ctx.fragment().algebra()->boolean)
    fail(ErrorCode::kind_mismatch,
         "the maximum principle construction refines by atoms and needs a Boolean algebra");
  MaximumReport r;
  std::map<Elem, NameId> rep;
  std::vector<Elem> spectrum;
  for (NameId id : ctx.fragment().all_ids()) {
    Elem val = ctx.eval_at(psi, var, id).value;
    if (rep.emplace(val, id).second) spectrum.push_back(val);
  }
  r.exists_value = h.big_join(spectrum);
  if (r.exists_value != h.top())
    fail(ErrorCode::hypothesis_not_met, "[[exists x . psi]] = " + h.name(r.exists_value) +
                                            " over this fragment; the construction needs top");
  for (Elem b : antichain_refinement(h, spectrum)) {
    for (const auto& [val, id] : rep) {
      if (h.leq(b, val)) {
        r.parts.emplace_back(b, id);
        break;
      }
    }
  }
  r.witness = mixture(ctx, r.parts);
  r.witness_value = ctx.eval_at(psi, var, r.witness).value;
  r.holds = r.witness_value == h.top();
  return r;
}

std::string CoreReport::to_text(const UniverseFragment& frag) const {
  std::string out = "subject: " + frag.describe(subject) + "\n";
  out += "core size: " + std::to_string(members.size()) + "\n";
  for (NameId m : members) out += "  member: " + frag.describe(m) + "\n";
  out += std::string("members fully inside: ") + (members_in ? "yes" : "no") + "\n";
  out += std::string("unique match for full members: ") + (unique_match ? "yes" : "no") + "\n";
  out += std::string("nonempty hypothesis: ") + (nonempty ? "met" : "not met") + "\n";
  out += std::string("matching values for every name: ") + (corollary_holds ? "yes" : "no") + "\n";
  for (const auto& n : notes) out += "note: " + n + "\n";
  return out;
}

CoreReport compute_core(EvalContext& ctx, NameId u) {
  const HeytingStructure& h = ctx.heyting();
  if (h.size() != 2 || !ctx.fragment().algebra()->boolean)
    fail(ErrorCode::kind_mismatch, "cores are defined over the two element Boolean algebra");
  UniverseFragment& frag = ctx.fragment();
  CoreReport r;
  r.subject = u;
  const auto graph = frag.name(u).graph;
  const std::vector<NameId> ids = frag.all_ids();
  std::map<std::vector<Elem>, NameId> classes;
  for (NameId x : ids) {
    if (ctx.eval_membership(x, u) != h.top()) continue;
    std::vector<Elem> fp;
    fp.reserve(graph.size());
    for (const auto& [z, w] : graph) fp.push_back(h.meet(w, ctx.eval_equality(z, x)));
    classes.emplace(std::move(fp), x);  // keeps the first representative
  }
  for (const auto& [fp, x] : classes) r.members.push_back(x);
  std::sort(r.members.begin(), r.members.end());

  for (NameId x : r.members)
    if (ctx.eval_membership(x, u) != h.top()) r.members_in = false;
  for (NameId y : ids) {
    if (ctx.eval_membership(y, u) != h.top()) continue;
    int matches = 0;
    for (NameId x : r.members)
      if (ctx.eval_equality(x, y) == h.top()) ++matches;
    if (matches != 1) {
      r.unique_match = false;
      r.notes.push_back(frag.describe(y) + " matches " + std::to_string(matches) +
                        " core members");
    }
  }
  for (const auto& [z, w] : graph)
    if (ctx.eval_membership(z, u) == h.top()) r.nonempty = true;
  if (r.nonempty) {
    for (NameId x : ids) {
      bool found = false;
      for (NameId y : r.members)
        if (ctx.eval_equality(x, y) == ctx.eval_membership(x, u)) found = true;
      if (!found) {
        r.corollary_holds = false;
        r.notes.push_back("no member matches " + frag.describe(x) + " at its membership value");
      }
    }
  } else {
    r.notes.push_back("subject is not provably nonempty; the matching claim is vacuous");
  }
  return r;
}

std::string ParaconsistencyReport::to_text(const HeytingStructure& h) const {
  std::string out;
  out += "alpha: " + alpha + "\n";
  out += "  [[alpha]] = " + h.name(alpha_value) + ", [[~alpha]] = " + h.name(neg_alpha_value) +
         ", [[o alpha]] = " + h.name(circ_alpha_value) + "\n";
  out += "control " + beta + ": " + h.name(beta_value) + "\n";
  out += std::string("replacement audit: ") + (audit_ok ? "clean" : "violated") + "\n";
  out += demonstrates
             ? "alpha and its negation both hold while the control stays refuted: explosion fails\n"
             : "the configuration does not demonstrate paraconsistency\n";
  return out;
}

ParaconsistencyReport demo_paraconsistency(EvalContext& ctx) {
  const HeytingStructure& h = ctx.heyting();
  if (!h.has_bottom())
    fail(ErrorCode::kind_mismatch, "the demonstration needs a designated bottom");
  UniverseFragment& frag = ctx.fragment();
  NameId e = frag.empty_name();
  NameId u = frag.hat_embed(Hf{{Hf{}}});
  if (!frag.lookup("u")) frag.bind("u", u);
  if (!frag.lookup("empty")) frag.bind("empty", e);
  ParaconsistencyReport r;
  FormulaPtr alpha = Formula::eq(Term::make_name(u), Term::make_name(u));
  FormulaPtr beta = mem_nn(u, e);
  r.alpha = ctx.formula_text(alpha);
  r.beta = ctx.formula_text(beta);
  r.alpha_value = ctx.eval_sentence(alpha).value;
  r.neg_alpha_value = ctx.eval_sentence(Formula::neg(alpha)).value;
  r.circ_alpha_value = ctx.eval_sentence(Formula::circ(alpha)).value;
  r.beta_value = ctx.eval_sentence(beta).value;
  FormulaPtr psi1 = Formula::neg(Formula::eq(Term::make_var("x"), Term::make_name(u)));
  FormulaPtr psi2 = Formula::circ(Formula::eq(Term::make_var("x"), Term::make_name(u)));
  r.audit_ok = ctx.check_leibniz({{"x", psi1}, {"x", psi2}}).ok();
  r.demonstrates = r.alpha_value == h.top() && r.neg_alpha_value == h.top() &&
                   r.circ_alpha_value == *h.bottom() && r.beta_value == *h.bottom() && r.audit_ok;
  return r;
}

H3LeibnizReport repro_h3_leibniz(AlgebraHandle h3) {
  const HeytingStructure& h = h3->heyting;
  Elem half = h.elem("half");
  UniverseFragment frag(h3);
  NameId w = frag.empty_name();
  frag.bind("w", w);
  NameId u = frag.make_name({{w, half}});
  NameId v = frag.make_name({{w, h.top()}});
  frag.bind("u", u);
  frag.bind("v", v);

  H3LeibnizReport r;
  EvalContext ctx(frag, RuleSet::hv, NegationPolicy::complement());
  FormulaPtr psi = Formula::mem(Term::make_name(w), Term::make_var("x"));
  FormulaPtr npsi = Formula::neg(psi);
  r.equality = ctx.eval_equality(u, v);
  r.psi_u = ctx.eval_at(psi, "x", u).value;
  r.psi_v = ctx.eval_at(psi, "x", v).value;
  r.neg_psi_u = ctx.eval_at(npsi, "x", u).value;
  r.neg_psi_v = ctx.eval_at(npsi, "x", v).value;
  r.implication = h.implies(r.neg_psi_u, r.neg_psi_v);
  r.failure_as_documented = r.equality == half && r.psi_u == half && r.psi_v == h.top() &&
                            r.neg_psi_u == half && r.neg_psi_v == *h.bottom() &&
                            !h.leq(r.equality, r.implication);

  EvalContext sw(saturate(h3, FidelKind::n4), frag, NegationPolicy::swap(u, v));
  r.swap_contrast_ok = sw.check_leibniz({{"x", npsi}}).ok();

  auto en = [&](Elem e) { return h.name(e); };
  r.text += "fragment: w = {}, u = {(w, " + en(half) + ")}, v = {(w, " + en(h.top()) + ")}\n";
  r.text += "[[u ~ v]] = " + en(r.equality) + "\n";
  r.text += "psi(x) := w in x\n";
  r.text += "[[psi(u)]] = " + en(r.psi_u) + ", [[psi(v)]] = " + en(r.psi_v) + "\n";
  r.text += "table negation: [[~psi(u)]] = " + en(r.neg_psi_u) + ", [[~psi(v)]] = " +
            en(r.neg_psi_v) + "\n";
  r.text += "replacement needs [[u ~ v]] <= [[~psi(u)]] -> [[~psi(v)]] = " + en(r.implication) +
            "; " + en(r.equality) + " is not below it\n";
  r.text += r.failure_as_documented
                ? "the table negation breaks the replacement law here, as expected\n"
                : "unexpected values; the documented failure did not reproduce\n";
  r.text += r.swap_contrast_ok
                ? "contrast: the saturated n4 structure with the swap policy passes the audit\n"
                : "contrast check failed: the swap policy did not pass the audit\n";
  return r;
}

}  // namespace fidelium
