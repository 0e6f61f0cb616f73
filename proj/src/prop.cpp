#include "fidelium/prop.hpp"

#include <algorithm>
#include <array>
#include <functional>
#include <sstream>

namespace fidelium {

namespace {

struct NodeInfo {
  Conn kind;
  int ia = -1, ib = -1;  // closure indices of the children
  int atom = -1;         // index into the atom list for prop nodes
};

/** One propositional formula preprocessed for valuation sweeps: the
 * subformula closure, child indices, atoms, and choice points. */
struct Compiled {
  FormulaPtr root;
  std::vector<FormulaPtr> closure;
  std::vector<NodeInfo> info;
  std::vector<std::string> atoms;
  int target = -1;

  std::vector<int> neg_nodes;   // closure indices of negations
  std::vector<int> circ_nodes;  // closure indices of circ nodes
  // atoms whose negation value is needed by the n4 push down of some
  // negated closure member, even when the negated atom itself is absent
  std::vector<int> n4_neg_atoms;
  // circ distribution instances: (o a, o b, o (a # b)) closure indices
  std::vector<std::array<int, 3>> circ_dist;
  // per circ node, the closure index of the body's negation, or -1
  std::vector<int> circ_neg_body;

  int index_of(const FormulaPtr& g) const {
    for (std::size_t i = 0; i < closure.size(); ++i)
      if (equal(closure[i], g)) return static_cast<int>(i);
    return -1;
  }
};

Compiled compile(const std::vector<FormulaPtr>& roots, const FormulaPtr& target) {
  Compiled c;
  c.root = target;
  c.closure = subformula_closure(roots);
  c.target = c.index_of(target);
  for (std::size_t i = 0; i < c.closure.size(); ++i) {
    const FormulaPtr& g = c.closure[i];
    NodeInfo ni;
    ni.kind = g->kind;
    if (g->a) ni.ia = c.index_of(g->a);
    if (g->b) ni.ib = c.index_of(g->b);
    if (g->kind == Conn::prop) {
      auto it = std::find(c.atoms.begin(), c.atoms.end(), g->label);
      if (it == c.atoms.end()) {
        ni.atom = static_cast<int>(c.atoms.size());
        c.atoms.push_back(g->label);
      } else {
        ni.atom = static_cast<int>(it - c.atoms.begin());
      }
    }
    c.info.push_back(ni);
    if (g->kind == Conn::neg) c.neg_nodes.push_back(static_cast<int>(i));
    if (g->kind == Conn::circ) c.circ_nodes.push_back(static_cast<int>(i));
  }
  // n4 push down reaches negated atoms through positive connectives
  std::function<void(const FormulaPtr&)> walk = [&](const FormulaPtr& g) {
    switch (g->kind) {
      case Conn::prop: {
        int a = c.info[c.index_of(g)].atom;
        if (std::find(c.n4_neg_atoms.begin(), c.n4_neg_atoms.end(), a) == c.n4_neg_atoms.end())
          c.n4_neg_atoms.push_back(a);
        return;
      }
      case Conn::neg: return;  // forced to the body's value
      case Conn::conj:
      case Conn::disj: walk(g->a); walk(g->b); return;
      case Conn::imp: walk(g->b); return;  // value of a is used positively
      default: return;
    }
  };
  for (int gi : c.neg_nodes) walk(c.closure[gi]->a);
  // instances of the circ distribution clause present in the closure
  for (int ci : c.circ_nodes) {
    const FormulaPtr& body = c.closure[ci]->a;
    c.circ_neg_body.push_back(c.index_of(Formula::neg(body)));
    if (body->kind != Conn::conj && body->kind != Conn::disj && body->kind != Conn::imp) continue;
    int oa = c.index_of(Formula::circ(body->a));
    int ob = c.index_of(Formula::circ(body->b));
    if (oa >= 0 && ob >= 0) c.circ_dist.push_back({oa, ob, ci});
  }
  return c;
}

struct SweepState {
  const Compiled& c;
  const HeytingStructure& h;
  FidelKind kind;
  const std::vector<ElemSet>& N;
  const std::vector<ElemSet>& O;  // meaningful for c1 only

  std::vector<Elem> val{};       // per closure node
  std::vector<Elem> atom_val{};  // per atom
  std::vector<Elem> neg_atom{};  // n4: chosen value of ~p per atom (or -1)
  std::uint64_t checked = 0;
  bool failed = false;
  std::vector<Elem> bad_val{}, bad_atom_val{}, bad_neg_atom{};

  bool in_family(const std::vector<ElemSet>& fam, Elem x, Elem cand) const {
    return fam[x] >> cand & 1;
  }

  // Forced value of the negation of closure node gi under n4, checking that
  // every intermediate forced value stays inside its N set.
  std::optional<Elem> n4_neg_value(int gi) {
    const NodeInfo& ni = c.info[gi];
    std::optional<Elem> r;
    switch (ni.kind) {
      case Conn::prop: return neg_atom[ni.atom];
      case Conn::neg: r = val[ni.ia]; break;  // double negation collapses
      case Conn::conj: {
        auto x = n4_neg_value(ni.ia), y = n4_neg_value(ni.ib);
        if (!x || !y) return std::nullopt;
        r = h.join(*x, *y);
        break;
      }
      case Conn::disj: {
        auto x = n4_neg_value(ni.ia), y = n4_neg_value(ni.ib);
        if (!x || !y) return std::nullopt;
        r = h.meet(*x, *y);
        break;
      }
      case Conn::imp: {
        auto y = n4_neg_value(ni.ib);
        if (!y) return std::nullopt;
        r = h.meet(val[ni.ia], *y);
        break;
      }
      default: return std::nullopt;
    }
    if (!in_family(N, val[gi], *r)) return std::nullopt;  // outside N_{v(g)}
    return r;
  }

  void record_result() {
    ++checked;
    if (val[c.target] != h.top() && !failed) {
      failed = true;
      bad_val = val;
      bad_atom_val = atom_val;
      bad_neg_atom = neg_atom;
    }
  }

  // ---- n4: enumerate atom values, then negated atom choices ----
  void n4_fill_and_check() {
    for (std::size_t i = 0; i < c.closure.size(); ++i) {
      const NodeInfo& ni = c.info[i];
      switch (ni.kind) {
        case Conn::prop: val[i] = atom_val[ni.atom]; break;
        case Conn::conj: val[i] = h.meet(val[ni.ia], val[ni.ib]); break;
        case Conn::disj: val[i] = h.join(val[ni.ia], val[ni.ib]); break;
        case Conn::imp: val[i] = h.implies(val[ni.ia], val[ni.ib]); break;
        case Conn::neg: {
          auto r = n4_neg_value(ni.ia);
          if (!r) return;  // inadmissible
          val[i] = *r;
          break;
        }
        default: return;
      }
    }
    record_result();
  }

  void n4_choose_negs(std::size_t k) {
    if (failed) return;
    if (k == c.n4_neg_atoms.size()) { n4_fill_and_check(); return; }
    int atom = c.n4_neg_atoms[k];
    for (Elem cand = 0; cand < h.size(); ++cand) {
      if (!in_family(N, atom_val[atom], cand)) continue;
      neg_atom[atom] = cand;
      n4_choose_negs(k + 1);
    }
  }

  // ---- c1 / comega: unified recursion over closure nodes ----
  void c_rec(std::size_t i) {
    if (failed) return;
    if (i == c.closure.size()) {
      // cross node clauses: circ consistency and circ distribution
      for (std::size_t k = 0; k < c.circ_nodes.size(); ++k) {
        int ci = c.circ_nodes[k];
        int negb = c.circ_neg_body[k];
        if (negb >= 0) {
          Elem m = h.meet(h.meet(val[c.info[ci].ia], val[negb]), val[ci]);
          if (m != *h.bottom()) return;
        }
      }
      for (const auto& [oa, ob, oc] : c.circ_dist)
        if (!h.leq(h.meet(val[oa], val[ob]), val[oc])) return;
      record_result();
      return;
    }
    const NodeInfo& ni = c.info[i];
    switch (ni.kind) {
      case Conn::prop:
        for (Elem e = 0; e < h.size(); ++e) {
          val[i] = atom_val[ni.atom] = e;
          c_rec(i + 1);
        }
        return;
      case Conn::conj: val[i] = h.meet(val[ni.ia], val[ni.ib]); c_rec(i + 1); return;
      case Conn::disj: val[i] = h.join(val[ni.ia], val[ni.ib]); c_rec(i + 1); return;
      case Conn::imp: val[i] = h.implies(val[ni.ia], val[ni.ib]); c_rec(i + 1); return;
      case Conn::neg: {
        Elem body = val[ni.ia];
        for (Elem cand = 0; cand < h.size(); ++cand) {
          if (!in_family(N, body, cand)) continue;
          if (h.join(body, cand) != h.top()) continue;  // negation completeness
          if (c.info[ni.ia].kind == Conn::neg && !h.leq(cand, val[c.info[ni.ia].ia]))
            continue;  // double negation below the body
          val[i] = cand;
          c_rec(i + 1);
        }
        return;
      }
      case Conn::circ: {
        Elem body = val[ni.ia];
        for (Elem cand = 0; cand < h.size(); ++cand) {
          if (!in_family(O, body, cand)) continue;
          val[i] = cand;
          c_rec(i + 1);
        }
        return;
      }
      default: return;
    }
  }

  void run() {
    val.assign(c.closure.size(), -1);
    neg_atom.assign(c.atoms.size(), -1);
    atom_val.assign(c.atoms.size(), -1);
    if (kind == FidelKind::n4) {
      std::vector<Elem> assignment(c.atoms.size(), 0);
      while (true) {
        atom_val = assignment;
        n4_choose_negs(0);
        if (failed) return;
        std::size_t pos = 0;
        while (pos < c.atoms.size() && assignment[pos] == h.size() - 1) assignment[pos++] = 0;
        if (pos == c.atoms.size()) break;
        ++assignment[pos];
      }
    } else {
      c_rec(0);
    }
  }
};

std::string describe_mask(const HeytingStructure& h, ElemSet m) {
  std::string out = "{";
  bool first = true;
  for (Elem e = 0; e < h.size(); ++e)
    if (m >> e & 1) {
      if (!first) out += ", ";
      out += h.name(e);
      first = false;
    }
  return out + "}";
}

}  // namespace

std::string PropCountermodel::to_text() const {
  const HeytingStructure& h = algebra->heyting;
  std::ostringstream out;
  out << "countermodel (kind " << fidel_kind_name(kind) << ") over elements {";
  for (Elem e = 0; e < h.size(); ++e) out << (e ? ", " : "") << h.name(e);
  out << "}\n";
  for (Elem e = 0; e < h.size(); ++e)
    out << "  N_" << h.name(e) << " = " << describe_mask(h, n_family[e])
        << (o_family.empty() ? "" : ", O_" + h.name(e) + " = " + describe_mask(h, o_family[e]))
        << "\n";
  for (const auto& [formula, elem] : valuation) out << "  v(" << formula << ") = " << elem << "\n";
  out << "  formula value " << value << ", top is " << h.name(h.top()) << "\n";
  return out.str();
}

PropVerdict prop_validity(const FormulaPtr& f, Logic logic, int max_algebra_size) {
  if (!is_propositional(f))
    fail(ErrorCode::kind_mismatch, "prop_validity needs a propositional formula");
  if (logic == Logic::n3)
    fail(ErrorCode::kind_mismatch,
         "n3 has no structure semantics here; check derivations against n3 or use n4");
  if (max_algebra_size < 1 || max_algebra_size > 5)
    fail(ErrorCode::size_cap_exceeded, "algebra size cap must be between 1 and 5");

  const FidelKind kind = logic == Logic::n4 ? FidelKind::n4
                         : logic == Logic::c1 ? FidelKind::c1
                                              : FidelKind::comega;
  const FormulaPtr probe = kind == FidelKind::c1 ? f : expand_circ(f);
  Compiled compiled = compile({probe}, probe);

  PropVerdict verdict;
  for (int n = 1; n <= max_algebra_size; ++n) {
    for (FiniteLattice& lat : enumerate_distributive_lattices(n)) {
      HeytingStructure h = HeytingStructure::build(std::move(lat), kind != FidelKind::n4);
      if (kind != FidelKind::n4 && !h.is_boolean()) continue;
      LoadedAlgebra la{std::move(h), std::nullopt};
      if (kind != FidelKind::n4) la.boolean = BooleanStructure::build(la.heyting);
      auto handle = std::make_shared<const LoadedAlgebra>(std::move(la));

      // for c1 the O family is swept in collapsed (saturated) form
      auto fams = enumerate_n_families(*handle, kind, true);
      const ElemSet full = (1u << handle->heyting.size()) - 1;
      for (const auto& fam : fams) {
        ++verdict.structures_checked;
        std::vector<ElemSet> o;
        if (kind == FidelKind::c1) o.assign(handle->heyting.size(), full);
        SweepState st{compiled, handle->heyting, kind, fam, o};
        st.run();
        verdict.valuations_checked += st.checked;
        if (st.failed) {
          PropCountermodel cm;
          cm.algebra = handle;
          cm.kind = kind;
          cm.n_family = fam;
          cm.o_family = o;
          const HeytingStructure& hh = handle->heyting;
          for (std::size_t a = 0; a < compiled.atoms.size(); ++a)
            cm.valuation.emplace_back(compiled.atoms[a], hh.name(st.bad_atom_val[a]));
          if (kind == FidelKind::n4) {
            for (std::size_t a = 0; a < compiled.atoms.size(); ++a)
              if (st.bad_neg_atom[a] >= 0)
                cm.valuation.emplace_back("~" + compiled.atoms[a], hh.name(st.bad_neg_atom[a]));
          } else {
            for (int gi : compiled.neg_nodes)
              cm.valuation.emplace_back(print_formula(compiled.closure[gi]),
                                        hh.name(st.bad_val[gi]));
            for (int gi : compiled.circ_nodes)
              cm.valuation.emplace_back(print_formula(compiled.closure[gi]),
                                        hh.name(st.bad_val[gi]));
          }
          cm.value = hh.name(st.bad_val[compiled.target]);
          verdict.valid = false;
          verdict.countermodel = std::move(cm);
          return verdict;
        }
      }
    }
  }
  return verdict;
}

std::string BivalCountermodel::to_text() const {
  std::ostringstream out;
  out << "bivaluation countermodel\n";
  for (const auto& [formula, bit] : assignment)
    out << "  v(" << formula << ") = " << (bit ? 1 : 0) << "\n";
  return out.str();
}

BivalVerdict bivaluation_consequence(const std::vector<FormulaPtr>& premises, const FormulaPtr& f) {
  std::vector<FormulaPtr> roots = premises;
  roots.push_back(f);
  for (const auto& r : roots)
    if (!is_propositional(r))
      fail(ErrorCode::kind_mismatch, "bivaluations are propositional");
  Compiled cc = compile(roots, f);

  std::vector<int> premise_idx, target_idx{cc.target};
  for (const auto& p : premises) premise_idx.push_back(cc.index_of(p));

  BivalVerdict verdict;
  std::vector<int> val(cc.closure.size(), -1);

  std::function<void(std::size_t)> rec = [&](std::size_t i) {
    if (verdict.countermodel) return;
    if (i == cc.closure.size()) {
      // bv5b and bv7 mention formulas that may sit anywhere in the closure
      for (std::size_t k = 0; k < cc.circ_nodes.size(); ++k) {
        int ci = cc.circ_nodes[k];
        if (val[ci] != 1) continue;
        int body = cc.info[ci].ia;
        int negb = cc.circ_neg_body[k];
        if (negb >= 0 && val[body] == 1 && val[negb] == 1) return;  // bv5b
      }
      for (const auto& [oa, ob, oc] : cc.circ_dist) {
        if (val[oc] == 0) {
          int body = cc.info[oc].ia;
          int a_idx = cc.info[body].ia;
          if (!(val[a_idx] == 0 || val[oa] == 0 || val[ob] == 0)) return;  // bv7
        }
      }
      ++verdict.assignments_checked;
      bool all_premises = true;
      for (int pi : premise_idx)
        if (val[pi] != 1) { all_premises = false; break; }
      if (all_premises && val[target_idx[0]] == 0) {
        BivalCountermodel cm;
        for (std::size_t k = 0; k < cc.closure.size(); ++k)
          cm.assignment.emplace_back(print_formula(cc.closure[k]), val[k] == 1);
        verdict.entailed = false;
        verdict.countermodel = std::move(cm);
      }
      return;
    }
    const NodeInfo& ni = cc.info[i];
    switch (ni.kind) {
      case Conn::prop:
        for (int b = 0; b <= 1; ++b) { val[i] = b; rec(i + 1); }
        return;
      case Conn::conj: val[i] = (val[ni.ia] == 1 && val[ni.ib] == 1) ? 1 : 0; rec(i + 1); return;
      case Conn::disj: val[i] = (val[ni.ia] == 1 || val[ni.ib] == 1) ? 1 : 0; rec(i + 1); return;
      case Conn::imp: val[i] = (val[ni.ia] == 0 || val[ni.ib] == 1) ? 1 : 0; rec(i + 1); return;
      case Conn::neg:
        for (int b = 0; b <= 1; ++b) {
          if (val[ni.ia] == 0 && b == 0) continue;  // bv4
          if (cc.info[ni.ia].kind == Conn::neg && b == 1 &&
              val[cc.info[ni.ia].ia] != 1)
            continue;  // bv5a
          val[i] = b;
          rec(i + 1);
        }
        return;
      case Conn::circ:
        for (int b = 0; b <= 1; ++b) { val[i] = b; rec(i + 1); }
        return;
      default:
        fail(ErrorCode::kind_mismatch, "bivaluations are propositional");
    }
  };
  rec(0);
  return verdict;
}

std::vector<FormulaPtr> schema_instances(const Schema& s, const std::vector<std::string>& atoms) {
  // metavariables of the pattern, in order of first occurrence
  std::vector<std::string> metas;
  std::function<void(const FormulaPtr&)> collect = [&](const FormulaPtr& g) {
    if (g->kind == Conn::prop) {
      if (std::find(metas.begin(), metas.end(), g->label) == metas.end())
        metas.push_back(g->label);
      return;
    }
    if (g->a) collect(g->a);
    if (g->b) collect(g->b);
  };
  collect(s.pattern);
  std::vector<FormulaPtr> out;
  std::vector<std::size_t> pick(metas.size(), 0);
  while (true) {
    Substitution sub;
    for (std::size_t k = 0; k < metas.size(); ++k)
      sub.emplace_back(metas[k], Formula::prop(atoms[pick[k]]));
    out.push_back(apply_substitution(s.pattern, sub));
    std::size_t pos = 0;
    while (pos < metas.size() && pick[pos] + 1 == atoms.size()) pick[pos++] = 0;
    if (pos == metas.size()) break;
    ++pick[pos];
  }
  return out;
}

}  // namespace fidelium
