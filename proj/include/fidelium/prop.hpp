#pragma once

#include "fidelium/fidel.hpp"
#include "fidelium/schemas.hpp"

namespace fidelium {

/** A falsifying structure and valuation found by prop_validity. The
 * valuation lists the atom values and the chosen values of every negated
 * and circ subformula. */
struct PropCountermodel {
  AlgebraHandle algebra;
  FidelKind kind = FidelKind::n4;
  std::vector<ElemSet> n_family;
  std::vector<ElemSet> o_family;
  std::vector<std::pair<std::string, std::string>> valuation;  // formula text -> element
  std::string value;  // value of the target formula

  std::string to_text() const;
};

struct PropVerdict {
  bool valid = true;
  std::optional<PropCountermodel> countermodel;
  std::uint64_t structures_checked = 0;
  std::uint64_t valuations_checked = 0;
};

/** Validity of a propositional formula over every finite structure of the
 * logic up to the given carrier size, under every admissible valuation.
 *
 * Valuations assign carrier elements to atoms and are homomorphic on the
 * positive connectives. Negation values are drawn from the N sets: n4
 * forces the value of every negated compound through the De Morgan style
 * clauses and leaves only negated atoms free, while c1 and comega choose
 * freely subject to join(v(a), v(~a)) = top and v(~~a) <= v(a), with c1
 * circ values drawn from the O sets subject to meet(v(a), v(~a), v(o a)) =
 * bottom and the circ distribution inequality. For c1 the O dimension is
 * swept in collapsed form: every carrier element is available in some valid
 * O set independently per element, so checking the saturated O family is
 * exhaustive.
 *
 * n4 and n3 share structures; validity for n3 is not defined here and is
 * rejected. Algebra enumeration is capped at carrier size 5. */
PropVerdict prop_validity(const FormulaPtr& f, Logic logic, int max_algebra_size = 4);

struct BivalCountermodel {
  std::vector<std::pair<std::string, bool>> assignment;  // closure formula -> bit
  std::string to_text() const;
};

struct BivalVerdict {
  bool entailed = true;
  std::optional<BivalCountermodel> countermodel;
  std::uint64_t assignments_checked = 0;
};

/** Da Costa style two valued consequence for c1: enumerates all assignments
 * over the subformula closure of the premises and the conclusion that
 * satisfy the bivaluation clauses (positive connectives truth functional;
 * bv4 negation completeness; bv5a double negation; bv5b consistency; bv7
 * circ propagation through compounds, enforced when the mentioned circ
 * formulas lie in the closure). Entailed when no admissible assignment makes
 * all premises true and the conclusion false. */
BivalVerdict bivaluation_consequence(const std::vector<FormulaPtr>& premises, const FormulaPtr& f);

/** All instantiations of the schema's metavariables with the given atoms. */
std::vector<FormulaPtr> schema_instances(const Schema& s, const std::vector<std::string>& atoms);

}  // namespace fidelium
