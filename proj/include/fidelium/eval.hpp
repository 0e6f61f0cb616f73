#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "fidelium/fidel.hpp"
#include "fidelium/formula.hpp"
#include "fidelium/names.hpp"

namespace fidelium {

/** Clause set governing negation and consistency during evaluation.
 *
 *   hv      bare Heyting algebra; ~ and o fall entirely to the policy
 *   n4      saturated n4 structure; ~ is pushed through compounds and the
 *           policy only decides negated atomic and quantified subformulas
 *   c1      c1 structure over a Boolean algebra; o is primitive
 *   comega  comega structure; o expands to ~(b & ~b)
 *   bv2     the two element Boolean algebra with the bivaluation conditions
 */
enum class RuleSet { hv, n4, c1, comega, bv2 };

const char* rule_set_name(RuleSet r);
std::optional<RuleSet> rule_set_from(const std::string& s);

enum class PolicyKind { constant_top, complement, swap, table };

/** How the evaluator resolves the value of ~f (and o f where primitive) at
 * subformulas the rule set leaves free.
 *
 * constant_top sends every negation to top and every consistency claim to
 * bottom. complement applies the algebra's negation table when it has one and
 * the Boolean complement otherwise; when the complement is not an admissible
 * family member the value falls back to top for that formula. swap evaluates
 * the body with two chosen names exchanged. table maps printed formulas to
 * elements and rejects anything missing. */
struct NegationPolicy {
  PolicyKind kind = PolicyKind::complement;
  NameId swap_a = -1, swap_b = -1;
  std::vector<std::pair<std::string, std::string>> table;

  static NegationPolicy constant_top() { return {PolicyKind::constant_top, -1, -1, {}}; }
  static NegationPolicy complement() { return {PolicyKind::complement, -1, -1, {}}; }
  static NegationPolicy swap(NameId a, NameId b) { return {PolicyKind::swap, a, b, {}}; }
  static NegationPolicy from_table(std::vector<std::pair<std::string, std::string>> entries) {
    return {PolicyKind::table, -1, -1, std::move(entries)};
  }

  std::string describe() const;
};

std::optional<PolicyKind> policy_kind_from(const std::string& s);

/** exact is false when an unbounded quantifier had to range over the current
 * fragment instead of the whole universe; the reported value is then the
 * fragment-relative approximation (an upper bound for forall, a lower bound
 * for exists, with no guaranteed direction once both mix). */
struct EvalResult {
  Elem value = -1;
  bool exact = true;
};

struct LeibnizViolation {
  std::string formula;
  NameId u = -1, v = -1;
  Elem equality = -1;       // [[u ~ v]]
  Elem implication = -1;    // [[f(u)]] -> [[f(v)]]
};

struct LeibnizReport {
  int pairs_checked = 0;
  std::vector<LeibnizViolation> violations;  // capped at 25 entries

  bool ok() const { return violations.empty(); }
  std::string to_text(const UniverseFragment& frag) const;
};

/** Evaluates sentences over one fragment, one rule set, one policy.
 *
 * Equality and membership values are memoized by name id pair; both recurse
 * without ever touching negation, so the memo is safe under fragment growth
 * and policy choice alike. Policy decisions are cached per printed formula,
 * which keeps repeated negated subformulas consistent within the context. */
class EvalContext {
public:
  /** hv or bv2 over a bare algebra. bv2 demands the two element Boolean
   * algebra and enforces the bivaluation conditions on policy values. */
  EvalContext(UniverseFragment& frag, RuleSet rs, NegationPolicy policy);

  /** n4, c1 or comega over a structure; the rule set follows the structure's
   * kind. The structure must sit on the fragment's algebra, and n4 evaluation
   * requires saturation (negation values of compounds are forced and must
   * stay admissible, which only saturation guarantees in general). */
  EvalContext(FidelStructure structure, UniverseFragment& frag, NegationPolicy policy);

  RuleSet rule_set() const { return rs_; }
  const NegationPolicy& policy() const { return policy_; }
  UniverseFragment& fragment() { return frag_; }
  const UniverseFragment& fragment() const { return frag_; }
  const HeytingStructure& heyting() const { return frag_.heyting(); }
  const FidelStructure* structure() const { return structure_ ? &*structure_ : nullptr; }

  Elem eval_equality(NameId u, NameId v);
  Elem eval_membership(NameId u, NameId v);

  /** Evaluates a closed formula; throws OpenFormula otherwise. */
  EvalResult eval_sentence(const FormulaPtr& f);
  /** Substitutes the name for the only free variable, then evaluates. */
  EvalResult eval_at(const FormulaPtr& f, const std::string& var, NameId u);

  /** Audits u ~ v <= f(u) -> f(v) for every ordered pair of fragment names,
   * for each formula (given with its free variable). The rule sets only
   * constrain, never force, this law for formulas with ~ or o, so the audit
   * is the honest check that the policy's choices respect it here. */
  LeibnizReport check_leibniz(const std::vector<std::pair<std::string, FormulaPtr>>& formulas);

  std::string formula_text(const FormulaPtr& f) const;
  std::string element_name(Elem e) const { return heyting().name(e); }

  void set_trace(bool on) { trace_on_ = on; }
  const std::vector<std::string>& trace() const { return trace_; }
  std::uint64_t memo_hits() const { return hits_; }
  std::uint64_t memo_misses() const { return misses_; }

private:
  EvalResult eval_rec(const FormulaPtr& f);
  std::pair<Elem, bool> policy_neg(const FormulaPtr& whole);
  std::pair<Elem, bool> policy_circ(const FormulaPtr& whole);
  void note(const std::string& line);

  UniverseFragment& frag_;
  std::optional<FidelStructure> structure_;
  RuleSet rs_;
  NegationPolicy policy_;
  std::map<std::pair<NameId, NameId>, Elem> eq_memo_, mem_memo_;
  std::map<std::string, std::pair<Elem, bool>> policy_memo_;
  std::uint64_t hits_ = 0, misses_ = 0;
  bool trace_on_ = false;
  std::vector<std::string> trace_;
  int depth_ = 0;
};

/** The name u with dom(u) the union of the part domains and
 * u(x) the join over parts of meet(a_i, [[x in u_i]]). Registers and
 * returns the new name. */
NameId mixture(EvalContext& ctx, const std::vector<std::pair<Elem, NameId>>& parts);

/** True when every quantifier in f is of the bounded shape the evaluator
 * recognizes: forall x . (x in u -> ...) or exists x . (x in u & ...) with u
 * a name reference. Such formulas evaluate exactly, fragment or not. */
bool is_restricted(const FormulaPtr& f);

struct SubalgebraVerdict {
  bool agrees = false;
  Elem sub_value = -1;   // expressed in the full algebra
  Elem full_value = -1;
};

/** Re-evaluates a negation-free restricted sentence inside the subalgebra
 * carried by the listed elements and compares with the full value. The subset
 * must contain top, the designated bottom if any, and be closed under meet,
 * join and implication (NotASubalgebra otherwise); every weight hereditarily
 * reachable from the sentence's names must lie in the subset. */
SubalgebraVerdict check_subalgebra_invariance(EvalContext& ctx,
                                              const std::vector<std::string>& sub_elements,
                                              const FormulaPtr& f);

}  // namespace fidelium
