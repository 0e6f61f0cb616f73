#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "fidelium/errors.hpp"

namespace fidelium {

using NameId = int;

/** A term is either a variable or a reference to a name in a universe
 * fragment. Name references are only meaningful relative to the universe
 * they were resolved against. */
struct Term {
  bool is_var = true;
  std::string var;
  NameId name = -1;

  static Term make_var(std::string v) { return {true, std::move(v), -1}; }
  static Term make_name(NameId id) { return {false, {}, id}; }
};

bool operator==(const Term& a, const Term& b);

enum class Conn { prop, mem, eq, conj, disj, imp, neg, circ, forall, exists };

class Formula;
using FormulaPtr = std::shared_ptr<const Formula>;

/** Immutable formula tree.
 *
 * prop nodes double as propositional atoms and schema metavariables. The
 * biconditional is not a node: parsers expand a <-> b into (a -> b) & (b -> a).
 * The consistency connective circ is primitive here; rule sets that define it
 * away expand it before evaluation. */
class Formula {
public:
  Conn kind;
  std::string label;  // prop atom name, or the bound variable of a quantifier
  Term lhs, rhs;      // mem / eq only
  FormulaPtr a, b;    // children

  static FormulaPtr prop(std::string name);
  static FormulaPtr mem(Term l, Term r);
  static FormulaPtr eq(Term l, Term r);
  static FormulaPtr conj(FormulaPtr x, FormulaPtr y);
  static FormulaPtr disj(FormulaPtr x, FormulaPtr y);
  static FormulaPtr imp(FormulaPtr x, FormulaPtr y);
  static FormulaPtr iff(FormulaPtr x, FormulaPtr y);
  static FormulaPtr neg(FormulaPtr x);
  static FormulaPtr circ(FormulaPtr x);
  static FormulaPtr forall(std::string var, FormulaPtr body);
  static FormulaPtr exists(std::string var, FormulaPtr body);

  Formula() = default;
};

bool equal(const FormulaPtr& x, const FormulaPtr& y);

/** Renders a formula in the concrete syntax accepted by parse_formula.
 * Name references are rendered through the namer, which must produce
 * identifiers that resolve back to the same names. */
std::string print_formula(const FormulaPtr& f,
                          const std::function<std::string(NameId)>& namer = {});

/** Name resolution hook for the parser. Identifiers are tried as bound
 * variables first, then as names, and finally fall back to propositional
 * atoms when the hook is absent or declines. */
struct ParseEnv {
  std::function<std::optional<NameId>(const std::string&)> lookup_name;
  bool allow_prop_atoms = true;
};

/** Concrete syntax:
 *   ~a, o a, a & b, a | b, a -> b, a <-> b, (a)
 *   u in v, u = v
 *   forall x . f, exists x . f, forall x in u . f, exists x in u . f
 * Precedence ~ and o bind tightest, then &, then |, then -> and <->;
 * implication associates to the right. Bounded quantifiers are sugar:
 * forall x in u . f is forall x . (x in u -> f), exists x in u . f is
 * exists x . (x in u & f). */
FormulaPtr parse_formula(const std::string& text, const ParseEnv& env = {});

/** Capture free occurrences of var by the term. Substituting closed name
 * references never captures. */
FormulaPtr substitute(const FormulaPtr& f, const std::string& var, const Term& t);

/** Replace every consistency subformula o b by ~(b & ~b). */
FormulaPtr expand_circ(const FormulaPtr& f);

/** Rewrite every name reference through the map. */
FormulaPtr map_names(const FormulaPtr& f, const std::function<NameId(NameId)>& map);

/** Swap all references to two names throughout the formula. */
FormulaPtr swap_names(const FormulaPtr& f, NameId u, NameId v);

/** All name ids the formula references, ascending and deduplicated. */
std::vector<NameId> formula_names(const FormulaPtr& f);

std::vector<std::string> free_vars(const FormulaPtr& f);
bool is_closed(const FormulaPtr& f);

/** True when the formula mentions no names, no membership and no equality,
 * i.e. it lives in the propositional fragment. */
bool is_propositional(const FormulaPtr& f);

bool mentions_neg_or_circ(const FormulaPtr& f);

/** All distinct subformulas including f itself, parents after children. */
std::vector<FormulaPtr> subformula_closure(const std::vector<FormulaPtr>& roots);

}  // namespace fidelium
