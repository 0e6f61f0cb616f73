#pragma once

#include "fidelium/formula.hpp"

namespace fidelium {

/** The propositional logics the schema sets and the validity sweeps know. */
enum class Logic { n4, n3, c1, comega };
const char* logic_name(Logic l);
std::optional<Logic> logic_from(const std::string& s);

/** An axiom schema: a pattern whose prop leaves are metavariables. */
struct Schema {
  std::string id;
  std::string display;  // concrete syntax of the pattern
  FormulaPtr pattern;
};

/** The full shipped schema set: Ax1..Ax8, PN1..PN4, N3-EXP, C1..C5.
 * Biconditionals in the sources are stored expanded. */
const std::vector<Schema>& axiom_schemas();

const Schema* find_schema(const std::string& id);

/** Schemas axiomatizing the logic: Ax1..Ax8 for all of them, plus PN1..PN4
 * for n4, additionally N3-EXP for n3, C1/C2 for comega, and C1..C5 for c1. */
std::vector<Schema> schemas_for(Logic l);

using Substitution = std::vector<std::pair<std::string, FormulaPtr>>;

/** Matches f against the schema pattern, binding metavariables to
 * subformulas. Returns the substitution on success. */
std::optional<Substitution> match_schema(const Schema& s, const FormulaPtr& f);

FormulaPtr apply_substitution(const FormulaPtr& pattern, const Substitution& sub);

struct DerivationStep {
  enum class Just { premise, axiom, mp };
  FormulaPtr formula;
  Just just = Just::premise;
  std::string axiom_id;  // axiom steps
  int imp_step = -1;     // mp steps, 1 based: the implication
  int ant_step = -1;     // mp steps, 1 based: the antecedent
};

struct DerivationVerdict {
  bool valid = true;
  int bad_step = -1;  // 1 based
  std::string reason;
};

/** Hilbert style check: every step must be a premise, an instance of a
 * schema of the logic, or follow by modus ponens from earlier steps where
 * step imp_step is (step ant_step -> current). */
DerivationVerdict check_derivation(const std::vector<FormulaPtr>& premises,
                                   const std::vector<DerivationStep>& steps, Logic logic);

}  // namespace fidelium
