#pragma once

#include <optional>
#include <string>
#include <vector>

#include "fidelium/io.hpp"

namespace fidelium {

/** Which family conditions a structure is expected to satisfy.
 *
 * n4 structures live over a (generalized) Heyting algebra and carry N sets
 * only; c1 and comega structures live over a Boolean algebra, with c1 adding
 * the O sets that interpret the consistency operator. */
enum class FidelKind { n4, c1, comega };
const char* fidel_kind_name(FidelKind k);
std::optional<FidelKind> fidel_kind_from(const std::string& s);

/** An algebra together with a family of admissible negation values N_x per
 * element x, and for c1 a family of admissible consistency values O_x.
 *
 * Negation over these structures is a relation, not an operation: any member
 * of N_x may serve as the value of a negated formula whose body has value x.
 * The families are extensional data; two structures are the same exactly
 * when their sets agree. */
struct FidelStructure {
  FidelKind kind = FidelKind::n4;
  AlgebraHandle algebra;
  std::vector<ElemSet> n_family;  // one member set per element
  std::vector<ElemSet> o_family;  // c1 only, empty otherwise

  /** Strict reading of the n4 closure condition: x itself must be an
   * admissible negation value for every member of N_x. Mirrors the double
   * negation law and is required for the forced value of a doubly negated
   * formula to stay inside the family. */
  bool strict = true;

  /** Validates type invariants: algebra kind compatibility, full domain,
   * nonempty N sets (EmptyNSet), O present exactly for c1. Does not check
   * the closure conditions; see verify_structure. */
  static FidelStructure make(AlgebraHandle algebra, FidelKind kind,
                             std::vector<ElemSet> n_family,
                             std::vector<ElemSet> o_family = {}, bool strict = true);

  const HeytingStructure& heyting() const { return algebra->heyting; }
  const BooleanStructure& boolean() const { return *algebra->boolean; }

  bool in_n(Elem x, Elem cand) const { return n_family[x] >> cand & 1; }
  bool in_o(Elem x, Elem cand) const { return o_family[x] >> cand & 1; }
  std::vector<Elem> n_members(Elem x) const;
  std::vector<Elem> o_members(Elem x) const;

  bool is_saturated() const;
};

/** Every family set equal to the whole carrier. Always satisfies the
 * conditions of its kind. */
FidelStructure saturate(AlgebraHandle algebra, FidelKind kind, bool strict = true);

struct StructureViolation {
  std::string condition;  // e.g. "n4-ii-join", "c-i"
  std::string detail;     // element names involved
};

/** Outcome of checking the closure conditions of a structure's kind.
 *
 * For n4 the ambiguous final clause of the closure condition is evaluated
 * under both readings: the strict one (x in N_{x'} for every x' in N_x) and
 * the reflexive one (x in N_x). The overall verdict uses the strict clause
 * only when the structure asks for it. */
struct StructureReport {
  FidelKind kind = FidelKind::n4;
  bool valid = false;
  bool strict_requested = true;
  bool core_holds = false;             // conditions shared by both readings
  bool strict_clause_holds = false;    // n4 only
  bool reflexive_clause_holds = false; // n4 only
  std::vector<StructureViolation> violations;

  std::string to_text() const;
};

StructureReport verify_structure(const FidelStructure& s);

/** All N families over the algebra satisfying the kind's conditions.
 * Exhaustive subset enumeration; throws BudgetExceeded when the candidate
 * space exceeds the budget. */
std::vector<std::vector<ElemSet>> enumerate_n_families(const LoadedAlgebra& alg, FidelKind kind,
                                                       bool strict = true,
                                                       std::uint64_t budget = 1u << 24);

/** All structures of the kind: N families, and for c1 every valid O family
 * combination as well. */
std::vector<FidelStructure> enumerate_structures(AlgebraHandle algebra, FidelKind kind,
                                                 bool strict = true,
                                                 std::uint64_t budget = 1u << 24);

/** For c1: all valid O_x subsets for one element, given the N family. */
std::vector<ElemSet> valid_o_sets(const LoadedAlgebra& alg, const std::vector<ElemSet>& n_family,
                                  Elem x);

}  // namespace fidelium
