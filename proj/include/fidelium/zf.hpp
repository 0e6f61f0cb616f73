#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "fidelium/eval.hpp"

namespace fidelium {

enum class ZfAxiom {
  extensionality,
  pairing,
  union_set,
  separation,
  power_set,
  empty_set,
  infinity_approx,
  collection_bounded,
  induction_instance,
};

const char* zf_axiom_name(ZfAxiom a);
std::optional<ZfAxiom> zf_axiom_from(const std::string& s);

struct AxiomParams {
  std::vector<NameId> names;        // subject names, axiom specific
  FormulaPtr phi;                   // separation / collection / induction property
  std::string var = "x";
  std::string var2 = "y";           // second variable of collection
  int steps = 3;                    // length of the infinity approximation
  std::optional<NameId> candidate;  // collection's bounding name
  std::uint64_t budget = 1u << 20;  // power set function space guard
};

struct ConjunctReport {
  std::string what;
  Elem value = -1;
  bool holds = false;
};

/** One axiom checked over the current fragment. value is the meet of every
 * per-instance certificate, so top means all checked instances hold; exact
 * mirrors the evaluator's flag. Witness constructions are registered into the
 * fragment and listed here. */
struct AxiomReport {
  ZfAxiom axiom = ZfAxiom::extensionality;
  Elem value = -1;
  bool exact = true;
  bool holds = false;
  std::vector<NameId> witnesses;
  std::vector<ConjunctReport> details;
  std::string note;

  std::string to_text(const EvalContext& ctx) const;
};

/** w with graph {(u, top), (v, top)}: [[z in w]] = [[z ~ u]] v [[z ~ v]]. */
NameId witness_pairing(EvalContext& ctx, NameId u, NameId v);
/** dom(w) the union of member domains, w(x) the join of v(x) over the
 * members v of u whose domain holds x. */
NameId witness_union(EvalContext& ctx, NameId u);
/** dom(w) = dom(u), w(x) = [[x in u]] & [[phi(x)]]. */
NameId witness_separation(EvalContext& ctx, NameId u, const FormulaPtr& phi,
                          const std::string& var);
/** dom(w) = every weighting of dom(u), w(f) = [[forall y in f . y in u]].
 * The function space has |A|^|dom(u)| members; BudgetExceeded beyond the
 * budget. */
NameId witness_powerset(EvalContext& ctx, NameId u, std::uint64_t budget = 1u << 20);
/** w = {(anchor, [[~(anchor ~ anchor)]])}; the weight comes from the policy. */
NameId witness_empty(EvalContext& ctx, NameId anchor);

AxiomReport check_axiom(EvalContext& ctx, ZfAxiom axiom, AxiomParams params = {});

/** Checks the mixing construction: when the parts satisfy
 * meet(a_i, a_j) <= [[u_i ~ u_j]] pairwise, the mixture m has
 * a_i <= [[u_i ~ m]] for every part. Without the hypothesis nothing is
 * claimed and the conclusion is reported but not judged. enforce_hypothesis
 * shrinks each weight by the residuals against its predecessors, which makes
 * the hypothesis hold for arbitrary seeded parts. */
struct MixingReport {
  bool hypothesis_met = false;
  bool conclusion_holds = false;
  bool holds = false;  // hypothesis implies conclusion; vacuous truth counts
  NameId mixture_name = -1;
  std::vector<std::pair<Elem, NameId>> parts_used;
  std::vector<std::string> notes;

  std::string to_text(const UniverseFragment& frag) const;
};

MixingReport check_mixing(EvalContext& ctx, std::vector<std::pair<Elem, NameId>> parts,
                          bool enforce_hypothesis = false);

/** Builds a name m with [[psi(m)]] = top out of an antichain refinement of
 * the value spectrum of psi over the fragment. Needs a Boolean algebra
 * (KindMismatch) and the fragment-relative [[exists x psi]] = top
 * (HypothesisNotMet). */
struct MaximumReport {
  NameId witness = -1;
  Elem exists_value = -1;
  Elem witness_value = -1;
  bool holds = false;
  std::vector<std::pair<Elem, NameId>> parts;

  std::string to_text(const UniverseFragment& frag) const;
};

MaximumReport maximum_principle(EvalContext& ctx, const FormulaPtr& psi, const std::string& var);

/** Core of u over the two element algebra: fragment names are grouped by the
 * fingerprint (u(z) & [[z ~ x]]) over z in dom(u); the core keeps one fully
 * contained representative per fingerprint class. The checks mirror the
 * definition: members sit in u at top, and every fragment name at top in u
 * matches exactly one core member. The corollary check needs u nonempty
 * (some [[z in u]] = top on the domain) and then asks every fragment name x
 * for a member y with [[x ~ y]] = [[x in u]]. */
struct CoreReport {
  NameId subject = -1;
  std::vector<NameId> members;
  bool members_in = true;
  bool unique_match = true;
  bool nonempty = false;
  bool corollary_holds = true;  // vacuous when u is not nonempty
  std::vector<std::string> notes;

  bool holds() const { return members_in && unique_match && corollary_holds; }
  std::string to_text(const UniverseFragment& frag) const;
};

CoreReport compute_core(EvalContext& ctx, NameId u);

/** The standing example: alpha := u ~ u evaluates to top together with its
 * negation, the control sentence u in {} still comes out bottom, and the
 * replacement audit over ~(x ~ u) and o (x ~ u) stays clean. A model where
 * all four facts hold refutes explosion without collapsing. */
struct ParaconsistencyReport {
  std::string alpha, beta;
  Elem alpha_value = -1, neg_alpha_value = -1, circ_alpha_value = -1, beta_value = -1;
  bool audit_ok = false;
  bool demonstrates = false;

  std::string to_text(const HeytingStructure& h) const;
};

ParaconsistencyReport demo_paraconsistency(EvalContext& ctx);

/** The replacement law failure over the three element chain with the half
 * fixed negation table: w = {}, u = {(w, half)}, v = {(w, 1)} give
 * [[u ~ v]] = half, but psi(x) := ~(w in x) has [[psi(u)]] -> [[psi(v)]] =
 * half -> 0 = 0, and half is not below 0. The same fragment under the
 * saturated n4 structure with the swap policy passes the audit. */
struct H3LeibnizReport {
  Elem equality = -1;
  Elem psi_u = -1, psi_v = -1;
  Elem neg_psi_u = -1, neg_psi_v = -1;
  Elem implication = -1;
  bool failure_as_documented = false;
  bool swap_contrast_ok = false;
  std::string text;
};

H3LeibnizReport repro_h3_leibniz(AlgebraHandle h3);

}  // namespace fidelium
