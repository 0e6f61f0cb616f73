#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "fidelium/formula.hpp"
#include "fidelium/io.hpp"

namespace fidelium {

/** A hereditarily finite set literal, canonicalized: members sorted and
 * deduplicated. rank({}) = 0, rank(s) = 1 + max member rank. */
struct Hf {
  std::vector<Hf> elems;

  int rank() const;
  bool member(const Hf& x) const;
  std::string to_text() const;
};

bool operator==(const Hf& a, const Hf& b);
bool operator<(const Hf& a, const Hf& b);

/** Canonicalizes in place: members recursively canonicalized, then sorted
 * and deduplicated. */
Hf hf_canonical(Hf s);
/** s together with {s}: the von Neumann successor. */
Hf hf_successor(Hf s);
/** The von Neumann numeral n = {0, ..., n-1}. */
Hf hf_numeral(int n);
/** All hereditarily finite sets of rank <= max_rank. Counts grow as iterated
 * powersets: 1, 2, 4, 16, 65536 for ranks 0..4. */
std::vector<Hf> enumerate_hf(int max_rank);

/** One inhabitant of the bounded-rank universe over an algebra: a finite map
 * from earlier names to elements. The graph is sorted by name id with unique
 * keys; rank is 1 + the largest domain rank (0 for the empty graph).
 * Weight-bottom entries are real entries: {(x, 0)} and {} are distinct. */
struct Name {
  std::vector<std::pair<NameId, Elem>> graph;
  int rank = 0;

  std::optional<Elem> weight_of(NameId x) const;
};

/** A finite, domain-closed collection of names over one algebra.
 *
 * Names are interned: structurally equal graphs get the same id, and domain
 * members always carry smaller ids, so iterating ids in order visits
 * dependencies first. Ids are never reused; formulas may safely cache values
 * keyed by id even while the fragment keeps growing. */
class UniverseFragment {
public:
  explicit UniverseFragment(AlgebraHandle algebra);

  const AlgebraHandle& algebra() const { return algebra_; }
  const HeytingStructure& heyting() const { return algebra_->heyting; }

  int size() const { return static_cast<int>(names_.size()); }
  const Name& name(NameId id) const;
  std::vector<NameId> all_ids() const;

  /** Interns the canonicalized graph: entries sorted by id, duplicate keys
   * merged by join of their weights. Cited ids must already exist and
   * elements must lie in the carrier. */
  NameId make_name(std::vector<std::pair<NameId, Elem>> entries);
  NameId empty_name() { return make_name({}); }

  /** Recursive embedding of a hereditarily finite set, all weights top. */
  NameId hat_embed(const Hf& s);

  void bind(const std::string& label, NameId id);
  std::optional<NameId> lookup(const std::string& label) const;
  /** First label bound to the id, or a positional fallback like "#3". */
  std::string label_of(NameId id) const;
  /** The graph as a literal, recursively; bound labels abbreviate. */
  std::string describe(NameId id) const;

  /** Registers every name of rank <= max_rank whose domain has at most
   * max_dom_size entries (unbounded when absent), and returns their ids.
   * The universe cardinality is computed up front; if it exceeds the budget
   * nothing is registered and BudgetExceeded reports the count. Rank is
   * capped at 2: one level higher is already doubly exponential. */
  std::vector<NameId> enumerate_names(int max_rank, std::optional<int> max_dom_size = std::nullopt,
                                      std::uint64_t budget = 200000);

private:
  AlgebraHandle algebra_;
  std::vector<Name> names_;
  std::map<std::vector<std::pair<NameId, Elem>>, NameId> interned_;
  std::vector<std::pair<std::string, NameId>> labels_;
};

/** Name expression syntax: `{}` | `{(expr, element), ...}` | `hat{...}` with
 * hereditarily finite braces inside | a bound label. New names are registered
 * into the fragment; the whole text must be consumed. */
NameId parse_name_expr(UniverseFragment& frag, const std::string& text);

}  // namespace fidelium
