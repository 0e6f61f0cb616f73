#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "fidelium/errors.hpp"

namespace fidelium {

/** Index of an element inside its algebra. Elements are identified by opaque
 * strings in files and reports; internally everything works on indices into
 * the canonically sorted element table. */
using Elem = int;

/** Subset of algebra elements, one bit per element index. Carriers are capped
 * at 30 elements, far above anything the finite sweeps need. */
using ElemSet = std::uint32_t;

constexpr int kMaxCarrier = 30;

/** A finite lattice given by its order relation.
 *
 * Construction validates that leq is a partial order and that every pair of
 * elements has a greatest lower bound and a least upper bound; meet and join
 * tables are precomputed from the order. */
class FiniteLattice {
public:
  /** Builds from element names and a list of order pairs (a, b) meaning
   * a <= b. The reflexive transitive closure is applied before validation,
   * so files only need to list a generating set of the order. */
  static FiniteLattice from_order(std::vector<std::string> names,
                                  const std::vector<std::pair<std::string, std::string>>& pairs);

  /** Builds from an explicit reflexive leq matrix (row * n + col). */
  static FiniteLattice from_matrix(std::vector<std::string> names, std::vector<char> leq);

  int size() const { return n_; }
  const std::string& name(Elem e) const { return names_[e]; }
  const std::vector<std::string>& names() const { return names_; }

  /** Index of a named element; throws UnknownElement otherwise. */
  Elem elem(const std::string& name) const;
  std::optional<Elem> find(const std::string& name) const;

  bool leq(Elem a, Elem b) const { return leq_[a * n_ + b] != 0; }
  Elem meet(Elem a, Elem b) const { return meet_[a * n_ + b]; }
  Elem join(Elem a, Elem b) const { return join_[a * n_ + b]; }

  Elem least() const { return least_; }
  Elem greatest() const { return greatest_; }

  bool is_distributive() const;
  bool is_chain() const;

  /** Lexicographically minimal leq matrix over all element permutations.
   * Two lattices are isomorphic iff their canonical keys agree. */
  std::vector<char> canonical_key() const;

private:
  friend class HeytingStructure;
  FiniteLattice() = default;
  void finish();  // validates lattice structure, fills meet/join

  int n_ = 0;
  std::vector<std::string> names_;
  std::vector<char> leq_;
  std::vector<Elem> meet_, join_;
  Elem least_ = -1, greatest_ = -1;
};

enum class AlgebraClass { generalized_heyting, heyting, boolean };
const char* algebra_class_name(AlgebraClass c);

/** A finite generalized Heyting algebra: a distributive lattice with top,
 * residual implication, an optionally designated bottom, and an optional
 * unary negation table.
 *
 * implies(a, b) is the greatest z with meet(a, z) <= b. A finite lattice
 * always has a least element; the structure only counts as a Heyting algebra
 * proper when that element is designated as bottom. The negation table is
 * carried verbatim for algebras that ship one (such as the three element
 * chain with the half fixed negation) and obeys no law by itself. */
class HeytingStructure {
public:
  /** Validates distributivity, computes the residual table, checks any
   * explicitly supplied tables against the computed ones. */
  static HeytingStructure build(FiniteLattice lattice,
                                bool designate_bottom,
                                std::optional<std::vector<Elem>> given_implies = std::nullopt,
                                std::optional<std::vector<Elem>> neg = std::nullopt);

  const FiniteLattice& lattice() const { return lat_; }
  int size() const { return lat_.size(); }
  const std::string& name(Elem e) const { return lat_.name(e); }
  Elem elem(const std::string& n) const { return lat_.elem(n); }

  bool leq(Elem a, Elem b) const { return lat_.leq(a, b); }
  Elem meet(Elem a, Elem b) const { return lat_.meet(a, b); }
  Elem join(Elem a, Elem b) const { return lat_.join(a, b); }
  Elem implies(Elem a, Elem b) const { return implies_[a * lat_.size() + b]; }

  Elem top() const { return lat_.greatest(); }
  /** Designated bottom, if any. */
  std::optional<Elem> bottom() const { return bottom_; }
  bool has_bottom() const { return bottom_.has_value(); }

  bool has_neg() const { return !neg_.empty(); }
  Elem neg(Elem a) const;

  /** Meet of a set of elements; empty set yields top. */
  Elem big_meet(const std::vector<Elem>& s) const;
  /** Join of a set of elements; empty set yields bottom, or throws
   * EmptyJoinNoBottom when no bottom is designated. */
  Elem big_join(const std::vector<Elem>& s) const;

  /** Elements covering bottom. Requires a designated bottom. */
  std::vector<Elem> atoms() const;

  /** True when every element has a complement against the designated bottom,
   * i.e. join(a, implies(a, bottom)) == top for all a. */
  bool is_boolean() const;

  AlgebraClass classification() const;

  /** All elements, in index order. */
  std::vector<Elem> carrier() const;

private:
  friend class BooleanStructure;
  HeytingStructure() = default;
  FiniteLattice lat_;
  std::optional<Elem> bottom_;
  std::vector<Elem> implies_;
  std::vector<Elem> neg_;
};

/** A finite Boolean algebra: a Heyting structure whose complement operation
 * complement(a) = implies(a, bottom) satisfies the Boolean laws. */
class BooleanStructure {
public:
  static BooleanStructure build(HeytingStructure h,
                                std::optional<std::vector<Elem>> given_complement = std::nullopt);

  const HeytingStructure& heyting() const { return h_; }
  int size() const { return h_.size(); }
  Elem complement(Elem a) const { return complement_[a]; }
  Elem bottom() const { return *h_.bottom(); }
  Elem top() const { return h_.top(); }

private:
  HeytingStructure h_;
  std::vector<Elem> complement_;
};

/** Replaces s by a pairwise incomparable set, each member below some member
 * of s, with the same join. Boolean structures use the atoms below members
 * of s; other structures fall back to the maximal elements of s. Throws
 * NotRefinable if neither construction applies. */
std::vector<Elem> antichain_refinement(const HeytingStructure& h, const std::vector<Elem>& s);

/** All distributive lattices with exactly n elements, up to isomorphism.
 * Throws SizeCapExceeded beyond n = 5; the unlabeled counts for n = 1..5
 * are 1, 1, 1, 2, 3. */
std::vector<FiniteLattice> enumerate_distributive_lattices(int n);

}  // namespace fidelium
