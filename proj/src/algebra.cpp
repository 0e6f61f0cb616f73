#include "fidelium/algebra.hpp"

#include <algorithm>
#include <numeric>
#include <set>

namespace fidelium {

const char* error_code_name(ErrorCode c) {
  switch (c) {
    case ErrorCode::not_a_lattice: return "NotALattice";
    case ErrorCode::not_distributive: return "NotDistributive";
    case ErrorCode::no_residual: return "NoResidual";
    case ErrorCode::inconsistent_tables: return "InconsistentTables";
    case ErrorCode::empty_join_no_bottom: return "EmptyJoinNoBottom";
    case ErrorCode::no_bottom: return "NoBottom";
    case ErrorCode::unknown_element: return "UnknownElement";
    case ErrorCode::kind_mismatch: return "KindMismatch";
    case ErrorCode::empty_n_set: return "EmptyNSet";
    case ErrorCode::syntax_error: return "SyntaxError";
    case ErrorCode::unbound_name: return "UnboundName";
    case ErrorCode::bad_justification: return "BadJustification";
    case ErrorCode::size_cap_exceeded: return "SizeCapExceeded";
    case ErrorCode::budget_exceeded: return "BudgetExceeded";
    case ErrorCode::mixed_algebras: return "MixedAlgebras";
    case ErrorCode::policy_violation: return "PolicyViolation";
    case ErrorCode::open_formula: return "OpenFormula";
    case ErrorCode::hypothesis_not_met: return "HypothesisNotMet";
    case ErrorCode::not_a_subalgebra: return "NotASubalgebra";
    case ErrorCode::not_refinable: return "NotRefinable";
    case ErrorCode::unsupported_axiom: return "UnsupportedAxiom";
    case ErrorCode::io_error: return "IoError";
  }
  return "UnknownError";
}

const char* algebra_class_name(AlgebraClass c) {
  switch (c) {
    case AlgebraClass::generalized_heyting: return "generalized Heyting algebra";
    case AlgebraClass::heyting: return "Heyting algebra";
    case AlgebraClass::boolean: return "Boolean algebra";
  }
  return "?";
}

FiniteLattice FiniteLattice::from_order(
    std::vector<std::string> names,
    const std::vector<std::pair<std::string, std::string>>& pairs) {
  FiniteLattice l;
  std::sort(names.begin(), names.end());
  for (std::size_t i = 1; i < names.size(); ++i)
    if (names[i] == names[i - 1])
      fail(ErrorCode::inconsistent_tables, "duplicate element '" + names[i] + "'");
  l.names_ = std::move(names);
  l.n_ = static_cast<int>(l.names_.size());
  if (l.n_ == 0) fail(ErrorCode::not_a_lattice, "empty carrier");
  if (l.n_ > kMaxCarrier) fail(ErrorCode::size_cap_exceeded, "carrier too large");
  l.leq_.assign(l.n_ * l.n_, 0);
  for (Elem a = 0; a < l.n_; ++a) l.leq_[a * l.n_ + a] = 1;
  for (const auto& [lo, hi] : pairs) l.leq_[l.elem(lo) * l.n_ + l.elem(hi)] = 1;
  // transitive closure
  for (Elem k = 0; k < l.n_; ++k)
    for (Elem a = 0; a < l.n_; ++a)
      if (l.leq_[a * l.n_ + k])
        for (Elem b = 0; b < l.n_; ++b)
          if (l.leq_[k * l.n_ + b]) l.leq_[a * l.n_ + b] = 1;
  l.finish();
  return l;
}

FiniteLattice FiniteLattice::from_matrix(std::vector<std::string> names, std::vector<char> leq) {
  FiniteLattice l;
  l.names_ = std::move(names);
  l.n_ = static_cast<int>(l.names_.size());
  if (l.n_ == 0) fail(ErrorCode::not_a_lattice, "empty carrier");
  if (l.n_ > kMaxCarrier) fail(ErrorCode::size_cap_exceeded, "carrier too large");
  if (leq.size() != static_cast<std::size_t>(l.n_ * l.n_))
    fail(ErrorCode::inconsistent_tables, "leq matrix has wrong size");
  l.leq_ = std::move(leq);
  for (Elem a = 0; a < l.n_; ++a)
    if (!l.leq_[a * l.n_ + a]) fail(ErrorCode::not_a_lattice, "leq is not reflexive");
  for (Elem a = 0; a < l.n_; ++a)
    for (Elem b = 0; b < l.n_; ++b)
      if (l.leq_[a * l.n_ + b])
        for (Elem c = 0; c < l.n_; ++c)
          if (l.leq_[b * l.n_ + c] && !l.leq_[a * l.n_ + c])
            fail(ErrorCode::not_a_lattice, "leq is not transitive");
  l.finish();
  return l;
}

Elem FiniteLattice::elem(const std::string& name) const {
  if (auto e = find(name)) return *e;
  fail(ErrorCode::unknown_element, "no element '" + name + "'");
}

std::optional<Elem> FiniteLattice::find(const std::string& name) const {
  for (Elem e = 0; e < n_; ++e)
    if (names_[e] == name) return e;
  return std::nullopt;
}

void FiniteLattice::finish() {
  for (Elem a = 0; a < n_; ++a)
    for (Elem b = a + 1; b < n_; ++b)
      if (leq_[a * n_ + b] && leq_[b * n_ + a])
        fail(ErrorCode::not_a_lattice,
             "leq is not antisymmetric between '" + names_[a] + "' and '" + names_[b] + "'");
  meet_.assign(n_ * n_, -1);
  join_.assign(n_ * n_, -1);
  auto bound = [&](Elem a, Elem b, bool lower) -> Elem {
    std::vector<Elem> cand;
    for (Elem z = 0; z < n_; ++z) {
      bool in = lower ? (leq_[z * n_ + a] && leq_[z * n_ + b])
                      : (leq_[a * n_ + z] && leq_[b * n_ + z]);
      if (in) cand.push_back(z);
    }
    for (Elem z : cand) {
      bool extreme = true;
      for (Elem w : cand)
        if (lower ? !leq_[w * n_ + z] : !leq_[z * n_ + w]) { extreme = false; break; }
      if (extreme) return z;
    }
    fail(ErrorCode::not_a_lattice,
         std::string("no ") + (lower ? "greatest lower" : "least upper") + " bound for '" +
             names_[a] + "' and '" + names_[b] + "'");
  };
  for (Elem a = 0; a < n_; ++a)
    for (Elem b = 0; b < n_; ++b) {
      meet_[a * n_ + b] = bound(a, b, true);
      join_[a * n_ + b] = bound(a, b, false);
    }
  least_ = 0;
  greatest_ = 0;
  for (Elem e = 1; e < n_; ++e) {
    least_ = meet_[least_ * n_ + e];
    greatest_ = join_[greatest_ * n_ + e];
  }
}

bool FiniteLattice::is_distributive() const {
  for (Elem a = 0; a < n_; ++a)
    for (Elem b = 0; b < n_; ++b)
      for (Elem c = 0; c < n_; ++c)
        if (meet(a, join(b, c)) != join(meet(a, b), meet(a, c))) return false;
  return true;
}

bool FiniteLattice::is_chain() const {
  for (Elem a = 0; a < n_; ++a)
    for (Elem b = 0; b < n_; ++b)
      if (!leq(a, b) && !leq(b, a)) return false;
  return true;
}

std::vector<char> FiniteLattice::canonical_key() const {
  std::vector<Elem> perm(n_);
  std::iota(perm.begin(), perm.end(), 0);
  std::vector<char> best;
  do {
    std::vector<char> key(n_ * n_);
    for (Elem a = 0; a < n_; ++a)
      for (Elem b = 0; b < n_; ++b) key[a * n_ + b] = leq_[perm[a] * n_ + perm[b]];
    if (best.empty() || key < best) best = std::move(key);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

HeytingStructure HeytingStructure::build(FiniteLattice lattice,
                                         bool designate_bottom,
                                         std::optional<std::vector<Elem>> given_implies,
                                         std::optional<std::vector<Elem>> neg) {
  HeytingStructure h;
  h.lat_ = std::move(lattice);
  const int n = h.lat_.size();
  if (!h.lat_.is_distributive()) {
    for (Elem a = 0; a < n; ++a)
      for (Elem b = 0; b < n; ++b)
        for (Elem c = 0; c < n; ++c)
          if (h.lat_.meet(a, h.lat_.join(b, c)) !=
              h.lat_.join(h.lat_.meet(a, b), h.lat_.meet(a, c)))
            fail(ErrorCode::not_distributive,
                 "distributivity fails at ('" + h.lat_.name(a) + "', '" + h.lat_.name(b) +
                     "', '" + h.lat_.name(c) + "')");
  }
  if (designate_bottom) h.bottom_ = h.lat_.least();
  h.implies_.assign(n * n, -1);
  for (Elem a = 0; a < n; ++a)
    for (Elem b = 0; b < n; ++b) {
      // greatest z with meet(a, z) <= b; in a finite distributive lattice the
      // set of such z is join closed and nonempty, so the join is a member
      Elem acc = -1;
      for (Elem z = 0; z < n; ++z)
        if (h.lat_.leq(h.lat_.meet(a, z), b)) acc = acc < 0 ? z : h.lat_.join(acc, z);
      if (acc < 0 || !h.lat_.leq(h.lat_.meet(a, acc), b))
        fail(ErrorCode::no_residual,
             "no residual for ('" + h.lat_.name(a) + "', '" + h.lat_.name(b) + "')");
      h.implies_[a * n + b] = acc;
    }
  if (given_implies) {
    if (given_implies->size() != static_cast<std::size_t>(n * n))
      fail(ErrorCode::inconsistent_tables, "implies table has wrong size");
    for (Elem a = 0; a < n; ++a)
      for (Elem b = 0; b < n; ++b)
        if ((*given_implies)[a * n + b] != h.implies_[a * n + b])
          fail(ErrorCode::inconsistent_tables,
               "implies('" + h.lat_.name(a) + "', '" + h.lat_.name(b) + "') is '" +
                   h.lat_.name((*given_implies)[a * n + b]) + "' but the residual is '" +
                   h.lat_.name(h.implies_[a * n + b]) + "'");
  }
  if (neg) {
    if (neg->size() != static_cast<std::size_t>(n))
      fail(ErrorCode::inconsistent_tables, "neg table has wrong size");
    for (Elem a = 0; a < n; ++a)
      if ((*neg)[a] < 0 || (*neg)[a] >= n)
        fail(ErrorCode::inconsistent_tables, "neg table maps outside the carrier");
    h.neg_ = std::move(*neg);
  }
  return h;
}

Elem HeytingStructure::neg(Elem a) const {
  if (neg_.empty()) fail(ErrorCode::inconsistent_tables, "algebra has no negation table");
  return neg_[a];
}

Elem HeytingStructure::big_meet(const std::vector<Elem>& s) const {
  Elem acc = top();
  for (Elem e : s) acc = meet(acc, e);
  return acc;
}

Elem HeytingStructure::big_join(const std::vector<Elem>& s) const {
  if (s.empty()) {
    if (!bottom_)
      fail(ErrorCode::empty_join_no_bottom, "empty join in a structure without designated bottom");
    return *bottom_;
  }
  Elem acc = s[0];
  for (Elem e : s) acc = join(acc, e);
  return acc;
}

std::vector<Elem> HeytingStructure::atoms() const {
  if (!bottom_) fail(ErrorCode::no_bottom, "atoms need a designated bottom");
  std::vector<Elem> out;
  for (Elem a = 0; a < size(); ++a) {
    if (a == *bottom_) continue;
    bool covers = true;
    for (Elem z = 0; z < size(); ++z)
      if (z != a && z != *bottom_ && leq(z, a)) { covers = false; break; }
    if (covers) out.push_back(a);
  }
  return out;
}

bool HeytingStructure::is_boolean() const {
  if (!bottom_) return false;
  for (Elem a = 0; a < size(); ++a) {
    Elem c = implies(a, *bottom_);
    if (join(a, c) != top() || meet(a, c) != *bottom_) return false;
  }
  return true;
}

AlgebraClass HeytingStructure::classification() const {
  if (!bottom_) return AlgebraClass::generalized_heyting;
  return is_boolean() ? AlgebraClass::boolean : AlgebraClass::heyting;
}

std::vector<Elem> HeytingStructure::carrier() const {
  std::vector<Elem> all(size());
  std::iota(all.begin(), all.end(), 0);
  return all;
}

BooleanStructure BooleanStructure::build(HeytingStructure h,
                                         std::optional<std::vector<Elem>> given_complement) {
  if (!h.has_bottom())
    fail(ErrorCode::kind_mismatch, "Boolean structure needs a designated bottom");
  if (!h.is_boolean())
    fail(ErrorCode::kind_mismatch,
         "not a Boolean algebra: some element has no complement");
  BooleanStructure b;
  b.complement_.resize(h.size());
  for (Elem a = 0; a < h.size(); ++a) b.complement_[a] = h.implies(a, *h.bottom());
  if (given_complement) {
    if (given_complement->size() != static_cast<std::size_t>(h.size()))
      fail(ErrorCode::inconsistent_tables, "complement table has wrong size");
    for (Elem a = 0; a < h.size(); ++a)
      if ((*given_complement)[a] != b.complement_[a])
        fail(ErrorCode::inconsistent_tables,
             "complement('" + h.name(a) + "') disagrees with implies(a, bottom)");
  }
  b.h_ = std::move(h);
  return b;
}

std::vector<Elem> antichain_refinement(const HeytingStructure& h, const std::vector<Elem>& s) {
  if (s.empty()) return {};
  std::vector<Elem> out;
  if (h.is_boolean()) {
    for (Elem a : h.atoms())
      for (Elem m : s)
        if (h.leq(a, m)) { out.push_back(a); break; }
  } else {
    for (Elem m : s) {
      bool maximal = true;
      for (Elem w : s)
        if (w != m && h.leq(m, w) && !h.leq(w, m)) { maximal = false; break; }
      if (maximal && std::find(out.begin(), out.end(), m) == out.end()) out.push_back(m);
    }
  }
  std::sort(out.begin(), out.end());
  for (std::size_t i = 0; i < out.size(); ++i)
    for (std::size_t j = i + 1; j < out.size(); ++j)
      if (h.leq(out[i], out[j]) || h.leq(out[j], out[i]))
        fail(ErrorCode::not_refinable, "refinement is not an antichain");
  if (h.big_join(out) != h.big_join(s))
    fail(ErrorCode::not_refinable, "no refining antichain with equal join");
  return out;
}

std::vector<FiniteLattice> enumerate_distributive_lattices(int n) {
  if (n < 1) fail(ErrorCode::size_cap_exceeded, "size must be positive");
  if (n > 5) fail(ErrorCode::size_cap_exceeded, "lattice enumeration capped at size 5");
  std::vector<std::string> names;
  for (int i = 0; i < n; ++i) names.push_back("e" + std::to_string(i));
  std::vector<std::pair<int, int>> slots;
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      if (a != b) slots.emplace_back(a, b);
  std::set<std::vector<char>> seen;
  std::vector<FiniteLattice> out;
  const std::uint64_t total = 1ull << slots.size();
  for (std::uint64_t bits = 0; bits < total; ++bits) {
    std::vector<char> leq(n * n, 0);
    for (int a = 0; a < n; ++a) leq[a * n + a] = 1;
    for (std::size_t i = 0; i < slots.size(); ++i)
      if (bits >> i & 1) leq[slots[i].first * n + slots[i].second] = 1;
    bool ok = true;
    for (int a = 0; a < n && ok; ++a)
      for (int b = 0; b < n && ok; ++b)
        if (a != b && leq[a * n + b] && leq[b * n + a]) ok = false;
    for (int a = 0; a < n && ok; ++a)
      for (int b = 0; b < n && ok; ++b)
        if (leq[a * n + b])
          for (int c = 0; c < n; ++c)
            if (leq[b * n + c] && !leq[a * n + c]) { ok = false; break; }
    if (!ok) continue;
    // unique glb and lub for every pair
    auto glb = [&](int a, int b, bool lower) {
      int found = -1;
      for (int z = 0; z < n; ++z) {
        bool in = lower ? (leq[z * n + a] && leq[z * n + b]) : (leq[a * n + z] && leq[b * n + z]);
        if (!in) continue;
        bool extreme = true;
        for (int w = 0; w < n; ++w) {
          bool win = lower ? (leq[w * n + a] && leq[w * n + b]) : (leq[a * n + w] && leq[b * n + w]);
          if (win && (lower ? !leq[w * n + z] : !leq[z * n + w])) { extreme = false; break; }
        }
        if (extreme) { found = z; break; }
      }
      return found;
    };
    std::vector<int> mt(n * n), jn(n * n);
    for (int a = 0; a < n && ok; ++a)
      for (int b = 0; b < n; ++b) {
        mt[a * n + b] = glb(a, b, true);
        jn[a * n + b] = glb(a, b, false);
        if (mt[a * n + b] < 0 || jn[a * n + b] < 0) { ok = false; break; }
      }
    if (!ok) continue;
    for (int a = 0; a < n && ok; ++a)
      for (int b = 0; b < n && ok; ++b)
        for (int c = 0; c < n; ++c)
          if (mt[a * n + jn[b * n + c]] != jn[mt[a * n + b] * n + mt[a * n + c]]) {
            ok = false;
            break;
          }
    if (!ok) continue;
    FiniteLattice l = FiniteLattice::from_matrix(names, leq);
    auto key = l.canonical_key();
    if (seen.insert(key).second) out.push_back(std::move(l));
  }
  return out;
}

}  // namespace fidelium
