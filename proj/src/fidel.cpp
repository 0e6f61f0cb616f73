#include "fidelium/fidel.hpp"

#include <sstream>

namespace fidelium {

const char* fidel_kind_name(FidelKind k) {
  switch (k) {
    case FidelKind::n4: return "n4";
    case FidelKind::c1: return "c1";
    case FidelKind::comega: return "comega";
  }
  return "?";
}

std::optional<FidelKind> fidel_kind_from(const std::string& s) {
  for (FidelKind k : {FidelKind::n4, FidelKind::c1, FidelKind::comega})
    if (s == fidel_kind_name(k)) return k;
  return std::nullopt;
}

FidelStructure FidelStructure::make(AlgebraHandle algebra, FidelKind kind,
                                    std::vector<ElemSet> n_family,
                                    std::vector<ElemSet> o_family, bool strict) {
  FidelStructure s;
  s.kind = kind;
  s.algebra = std::move(algebra);
  s.strict = strict;
  const int n = s.algebra->heyting.size();
  if (kind != FidelKind::n4 && !s.algebra->boolean)
    fail(ErrorCode::kind_mismatch,
         std::string(fidel_kind_name(kind)) + " structures need a Boolean algebra, got a " +
             algebra_class_name(s.algebra->classification()));
  if (n_family.size() != static_cast<std::size_t>(n))
    fail(ErrorCode::kind_mismatch, "N family must cover the whole carrier");
  const ElemSet carrier_mask = (n >= 32 ? ~0u : (1u << n) - 1);
  for (Elem x = 0; x < n; ++x) {
    if ((n_family[x] & ~carrier_mask) != 0)
      fail(ErrorCode::unknown_element, "N set contains an element outside the carrier");
    if (n_family[x] == 0)
      fail(ErrorCode::empty_n_set,
           "N set for '" + s.algebra->heyting.name(x) + "' is empty");
  }
  if (kind == FidelKind::c1) {
    if (o_family.size() != static_cast<std::size_t>(n))
      fail(ErrorCode::kind_mismatch, "c1 structures need an O family over the whole carrier");
    for (Elem x = 0; x < n; ++x)
      if ((o_family[x] & ~carrier_mask) != 0)
        fail(ErrorCode::unknown_element, "O set contains an element outside the carrier");
  } else if (!o_family.empty()) {
    fail(ErrorCode::kind_mismatch,
         std::string("O family is only meaningful for c1, not ") + fidel_kind_name(kind));
  }
  s.n_family = std::move(n_family);
  s.o_family = std::move(o_family);
  return s;
}

static std::vector<Elem> mask_members(ElemSet m, int n) {
  std::vector<Elem> out;
  for (Elem e = 0; e < n; ++e)
    if (m >> e & 1) out.push_back(e);
  return out;
}

std::vector<Elem> FidelStructure::n_members(Elem x) const {
  return mask_members(n_family[x], heyting().size());
}
std::vector<Elem> FidelStructure::o_members(Elem x) const {
  return mask_members(o_family[x], heyting().size());
}

bool FidelStructure::is_saturated() const {
  const int n = heyting().size();
  const ElemSet full = (n >= 32 ? ~0u : (1u << n) - 1);
  for (ElemSet m : n_family)
    if (m != full) return false;
  for (ElemSet m : o_family)
    if (m != full) return false;
  return true;
}

FidelStructure saturate(AlgebraHandle algebra, FidelKind kind, bool strict) {
  const int n = algebra->heyting.size();
  const ElemSet full = (n >= 32 ? ~0u : (1u << n) - 1);
  std::vector<ElemSet> nf(n, full);
  std::vector<ElemSet> of;
  if (kind == FidelKind::c1) of.assign(n, full);
  return FidelStructure::make(std::move(algebra), kind, std::move(nf), std::move(of), strict);
}

namespace {

struct Checker {
  const FidelStructure& s;
  const HeytingStructure& h;
  std::vector<StructureViolation>& out;
  bool ok = true;

  void hit(const std::string& cond, const std::string& detail) {
    ok = false;
    if (out.size() < 64) out.push_back({cond, detail});
  }
  std::string nm(Elem e) const { return "'" + h.name(e) + "'"; }
};

}  // namespace

StructureReport verify_structure(const FidelStructure& s) {
  StructureReport r;
  r.kind = s.kind;
  r.strict_requested = s.strict;
  const HeytingStructure& h = s.heyting();
  const int n = h.size();
  Checker c{s, h, r.violations};

  for (Elem x = 0; x < n; ++x)
    if (s.n_family[x] == 0) c.hit("nonempty", "N_" + c.nm(x) + " is empty");

  if (s.kind == FidelKind::n4) {
    for (Elem x = 0; x < n; ++x)
      for (Elem y = 0; y < n; ++y)
        for (Elem xp = 0; xp < n; ++xp) {
          if (!s.in_n(x, xp)) continue;
          for (Elem yp = 0; yp < n; ++yp) {
            if (!s.in_n(y, yp)) continue;
            if (!s.in_n(h.meet(x, y), h.join(xp, yp)))
              c.hit("n4-ii-join", "x=" + c.nm(x) + " y=" + c.nm(y) + " x'=" + c.nm(xp) +
                                      " y'=" + c.nm(yp) + ": join(x', y')=" +
                                      c.nm(h.join(xp, yp)) + " not in N_" + c.nm(h.meet(x, y)));
            if (!s.in_n(h.join(x, y), h.meet(xp, yp)))
              c.hit("n4-ii-meet", "x=" + c.nm(x) + " y=" + c.nm(y) + " x'=" + c.nm(xp) +
                                      " y'=" + c.nm(yp) + ": meet(x', y')=" +
                                      c.nm(h.meet(xp, yp)) + " not in N_" + c.nm(h.join(x, y)));
          }
        }
    for (Elem x = 0; x < n; ++x)
      for (Elem y = 0; y < n; ++y)
        for (Elem yp = 0; yp < n; ++yp) {
          if (!s.in_n(y, yp)) continue;
          if (!s.in_n(h.implies(x, y), h.meet(x, yp)))
            c.hit("n4-iii", "x=" + c.nm(x) + " y=" + c.nm(y) + " y'=" + c.nm(yp) +
                                ": meet(x, y')=" + c.nm(h.meet(x, yp)) + " not in N_" +
                                c.nm(h.implies(x, y)));
        }
    r.core_holds = c.ok;

    bool strict_ok = true, reflexive_ok = true;
    for (Elem x = 0; x < n; ++x) {
      for (Elem xp = 0; xp < n; ++xp)
        if (s.in_n(x, xp) && !s.in_n(xp, x)) {
          strict_ok = false;
          if (s.strict)
            c.hit("n4-ii-strict",
                  "x=" + c.nm(x) + " x'=" + c.nm(xp) + ": x not in N_" + c.nm(xp));
        }
      if (!s.in_n(x, x)) reflexive_ok = false;
    }
    r.strict_clause_holds = strict_ok;
    r.reflexive_clause_holds = reflexive_ok;
    r.valid = r.core_holds && (!s.strict || strict_ok);
    return r;
  }

  // c1 / comega over a Boolean algebra
  const Elem top = h.top();
  const Elem bot = *h.bottom();
  for (Elem x = 0; x < n; ++x) {
    bool found = false;
    for (Elem xp = 0; xp < n; ++xp)
      if (s.in_n(x, xp) && h.join(x, xp) == top) { found = true; break; }
    if (!found)
      c.hit("c-i", "no x' in N_" + c.nm(x) + " with join(x, x') = top");
  }
  for (Elem x = 0; x < n; ++x)
    for (Elem xp = 0; xp < n; ++xp) {
      if (!s.in_n(x, xp)) continue;
      bool found = false;
      for (Elem xpp = 0; xpp < n; ++xpp)
        if (s.in_n(xp, xpp) && h.leq(xpp, x)) { found = true; break; }
      if (!found)
        c.hit("c-ii", "x=" + c.nm(x) + " x'=" + c.nm(xp) + ": no x'' in N_" + c.nm(xp) +
                          " below x");
    }
  if (s.kind == FidelKind::c1) {
    for (Elem x = 0; x < n; ++x)
      for (Elem y = 0; y < n; ++y) {
        if (!s.in_n(x, y)) continue;
        bool found = false;
        for (Elem z = 0; z < n; ++z)
          if (s.in_o(x, z) && h.meet(h.meet(x, y), z) == bot) { found = true; break; }
        if (!found)
          c.hit("c1-iii", "x=" + c.nm(x) + " y=" + c.nm(y) + ": no z in O_" + c.nm(x) +
                              " with meet(x, y, z) = bottom");
      }
  }
  r.core_holds = c.ok;
  r.strict_clause_holds = true;
  r.reflexive_clause_holds = true;
  r.valid = c.ok;
  return r;
}

std::string StructureReport::to_text() const {
  std::ostringstream out;
  out << "kind: " << fidel_kind_name(kind) << "\n";
  if (kind == FidelKind::n4) {
    out << "closure conditions (nonempty, ii-join, ii-meet, iii): "
        << (core_holds ? "ok" : "violated") << "\n";
    out << "final clause, strict reading (x in N_{x'} for x' in N_x): "
        << (strict_clause_holds ? "holds" : "fails") << "\n";
    out << "final clause, reflexive reading (x in N_x): "
        << (reflexive_clause_holds ? "holds" : "fails") << "\n";
    out << "strict reading " << (strict_requested ? "required" : "not required") << "\n";
  } else {
    out << "conditions of kind " << fidel_kind_name(kind) << ": "
        << (core_holds ? "ok" : "violated") << "\n";
  }
  for (const auto& v : violations) out << "  [" << v.condition << "] " << v.detail << "\n";
  out << "valid: " << (valid ? "yes" : "no") << "\n";
  return out.str();
}

std::vector<std::vector<ElemSet>> enumerate_n_families(const LoadedAlgebra& alg, FidelKind kind,
                                                       bool strict, std::uint64_t budget) {
  const int n = alg.heyting.size();
  const ElemSet full = (1u << n) - 1;
  std::uint64_t candidates = 1;
  for (int i = 0; i < n; ++i) {
    candidates *= full;  // nonempty subsets per element
    if (candidates > budget)
      fail(ErrorCode::budget_exceeded, "N family candidate space exceeds the budget");
  }
  auto handle = std::make_shared<const LoadedAlgebra>(alg);
  std::vector<std::vector<ElemSet>> out;
  std::vector<ElemSet> fam(n, 1);
  // odometer over nonempty subsets, i.e. masks 1..full per position
  while (true) {
    // with O saturated the c1 O condition holds via z = bottom, so this
    // filters on the N conditions alone for every kind
    FidelStructure s = FidelStructure::make(handle, kind, fam,
                                            kind == FidelKind::c1
                                                ? std::vector<ElemSet>(n, full)
                                                : std::vector<ElemSet>{},
                                            strict);
    if (verify_structure(s).valid) out.push_back(fam);
    int pos = 0;
    while (pos < n && fam[pos] == full) fam[pos++] = 1;
    if (pos == n) break;
    ++fam[pos];
  }
  return out;
}

std::vector<ElemSet> valid_o_sets(const LoadedAlgebra& alg, const std::vector<ElemSet>& n_family,
                                  Elem x) {
  const HeytingStructure& h = alg.heyting;
  const int n = h.size();
  const Elem bot = *h.bottom();
  std::vector<ElemSet> out;
  for (ElemSet o = 0; o <= (1u << n) - 1; ++o) {
    bool ok = true;
    for (Elem y = 0; y < n && ok; ++y) {
      if (!(n_family[x] >> y & 1)) continue;
      bool found = false;
      for (Elem z = 0; z < n; ++z)
        if ((o >> z & 1) && h.meet(h.meet(x, y), z) == bot) { found = true; break; }
      ok = found;
    }
    if (ok) out.push_back(o);
  }
  return out;
}

std::vector<FidelStructure> enumerate_structures(AlgebraHandle algebra, FidelKind kind,
                                                 bool strict, std::uint64_t budget) {
  const int n = algebra->heyting.size();
  std::vector<std::vector<ElemSet>> fams = enumerate_n_families(*algebra, kind, strict, budget);
  std::vector<FidelStructure> out;
  if (kind != FidelKind::c1) {
    for (auto& f : fams)
      out.push_back(FidelStructure::make(algebra, kind, std::move(f), {}, strict));
    return out;
  }
  for (const auto& f : fams) {
    std::vector<std::vector<ElemSet>> options(n);
    std::uint64_t count = 1;
    for (Elem x = 0; x < n; ++x) {
      options[x] = valid_o_sets(*algebra, f, x);
      count *= options[x].size();
      if (count > budget || count == 0)
        fail(ErrorCode::budget_exceeded, "O family combinations exceed the budget");
    }
    std::vector<std::size_t> idx(n, 0);
    while (true) {
      std::vector<ElemSet> o(n);
      for (Elem x = 0; x < n; ++x) o[x] = options[x][idx[x]];
      out.push_back(FidelStructure::make(algebra, kind, f, std::move(o), strict));
      if (out.size() > budget) fail(ErrorCode::budget_exceeded, "structure count exceeds budget");
      int pos = 0;
      while (pos < n && idx[pos] + 1 == options[pos].size()) idx[pos++] = 0;
      if (pos == n) break;
      ++idx[pos];
    }
  }
  return out;
}

}  // namespace fidelium
