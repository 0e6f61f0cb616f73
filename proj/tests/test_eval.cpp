#include <doctest.h>

#include "fidelium/eval.hpp"
#include "fidelium/files.hpp"
#include "test_common.hpp"

using namespace fidelium;

namespace {

struct H3Setup {
  std::shared_ptr<UniverseFragment> frag;
  NameId w, u, v;
  Elem half, one, zero;
};

H3Setup h3_three_names() {
  LoadedUniverse lu = load_universe_file(data_path("h3_uvw.json"));
  H3Setup s;
  s.frag = lu.fragment;
  s.w = *s.frag->lookup("w");
  s.u = *s.frag->lookup("u");
  s.v = *s.frag->lookup("v");
  const HeytingStructure& h = s.frag->heyting();
  s.half = h.elem("half");
  s.one = h.elem("1");
  s.zero = h.elem("0");
  return s;
}

FidelStructure saturated(const AlgebraHandle& a, FidelKind kind) {
  ElemSet full = (ElemSet{1} << a->heyting.size()) - 1;
  std::vector<ElemSet> fam(static_cast<size_t>(a->heyting.size()), full);
  if (kind == FidelKind::c1) return FidelStructure::make(a, kind, fam, fam);
  return FidelStructure::make(a, kind, fam);
}

}  // namespace

TEST_CASE("graded equality and membership over the three valued chain") {
  H3Setup s = h3_three_names();
  EvalContext ctx(*s.frag, RuleSet::hv, NegationPolicy::complement());
  CHECK(ctx.eval_equality(s.u, s.v) == s.half);
  CHECK(ctx.eval_equality(s.u, s.u) == s.one);
  CHECK(ctx.eval_membership(s.w, s.u) == s.half);
  CHECK(ctx.eval_membership(s.w, s.v) == s.one);
  CHECK(ctx.eval_membership(s.u, s.w) == s.zero);

  FormulaPtr psi_u = parse_formula("w in u", {[&](const std::string& n) {
                                     return s.frag->lookup(n);
                                   }});
  CHECK(ctx.eval_sentence(psi_u).value == s.half);
}

TEST_CASE("the negation table breaks substitutivity and the audit reports it") {
  H3Setup s = h3_three_names();
  EvalContext ctx(*s.frag, RuleSet::hv, NegationPolicy::complement());
  ParseEnv env{[&](const std::string& n) { return s.frag->lookup(n); }, true};

  // ~(w in u) = ~half = half, ~(w in v) = ~1 = 0
  CHECK(ctx.eval_sentence(parse_formula("~(w in u)", env)).value == s.half);
  CHECK(ctx.eval_sentence(parse_formula("~(w in v)", env)).value == s.zero);

  LeibnizReport rep = ctx.check_leibniz({{"x", parse_formula("~(w in x)", env)}});
  CHECK(!rep.ok());
  CHECK(rep.pairs_checked > 0);
  bool found = false;
  for (const LeibnizViolation& viol : rep.violations) {
    if (viol.u == s.u && viol.v == s.v) {
      found = true;
      CHECK(viol.equality == s.half);
      CHECK(viol.implication == s.zero);
    }
  }
  CHECK(found);
  CHECK(rep.to_text(*s.frag).find("u") != std::string::npos);
}

TEST_CASE("the swap policy restores substitutivity under a saturated n4 structure") {
  H3Setup s = h3_three_names();
  EvalContext ctx(saturated(s.frag->algebra(), FidelKind::n4), *s.frag,
                  NegationPolicy::swap(s.u, s.v));
  ParseEnv env{[&](const std::string& n) { return s.frag->lookup(n); }, true};
  LeibnizReport rep = ctx.check_leibniz({{"x", parse_formula("~(w in x)", env)}});
  CHECK(rep.ok());
}

TEST_CASE("bounded quantifiers evaluate exactly, unbounded ones fragment relatively") {
  H3Setup s = h3_three_names();
  EvalContext ctx(*s.frag, RuleSet::hv, NegationPolicy::complement());
  ParseEnv env{[&](const std::string& n) { return s.frag->lookup(n); }, true};

  FormulaPtr bounded = parse_formula("forall x in v . x = w", env);
  EvalResult rb = ctx.eval_sentence(bounded);
  CHECK(rb.exact);
  CHECK(rb.value == s.one);
  CHECK(is_restricted(bounded));

  FormulaPtr unbounded = parse_formula("forall x . x = x", env);
  CHECK(!is_restricted(unbounded));
  EvalResult ru = ctx.eval_sentence(unbounded);
  CHECK(!ru.exact);
  CHECK(ru.value == s.one);

  EvalResult ex = ctx.eval_sentence(parse_formula("exists x . w in x", env));
  CHECK(!ex.exact);
  CHECK(ex.value == s.one);

  CHECK_THROWS_WITH_AS(ctx.eval_sentence(parse_formula("w in x", env)),
                       doctest::Contains("OpenFormula"), Error);
  EvalResult at = ctx.eval_at(parse_formula("w in x", env), "x", s.u);
  CHECK(at.value == s.half);
}

TEST_CASE("mixtures blend parts by weighted membership") {
  H3Setup s = h3_three_names();
  EvalContext ctx(*s.frag, RuleSet::hv, NegationPolicy::complement());
  // one part, weight half, of v = {(w, 1)} gives {(w, half)} which is u
  CHECK(mixture(ctx, {{s.half, s.v}}) == s.u);
  // whole weight keeps the part
  CHECK(mixture(ctx, {{s.one, s.v}}) == s.v);
  // two parts join their contributions
  NameId m = mixture(ctx, {{s.half, s.v}, {s.one, s.v}});
  CHECK(m == s.v);
  CHECK_THROWS_AS(mixture(ctx, {{99, s.v}}), Error);
}

TEST_CASE("values computed in a subalgebra agree with the full algebra") {
  H3Setup s = h3_three_names();
  EvalContext ctx(*s.frag, RuleSet::hv, NegationPolicy::complement());
  ParseEnv env{[&](const std::string& n) { return s.frag->lookup(n); }, true};

  SubalgebraVerdict verdict =
      check_subalgebra_invariance(ctx, {"0", "1"}, parse_formula("w in v", env));
  CHECK(verdict.agrees);
  CHECK(verdict.sub_value == s.one);
  CHECK(verdict.full_value == s.one);

  CHECK_THROWS_WITH_AS(
      check_subalgebra_invariance(ctx, {"0", "half"}, parse_formula("w in v", env)),
      doctest::Contains("NotASubalgebra"), Error);
  // u carries the weight half which {0, 1} misses
  CHECK_THROWS_WITH_AS(
      check_subalgebra_invariance(ctx, {"0", "1"}, parse_formula("w in u", env)),
      doctest::Contains("NotASubalgebra"), Error);
  CHECK_THROWS_WITH_AS(
      check_subalgebra_invariance(ctx, {"0", "1"}, parse_formula("~(w in v)", env)),
      doctest::Contains("KindMismatch"), Error);
}

TEST_CASE("c1 contexts complement equalities and affirm their consistency") {
  AlgebraHandle two = load_two();
  UniverseFragment frag(two);
  NameId e = frag.empty_name();
  frag.bind("u", e);
  EvalContext ctx(saturated(two, FidelKind::c1), frag, NegationPolicy::complement());
  ParseEnv env{[&](const std::string& n) { return frag.lookup(n); }, true};

  CHECK(ctx.eval_sentence(parse_formula("u = u", env)).value == frag.heyting().top());
  CHECK(ctx.eval_sentence(parse_formula("~(u = u)", env)).value == *frag.heyting().bottom());
  CHECK(ctx.eval_sentence(parse_formula("o (u = u)", env)).value == frag.heyting().top());
}

TEST_CASE("bv2 contexts enforce the bivaluation clauses on policy values") {
  AlgebraHandle two = load_two();
  UniverseFragment frag(two);
  NameId e = frag.empty_name();
  NameId u = frag.hat_embed(hf_numeral(1));
  frag.bind("u", u);
  frag.bind("e", e);
  EvalContext ctx(frag, RuleSet::bv2, NegationPolicy::constant_top());
  ParseEnv env{[&](const std::string& n) { return frag.lookup(n); }, true};

  Elem top = frag.heyting().top();
  Elem bot = *frag.heyting().bottom();
  CHECK(ctx.eval_sentence(parse_formula("u = u", env)).value == top);
  CHECK(ctx.eval_sentence(parse_formula("~(u = u)", env)).value == top);
  CHECK(ctx.eval_sentence(parse_formula("o (u = u)", env)).value == bot);
  CHECK(ctx.eval_sentence(parse_formula("u in e", env)).value == bot);

  // ~~(u in e): the body ~(u in e) goes to top by policy, so the double
  // negation would also go to top against a refuted core formula
  CHECK_THROWS_WITH_AS(ctx.eval_sentence(parse_formula("~~(u in e)", env)),
                       doctest::Contains("PolicyViolation"), Error);
}

TEST_CASE("bv2 and hv agree wherever negation is absent") {
  AlgebraHandle two = load_two();
  UniverseFragment frag_a(two), frag_b(two);
  for (const Hf& s : enumerate_hf(2)) {
    frag_a.hat_embed(s);
    frag_b.hat_embed(s);
  }
  EvalContext hv(frag_a, RuleSet::hv, NegationPolicy::complement());
  EvalContext bv(frag_b, RuleSet::bv2, NegationPolicy::constant_top());
  for (NameId a : frag_a.all_ids()) {
    for (NameId b : frag_a.all_ids()) {
      CHECK(hv.eval_equality(a, b) == bv.eval_equality(a, b));
      CHECK(hv.eval_membership(a, b) == bv.eval_membership(a, b));
    }
  }
}

TEST_CASE("n4 contexts push negation through the connectives") {
  H3Setup s = h3_three_names();
  EvalContext ctx(saturated(s.frag->algebra(), FidelKind::n4), *s.frag,
                  NegationPolicy::complement());
  ParseEnv env{[&](const std::string& n) { return s.frag->lookup(n); }, true};

  auto val = [&](const std::string& t) { return ctx.eval_sentence(parse_formula(t, env)).value; };
  CHECK(val("~((w in u) & (w in v))") ==
        s.frag->heyting().join(val("~(w in u)"), val("~(w in v)")));
  CHECK(val("~((w in u) | (w in v))") ==
        s.frag->heyting().meet(val("~(w in u)"), val("~(w in v)")));
  CHECK(val("~~(w in u)") == val("w in u"));
  CHECK(val("~((w in u) -> (w in v))") ==
        s.frag->heyting().meet(val("w in u"), val("~(w in v)")));
}

TEST_CASE("the table policy answers listed formulas and rejects the rest") {
  H3Setup s = h3_three_names();
  ParseEnv env{[&](const std::string& n) { return s.frag->lookup(n); }, true};
  FormulaPtr target = parse_formula("~(w in u)", env);
  std::string key =
      print_formula(target, [&](NameId id) { return s.frag->label_of(id); });
  EvalContext ctx(*s.frag, RuleSet::hv, NegationPolicy::from_table({{key, "half"}}));
  CHECK(ctx.eval_sentence(target).value == s.half);
  CHECK_THROWS_WITH_AS(ctx.eval_sentence(parse_formula("~(w in v)", env)),
                       doctest::Contains("PolicyViolation"), Error);
}

TEST_CASE("tracing and memoization are observable") {
  H3Setup s = h3_three_names();
  EvalContext ctx(*s.frag, RuleSet::hv, NegationPolicy::complement());
  ctx.set_trace(true);
  ParseEnv env{[&](const std::string& n) { return s.frag->lookup(n); }, true};
  ctx.eval_sentence(parse_formula("u = v", env));
  CHECK(!ctx.trace().empty());
  std::uint64_t before = ctx.memo_hits();
  ctx.eval_sentence(parse_formula("u = v", env));
  CHECK(ctx.memo_hits() > before);
}

TEST_CASE("rule set and structure requirements are enforced") {
  H3Setup s = h3_three_names();
  CHECK_THROWS_WITH_AS(EvalContext(*s.frag, RuleSet::n4, NegationPolicy::complement()),
                       doctest::Contains("KindMismatch"), Error);
  CHECK_THROWS_WITH_AS(EvalContext(*s.frag, RuleSet::bv2, NegationPolicy::constant_top()),
                       doctest::Contains("KindMismatch"), Error);

  // an unsaturated n4 structure cannot drive evaluation
  FidelStructure weak = FidelStructure::make(s.frag->algebra(), FidelKind::n4, {7, 7, 1}, {}, false);
  CHECK_THROWS_WITH_AS(EvalContext(weak, *s.frag, NegationPolicy::complement()),
                       doctest::Contains("KindMismatch"), Error);

  // a structure over a different algebra handle is rejected
  AlgebraHandle other = load_h3();
  CHECK_THROWS_WITH_AS(
      EvalContext(saturated(other, FidelKind::n4), *s.frag, NegationPolicy::complement()),
      doctest::Contains("MixedAlgebras"), Error);

  EvalContext prop_ctx(*s.frag, RuleSet::hv, NegationPolicy::complement());
  CHECK_THROWS_WITH_AS(prop_ctx.eval_sentence(parse_formula("a -> a")),
                       doctest::Contains("KindMismatch"), Error);
}
