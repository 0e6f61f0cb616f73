#include <doctest.h>

#include "fidelium/files.hpp"
#include "fidelium/zf.hpp"
#include "test_common.hpp"

using namespace fidelium;

namespace {

struct TwoSetup {
  AlgebraHandle algebra;
  std::shared_ptr<UniverseFragment> frag;
  Elem top, bot;
};

TwoSetup two_fragment(int hf_rank = 2) {
  TwoSetup s;
  s.algebra = load_two();
  s.frag = std::make_shared<UniverseFragment>(s.algebra);
  for (const Hf& x : enumerate_hf(hf_rank)) s.frag->hat_embed(x);
  s.top = s.algebra->heyting.top();
  s.bot = *s.algebra->heyting.bottom();
  return s;
}

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

ParseEnv env_of(UniverseFragment& frag) {
  return ParseEnv{[&frag](const std::string& n) { return frag.lookup(n); }, true};
}

}  // namespace

TEST_CASE("axiom tags round trip through their names") {
  for (ZfAxiom a : {ZfAxiom::extensionality, ZfAxiom::pairing, ZfAxiom::union_set,
                    ZfAxiom::separation, ZfAxiom::power_set, ZfAxiom::empty_set,
                    ZfAxiom::infinity_approx, ZfAxiom::collection_bounded,
                    ZfAxiom::induction_instance}) {
    auto back = zf_axiom_from(zf_axiom_name(a));
    REQUIRE(back.has_value());
    CHECK(*back == a);
  }
  CHECK(!zf_axiom_from("choice").has_value());
}

TEST_CASE("pairing holds with the two element pair as witness") {
  TwoSetup s = two_fragment();
  EvalContext ctx(*s.frag, RuleSet::hv, NegationPolicy::constant_top());
  NameId u = s.frag->hat_embed(hf_numeral(1));
  NameId v = s.frag->hat_embed(hf_numeral(0));
  AxiomParams p;
  p.names = {u, v};
  AxiomReport r = check_axiom(ctx, ZfAxiom::pairing, p);
  CHECK(r.holds);
  CHECK(r.exact);
  CHECK(r.value == s.top);
  REQUIRE(r.witnesses.size() == 1);
  NameId w = r.witnesses[0];
  CHECK(ctx.eval_membership(u, w) == s.top);
  CHECK(ctx.eval_membership(v, w) == s.top);
  for (NameId z : s.frag->all_ids()) {
    Elem lhs = ctx.eval_membership(z, w);
    Elem rhs = s.frag->heyting().join(ctx.eval_equality(z, u), ctx.eval_equality(z, v));
    CHECK(lhs == rhs);
  }
  CHECK(r.to_text(ctx).find("pairing") != std::string::npos);

  AxiomParams missing;
  CHECK_THROWS_AS(check_axiom(ctx, ZfAxiom::pairing, missing), Error);
}

TEST_CASE("union is an identity on flat subjects and an upper bound otherwise") {
  TwoSetup s = two_fragment(1);
  EvalContext ctx(*s.frag, RuleSet::hv, NegationPolicy::constant_top());
  NameId e = s.frag->empty_name();
  NameId v = s.frag->make_name({{e, s.top}});

  SUBCASE("flat member weights give the equality") {
    NameId u = s.frag->make_name({{v, s.top}});
    AxiomParams p;
    p.names = {u};
    AxiomReport r = check_axiom(ctx, ZfAxiom::union_set, p);
    CHECK(r.holds);
    CHECK(r.note.find("equality") != std::string::npos);
    CHECK(ctx.eval_membership(e, r.witnesses[0]) == s.top);
  }

  SUBCASE("a bottom weighted member still contributes its elements") {
    NameId u = s.frag->make_name({{v, s.bot}});
    AxiomParams p;
    p.names = {u};
    AxiomReport r = check_axiom(ctx, ZfAxiom::union_set, p);
    NameId w = r.witnesses[0];
    // the member weight is ignored by the witness, so e lands inside w
    CHECK(ctx.eval_membership(e, w) == s.top);
    // while the existential form cannot see past the bottom weight
    FormulaPtr ex = parse_formula("exists t in u . e in t",
                                  ParseEnv{[&](const std::string& n) -> std::optional<NameId> {
                                             if (n == "u") return u;
                                             if (n == "e") return e;
                                             return std::nullopt;
                                           },
                                           true});
    CHECK(ctx.eval_sentence(ex).value == s.bot);
    // only the inequality is claimed, and it does hold
    CHECK(r.holds);
    CHECK(r.note.find("inequality") != std::string::npos);
  }
}

TEST_CASE("separation certifies exactly the substitutive properties") {
  H3Setup s = h3_three_names();
  EvalContext ctx(*s.frag, RuleSet::hv, NegationPolicy::complement());
  ParseEnv env = env_of(*s.frag);
  NameId subject = s.frag->make_name({{s.u, s.one}, {s.v, s.one}});

  SUBCASE("a negation free property separates cleanly") {
    AxiomParams p;
    p.names = {subject};
    p.phi = parse_formula("w in x", env);
    AxiomReport r = check_axiom(ctx, ZfAxiom::separation, p);
    CHECK(r.holds);
    NameId w = r.witnesses[0];
    CHECK(s.frag->name(w).weight_of(s.u) == s.half);
    CHECK(s.frag->name(w).weight_of(s.v) == s.one);
  }

  SUBCASE("a property that violates replacement breaks the upper bound") {
    AxiomParams p;
    p.names = {subject};
    p.phi = parse_formula("~(w in x)", env);
    AxiomReport r = check_axiom(ctx, ZfAxiom::separation, p);
    CHECK(!r.holds);
    // [[v in w]] = half & [[u ~ v]] = half, but [[v in subject]] & phi(v) = 0
    NameId w = r.witnesses[0];
    CHECK(s.frag->name(w).weight_of(s.u) == s.half);
    CHECK(s.frag->name(w).weight_of(s.v) == s.zero);
    CHECK(ctx.eval_membership(s.v, w) == s.half);
    bool saw_failure = false;
    for (const ConjunctReport& d : r.details) saw_failure = saw_failure || !d.holds;
    CHECK(saw_failure);
  }
}

TEST_CASE("the power set witness carries every weighting of the domain") {
  TwoSetup s = two_fragment(1);
  EvalContext ctx(*s.frag, RuleSet::hv, NegationPolicy::constant_top());
  NameId u = s.frag->hat_embed(hf_numeral(1));  // {(e, 1)}
  AxiomParams p;
  p.names = {u};
  AxiomReport r = check_axiom(ctx, ZfAxiom::power_set, p);
  CHECK(r.holds);
  CHECK(r.exact);
  NameId w = r.witnesses[0];
  CHECK(s.frag->name(w).graph.size() == 2);  // {(e,0)} and {(e,1)}
  CHECK(ctx.eval_membership(s.frag->empty_name(), w) == s.top);
  CHECK(ctx.eval_membership(u, w) == s.top);

  // a three element domain at budget below 8 is refused
  NameId big = s.frag->hat_embed(hf_numeral(2));
  NameId wide = s.frag->make_name({{s.frag->empty_name(), s.top},
                                   {u, s.top},
                                   {big, s.top}});
  CHECK_THROWS_WITH_AS(witness_powerset(ctx, wide, 7), doctest::Contains("BudgetExceeded"),
                       Error);
}

TEST_CASE("the empty set witness tracks the policy's refuted identity") {
  H3Setup s = h3_three_names();
  EvalContext ctx(*s.frag, RuleSet::hv, NegationPolicy::complement());
  AxiomReport r = check_axiom(ctx, ZfAxiom::empty_set, {});
  CHECK(r.holds);
  CHECK(r.value == s.one);
  NameId w = r.witnesses[0];
  // ~(anchor ~ anchor) = ~1 = 0, so the witness weight is bottom
  CHECK(s.frag->name(w).weight_of(s.frag->empty_name()) == s.zero);
  for (NameId z : s.frag->all_ids()) CHECK(ctx.eval_membership(z, w) == s.zero);
  CHECK(r.note.find("control") != std::string::npos);
}

TEST_CASE("extensionality holds exactly over the chain fragment") {
  H3Setup s = h3_three_names();
  EvalContext ctx(*s.frag, RuleSet::hv, NegationPolicy::complement());
  AxiomReport r = check_axiom(ctx, ZfAxiom::extensionality, {});
  CHECK(r.holds);
  CHECK(r.exact);
  CHECK(r.value == s.one);
}

TEST_CASE("every finite infinity stage refutes its own closure") {
  TwoSetup s = two_fragment(0);
  EvalContext ctx(*s.frag, RuleSet::hv, NegationPolicy::constant_top());
  AxiomParams p;
  p.steps = 2;
  AxiomReport r = check_axiom(ctx, ZfAxiom::infinity_approx, p);
  CHECK(!r.holds);
  REQUIRE(r.details.size() == 3);
  CHECK(r.details[0].holds);  // the empty set is in
  CHECK(r.details[1].holds);  // so is 1
  CHECK(!r.details[2].holds);  // 2 = the stage itself is not
  CHECK(r.note.find("expected") != std::string::npos);
}

TEST_CASE("bounded collection holds against the whole fragment and fails against the empty name") {
  TwoSetup s = two_fragment(2);
  EvalContext ctx(*s.frag, RuleSet::hv, NegationPolicy::constant_top());
  NameId u = s.frag->hat_embed(hf_numeral(2));
  AxiomParams p;
  p.names = {u};
  p.phi = parse_formula("x = y");
  AxiomReport r = check_axiom(ctx, ZfAxiom::collection_bounded, p);
  CHECK(r.holds);
  CHECK(r.note.find("whole-fragment") != std::string::npos);

  p.candidate = s.frag->empty_name();
  AxiomReport rc = check_axiom(ctx, ZfAxiom::collection_bounded, p);
  CHECK(!rc.holds);
}

TEST_CASE("induction instances land at top over domain closed fragments") {
  H3Setup s = h3_three_names();
  EvalContext ctx(*s.frag, RuleSet::hv, NegationPolicy::complement());
  ParseEnv env = env_of(*s.frag);
  for (const char* prop : {"x = x", "w in x", "exists t in x . t = t"}) {
    AxiomParams p;
    p.phi = parse_formula(prop, env);
    AxiomReport r = check_axiom(ctx, ZfAxiom::induction_instance, p);
    CAPTURE(prop);
    CHECK(r.holds);
    CHECK(!r.exact);
  }
}

TEST_CASE("mixing is vacuous without the hypothesis and sound with enforcement") {
  TwoSetup s = two_fragment(1);
  EvalContext ctx(*s.frag, RuleSet::hv, NegationPolicy::constant_top());
  NameId e = s.frag->empty_name();
  NameId a = s.frag->hat_embed(hf_numeral(1));

  MixingReport raw = check_mixing(ctx, {{s.top, e}, {s.top, a}}, false);
  CHECK(!raw.hypothesis_met);
  CHECK(raw.holds);  // nothing is claimed

  MixingReport fixed = check_mixing(ctx, {{s.top, e}, {s.top, a}}, true);
  CHECK(fixed.hypothesis_met);
  CHECK(fixed.conclusion_holds);
  CHECK(fixed.holds);
  CHECK(fixed.mixture_name >= 0);
  CHECK(fixed.parts_used[1].first == s.bot);  // the clash got shrunk away
  CHECK(!fixed.to_text(*s.frag).empty());

  // same-name parts already satisfy the hypothesis
  MixingReport same = check_mixing(ctx, {{s.top, a}, {s.top, a}}, false);
  CHECK(same.hypothesis_met);
  CHECK(same.holds);

  // exhaustively: enforcement makes every small configuration hold
  std::vector<NameId> pool = {e, a, s.frag->make_name({{e, s.bot}})};
  for (Elem w1 : {s.bot, s.top})
    for (Elem w2 : {s.bot, s.top})
      for (NameId u1 : pool)
        for (NameId u2 : pool) {
          MixingReport r = check_mixing(ctx, {{w1, u1}, {w2, u2}}, true);
          CHECK(r.hypothesis_met);
          CHECK(r.holds);
        }
}

TEST_CASE("the maximum principle produces a witness at top") {
  AlgebraHandle diamond = load_diamond();
  UniverseFragment frag(diamond);
  const HeytingStructure& h = diamond->heyting;
  NameId e = frag.empty_name();
  frag.bind("e", e);
  frag.make_name({{e, h.elem("a")}});
  frag.make_name({{e, h.elem("b")}});
  EvalContext ctx(frag, RuleSet::hv, NegationPolicy::constant_top());
  ParseEnv env = env_of(frag);

  MaximumReport r = maximum_principle(ctx, parse_formula("e in x", env), "x");
  CHECK(r.holds);
  CHECK(r.exists_value == h.top());
  CHECK(r.witness_value == h.top());
  CHECK(r.parts.size() == 2);
  CHECK(ctx.eval_membership(e, r.witness) == h.top());
  CHECK(!r.to_text(frag).empty());

  CHECK_THROWS_WITH_AS(maximum_principle(ctx, parse_formula("x in e", env), "x"),
                       doctest::Contains("HypothesisNotMet"), Error);

  H3Setup s = h3_three_names();
  EvalContext hctx(*s.frag, RuleSet::hv, NegationPolicy::complement());
  CHECK_THROWS_WITH_AS(maximum_principle(hctx, parse_formula("x = x"), "x"),
                       doctest::Contains("KindMismatch"), Error);
}

TEST_CASE("cores keep one representative per fingerprint and satisfy the corollary") {
  TwoSetup s = two_fragment(0);
  EvalContext ctx(*s.frag, RuleSet::hv, NegationPolicy::constant_top());
  NameId e = s.frag->empty_name();
  NameId a = s.frag->make_name({{e, s.top}});
  NameId u = s.frag->make_name({{e, s.top}, {a, s.top}});

  CoreReport r = compute_core(ctx, u);
  CHECK(r.holds());
  CHECK(r.members.size() == 2);
  CHECK(r.nonempty);
  CHECK(r.members_in);
  CHECK(r.unique_match);
  CHECK(r.corollary_holds);
  CHECK(!r.to_text(*s.frag).empty());

  // an everywhere bottom subject has no top member: the corollary is vacuous
  NameId hollow = s.frag->make_name({{e, s.bot}});
  CoreReport rv = compute_core(ctx, hollow);
  CHECK(!rv.nonempty);
  CHECK(rv.holds());
  CHECK(rv.members.empty());

  H3Setup h3 = h3_three_names();
  EvalContext hctx(*h3.frag, RuleSet::hv, NegationPolicy::complement());
  CHECK_THROWS_WITH_AS(compute_core(hctx, h3.u), doctest::Contains("KindMismatch"), Error);
}

TEST_CASE("the standing paraconsistency example demonstrates without collapsing") {
  TwoSetup s = two_fragment(0);
  EvalContext ctx(*s.frag, RuleSet::bv2, NegationPolicy::constant_top());
  ParaconsistencyReport r = demo_paraconsistency(ctx);
  CHECK(r.demonstrates);
  CHECK(r.alpha_value == s.top);
  CHECK(r.neg_alpha_value == s.top);
  CHECK(r.circ_alpha_value == s.bot);
  CHECK(r.beta_value == s.bot);
  CHECK(r.audit_ok);
  std::string text = r.to_text(s.frag->heyting());
  CHECK(text.find(r.alpha) != std::string::npos);
}

TEST_CASE("the chain replacement failure reproduces and the swap contrast passes") {
  AlgebraHandle h3 = load_h3();
  H3LeibnizReport r = repro_h3_leibniz(h3);
  const HeytingStructure& h = h3->heyting;
  CHECK(r.equality == h.elem("half"));
  CHECK(r.psi_u == h.elem("half"));
  CHECK(r.psi_v == h.elem("1"));
  CHECK(r.neg_psi_u == h.elem("half"));
  CHECK(r.neg_psi_v == h.elem("0"));
  CHECK(r.implication == h.elem("0"));
  CHECK(r.failure_as_documented);
  CHECK(r.swap_contrast_ok);
  CHECK(!r.text.empty());
}
