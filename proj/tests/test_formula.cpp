#include <doctest.h>

#include "fidelium/formula.hpp"

using namespace fidelium;

namespace {

std::string round_trip(const std::string& text) {
  return print_formula(parse_formula(text));
}

}  // namespace

TEST_CASE("parsing respects precedence and implication associates right") {
  CHECK(round_trip("a -> b -> c") == "a -> b -> c");
  CHECK(round_trip("(a -> b) -> c") == "(a -> b) -> c");
  CHECK(equal(parse_formula("a -> b -> c"),
              Formula::imp(Formula::prop("a"),
                           Formula::imp(Formula::prop("b"), Formula::prop("c")))));
  CHECK(equal(parse_formula("~a & b"),
              Formula::conj(Formula::neg(Formula::prop("a")), Formula::prop("b"))));
  CHECK(equal(parse_formula("a | b & c"),
              Formula::disj(Formula::prop("a"),
                            Formula::conj(Formula::prop("b"), Formula::prop("c")))));
  CHECK(equal(parse_formula("(a | b) & c"),
              Formula::conj(Formula::disj(Formula::prop("a"), Formula::prop("b")),
                            Formula::prop("c"))));
  CHECK(equal(parse_formula("o a & b"),
              Formula::conj(Formula::circ(Formula::prop("a")), Formula::prop("b"))));
  CHECK(equal(parse_formula("~~a"), Formula::neg(Formula::neg(Formula::prop("a")))));
}

TEST_CASE("the biconditional expands on parse") {
  CHECK(equal(parse_formula("a <-> b"),
              Formula::conj(Formula::imp(Formula::prop("a"), Formula::prop("b")),
                            Formula::imp(Formula::prop("b"), Formula::prop("a")))));
}

TEST_CASE("printing then reparsing is the identity on the tree") {
  for (const char* text : {"a", "~a", "o a", "a & (b | c)", "~(a -> b) | o c",
                           "forall x . x = x", "exists y . y in y",
                           "forall x . (x in x -> o (x = x))"}) {
    FormulaPtr f = parse_formula(text);
    CHECK(equal(f, parse_formula(print_formula(f))));
  }
}

TEST_CASE("bounded quantifiers are sugar") {
  FormulaPtr bounded = parse_formula("forall x in u . x = x");
  FormulaPtr expanded = parse_formula("forall x . (x in u -> x = x)");
  CHECK(equal(bounded, expanded));
  CHECK(equal(parse_formula("exists x in u . x = x"),
              parse_formula("exists x . (x in u & x = x)")));
}

TEST_CASE("identifiers resolve as variables first, then names, then atoms") {
  ParseEnv env;
  env.lookup_name = [](const std::string& s) -> std::optional<NameId> {
    if (s == "u") return 7;
    return std::nullopt;
  };
  FormulaPtr f = parse_formula("forall u . u in u", env);
  CHECK(f->kind == Conn::forall);
  CHECK(f->a->lhs.is_var);
  CHECK(f->a->rhs.is_var);
  FormulaPtr g = parse_formula("u = u", env);
  CHECK(!g->lhs.is_var);
  CHECK(g->lhs.name == 7);

  ParseEnv strict = env;
  strict.allow_prop_atoms = false;
  // in term position an unresolved identifier stays a free variable
  FormulaPtr open = parse_formula("v = v", strict);
  CHECK(open->lhs.is_var);
  // in formula position it is rejected once atoms are disallowed
  CHECK_THROWS_AS(parse_formula("v", strict), Error);
}

TEST_CASE("substitution avoids touching bound occurrences") {
  Term u = Term::make_name(3);
  FormulaPtr open = parse_formula("x in y & forall x . x = y");
  FormulaPtr subbed = substitute(open, "x", u);
  // the free x becomes the name, the quantified x stays a variable
  CHECK(!subbed->a->lhs.is_var);
  CHECK(subbed->a->lhs.name == 3);
  CHECK(subbed->b->a->lhs.is_var);
  CHECK(subbed->b->a->lhs.var == "x");
  // substituting for y hits the quantifier body too
  FormulaPtr both = substitute(open, "y", u);
  CHECK(both->a->rhs.name == 3);
  CHECK(both->b->a->rhs.name == 3);
}

TEST_CASE("name rewriting and collection") {
  ParseEnv env;
  env.lookup_name = [](const std::string& s) -> std::optional<NameId> {
    if (s == "u") return 0;
    if (s == "v") return 1;
    if (s == "w") return 2;
    return std::nullopt;
  };
  FormulaPtr f = parse_formula("u in v & (w = u | v in w)", env);
  CHECK(formula_names(f) == std::vector<NameId>{0, 1, 2});

  FormulaPtr swapped = swap_names(f, 0, 1);
  CHECK(formula_names(swapped) == std::vector<NameId>{0, 1, 2});
  CHECK(swapped->a->lhs.name == 1);
  CHECK(swapped->a->rhs.name == 0);
  CHECK(swapped->b->b->lhs.name == 0);

  FormulaPtr mapped = map_names(f, [](NameId n) { return n + 10; });
  CHECK(formula_names(mapped) == std::vector<NameId>{10, 11, 12});
}

TEST_CASE("consistency expands to the derived form") {
  FormulaPtr f = expand_circ(parse_formula("o (a & b)"));
  CHECK(equal(f, parse_formula("~((a & b) & ~(a & b))")));
  FormulaPtr nested = expand_circ(parse_formula("o o a"));
  CHECK(equal(nested, parse_formula("~((~(a & ~a)) & ~(~(a & ~a)))")));
  CHECK(!mentions_neg_or_circ(parse_formula("a & b -> c")));
  CHECK(mentions_neg_or_circ(parse_formula("o a")));
}

TEST_CASE("free variables and closedness") {
  CHECK(free_vars(parse_formula("x in y")) == std::vector<std::string>{"x", "y"});
  CHECK(free_vars(parse_formula("forall x . x in y")) == std::vector<std::string>{"y"});
  CHECK(is_closed(parse_formula("forall x . exists y . x in y")));
  CHECK(!is_closed(parse_formula("forall x . x in y")));
  CHECK(is_propositional(parse_formula("a -> ~b & o c")));
  CHECK(!is_propositional(parse_formula("a -> x = x")));
}

TEST_CASE("malformed inputs raise syntax errors") {
  for (const char* bad : {"a & ", "(a", "forall . a", "a -> -> b", "in a",
                          "forall x a", "a = ", ")", ""}) {
    CHECK_THROWS_AS(parse_formula(bad), Error);
  }
  CHECK_THROWS_WITH_AS(parse_formula("a &"), doctest::Contains("SyntaxError"), Error);
}

TEST_CASE("subformula closure lists children before parents") {
  FormulaPtr f = parse_formula("a & (a | b)");
  auto subs = subformula_closure({f});
  CHECK(subs.size() == 4);
  CHECK(equal(subs.back(), f));
  bool saw_disj_before_root = false;
  for (size_t i = 0; i + 1 < subs.size(); ++i)
    if (subs[i]->kind == Conn::disj) saw_disj_before_root = true;
  CHECK(saw_disj_before_root);
}
