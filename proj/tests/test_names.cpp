#include <doctest.h>

#include "fidelium/names.hpp"
#include "test_common.hpp"

using namespace fidelium;

TEST_CASE("hereditarily finite sets canonicalize and count") {
  CHECK(enumerate_hf(0).size() == 1);
  CHECK(enumerate_hf(1).size() == 2);
  CHECK(enumerate_hf(2).size() == 4);
  CHECK(enumerate_hf(3).size() == 16);

  CHECK(hf_numeral(0).to_text() == "{}");
  CHECK(hf_numeral(2).to_text() == "{{},{{}}}");
  CHECK(hf_numeral(3).rank() == 3);
  CHECK(hf_numeral(3).member(hf_numeral(2)));
  CHECK(!hf_numeral(2).member(hf_numeral(2)));

  Hf messy;
  messy.elems = {hf_numeral(1), hf_numeral(0), hf_numeral(1)};
  Hf canon = hf_canonical(messy);
  CHECK(canon.elems.size() == 2);
  CHECK(canon == hf_numeral(2));
  CHECK(hf_successor(hf_numeral(2)) == hf_numeral(3));
}

TEST_CASE("universe cardinalities over the two element algebra") {
  UniverseFragment frag(load_two());
  CHECK(frag.enumerate_names(1).size() == 3);
  UniverseFragment frag2(load_two());
  CHECK(frag2.enumerate_names(2, 2).size() == 19);
  UniverseFragment frag3(load_two());
  CHECK(frag3.enumerate_names(2).size() == 27);
  UniverseFragment h3(load_h3());
  CHECK(h3.enumerate_names(2, 1).size() == 13);
}

TEST_CASE("enumeration refuses to blow the budget and registers nothing") {
  UniverseFragment frag(load_two());
  CHECK_THROWS_WITH_AS(frag.enumerate_names(2, std::nullopt, 20),
                       doctest::Contains("BudgetExceeded"), Error);
  CHECK(frag.size() == 0);
  CHECK_THROWS_AS(frag.enumerate_names(3), Error);
}

TEST_CASE("names intern structurally and merge duplicate keys by join") {
  UniverseFragment frag(load_h3());
  const HeytingStructure& h = frag.heyting();
  Elem half = h.elem("half");
  Elem one = h.top();

  NameId e = frag.empty_name();
  CHECK(frag.make_name({}) == e);

  NameId u = frag.make_name({{e, half}});
  CHECK(frag.make_name({{e, half}, {e, half}}) == u);
  // duplicate keys merge by join: half v 1 = 1
  NameId v = frag.make_name({{e, half}, {e, one}});
  CHECK(frag.name(v).graph.size() == 1);
  CHECK(frag.name(v).weight_of(e) == one);

  // a bottom weighted entry is still an entry
  NameId z = frag.make_name({{e, *h.bottom()}});
  CHECK(z != e);
  CHECK(frag.name(z).rank == 1);
  CHECK(frag.name(e).rank == 0);
  CHECK(frag.name(u).rank == 1);

  CHECK_THROWS_AS(frag.make_name({{99, half}}), Error);
}

TEST_CASE("labels bind and describe falls back to literals") {
  UniverseFragment frag(load_h3());
  Elem half = frag.heyting().elem("half");
  NameId e = frag.empty_name();
  NameId u = frag.make_name({{e, half}});
  CHECK(frag.describe(u) == "{({}, half)}");
  frag.bind("w", e);
  frag.bind("u", u);
  CHECK(frag.label_of(e) == "w");
  CHECK(frag.describe(u) == "{(w, half)}");
  CHECK(frag.lookup("u") == u);
  CHECK(!frag.lookup("nope").has_value());
  CHECK(frag.label_of(frag.make_name({{u, half}})).substr(0, 1) == "#");
}

TEST_CASE("name expressions parse and must consume all input") {
  UniverseFragment frag(load_h3());
  NameId e = parse_name_expr(frag, "{}");
  CHECK(e == frag.empty_name());

  NameId u = parse_name_expr(frag, "{({}, half)}");
  CHECK(frag.name(u).graph.size() == 1);
  CHECK(parse_name_expr(frag, "{ ( {} , half ) }") == u);

  frag.bind("u", u);
  CHECK(parse_name_expr(frag, "u") == u);
  NameId nested = parse_name_expr(frag, "{(u, 1), ({}, 0)}");
  CHECK(frag.name(nested).graph.size() == 2);

  CHECK(parse_name_expr(frag, "hat{}") == e);
  NameId two = parse_name_expr(frag, "hat{{},{{}}}");
  CHECK(frag.name(two).rank == 2);

  for (const char* bad : {"", "{", "{()}", "{({}, nope)}", "u v", "{} extra", "hat{",
                          "nolabel"}) {
    CHECK_THROWS_AS(parse_name_expr(frag, bad), Error);
  }
}

TEST_CASE("hat embedding is injective and weights everything top") {
  UniverseFragment frag(load_two());
  std::vector<NameId> embedded;
  for (const Hf& s : enumerate_hf(3)) embedded.push_back(frag.hat_embed(s));
  std::sort(embedded.begin(), embedded.end());
  CHECK(std::adjacent_find(embedded.begin(), embedded.end()) == embedded.end());
  CHECK(embedded.size() == 16);

  NameId n2 = frag.hat_embed(hf_numeral(2));
  for (auto& [member, w] : frag.name(n2).graph) CHECK(w == frag.heyting().top());
  CHECK(frag.name(n2).graph.size() == 2);
}
