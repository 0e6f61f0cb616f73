#include <doctest.h>

#include "fidelium/files.hpp"
#include "fidelium/io.hpp"
#include "test_common.hpp"

using namespace fidelium;

TEST_CASE("canonical saves are fixed points of load") {
  for (const char* file : {"two.json", "h3neg.json", "diamond.json", "chain4.json"}) {
    CAPTURE(file);
    AlgebraHandle a = load_algebra_file(data_path(file));
    std::string once = save_algebra(*a);
    AlgebraHandle b = load_algebra_text(once);
    CHECK(save_algebra(*b) == once);
    CHECK(b->heyting.size() == a->heyting.size());
    CHECK(b->classification() == a->classification());
  }
}

TEST_CASE("a meet table record loads to the same algebra as its order record") {
  std::string by_order = R"({
    "elements": ["0", "1"],
    "leq": [["0", "1"]],
    "bottom": "0"
  })";
  std::string by_meet = R"({
    "elements": ["0", "1"],
    "meet": {"0": {"0": "0", "1": "0"}, "1": {"0": "0", "1": "1"}},
    "bottom": "0"
  })";
  CHECK(save_algebra(*load_algebra_text(by_order)) == save_algebra(*load_algebra_text(by_meet)));
}

TEST_CASE("algebra records validate their claims") {
  CHECK_THROWS_AS(load_algebra_text("not json"), Error);
  CHECK_THROWS_AS(load_algebra_text("{}"), Error);
  CHECK_THROWS_AS(load_algebra_text(R"({"elements": ["a", "b"]})"), Error);

  // an incomplete meet table
  CHECK_THROWS_AS(load_algebra_text(R"({
    "elements": ["0", "1"],
    "meet": {"0": {"0": "0"}}
  })"),
                  Error);

  // a meet table disagreeing with the declared order
  CHECK_THROWS_AS(load_algebra_text(R"({
    "elements": ["0", "1"],
    "leq": [["0", "1"]],
    "meet": {"0": {"0": "0", "1": "1"}, "1": {"0": "1", "1": "1"}}
  })"),
                  Error);

  // bottom must be the least element
  CHECK_THROWS_AS(load_algebra_text(R"({
    "elements": ["0", "1"],
    "leq": [["0", "1"]],
    "bottom": "1"
  })"),
                  Error);

  // a complement table on a non Boolean carrier
  CHECK_THROWS_AS(load_algebra_text(R"({
    "elements": ["0", "half", "1"],
    "leq": [["0", "half"], ["half", "1"]],
    "bottom": "0",
    "complement": {"0": "1", "half": "half", "1": "0"}
  })"),
                  Error);

  // a wrong top claim
  CHECK_THROWS_AS(load_algebra_text(R"({
    "elements": ["0", "1"],
    "leq": [["0", "1"]],
    "top": "0"
  })"),
                  Error);
}

TEST_CASE("structure records load, save and reload") {
  FidelStructure s = load_structure_file(data_path("n3_saturated.json"));
  CHECK(s.kind == FidelKind::n4);
  CHECK(s.strict);
  CHECK(s.is_saturated());
  CHECK(s.algebra->heyting.size() == 3);

  std::string text = save_structure(s);
  FidelStructure back = load_structure_text(text);
  CHECK(back.kind == s.kind);
  CHECK(back.strict == s.strict);
  CHECK(back.n_family == s.n_family);
  CHECK(save_structure(back) == text);

  FidelStructure c1 = load_structure_file(data_path("c1_two_saturated.json"));
  CHECK(c1.kind == FidelKind::c1);
  CHECK(c1.o_family.size() == 2);
  FidelStructure c1_back = load_structure_text(save_structure(c1));
  CHECK(c1_back.o_family == c1.o_family);

  FidelStructure comega = load_structure_file(data_path("comega_two.json"));
  CHECK(comega.kind == FidelKind::comega);
  CHECK(!comega.is_saturated());
  CHECK(verify_structure(comega).valid);
}

TEST_CASE("structure records reject bad shapes") {
  std::string algebra = R"("algebra": {"elements": ["0", "1"], "leq": [["0", "1"]], "bottom": "0"})";
  // O families outside c1
  CHECK_THROWS_AS(load_structure_text("{" + algebra + R"(, "kind": "n4",
    "O": {"0": ["0"], "1": ["1"]}})"),
                  Error);
  // unknown kind
  CHECK_THROWS_AS(load_structure_text("{" + algebra + R"(, "kind": "k3"})"), Error);
  // family member outside the carrier
  CHECK_THROWS_AS(load_structure_text("{" + algebra + R"(, "kind": "n4",
    "N": {"0": ["2"], "1": ["1"]}})"),
                  Error);
  // empty family set
  CHECK_THROWS_WITH_AS(load_structure_text("{" + algebra + R"(, "kind": "n4",
    "N": {"0": [], "1": ["1"]}})"),
                       doctest::Contains("EmptyNSet"), Error);
  // missing kind
  CHECK_THROWS_AS(load_structure_text("{" + algebra + "}"), Error);
}

TEST_CASE("omitted families default to full") {
  std::string text = R"({
    "algebra": {"elements": ["0", "1"], "leq": [["0", "1"]], "bottom": "0"},
    "kind": "n4",
    "N": {"1": ["1"]}
  })";
  FidelStructure s = load_structure_text(text);
  CHECK(s.n_family[0] == 3u);  // defaulted
  CHECK(s.n_family[1] == 2u);
}

TEST_CASE("universe records bind labels in order") {
  LoadedUniverse lu = load_universe_file(data_path("h3_uvw.json"));
  REQUIRE(lu.fragment != nullptr);
  CHECK(!lu.structure.has_value());
  CHECK(lu.fragment->size() == 3);
  NameId w = *lu.fragment->lookup("w");
  NameId u = *lu.fragment->lookup("u");
  CHECK(lu.fragment->lookup("v").has_value());
  const Name& un = lu.fragment->name(u);
  REQUIRE(un.graph.size() == 1);
  CHECK(un.graph[0].first == w);
  CHECK(un.graph[0].second == lu.fragment->heyting().elem("half"));
}

TEST_CASE("a universe over a structure shares the structure's algebra") {
  std::string text = R"({
    "structure": {
      "algebra": {"elements": ["0", "1"], "leq": [["0", "1"]], "bottom": "0"},
      "kind": "comega",
      "N": {"0": ["1"], "1": ["0"]}
    },
    "names": [["e", "{}"], ["a", "{(e, 1)}"]]
  })";
  LoadedUniverse lu = load_universe_text(text);
  REQUIRE(lu.structure.has_value());
  CHECK(lu.structure->algebra == lu.fragment->algebra());
  CHECK(lu.structure->kind == FidelKind::comega);
  CHECK(lu.fragment->size() == 2);
}

TEST_CASE("universe records reject undefined labels and bad expressions") {
  std::string base = R"({"algebra": {"elements": ["0", "1"], "leq": [["0", "1"]],
    "bottom": "0"}, "names": )";
  CHECK_THROWS_AS(load_universe_text(base + R"([["u", "{(w, 1)}"]]})"), Error);
  CHECK_THROWS_AS(load_universe_text(base + R"([["u", "{(, 1)}"]]})"), Error);
  CHECK_THROWS_AS(load_universe_text(base + R"([["u"]]})"), Error);
}

TEST_CASE("relative algebra paths resolve against the referring file") {
  // n3_saturated.json names its algebra as h3neg.json with no directory
  FidelStructure s = load_structure_file(data_path("n3_saturated.json"));
  CHECK(s.algebra->heyting.lattice().find("half").has_value());
}

TEST_CASE("file io errors carry the path") {
  CHECK_THROWS_WITH_AS(load_algebra_file("/nonexistent/nope.json"),
                       doctest::Contains("nope.json"), Error);
}
