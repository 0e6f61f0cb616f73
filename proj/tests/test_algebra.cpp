#include "doctest.h"
#include "fidelium/algebra.hpp"
#include "test_common.hpp"

using namespace fidelium;

TEST_CASE("three element chain tables") {
  AlgebraHandle a = load_h3();
  const HeytingStructure& h = a->heyting;
  Elem z = h.elem("0"), half = h.elem("half"), one = h.elem("1");

  CHECK(h.size() == 3);
  CHECK(h.top() == one);
  CHECK(*h.bottom() == z);
  CHECK(h.lattice().is_chain());
  CHECK(!h.is_boolean());

  CHECK(h.implies(z, z) == one);
  CHECK(h.implies(z, half) == one);
  CHECK(h.implies(z, one) == one);
  CHECK(h.implies(half, z) == z);
  CHECK(h.implies(half, half) == one);
  CHECK(h.implies(half, one) == one);
  CHECK(h.implies(one, z) == z);
  CHECK(h.implies(one, half) == half);
  CHECK(h.implies(one, one) == one);

  REQUIRE(h.has_neg());
  CHECK(h.neg(z) == one);
  CHECK(h.neg(half) == half);
  CHECK(h.neg(one) == z);
}

TEST_CASE("residuation law on every loaded algebra") {
  for (AlgebraHandle a : {load_two(), load_h3(), load_diamond(), load_chain4()}) {
    const HeytingStructure& h = a->heyting;
    for (Elem x = 0; x < h.size(); ++x)
      for (Elem y = 0; y < h.size(); ++y)
        for (Elem c = 0; c < h.size(); ++c)
          CHECK(h.leq(h.meet(x, c), y) == h.leq(c, h.implies(x, y)));
  }
}

TEST_CASE("lattice operations on the diamond") {
  AlgebraHandle d = load_diamond();
  const HeytingStructure& h = d->heyting;
  Elem a = h.elem("a"), b = h.elem("b");
  CHECK(h.meet(a, b) == *h.bottom());
  CHECK(h.join(a, b) == h.top());
  CHECK(h.implies(a, b) == b);
  CHECK(h.is_boolean());
  REQUIRE(d->boolean);
  CHECK(d->boolean->complement(a) == b);
  CHECK(h.atoms() == std::vector<Elem>{a, b});
}

TEST_CASE("boolean classification") {
  CHECK(load_two()->classification() == AlgebraClass::boolean);
  CHECK(load_diamond()->classification() == AlgebraClass::boolean);
  CHECK(load_h3()->classification() == AlgebraClass::heyting);
  CHECK(load_chain4()->classification() == AlgebraClass::heyting);
}

TEST_CASE("no designated bottom") {
  AlgebraHandle a = load_algebra_text(R"({"elements":["t"],"leq":[]})");
  const HeytingStructure& h = a->heyting;
  CHECK(!h.has_bottom());
  CHECK_THROWS_WITH_AS(h.big_join({}), doctest::Contains("EmptyJoinNoBottom"), Error);
  CHECK(h.big_meet({}) == h.top());
}

TEST_CASE("non lattice and non distributive orders are rejected") {
  CHECK_THROWS_AS(FiniteLattice::from_order({"a", "b"}, {}), Error);
  // pentagon: 0 < x < 1, 0 < y < z < 1, x incomparable with y and z
  FiniteLattice pentagon =
      FiniteLattice::from_order({"0", "x", "y", "z", "1"},
                                {{"0", "x"}, {"x", "1"}, {"0", "y"}, {"y", "z"}, {"z", "1"}});
  CHECK(!pentagon.is_distributive());
  CHECK_THROWS_WITH_AS(HeytingStructure::build(std::move(pentagon), true, std::nullopt,
                                               std::nullopt),
                       doctest::Contains("NotDistributive"), Error);
}

TEST_CASE("antichain refinement") {
  AlgebraHandle d = load_diamond();
  const HeytingStructure& hd = d->heyting;
  Elem a = hd.elem("a"), b = hd.elem("b");
  CHECK(antichain_refinement(hd, {a, hd.top()}) == std::vector<Elem>{a, b});
  CHECK(antichain_refinement(hd, {a, b}) == std::vector<Elem>{a, b});

  AlgebraHandle c = load_h3();
  const HeytingStructure& hc = c->heyting;
  CHECK(antichain_refinement(hc, {hc.elem("0"), hc.elem("half")}) ==
        std::vector<Elem>{hc.elem("half")});
}

TEST_CASE("distributive lattice counts up to five elements") {
  CHECK(enumerate_distributive_lattices(1).size() == 1);
  CHECK(enumerate_distributive_lattices(2).size() == 1);
  CHECK(enumerate_distributive_lattices(3).size() == 1);
  CHECK(enumerate_distributive_lattices(4).size() == 2);
  CHECK(enumerate_distributive_lattices(5).size() == 3);
  CHECK_THROWS_AS(enumerate_distributive_lattices(6), Error);
}
