#include <doctest.h>

#include <random>

#include "gdist/errors.hpp"
#include "gdist/groups.hpp"
#include "gdist/zoo.hpp"
#include "support.hpp"

using namespace gdist;

TEST_CASE("evaluate in SL(2,Z)") {
  MarkedGroup g = zoo_group("sl2z");
  const auto& m = dynamic_cast<const IntegerMatrixGroup&>(g.model());
  CHECK(g.element("a a") == m.element({{-1, 0}, {0, -1}}));
  CHECK(g.element("b b b") == m.element({{-1, 0}, {0, -1}}));
  CHECK(evaluate(Word{}, g) == g.identity());
  CHECK(g.element("a a^-1") == g.identity());
  CHECK(g.describe(g.element("a")) == "[[0,-1],[1,0]]");
}

TEST_CASE("verify_presentation") {
  SUBCASE("SL(2,Z) against <a,b | a^4, b^6, a^2 b^-3>") {
    MarkedGroup g = zoo_group("sl2z");
    auto report = verify_presentation(g, Presentation::parse(g.alphabet(), {"a a a a", "b b b b b b", "a a b^-1 b^-1 b^-1"}));
    CHECK(report.pass);
    CHECK(report.relators.size() == 3);
  }
  SUBCASE("Klein four table against <x,y | x^2, y^2, [x,y]>") {
    MarkedGroup g = zoo_group("kleinfour");
    auto report = verify_presentation(g, Presentation::parse(g.alphabet(), {"x x", "y y", "x y x^-1 y^-1"}));
    CHECK(report.pass);
  }
  SUBCASE("Z fails x^2") {
    MarkedGroup g = zoo_group("z");
    auto report = verify_presentation(g, Presentation::parse(g.alphabet(), {"x x"}));
    CHECK_FALSE(report.pass);
    REQUIRE(report.relators.size() == 1);
    CHECK_FALSE(report.relators[0].holds);
  }
  SUBCASE("every zoo presentation verifies against its own model") {
    for (const auto& name : zoo_names()) {
      MarkedGroup g = zoo_group(name);
      REQUIRE(g.presentation());
      CHECK_MESSAGE(verify_presentation(g, *g.presentation()).pass, name);
    }
    MarkedGroup p = zoo_group("c2+z+kleinfour");
    REQUIRE(p.presentation());
    CHECK(verify_presentation(p, *p.presentation()).pass);
  }
}

TEST_CASE("verify_homomorphism") {
  MarkedGroup v4 = zoo_group("kleinfour");
  MarkedGroup sl2 = zoo_group("sl2z");
  CHECK(verify_homomorphism(MarkedHomomorphism(v4, v4, {v4.parse("x"), v4.parse("y")})).pass);
  CHECK(verify_homomorphism(MarkedHomomorphism(v4, sl2, {sl2.parse("a a"), sl2.parse("a a")})).pass);
  auto bad = verify_homomorphism(MarkedHomomorphism(v4, sl2, {sl2.parse("a"), sl2.parse("a a")}));
  CHECK_FALSE(bad.pass);
  CHECK_FALSE(bad.relators[0].holds);  // a^2 = -I, not I

  MarkedGroup bare("bare", v4.model_ptr(), v4.alphabet(), v4.marking());
  CHECK_THROWS_AS(verify_homomorphism(MarkedHomomorphism(bare, v4, {v4.parse("x"), v4.parse("y")})),
                  MissingPresentation);
  CHECK_THROWS_AS(MarkedHomomorphism(v4, sl2, {sl2.parse("a")}), InvalidArgument);
}

TEST_CASE("order_of_element") {
  MarkedGroup g = zoo_group("sl2z");
  CHECK(order_of_element(g.element("a a"), g.model(), 10) == 2u);
  CHECK(order_of_element(g.element("a"), g.model(), 10) == 4u);
  CHECK(order_of_element(g.element("b"), g.model(), 10) == 6u);
  CHECK(order_of_element(g.identity(), g.model(), 1) == 1u);
  CHECK_FALSE(order_of_element(g.element("a b"), g.model(), 50).has_value());  // [[1,1],[0,1]]-like, infinite
  CHECK_THROWS_AS(order_of_element(g.identity(), g.model(), 0), InvalidArgument);
}

TEST_CASE("index_two_retraction") {
  SUBCASE("Z/2 x Z onto 0 x Z") {
    MarkedGroup g = zoo_group("c2+z");
    const auto& prod = dynamic_cast<const DirectProduct&>(g.model());
    auto member = [&](const Element& e) { return prod.factor(0).is_identity(prod.components(e)[0]); };
    Element j = g.element("x_1");
    auto h = index_two_retraction(g, member, j);
    CHECK(h(g.element("x_1 x_2 x_2 x_2 x_2 x_2")) == g.element("x_2 x_2 x_2 x_2 x_2"));
    Element inside = g.element("x_2 x_2^-1 x_2^-1");
    CHECK(h(inside) == inside);
  }
  SUBCASE("Z onto even powers") {
    MarkedGroup g = zoo_group("z");
    const auto& free = dynamic_cast<const FreeGroup&>(g.model());
    auto member = [&](const Element& e) { return free.word(e).size() % 2 == 0; };
    auto h = index_two_retraction(g, member, g.element("x"));
    CHECK(h(g.element("x x x")) == g.element("x x x x"));
    CHECK(h(g.element("x x")) == g.element("x x"));
  }
  SUBCASE("bad coset representatives are detected on use") {
    MarkedGroup g = zoo_group("z");
    const auto& free = dynamic_cast<const FreeGroup&>(g.model());
    auto member = [&](const Element& e) { return free.word(e).size() % 2 == 0; };
    auto in_h = index_two_retraction(g, member, g.element("x x"));
    CHECK_THROWS_AS(in_h(g.element("x")), BadCosetRep);
    auto mod3 = [&](const Element& e) { return free.word(e).size() % 3 == 0; };
    auto square_out = index_two_retraction(g, mod3, g.element("x"));
    CHECK_THROWS_AS(square_out(g.element("x")), BadCosetRep);
  }
}

TEST_CASE("matrix model edge cases") {
  IntegerMatrixGroup m3(3);
  CHECK_THROWS_AS(m3.element({{2, 0, 0}, {0, 1, 0}, {0, 0, 1}}), InvalidArgument);
  Element a = m3.element({{1, 2, 3}, {0, 1, 4}, {0, 0, 1}});
  Element b = m3.element({{0, 1, 0}, {1, 0, 0}, {0, 0, -1}});  // det = 1
  CHECK(m3.multiply(a, m3.invert(a)) == m3.identity());
  CHECK(m3.multiply(m3.invert(b), b) == m3.identity());
  // Entries grow without bound and never wrap.
  IntegerMatrixGroup m2(2);
  Element u = m2.element({{1, 1}, {1, 2}});
  Element big = m2.power(u, mpz_class(200));
  CHECK(m2.matrix(big)[3] > mpz_class("1000000000000000000000000000000"));
  CHECK(m2.multiply(big, m2.power(u, mpz_class(-200))) == m2.identity());
}

TEST_CASE("dyadic affine model") {
  DyadicAffineGroup g;
  Element a = g.element({0, mpq_class(1)});
  Element t = g.element({1, mpq_class(0)});
  // t a t^-1 = a^2
  CHECK(g.multiply(g.multiply(t, a), g.invert(t)) == g.multiply(a, a));
  CHECK_THROWS_AS(g.element({0, mpq_class(1, 3)}), InvalidArgument);
  Element half = g.multiply(g.multiply(g.invert(t), a), t);  // x -> x + 1/2
  CHECK(g.map(half).m == mpq_class(1, 2));
  CHECK(g.map(half).k == 0);
}

TEST_CASE("table model validation") {
  CHECK_THROWS_AS(TableGroup({{0, 1}, {0, 1}}), InvalidArgument);
  CHECK_THROWS_AS(TableGroup({{0, 1}}), InvalidArgument);
  CHECK_THROWS_AS(TableGroup({{0, 1, 2}, {1, 2, 0}, {2, 1, 0}}), InvalidArgument);
  auto z3 = TableGroup::cyclic(3);
  CHECK(z3->multiply(z3->element(2), z3->element(2)) == z3->element(1));
}

TEST_CASE("free model reduces at the junction") {
  FreeGroup f(2);
  Alphabet ab({"x", "y"});
  Element u = f.element(parse_word("x y x", ab));
  Element v = f.element(parse_word("x^-1 y^-1 y", ab));
  CHECK(f.word(f.multiply(u, v)) == parse_word("x y", ab));
  CHECK(f.multiply(u, f.invert(u)) == f.identity());
}

TEST_CASE("property: group laws, evaluation is a monoid map, keys are sound") {
  std::mt19937_64 rng(99);
  std::vector<std::string> names = zoo_names();
  names.push_back("c2+z");
  names.push_back("z+free2");
  for (const auto& name : names) {
    MarkedGroup g = zoo_group(name);
    const std::size_t gens = g.alphabet().generator_count();
    for (int i = 0; i < 60; ++i) {
      Element a = testing::random_element(rng, g, 8);
      Element b = testing::random_element(rng, g, 8);
      Element c = testing::random_element(rng, g, 8);
      CHECK_MESSAGE(g.multiply(g.multiply(a, b), c) == g.multiply(a, g.multiply(b, c)), name);
      CHECK_MESSAGE(g.multiply(a, g.invert(a)) == g.identity(), name);
      CHECK_MESSAGE(g.multiply(g.identity(), a) == a, name);
      if (gens == 0) continue;
      Word u = testing::random_word(rng, gens, 10);
      Word v = testing::random_word(rng, gens, 10);
      CHECK_MESSAGE(evaluate(u * v, g) == g.multiply(evaluate(u, g), evaluate(v, g)), name);
      CHECK_MESSAGE(evaluate(u, g).key() == evaluate(reduce(u), g).key(), name);
    }
  }
}
