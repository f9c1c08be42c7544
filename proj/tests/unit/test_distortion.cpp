#include <doctest.h>
#include <sstream>

#include <array>
#include <random>

#include "gdist/distortion.hpp"
#include "gdist/errors.hpp"
#include "gdist/zoo.hpp"
#include "support.hpp"

using namespace gdist;

namespace {

// Independent arithmetic for the oracles: affine maps x -> s x + c with
// s = 2^k, composed left to right as in the library's evaluate().
struct Affine {
  mpq_class s = 1;
  mpq_class c = 0;
};

Affine affine_of(const std::string& letters_text) {
  Affine f;
  std::istringstream in(letters_text);
  std::string tok;
  while (in >> tok) {
    Affine g;
    if (tok == "a") g = {1, 1};
    if (tok == "a^-1") g = {1, -1};
    if (tok == "t") g = {2, 0};
    if (tok == "t^-1") g = {mpq_class(1, 2), 0};
    // (f * g)(x) = f(g(x))
    f = {f.s * g.s, f.s * g.c + f.c};
  }
  return f;
}

using M3 = std::array<long, 9>;

M3 mul(const M3& x, const M3& y) {
  M3 z{};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      for (int k = 0; k < 3; ++k) z[i * 3 + j] += x[i * 3 + k] * y[k * 3 + j];
  return z;
}

M3 heisenberg_word(int n) {
  // [a^n, b^n] = a^n b^n a^-n b^-n
  const M3 a{1, 1, 0, 0, 1, 0, 0, 0, 1}, ai{1, -1, 0, 0, 1, 0, 0, 0, 1};
  const M3 b{1, 0, 0, 0, 1, 1, 0, 0, 1}, bi{1, 0, 0, 0, 1, -1, 0, 0, 1};
  M3 acc{1, 0, 0, 0, 1, 0, 0, 0, 1};
  for (const M3* m : {&a, &b, &ai, &bi})
    for (int i = 0; i < n; ++i) acc = mul(acc, *m);
  return acc;
}

std::string repeat(const std::string& s, int n) {
  std::string out;
  for (int i = 0; i < n; ++i) out += s + " ";
  return out;
}

void check_profile_invariants(const MarkedGroup& g, const SubgroupModel& h, const DistortionProfile& p) {
  std::size_t prev = 0;
  for (const auto& e : p.entries) {
    CHECK(e.delta >= prev);
    prev = e.delta;
    CHECK(evaluate(e.witness_word, g) == e.witness);
    CHECK(word_length_of(e.witness, g, e.n) <= e.n);
    if (e.exact) CHECK(h.length_in_H(e.witness) == e.delta);
  }
}

}  // namespace

TEST_CASE("oracle arithmetic sanity") {
  Affine f = affine_of("t a t^-1");
  CHECK(f.s == 1);
  CHECK(f.c == 2);
  M3 z = heisenberg_word(3);
  CHECK(z == M3{1, 0, 9, 0, 1, 0, 0, 0, 1});
}

TEST_CASE("Z in Z^2 as a direct factor") {
  MarkedGroup z2 = zoo_group("z2");
  DirectFactor h(z2, 0);
  auto p = distortion_profile(z2, h, 12);
  REQUIRE(p.entries.size() == 12);
  for (const auto& e : p.entries) {
    CHECK(e.delta == e.n);
    CHECK(e.exact);
  }
  check_profile_invariants(z2, h, p);
  CHECK(classify_growth(p).kind == GrowthKind::kLinear);
  auto u = undistorted_check(p);
  CHECK(u.undistorted);
  CHECK(u.K == 1);
  // H-generators are a subset of G-generators.
  for (const auto& e : p.entries) CHECK(h.length_in_H(e.witness) >= word_length_of(e.witness, z2, 12));
}

TEST_CASE("cyclic Z in Z^2 matches the closed form") {
  MarkedGroup z2 = zoo_group("z2");
  CyclicExact h(z2, z2.element("x"));
  auto p = distortion_profile(z2, h, 10);
  for (const auto& e : p.entries) CHECK(e.delta == e.n);
  CyclicExact diag(z2, z2.element("x y"));
  auto d = distortion_profile(z2, diag, 12);
  for (const auto& e : d.entries) CHECK(e.delta == e.n / 2);
  CHECK(classify_growth(d).label() == "linear");
  CHECK(undistorted_check(d).undistorted);
}

TEST_CASE("H = G") {
  MarkedGroup z2 = zoo_group("z2");
  auto h = EnumeratedWithCap::whole(z2, 10);
  auto p = distortion_profile(z2, h, 10);
  for (const auto& e : p.entries) {
    CHECK(e.delta == e.n);
    CHECK(e.exact);
  }
  auto u = undistorted_check(p);
  CHECK(u.undistorted);
  CHECK(u.K == 1);
}

TEST_CASE("BS(1,2) cyclic subgroup is exponentially distorted") {
  MarkedGroup bs = zoo_group("bs12");
  CyclicExact h(bs, bs.element("a"));
  auto p = distortion_profile(bs, h, 17);
  CHECK(p.entries[2].delta == 3);
  for (int n = 0; n <= 8; ++n) {
    std::string w = repeat("t", n) + "a " + repeat("t^-1", n);
    Affine f = affine_of(w);
    REQUIRE(f.s == 1);
    REQUIRE(f.c == mpq_class(mpz_class(1) << n));
    CHECK(p.entries[2 * n].n == static_cast<std::size_t>(2 * n + 1));
    CHECK(p.entries[2 * n].delta >= (std::size_t{1} << n));
  }
  check_profile_invariants(bs, h, p);
  CHECK(classify_growth(p).label() == "exponential");
  auto u = undistorted_check(p);
  CHECK_FALSE(u.undistorted);
  for (std::size_t i = 2; i + 2 < u.ratios.size(); i += 2) CHECK(u.ratios[i + 2] > u.ratios[i]);
}

TEST_CASE("Heisenberg center is quadratically distorted") {
  MarkedGroup heis = zoo_group("heis3");
  CyclicExact h(heis, heis.element("a b a^-1 b^-1"));
  auto p = distortion_profile(heis, h, 24);
  for (int n = 1; n <= 6; ++n) {
    M3 z = heisenberg_word(n);
    REQUIRE(z[2] == n * n);
    CHECK(p.entries[4 * n - 1].delta >= static_cast<std::size_t>(n * n));
  }
  check_profile_invariants(heis, h, p);
  CHECK(classify_growth(p).label() == "polynomial(2)");
  CHECK_FALSE(undistorted_check(p).undistorted);
}

TEST_CASE("cyclic_exponent across models") {
  MarkedGroup f2 = zoo_group("free2");
  CHECK(cyclic_exponent(f2.model(), f2.element("y x y^-1"), f2.element("y x x x y^-1")) == 3);
  CHECK(cyclic_exponent(f2.model(), f2.element("y x y^-1"), f2.element("y x^-1 x^-1 y^-1")) == -2);
  CHECK_FALSE(cyclic_exponent(f2.model(), f2.element("x y"), f2.element("y x")));
  CHECK_FALSE(cyclic_exponent(f2.model(), f2.element("x x"), f2.element("x x x")));

  MarkedGroup b3 = zoo_group("braid3");
  CHECK(cyclic_exponent(b3.model(), b3.element("s1 s2"), b3.element("s1 s2 s1 s1 s2 s1")) == 3);
  CHECK_FALSE(cyclic_exponent(b3.model(), b3.element("s1 s2"), b3.element("s1 s1")));

  MarkedGroup sl2 = zoo_group("sl2z");
  CHECK(cyclic_exponent(sl2.model(), sl2.element("a"), sl2.element("a a a")) == -1);
  CHECK_THROWS_AS(CyclicExact(sl2, sl2.element("a b")), UnsupportedSubgroup);
  CyclicExact order4(sl2, sl2.element("a"));
  CHECK(order4.order() == 4);
  CHECK(order4.length_in_H(sl2.element("a a")) == 2);
  CHECK_FALSE(order4.contains(sl2.element("b")));

  MarkedGroup cz = zoo_group("c2+z");
  CyclicExact mixed(cz, cz.element("x_1 x_2"));
  CHECK(mixed.length_in_H(cz.element("x_2 x_2")) == 2);
  CHECK_FALSE(mixed.contains(cz.element("x_2")));
  CHECK(mixed.length_in_H(cz.element("x_1 x_2 x_2 x_2")) == 3);
}

TEST_CASE("hom image and capped enumeration") {
  MarkedGroup z = zoo_group("z");
  MarkedGroup z2 = zoo_group("z2");
  HomImage diag(MarkedHomomorphism(z, z2, {z2.parse("x y")}), 20);
  CHECK(diag.length_in_H(z2.element("x x y y")) == 2);
  CHECK_FALSE(diag.query(z2.element("x")).member);
  CHECK_FALSE(diag.query(z2.element("x")).exact);
  CHECK_THROWS_AS(diag.contains(z2.element("x")), InexactOracle);

  MarkedGroup v4 = zoo_group("kleinfour");
  auto whole = EnumeratedWithCap::whole(v4, 10);
  CHECK(whole.complete());
  CHECK(whole.contains(v4.element("x y")));

  auto capped = EnumeratedWithCap::whole(z2, 3);
  auto p = distortion_profile(z2, capped, 5);
  CHECK(p.entries[2].exact);
  CHECK_FALSE(p.entries[3].exact);
  CHECK_FALSE(p.all_exact());
  CHECK(p.exact_entries().size() == 3);
  CHECK(profile_csv(p, z2).find(",false,") != std::string::npos);

  BallOptions tiny{.max_elements = 20, .threads = 1};
  EnumeratedWithCap limited(z2, {"x", "y"}, z2.marking(), 10, tiny);
  CHECK(limited.cap_reached());
  CHECK_FALSE(limited.complete());
}

TEST_CASE("property: subgroup oracle contracts") {
  std::mt19937_64 rng(11);
  MarkedGroup f2 = zoo_group("free2");
  MarkedGroup heis = zoo_group("heis3");
  MarkedGroup z2 = zoo_group("z2");
  struct Case {
    const MarkedGroup* g;
    std::shared_ptr<SubgroupModel> h;
  };
  std::vector<Case> cases{
      {&f2, std::make_shared<CyclicExact>(f2, f2.element("x y"))},
      {&heis, std::make_shared<CyclicExact>(heis, heis.element("a b a^-1 b^-1"))},
      {&z2, std::make_shared<DirectFactor>(z2, 1)},
      {&f2, std::make_shared<EnumeratedWithCap>(f2, std::vector<std::string>{"u"},
                                                std::vector<Element>{f2.element("x x")}, 30)},
  };
  for (const auto& c : cases) {
    const MarkedGroup& g = *c.g;
    const SubgroupModel& h = *c.h;
    CHECK(h.contains(g.identity()));
    CHECK(h.length_in_H(g.identity()) == 0);
    for (int i = 0; i < 60; ++i) {
      Word w1 = testing::random_word(rng, h.generators().size(), 6);
      Word w2 = testing::random_word(rng, h.generators().size(), 6);
      auto eval = [&](const Word& w) {
        Element acc = g.identity();
        for (Letter l : w) {
          Element x = h.generators()[l.generator];
          acc = g.multiply(acc, l.inverse ? g.invert(x) : x);
        }
        return acc;
      };
      Element a = eval(w1), b = eval(w2);
      CHECK(h.contains(a));
      CHECK(h.contains(g.multiply(a, b)));
      CHECK((h.length_in_H(a) == 0) == (a == g.identity()));
      CHECK(h.length_in_H(a) <= w1.size());
    }
  }
}

TEST_CASE("classify_growth") {
  auto pts = [](std::vector<double> v) {
    std::vector<std::pair<double, double>> out;
    for (std::size_t i = 0; i < v.size(); ++i) out.emplace_back(static_cast<double>(i + 1), v[i]);
    return out;
  };
  CHECK(classify_growth(pts({1, 2, 3, 4, 5, 6})).label() == "linear");
  CHECK(classify_growth(pts({1, 2, 4, 8, 16, 32})).label() == "exponential");
  CHECK(classify_growth(pts({3, 3, 3, 3, 3})).label() == "bounded");
  CHECK(classify_growth(pts({0, 0, 0, 0})).label() == "bounded");
  CHECK(classify_growth(pts({1, 4, 9, 16, 25, 36, 49})).label() == "polynomial(2)");
  CHECK(classify_growth(pts({1, 8, 27, 64, 125, 216, 343, 512})).label() == "polynomial(3)");
  CHECK(classify_growth(pts({5, 0, 7, 1, 9, 0, 3, 8})).label() == "inconclusive");
  CHECK_THROWS_AS(classify_growth(pts({1, 2, 3})), TooFewPoints);
}

TEST_CASE("undistorted_check needs points") {
  MarkedGroup z2 = zoo_group("z2");
  DirectFactor h(z2, 0);
  CHECK_THROWS_AS(undistorted_check(distortion_profile(z2, h, 2)), TooFewPoints);
  CHECK_THROWS_AS(distortion_profile(z2, h, 0), InvalidArgument);
}

TEST_CASE("profile determinism across thread counts") {
  MarkedGroup heis = zoo_group("heis3");
  CyclicExact h(heis, heis.element("a b a^-1 b^-1"));
  auto one = distortion_profile(heis, h, 14, {.max_elements = 10'000'000, .threads = 1});
  auto four = distortion_profile(heis, h, 14, {.max_elements = 10'000'000, .threads = 4});
  CHECK(profile_csv(one, heis) == profile_csv(four, heis));
  CHECK(profile_json(one, heis) == profile_json(four, heis));
}
