#include <doctest.h>

#include <random>

#include "gdist/zoo.hpp"
#include "support.hpp"

using namespace gdist;

namespace {

// Reduced Burau representation of B3 at t = 2, as an independent check on
// the normal form: equal braids must have equal images.
using Mat = std::array<mpq_class, 4>;

Mat mul(const Mat& a, const Mat& b) {
  return {a[0] * b[0] + a[1] * b[2], a[0] * b[1] + a[1] * b[3], a[2] * b[0] + a[3] * b[2],
          a[2] * b[1] + a[3] * b[3]};
}

Mat inv(const Mat& a) {
  mpq_class det = a[0] * a[3] - a[1] * a[2];
  return {a[3] / det, -a[1] / det, -a[2] / det, a[0] / det};
}

Mat burau(const Word& w) {
  const mpq_class t = 2;
  const Mat s1{-t, 1, 0, 1};
  const Mat s2{1, 0, t, -t};
  Mat acc{1, 0, 0, 1};
  for (Letter l : w) {
    const Mat& g = l.generator == 0 ? s1 : s2;
    acc = mul(acc, l.inverse ? inv(g) : g);
  }
  return acc;
}

}  // namespace

TEST_CASE("braid relations hold in the normal form") {
  MarkedGroup g = zoo_group("braid3");
  CHECK(g.element("s1 s2 s1") == g.element("s2 s1 s2"));
  CHECK(g.element("s1 s2") != g.element("s2 s1"));
  const auto& b = dynamic_cast<const BraidGroup&>(g.model());
  CHECK(g.element("s1 s2 s1") == b.delta());
  Element delta_sq = g.multiply(b.delta(), b.delta());
  for (const char* w : {"s1", "s2", "s1 s2^-1"}) {
    Element x = g.element(w);
    CHECK(g.multiply(delta_sq, x) == g.multiply(x, delta_sq));
  }
  // Delta conjugates s1 to s2.
  CHECK(g.multiply(g.multiply(g.invert(b.delta()), g.element("s1")), b.delta()) == g.element("s2"));
  CHECK(b.normal_form(g.element("s1^-1")).inf == -1);
  CHECK(g.describe(g.element("s1 s2 s1 s1")) == "D^1 [1 0 2]");
}

TEST_CASE("braid normal form on more strands") {
  BraidGroup b4(4);
  Element s1 = b4.sigma(1), s2 = b4.sigma(2), s3 = b4.sigma(3);
  CHECK(b4.multiply(s1, s3) == b4.multiply(s3, s1));
  CHECK(b4.multiply(b4.multiply(s2, s3), s2) == b4.multiply(b4.multiply(s3, s2), s3));
  Element d = b4.delta();
  Element word = b4.multiply(b4.multiply(b4.multiply(s1, s2), b4.multiply(s3, s1)), b4.multiply(s2, s1));
  CHECK(word == d);
}

TEST_CASE("property: normal form agrees with the Burau image") {
  MarkedGroup g = zoo_group("braid3");
  std::mt19937_64 rng(5);
  std::vector<std::pair<Word, Element>> samples;
  for (int i = 0; i < 300; ++i) {
    Word w = testing::random_word(rng, 2, 9);
    samples.emplace_back(w, evaluate(w, g));
  }
  for (std::size_t i = 0; i < samples.size(); ++i) {
    for (std::size_t j = i + 1; j < samples.size(); ++j) {
      bool same_nf = samples[i].second == samples[j].second;
      bool same_burau = burau(samples[i].first) == burau(samples[j].first);
      CHECK(same_nf == same_burau);
    }
  }
}
