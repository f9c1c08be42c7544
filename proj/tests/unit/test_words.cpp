#include <doctest.h>

#include <random>

#include "gdist/errors.hpp"
#include "gdist/words.hpp"
#include "support.hpp"

using namespace gdist;

namespace {

const Alphabet kXY({"x", "y"});

Word w(const char* text) { return parse_word(text, kXY); }

}  // namespace

TEST_CASE("reduce cancels adjacent inverse pairs") {
  CHECK(reduce(w("x x^-1 y")) == w("y"));
  CHECK(reduce(w("")) == w(""));
  CHECK(reduce(w("x y y^-1 x")) == w("x x"));
  CHECK(reduce(w("x y x^-1 y^-1")) == w("x y x^-1 y^-1"));
  CHECK(reduce(w("y^-1 x x^-1 y x")) == w("x"));
}

TEST_CASE("word_length counts letters without reducing") {
  CHECK(word_length(w("")) == 0);
  CHECK(word_length(w("x y^-1 x")) == 3);
  CHECK(word_length(w("x x^-1")) == 2);
  CHECK(word_length(reduce(w("x x^-1"))) == 0);
}

TEST_CASE("shortlex order") {
  CHECK(shortlex_compare(w("y"), w("x x")) == std::strong_ordering::less);
  CHECK(shortlex_compare(w("x"), w("y")) == std::strong_ordering::less);
  CHECK(shortlex_compare(w("x^-1"), w("x")) == std::strong_ordering::greater);
  CHECK(shortlex_compare(w("x^-1"), w("y")) == std::strong_ordering::less);
  CHECK(shortlex_compare(w("x y"), w("x y")) == std::strong_ordering::equal);
}

TEST_CASE("serialization") {
  CHECK(format_word(w("x y^-1 x"), kXY) == "x y^-1 x");
  CHECK(format_word(Word{}, kXY) == "1");
  CHECK(parse_word("1", kXY).empty());
  CHECK_THROWS_AS(parse_word("z", kXY), ParseError);
  CHECK_THROWS_AS(parse_word("x^2", kXY), ParseError);
}

TEST_CASE("alphabet validation") {
  CHECK_THROWS_AS(Alphabet({"x", "x"}), InvalidArgument);
  CHECK_THROWS_AS(Alphabet({""}), InvalidArgument);
  CHECK(Alphabet({"a", "b"}).letter_count() == 4);
  auto letters = kXY.letters();
  REQUIRE(letters.size() == 4);
  CHECK(letters[0] < letters[1]);
  CHECK(letters[1] < letters[2]);
}

TEST_CASE("presentations reject unreduced or empty relators") {
  CHECK_NOTHROW(Presentation::parse(Alphabet({"a", "b"}), {"a a a a", "b b b b b b", "a a b^-1 b^-1 b^-1"}));
  CHECK_THROWS_AS(Presentation::parse(kXY, {"x x^-1"}), InvalidArgument);
  CHECK_THROWS_AS(Presentation(kXY, {Word{}}), InvalidArgument);
}

TEST_CASE("property: reduce is idempotent and never lengthens") {
  std::mt19937_64 rng(17);
  for (int i = 0; i < 2000; ++i) {
    Word u = testing::random_word(rng, 2, 12);
    Word r = reduce(u);
    CHECK(reduce(r) == r);
    CHECK(r.size() <= u.size());
    CHECK((r.size() == u.size()) == is_reduced(u));
    CHECK(reduce(u * u.inverse()).empty());
  }
}

TEST_CASE("property: shortlex is a total order") {
  std::mt19937_64 rng(23);
  for (int i = 0; i < 2000; ++i) {
    Word a = testing::random_word(rng, 2, 4);
    Word b = testing::random_word(rng, 2, 4);
    Word c = testing::random_word(rng, 2, 4);
    auto ab = shortlex_compare(a, b);
    auto ba = shortlex_compare(b, a);
    CHECK((ab == std::strong_ordering::equal) == (a == b));
    CHECK((ab < 0) == (ba > 0));
    if (ab <= 0 && shortlex_compare(b, c) <= 0) CHECK(shortlex_compare(a, c) <= 0);
  }
}
