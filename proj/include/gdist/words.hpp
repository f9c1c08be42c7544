#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace gdist {

/// A generator or its formal inverse. Letters are totally ordered as
/// g1 < g1^-1 < g2 < g2^-1 < ... (declaration order, base before inverse).
struct Letter {
  std::uint32_t generator = 0;
  bool inverse = false;

  constexpr std::uint32_t rank() const { return 2 * generator + (inverse ? 1u : 0u); }
  constexpr Letter inverted() const { return Letter{generator, !inverse}; }

  friend constexpr bool operator==(Letter a, Letter b) {
    return a.generator == b.generator && a.inverse == b.inverse;
  }
  friend constexpr std::strong_ordering operator<=>(Letter a, Letter b) {
    return a.rank() <=> b.rank();
  }
};

class Alphabet {
 public:
  Alphabet() = default;
  explicit Alphabet(std::vector<std::string> generators);

  std::size_t generator_count() const { return names_.size(); }
  /// Number of letters, i.e. twice the number of generators.
  std::size_t letter_count() const { return 2 * names_.size(); }
  const std::vector<std::string>& names() const { return names_; }
  const std::string& name(std::uint32_t generator) const { return names_.at(generator); }

  /// Letters in their total order.
  std::vector<Letter> letters() const;
  std::uint32_t index_of(std::string_view name) const;
  bool contains(std::string_view name) const;

  friend bool operator==(const Alphabet&, const Alphabet&) = default;

 private:
  std::vector<std::string> names_;
};

/// A finite sequence of letters; stored literally, never reduced implicitly.
class Word {
 public:
  Word() = default;
  explicit Word(std::vector<Letter> letters) : letters_(std::move(letters)) {}

  static Word generator(std::uint32_t index, bool inverse = false) {
    return Word({Letter{index, inverse}});
  }

  std::size_t size() const { return letters_.size(); }
  bool empty() const { return letters_.empty(); }
  const std::vector<Letter>& letters() const { return letters_; }
  Letter operator[](std::size_t i) const { return letters_[i]; }
  auto begin() const { return letters_.begin(); }
  auto end() const { return letters_.end(); }

  void push_back(Letter l) { letters_.push_back(l); }
  Word inverse() const;
  Word power(std::size_t k) const;

  friend Word operator*(const Word& a, const Word& b);
  friend bool operator==(const Word&, const Word&) = default;

 private:
  std::vector<Letter> letters_;
};

/// Free reduction: cancels adjacent x x^-1 pairs until none remain.
Word reduce(const Word& w);
bool is_reduced(const Word& w);

/// Number of letters, without reducing first.
inline std::size_t word_length(const Word& w) { return w.size(); }

/// Shorter words first; equal lengths compare lexicographically by letter rank.
std::strong_ordering shortlex_compare(const Word& a, const Word& b);

/// True if every letter refers to a generator of `alphabet`.
bool is_valid(const Word& w, const Alphabet& alphabet);

/// Whitespace-separated letters, inverses as `x^-1`, the empty word as `1`.
std::string format_word(const Word& w, const Alphabet& alphabet);
Word parse_word(std::string_view text, const Alphabet& alphabet);

/// The commutator a b a^-1 b^-1.
Word commutator(const Word& a, const Word& b);

class Presentation {
 public:
  Presentation() = default;
  /// Relators must be freely reduced and nonempty.
  Presentation(Alphabet alphabet, std::vector<Word> relators);

  static Presentation parse(const Alphabet& alphabet, const std::vector<std::string>& relators);

  const Alphabet& alphabet() const { return alphabet_; }
  const std::vector<Word>& relators() const { return relators_; }

 private:
  Alphabet alphabet_;
  std::vector<Word> relators_;
};

}  // namespace gdist
