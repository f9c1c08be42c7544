#include "gdist/words.hpp"

#include <algorithm>
#include <sstream>
#include <unordered_set>

#include "gdist/errors.hpp"

namespace gdist {

Alphabet::Alphabet(std::vector<std::string> generators) : names_(std::move(generators)) {
  std::unordered_set<std::string> seen;
  for (const auto& name : names_) {
    if (name.empty()) throw InvalidArgument("generator names must be nonempty");
    if (name == "1" || name.find_first_of(" \t\n^") != std::string::npos)
      throw InvalidArgument("invalid generator name '" + name + "'");
    if (!seen.insert(name).second) throw InvalidArgument("duplicate generator name '" + name + "'");
  }
}

std::vector<Letter> Alphabet::letters() const {
  std::vector<Letter> out;
  out.reserve(letter_count());
  for (std::uint32_t g = 0; g < names_.size(); ++g) {
    out.push_back(Letter{g, false});
    out.push_back(Letter{g, true});
  }
  return out;
}

std::uint32_t Alphabet::index_of(std::string_view name) const {
  auto it = std::find(names_.begin(), names_.end(), name);
  if (it == names_.end()) throw ParseError("unknown generator '" + std::string(name) + "'");
  return static_cast<std::uint32_t>(it - names_.begin());
}

bool Alphabet::contains(std::string_view name) const {
  return std::find(names_.begin(), names_.end(), name) != names_.end();
}

Word Word::inverse() const {
  std::vector<Letter> out;
  out.reserve(letters_.size());
  for (auto it = letters_.rbegin(); it != letters_.rend(); ++it) out.push_back(it->inverted());
  return Word(std::move(out));
}

Word Word::power(std::size_t k) const {
  std::vector<Letter> out;
  out.reserve(letters_.size() * k);
  for (std::size_t i = 0; i < k; ++i) out.insert(out.end(), letters_.begin(), letters_.end());
  return Word(std::move(out));
}

Word operator*(const Word& a, const Word& b) {
  std::vector<Letter> out = a.letters_;
  out.insert(out.end(), b.letters_.begin(), b.letters_.end());
  return Word(std::move(out));
}

Word reduce(const Word& w) {
  // Stack-based reduction yields the unique freely reduced representative.
  std::vector<Letter> stack;
  stack.reserve(w.size());
  for (Letter l : w) {
    if (!stack.empty() && stack.back() == l.inverted()) {
      stack.pop_back();
    } else {
      stack.push_back(l);
    }
  }
  return Word(std::move(stack));
}

bool is_reduced(const Word& w) {
  for (std::size_t i = 1; i < w.size(); ++i) {
    if (w[i] == w[i - 1].inverted()) return false;
  }
  return true;
}

std::strong_ordering shortlex_compare(const Word& a, const Word& b) {
  if (auto c = a.size() <=> b.size(); c != 0) return c;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (auto c = a[i] <=> b[i]; c != 0) return c;
  }
  return std::strong_ordering::equal;
}

bool is_valid(const Word& w, const Alphabet& alphabet) {
  return std::all_of(w.begin(), w.end(),
                     [&](Letter l) { return l.generator < alphabet.generator_count(); });
}

std::string format_word(const Word& w, const Alphabet& alphabet) {
  if (w.empty()) return "1";
  std::string out;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (i) out += ' ';
    out += alphabet.name(w[i].generator);
    if (w[i].inverse) out += "^-1";
  }
  return out;
}

Word parse_word(std::string_view text, const Alphabet& alphabet) {
  std::istringstream in{std::string(text)};
  std::string token;
  Word w;
  while (in >> token) {
    if (token == "1") continue;
    bool inverse = false;
    if (auto pos = token.find('^'); pos != std::string::npos) {
      if (token.substr(pos) != "^-1") throw ParseError("bad exponent in letter '" + token + "'");
      inverse = true;
      token.resize(pos);
    }
    w.push_back(Letter{alphabet.index_of(token), inverse});
  }
  return w;
}

Word commutator(const Word& a, const Word& b) { return a * b * a.inverse() * b.inverse(); }

Presentation::Presentation(Alphabet alphabet, std::vector<Word> relators)
    : alphabet_(std::move(alphabet)), relators_(std::move(relators)) {
  for (const auto& r : relators_) {
    if (r.empty()) throw InvalidArgument("relators must be nonempty");
    if (!is_valid(r, alphabet_)) throw InvalidArgument("relator uses an unknown generator");
    if (!is_reduced(r))
      throw InvalidArgument("relator '" + format_word(r, alphabet_) + "' is not freely reduced");
  }
}

Presentation Presentation::parse(const Alphabet& alphabet, const std::vector<std::string>& relators) {
  std::vector<Word> words;
  words.reserve(relators.size());
  for (const auto& r : relators) words.push_back(parse_word(r, alphabet));
  return Presentation(alphabet, std::move(words));
}

}  // namespace gdist
