#include "gdist/zoo.hpp"

#include <memory>
#include <set>

#include "gdist/errors.hpp"

namespace gdist {

namespace {

std::vector<std::string_view> split_product(std::string_view name) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  for (;;) {
    auto pos = name.find('+', start);
    parts.push_back(name.substr(start, pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return parts;
}

Presentation presentation_of(const Alphabet& alphabet, const std::vector<std::string>& relators) {
  std::vector<Word> words;
  for (const auto& r : relators) words.push_back(reduce(parse_word(r, alphabet)));
  return Presentation(alphabet, std::move(words));
}

MarkedGroup basic_zoo_group(std::string_view name) {
  if (name == "trivial") {
    auto model = TableGroup::cyclic(1);
    return MarkedGroup("trivial", model, Alphabet{}, {}, Presentation{});
  }
  if (name == "c2") {
    auto model = TableGroup::cyclic(2);
    Alphabet alphabet({"x"});
    return MarkedGroup("c2", model, alphabet, {model->element(1)}, presentation_of(alphabet, {"x x"}));
  }
  if (name == "z") {
    auto model = std::make_shared<FreeGroup>(1);
    Alphabet alphabet({"x"});
    return MarkedGroup("z", model, alphabet, {model->element(Word::generator(0))}, Presentation(alphabet, {}));
  }
  if (name == "z2") {
    auto line = std::make_shared<FreeGroup>(1);
    auto model = std::make_shared<DirectProduct>(std::vector<std::shared_ptr<const GroupModel>>{line, line});
    Element one = line->identity();
    Element gen = line->element(Word::generator(0));
    Alphabet alphabet({"x", "y"});
    return MarkedGroup("z2", model, alphabet, {model->make({gen, one}), model->make({one, gen})},
                       presentation_of(alphabet, {"x y x^-1 y^-1"}));
  }
  if (name == "free2") {
    auto model = std::make_shared<FreeGroup>(2);
    Alphabet alphabet({"x", "y"});
    return MarkedGroup("free2", model, alphabet,
                       {model->element(Word::generator(0)), model->element(Word::generator(1))},
                       Presentation(alphabet, {}));
  }
  if (name == "sl2z") {
    auto model = std::make_shared<IntegerMatrixGroup>(2);
    Alphabet alphabet({"a", "b"});
    return MarkedGroup("sl2z", model, alphabet,
                       {model->element({{0, -1}, {1, 0}}), model->element({{0, -1}, {1, 1}})},
                       presentation_of(alphabet, {"a a a a", "b b b b b b", "a a b^-1 b^-1 b^-1"}));
  }
  if (name == "bs12") {
    auto model = std::make_shared<DyadicAffineGroup>();
    Alphabet alphabet({"a", "t"});
    return MarkedGroup("bs12", model, alphabet,
                       {model->element({0, mpq_class(1)}), model->element({1, mpq_class(0)})},
                       presentation_of(alphabet, {"t a t^-1 a^-1 a^-1"}));
  }
  if (name == "heis3") {
    auto model = std::make_shared<IntegerMatrixGroup>(3);
    Alphabet alphabet({"a", "b"});
    Word a = Word::generator(0);
    Word b = Word::generator(1);
    Word z = commutator(a, b);
    return MarkedGroup("heis3", model, alphabet,
                       {model->element({{1, 1, 0}, {0, 1, 0}, {0, 0, 1}}),
                        model->element({{1, 0, 0}, {0, 1, 1}, {0, 0, 1}})},
                       Presentation(alphabet, {reduce(commutator(a, z)), reduce(commutator(b, z))}));
  }
  if (name == "braid3") {
    auto model = std::make_shared<BraidGroup>(3);
    Alphabet alphabet({"s1", "s2"});
    return MarkedGroup("braid3", model, alphabet, {model->sigma(1), model->sigma(2)},
                       presentation_of(alphabet, {"s1 s2 s1 s2^-1 s1^-1 s2^-1"}));
  }
  if (name == "kleinfour") {
    auto model = TableGroup::klein_four();
    Alphabet alphabet({"x", "y"});
    return MarkedGroup("kleinfour", model, alphabet, {model->element(1), model->element(2)},
                       presentation_of(alphabet, {"x x", "y y", "x y x^-1 y^-1"}));
  }
  throw InvalidArgument("unknown zoo group '" + std::string(name) + "'");
}

}  // namespace

std::vector<std::string> zoo_names() {
  return {"trivial", "c2", "z", "z2", "free2", "sl2z", "bs12", "heis3", "braid3", "kleinfour"};
}

MarkedGroup zoo_group(std::string_view name) {
  auto parts = split_product(name);
  if (parts.size() == 1) return basic_zoo_group(name);
  std::vector<MarkedGroup> factors;
  for (auto p : parts) factors.push_back(basic_zoo_group(p));
  return direct_product(factors, std::string(name));
}

bool zoo_group_is_abelian(std::string_view name) {
  static const std::set<std::string_view> kAbelian = {"trivial", "c2", "z", "z2", "kleinfour"};
  for (auto p : split_product(name)) {
    if (!kAbelian.count(p)) return false;
  }
  return true;
}

MarkedGroup direct_product(const std::vector<MarkedGroup>& factors, std::string name) {
  if (factors.empty()) throw InvalidArgument("direct product needs at least one factor");
  std::vector<std::shared_ptr<const GroupModel>> models;
  std::vector<std::string> all_names;
  for (const auto& f : factors) {
    models.push_back(f.model_ptr());
    for (const auto& n : f.alphabet().names()) all_names.push_back(n);
  }
  const bool clash = std::set<std::string>(all_names.begin(), all_names.end()).size() != all_names.size();

  auto model = std::make_shared<DirectProduct>(models);
  std::vector<std::string> names;
  std::vector<Element> marking;
  std::vector<std::uint32_t> offsets;
  for (std::size_t i = 0; i < factors.size(); ++i) {
    offsets.push_back(static_cast<std::uint32_t>(names.size()));
    for (std::uint32_t g = 0; g < factors[i].alphabet().generator_count(); ++g) {
      std::string n = factors[i].alphabet().name(g);
      if (clash) n += "_" + std::to_string(i + 1);
      names.push_back(std::move(n));
      std::vector<Element> parts;
      for (std::size_t j = 0; j < factors.size(); ++j)
        parts.push_back(j == i ? factors[i].marking()[g] : factors[j].identity());
      marking.push_back(model->make(parts));
    }
  }
  Alphabet alphabet(names);

  std::optional<Presentation> presentation;
  bool all_presented = true;
  for (const auto& f : factors) all_presented = all_presented && f.presentation().has_value();
  if (all_presented) {
    std::vector<Word> relators;
    auto shift = [](const Word& w, std::uint32_t offset) {
      Word out;
      for (Letter l : w) out.push_back(Letter{l.generator + offset, l.inverse});
      return out;
    };
    for (std::size_t i = 0; i < factors.size(); ++i)
      for (const auto& r : factors[i].presentation()->relators()) relators.push_back(shift(r, offsets[i]));
    for (std::size_t i = 0; i < factors.size(); ++i)
      for (std::size_t j = i + 1; j < factors.size(); ++j)
        for (std::uint32_t g = 0; g < factors[i].alphabet().generator_count(); ++g)
          for (std::uint32_t h = 0; h < factors[j].alphabet().generator_count(); ++h)
            relators.push_back(commutator(Word::generator(offsets[i] + g), Word::generator(offsets[j] + h)));
    presentation = Presentation(alphabet, std::move(relators));
  }

  if (name.empty()) {
    for (std::size_t i = 0; i < factors.size(); ++i) name += (i ? "+" : "") + factors[i].name();
  }
  return MarkedGroup(std::move(name), model, std::move(alphabet), std::move(marking), std::move(presentation));
}

}  // namespace gdist
