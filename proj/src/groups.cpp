#include "gdist/groups.hpp"

#include "gdist/errors.hpp"

namespace gdist {

MarkedGroup::MarkedGroup(std::string name, std::shared_ptr<const GroupModel> model, Alphabet alphabet,
                         std::vector<Element> marking, std::optional<Presentation> presentation)
    : name_(std::move(name)),
      model_(std::move(model)),
      alphabet_(std::move(alphabet)),
      marking_(std::move(marking)),
      presentation_(std::move(presentation)) {
  if (!model_) throw InvalidArgument("marked group needs a model");
  if (marking_.size() != alphabet_.generator_count())
    throw InvalidArgument("marking must assign one element per generator");
  if (presentation_ && !(presentation_->alphabet() == alphabet_))
    throw InvalidArgument("presentation alphabet differs from the marking alphabet");
  inverse_marking_.reserve(marking_.size());
  for (const auto& m : marking_) inverse_marking_.push_back(model_->invert(m));
}

Element MarkedGroup::element(std::string_view text) const { return evaluate(parse(text), *this); }

Element evaluate(const Word& w, const MarkedGroup& g) {
  Element acc = g.identity();
  for (Letter l : w) {
    if (l.generator >= g.alphabet().generator_count()) throw InvalidArgument("letter outside the alphabet");
    acc = g.multiply(acc, g.letter_element(l));
  }
  return acc;
}

PresentationReport verify_presentation(const MarkedGroup& g, const Presentation& p) {
  if (!(p.alphabet() == g.alphabet())) throw InvalidArgument("presentation alphabet differs from the group's");
  PresentationReport report;
  report.pass = true;
  const Element one = g.identity();
  for (const auto& r : p.relators()) {
    Element value = evaluate(r, g);
    RelatorCheck check{r, format_word(r, p.alphabet()), value == one, g.describe(value)};
    report.pass = report.pass && check.holds;
    report.relators.push_back(std::move(check));
  }
  return report;
}

MarkedHomomorphism::MarkedHomomorphism(MarkedGroup source_, MarkedGroup target_, std::vector<Word> images_)
    : source(std::move(source_)), target(std::move(target_)), images(std::move(images_)) {
  if (images.size() != source.alphabet().generator_count())
    throw InvalidArgument("homomorphism needs one image per source generator");
  for (const auto& w : images) {
    if (!is_valid(w, target.alphabet())) throw InvalidArgument("image word uses an unknown target generator");
  }
}

Word MarkedHomomorphism::map_word(const Word& w) const {
  Word out;
  for (Letter l : w) {
    const Word& img = images.at(l.generator);
    Word piece = l.inverse ? img.inverse() : img;
    for (Letter x : piece) out.push_back(x);
  }
  return out;
}

PresentationReport verify_homomorphism(const MarkedHomomorphism& h) {
  if (!h.source.presentation()) throw MissingPresentation("source group '" + h.source.name() + "' has no presentation");
  PresentationReport report;
  report.pass = true;
  const Element one = h.target.identity();
  for (const auto& r : h.source.presentation()->relators()) {
    Element value = h.map(r);
    RelatorCheck check{r, h.source.format(r), value == one, h.target.describe(value)};
    report.pass = report.pass && check.holds;
    report.relators.push_back(std::move(check));
  }
  return report;
}

std::optional<std::size_t> order_of_element(const Element& g, const GroupModel& model, std::size_t cap) {
  if (cap < 1) throw InvalidArgument("order cap must be at least 1");
  const Element one = model.identity();
  Element acc = g;
  for (std::size_t k = 1; k <= cap; ++k) {
    if (acc == one) return k;
    acc = model.multiply(acc, g);
  }
  return std::nullopt;
}

IndexTwoRetraction::IndexTwoRetraction(MarkedGroup group, std::function<bool(const Element&)> member, Element j,
                                       Side side)
    : group_(std::move(group)), member_(std::move(member)), j_(std::move(j)), side_(side) {
  if (!member_) throw InvalidArgument("retraction needs a membership predicate");
}

Element IndexTwoRetraction::operator()(const Element& phi) const {
  if (member_(j_)) throw BadCosetRep("coset representative lies in the subgroup");
  if (!member_(group_.multiply(j_, j_))) throw BadCosetRep("square of the coset representative is not in the subgroup");
  if (member_(phi)) return phi;
  Element image = side_ == Side::kLeft ? group_.multiply(j_, phi) : group_.multiply(phi, j_);
  if (!member_(image)) throw BadCosetRep("subgroup does not have index two: translated element is not a member");
  return image;
}

IndexTwoRetraction index_two_retraction(const MarkedGroup& g, std::function<bool(const Element&)> member,
                                        const Element& j, IndexTwoRetraction::Side side) {
  return IndexTwoRetraction(g, std::move(member), j, side);
}

}  // namespace gdist
