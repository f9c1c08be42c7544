#pragma once

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "gdist/words.hpp"

namespace gdist {

/// A group element, held as its canonical byte encoding. Two elements of the
/// same model are equal exactly when their encodings are equal, so the
/// encoding doubles as the canonical key.
class Element {
 public:
  Element() = default;
  explicit Element(std::string bytes) : bytes_(std::move(bytes)) {}

  const std::string& key() const { return bytes_; }

  friend bool operator==(const Element&, const Element&) = default;
  friend std::strong_ordering operator<=>(const Element& a, const Element& b) {
    return a.bytes_.compare(b.bytes_) <=> 0;
  }

 private:
  std::string bytes_;
};

struct ElementHash {
  std::size_t operator()(const Element& e) const { return std::hash<std::string>{}(e.key()); }
};

/// Hex rendering of a canonical key, as used in CSV exports.
std::string key_hex(const Element& e);

/// Contract for a group with an exactly solvable word problem.
class GroupModel {
 public:
  virtual ~GroupModel() = default;

  virtual std::string kind() const = 0;
  virtual Element identity() const = 0;
  virtual Element multiply(const Element& a, const Element& b) const = 0;
  virtual Element invert(const Element& a) const = 0;
  /// Human-readable rendering (matrix rows, normal form, ...).
  virtual std::string describe(const Element& a) const = 0;

  const std::string& canonical_key(const Element& a) const { return a.key(); }
  bool is_identity(const Element& a) const { return a == identity(); }
  /// a^k by repeated squaring; negative k uses the inverse.
  Element power(const Element& a, const mpz_class& k) const;
};

/// Finite group given by its multiplication table: table[i][j] = i * j.
class TableGroup final : public GroupModel {
 public:
  explicit TableGroup(std::vector<std::vector<std::uint32_t>> table,
                      std::vector<std::string> element_names = {});

  /// Z/n in additive notation.
  static std::shared_ptr<TableGroup> cyclic(std::uint32_t n);
  /// Z/2 x Z/2 with elements 0 = (0,0), 1 = (1,0), 2 = (0,1), 3 = (1,1).
  static std::shared_ptr<TableGroup> klein_four();

  std::string kind() const override { return "table"; }
  Element identity() const override { return element(identity_); }
  Element multiply(const Element& a, const Element& b) const override;
  Element invert(const Element& a) const override;
  std::string describe(const Element& a) const override;

  std::size_t order() const { return table_.size(); }
  Element element(std::uint32_t index) const;
  std::uint32_t index(const Element& e) const;

 private:
  std::vector<std::vector<std::uint32_t>> table_;
  std::vector<std::uint32_t> inverse_;
  std::vector<std::string> names_;
  std::uint32_t identity_ = 0;
};

/// Square matrices of determinant +-1 over arbitrary-precision integers.
class IntegerMatrixGroup final : public GroupModel {
 public:
  using Matrix = std::vector<mpz_class>;  // row-major

  explicit IntegerMatrixGroup(std::size_t dimension);

  std::string kind() const override { return "matrix"; }
  Element identity() const override;
  Element multiply(const Element& a, const Element& b) const override;
  Element invert(const Element& a) const override;
  std::string describe(const Element& a) const override;

  std::size_t dimension() const { return n_; }
  /// Throws InvalidArgument unless the matrix is square of this size with det +-1.
  Element element(const Matrix& m) const;
  Element element(std::initializer_list<std::initializer_list<long>> rows) const;
  Matrix matrix(const Element& e) const;

 private:
  Element encode(const Matrix& m) const;

  std::size_t n_;
};

/// Affine maps x -> 2^k x + m of the rationals, with m a dyadic rational.
/// The product is composition: (f * g)(x) = f(g(x)).
class DyadicAffineGroup final : public GroupModel {
 public:
  struct Map {
    std::int64_t k = 0;
    mpq_class m;
  };

  std::string kind() const override { return "dyadic_affine"; }
  Element identity() const override { return element(Map{}); }
  Element multiply(const Element& a, const Element& b) const override;
  Element invert(const Element& a) const override;
  std::string describe(const Element& a) const override;

  /// Throws InvalidArgument if m's denominator is not a power of two.
  Element element(const Map& map) const;
  Map map(const Element& e) const;
};

/// Free group on `rank` generators; elements are freely reduced words.
class FreeGroup final : public GroupModel {
 public:
  explicit FreeGroup(std::uint32_t rank);

  std::string kind() const override { return "free"; }
  Element identity() const override { return Element(); }
  Element multiply(const Element& a, const Element& b) const override;
  Element invert(const Element& a) const override;
  std::string describe(const Element& a) const override;

  std::uint32_t rank() const { return rank_; }
  Element element(const Word& w) const;
  Word word(const Element& e) const;

 private:
  std::uint32_t rank_;
};

/// Artin braid group on n strands. Elements are stored in left normal form
/// Delta^inf A_1 ... A_r: each A_i a permutation braid, A_1 != Delta,
/// A_r != 1, and every adjacent pair left-weighted.
class BraidGroup final : public GroupModel {
 public:
  using Permutation = std::vector<std::uint8_t>;  // strand starting at p ends at perm[p]

  struct NormalForm {
    std::int64_t inf = 0;
    std::vector<Permutation> factors;
  };

  explicit BraidGroup(std::uint32_t strands);

  std::string kind() const override { return "braid"; }
  Element identity() const override { return encode(NormalForm{}); }
  Element multiply(const Element& a, const Element& b) const override;
  Element invert(const Element& a) const override;
  std::string describe(const Element& a) const override;

  std::uint32_t strands() const { return n_; }
  /// Artin generator sigma_i, 1 <= i < strands.
  Element sigma(std::uint32_t i) const;
  Element delta() const;
  NormalForm normal_form(const Element& e) const;

 private:
  Element encode(const NormalForm& nf) const;
  void right_multiply_delta_power(NormalForm& nf, std::int64_t power) const;
  void right_multiply_simple(NormalForm& nf, const Permutation& simple) const;
  void right_multiply_simple_inverse(NormalForm& nf, const Permutation& simple) const;
  void canonicalize(NormalForm& nf) const;

  std::uint32_t n_;
};

/// Direct product with componentwise multiplication.
class DirectProduct final : public GroupModel {
 public:
  explicit DirectProduct(std::vector<std::shared_ptr<const GroupModel>> factors);

  std::string kind() const override { return "product"; }
  Element identity() const override;
  Element multiply(const Element& a, const Element& b) const override;
  Element invert(const Element& a) const override;
  std::string describe(const Element& a) const override;

  std::size_t factor_count() const { return factors_.size(); }
  const GroupModel& factor(std::size_t i) const { return *factors_.at(i); }
  std::shared_ptr<const GroupModel> factor_ptr(std::size_t i) const { return factors_.at(i); }
  Element make(const std::vector<Element>& components) const;
  std::vector<Element> components(const Element& e) const;

 private:
  std::vector<std::shared_ptr<const GroupModel>> factors_;
};

/// A group model together with an ordered finite generating set.
class MarkedGroup {
 public:
  MarkedGroup(std::string name, std::shared_ptr<const GroupModel> model, Alphabet alphabet,
              std::vector<Element> marking, std::optional<Presentation> presentation = std::nullopt);

  const std::string& name() const { return name_; }
  const GroupModel& model() const { return *model_; }
  std::shared_ptr<const GroupModel> model_ptr() const { return model_; }
  const Alphabet& alphabet() const { return alphabet_; }
  const std::vector<Element>& marking() const { return marking_; }
  const std::optional<Presentation>& presentation() const { return presentation_; }

  const Element& letter_element(Letter l) const {
    return l.inverse ? inverse_marking_[l.generator] : marking_[l.generator];
  }

  Element identity() const { return model_->identity(); }
  Element multiply(const Element& a, const Element& b) const { return model_->multiply(a, b); }
  Element invert(const Element& a) const { return model_->invert(a); }
  std::string describe(const Element& a) const { return model_->describe(a); }

  Word parse(std::string_view text) const { return parse_word(text, alphabet_); }
  std::string format(const Word& w) const { return format_word(w, alphabet_); }
  /// Convenience: evaluate(parse(text)).
  Element element(std::string_view text) const;

 private:
  std::string name_;
  std::shared_ptr<const GroupModel> model_;
  Alphabet alphabet_;
  std::vector<Element> marking_;
  std::vector<Element> inverse_marking_;
  std::optional<Presentation> presentation_;
};

/// The natural projection from words to the group: left-to-right product.
Element evaluate(const Word& w, const MarkedGroup& g);

struct RelatorCheck {
  Word relator;
  std::string text;
  bool holds = false;
  std::string value;  // describe() of the evaluated relator
};

struct PresentationReport {
  std::vector<RelatorCheck> relators;
  bool pass = false;
};

PresentationReport verify_presentation(const MarkedGroup& g, const Presentation& p);

/// Homomorphism given by one target word per source generator.
struct MarkedHomomorphism {
  MarkedGroup source;
  MarkedGroup target;
  std::vector<Word> images;

  MarkedHomomorphism(MarkedGroup source, MarkedGroup target, std::vector<Word> images);

  /// Substitutes images for letters (inverse letters map to inverse words).
  Word map_word(const Word& w) const;
  Element map(const Word& w) const { return evaluate(map_word(w), target); }
};

/// Checks that each source relator maps to the target identity.
/// Throws MissingPresentation if the source has no presentation.
PresentationReport verify_homomorphism(const MarkedHomomorphism& h);

/// Least k in [1, cap] with g^k = 1, or nullopt if there is none.
std::optional<std::size_t> order_of_element(const Element& g, const GroupModel& model, std::size_t cap);

/// Retraction G -> H onto an index-two subgroup, fixing H and translating the
/// other coset by j. kLeft gives j * phi, kRight gives phi * j; the right
/// version moves every element by exactly ||j|| in the word metric.
class IndexTwoRetraction {
 public:
  enum class Side { kLeft, kRight };

  IndexTwoRetraction(MarkedGroup group, std::function<bool(const Element&)> member, Element j,
                     Side side = Side::kLeft);

  /// Throws BadCosetRep if j lies in H or j^2 does not.
  Element operator()(const Element& phi) const;
  const Element& coset_representative() const { return j_; }

 private:
  MarkedGroup group_;
  std::function<bool(const Element&)> member_;
  Element j_;
  Side side_;
};

IndexTwoRetraction index_two_retraction(const MarkedGroup& g, std::function<bool(const Element&)> member,
                                        const Element& j,
                                        IndexTwoRetraction::Side side = IndexTwoRetraction::Side::kLeft);

}  // namespace gdist
