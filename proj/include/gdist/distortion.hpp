#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "gdist/cayley.hpp"
#include "gdist/groups.hpp"

namespace gdist {

/// Answer of a subgroup oracle. When exact is false a member's length is a
/// lower bound and a non-member may still lie in H beyond the oracle's cap.
struct Membership {
  bool member = false;
  std::size_t length = 0;
  bool exact = true;
};

/// A finitely generated subgroup H of a marked group G with a membership
/// test and the word length d_H(1, h) in a fixed generating set of H.
class SubgroupModel {
 public:
  explicit SubgroupModel(MarkedGroup ambient) : ambient_(std::move(ambient)) {}
  virtual ~SubgroupModel() = default;

  const MarkedGroup& ambient() const { return ambient_; }
  virtual std::string kind() const = 0;
  virtual std::string description() const = 0;
  /// Generators of H as elements of G.
  virtual std::vector<Element> generators() const = 0;
  /// Must be safe to call concurrently.
  virtual Membership query(const Element& g) const = 0;

  /// Throws InexactOracle when the oracle cannot decide.
  bool contains(const Element& g) const;
  /// Throws InvalidArgument for non-members and InexactOracle when inexact.
  std::size_t length_in_H(const Element& h) const;

 private:
  MarkedGroup ambient_;
};

/// Least-|j| exponent with g^j = e, or nullopt if e is not a power of g.
/// Throws UnsupportedSubgroup when the model offers no exponent extraction
/// for this g.
std::optional<mpz_class> cyclic_exponent(const GroupModel& model, const Element& g, const Element& e);

/// <g> with d_H(1, g^j) = |j| (reduced mod the order when g has finite order).
class CyclicExact final : public SubgroupModel {
 public:
  CyclicExact(MarkedGroup ambient, Element generator);

  std::string kind() const override { return "cyclic"; }
  std::string description() const override;
  std::vector<Element> generators() const override { return {generator_}; }
  Membership query(const Element& g) const override;

  std::optional<std::size_t> order() const { return order_; }

 private:
  Element generator_;
  std::optional<std::size_t> order_;
  std::vector<Element> powers_;  // g^0 .. g^(order-1) when finite
};

/// The subgroup generated by the given elements, enumerated by BFS in its own
/// Cayley graph up to radius_cap. A found element is exact; a miss is exact
/// only when the enumeration covered all of H.
class EnumeratedWithCap : public SubgroupModel {
 public:
  EnumeratedWithCap(MarkedGroup ambient, std::vector<std::string> names, std::vector<Element> generators,
                    std::size_t radius_cap, BallOptions options = {});

  /// H = G with the ambient marking.
  static EnumeratedWithCap whole(const MarkedGroup& g, std::size_t radius_cap, BallOptions options = {});

  std::string kind() const override { return "enumerated"; }
  std::string description() const override;
  std::vector<Element> generators() const override { return subgroup_.marking(); }
  Membership query(const Element& g) const override;

  const MarkedGroup& subgroup() const { return subgroup_; }
  const BallIndex& enumeration() const { return ball_; }
  bool complete() const { return complete_; }
  bool cap_reached() const { return cap_reached_; }

 private:
  MarkedGroup subgroup_;
  BallIndex ball_;
  bool complete_ = false;
  bool cap_reached_ = false;
};

/// Image of a homomorphism, with d_H measured in the images of the source
/// generators (the source word length when the map is injective).
class HomImage final : public EnumeratedWithCap {
 public:
  HomImage(const MarkedHomomorphism& h, std::size_t radius_cap, BallOptions options = {});
  std::string kind() const override { return "hom_image"; }
};

/// The i-th factor of a direct product, generated by the ambient generators
/// supported on that factor.
class DirectFactor final : public SubgroupModel {
 public:
  DirectFactor(MarkedGroup ambient, std::size_t index, std::size_t length_cap = 4096);

  std::string kind() const override { return "direct_factor"; }
  std::string description() const override;
  std::vector<Element> generators() const override { return generators_; }
  Membership query(const Element& g) const override;

  const MarkedGroup& factor() const { return factor_; }

 private:
  std::size_t index_;
  std::size_t length_cap_;
  std::vector<Element> generators_;
  MarkedGroup factor_;
  WordMetric metric_;
};

struct DistortionEntry {
  std::size_t n = 0;
  std::size_t delta = 0;
  /// Every oracle answer inside ball(n) was exact; otherwise delta is a lower bound.
  bool exact = true;
  Element witness;
  Word witness_word;  // shortlex geodesic in G
};

struct DistortionProfile {
  std::string group;
  std::string subgroup;
  std::vector<DistortionEntry> entries;

  bool all_exact() const;
  std::vector<DistortionEntry> exact_entries() const;
};

/// delta(n) = max{ d_H(1,h) : h in H, d_G(1,h) <= n } for n = 1..n_max,
/// witnesses tie-broken by the least canonical key.
DistortionProfile distortion_profile(const MarkedGroup& g, const SubgroupModel& h, std::size_t n_max,
                                     BallOptions options = {});

/// CSV with columns n,delta,exact,witness_key,witness_word,dH.
std::string profile_csv(const DistortionProfile& p, const MarkedGroup& g);

enum class GrowthKind { kBounded, kLinear, kPolynomial, kExponential, kInconclusive };

struct GrowthFit {
  std::string model;  // bounded, linear, polynomial(2), polynomial(3), exponential
  double residual = 0;  // ||fit - data|| / ||data||
  std::vector<double> parameters;
};

struct GrowthClass {
  GrowthKind kind = GrowthKind::kInconclusive;
  int degree = 0;  // for kPolynomial
  std::vector<GrowthFit> fits;
  std::string label() const;
};

struct ClassifyOptions {
  /// A more complex model must beat every simpler one by this relative margin.
  double margin = 0.2;
  /// No verdict when even the best fit has a larger relative residual.
  double max_residual = 0.2;
  std::size_t min_points = 4;
};

/// Least-squares fits of bounded, a n + b, a n^2 + b, a n^3 + b and
/// a e^{cn} + b. Throws TooFewPoints below options.min_points.
GrowthClass classify_growth(const std::vector<std::pair<double, double>>& points, ClassifyOptions options = {});
/// Uses the exact entries only.
GrowthClass classify_growth(const DistortionProfile& p, ClassifyOptions options = {});

struct UndistortedVerdict {
  bool undistorted = false;
  mpq_class K;
  std::size_t n_at_max = 0;
  std::size_t window = 0;
  std::vector<mpq_class> ratios;  // delta(n) / n per exact entry
};

/// Finite-ball diagnostic: undistorted iff the largest ratio delta(n)/n is
/// already attained before the last ceil(N/3) exact entries, so the ratio
/// does not grow across that window. K is the largest ratio. Throws
/// TooFewPoints with fewer than 3 exact entries.
UndistortedVerdict undistorted_check(const DistortionProfile& p);

/// JSON report: profile rows, classification with residuals, undistorted verdict.
std::string profile_json(const DistortionProfile& p, const MarkedGroup& g);

}  // namespace gdist
