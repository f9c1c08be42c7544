#pragma once

#include <cstddef>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "gdist/cayley.hpp"
#include "gdist/distortion.hpp"
#include "gdist/groups.hpp"

namespace gdist {

/// A discrete path in the Cayley graph. Evaluation past the last vertex
/// stays at the endpoint.
class DiscretePath {
 public:
  explicit DiscretePath(std::vector<Element> vertices);

  const std::vector<Element>& vertices() const { return vertices_; }
  std::size_t length() const { return vertices_.size() - 1; }
  const Element& at(std::size_t t) const { return vertices_[std::min(t, vertices_.size() - 1)]; }
  const Element& front() const { return vertices_.front(); }
  const Element& back() const { return vertices_.back(); }

 private:
  std::vector<Element> vertices_;
};

/// True if consecutive vertices differ by one marked generator or its inverse.
bool is_edge_path(const DiscretePath& p, const MarkedGroup& g);

/// An assignment of a path to each ordered pair of vertices. Calling it
/// enforces the section law: the path runs from x to y.
class Bicombing {
 public:
  using Rule = std::function<DiscretePath(const Element&, const Element&)>;

  Bicombing(MarkedGroup group, Rule rule, std::string name, bool equivariant_by_construction = false);

  DiscretePath operator()(const Element& x, const Element& y) const;

  const MarkedGroup& group() const { return group_; }
  const std::string& name() const { return name_; }
  bool equivariant_by_construction() const { return equivariant_; }
  /// Word metric shared by the checks below.
  const WordMetric& metric() const { return *metric_; }

 private:
  MarkedGroup group_;
  Rule rule_;
  std::string name_;
  bool equivariant_;
  std::shared_ptr<WordMetric> metric_;
};

/// sigma(x, y) = x * (prefixes of the shortlex geodesic word of x^-1 y).
/// Throws ExceedsCap when d(x, y) > cap.
Bicombing shortlex_bicombing(const MarkedGroup& g, std::size_t cap, BallOptions options = {});

struct QuasiGeodesicReport {
  mpq_class lambda;
  mpq_class epsilon;
  std::size_t pairs = 0;
  std::size_t segments = 0;
  /// A segment (pair index, s, t) forcing epsilon, when epsilon > 0.
  std::optional<std::tuple<std::size_t, std::size_t, std::size_t>> witness;
};

/// Least (lambda, epsilon) over the sample with every subsegment satisfying
/// |t-s|/lambda - epsilon <= d(p(s), p(t)) <= lambda |t-s| + epsilon.
/// lambda is taken from {1} and the observed ratios, minimizing
/// lambda + epsilon (smaller lambda on ties). Throws TooFewPoints on an
/// empty sample.
QuasiGeodesicReport check_quasi_geodesic(const Bicombing& sigma,
                                         const std::vector<std::pair<Element, Element>>& sample,
                                         std::size_t cap = 64);

struct BoundedOptions {
  /// x' ranges over B(basepoint_spread) around x = 1.
  std::size_t basepoint_spread = 1;
  /// y' ranges over y B(endpoint_spread); nullopt lets y' range over B(radius).
  std::optional<std::size_t> endpoint_spread = 1;
  unsigned threads = 1;
};

struct BoundedReport {
  std::size_t radius = 0;
  mpq_class k1 = 1;
  mpq_class k2 = 0;
  /// Every pair of the domain was checked and sigma is equivariant, so the
  /// bound holds for all pairs related by a translation of the domain.
  bool exhaustive = false;
  std::size_t pairs = 0;
  /// (x, y, x', y', t) realizing k2.
  std::optional<std::tuple<Element, Element, Element, Element, std::size_t>> witness;
};

/// With k1 = 1, the least k2 such that
///   d(sigma(x,y)(t), sigma(x',y')(t)) <= k1 max{d(x,x'), d(y,y')} + k2
/// for x = 1, y in B(radius) and x', y' as in options.
BoundedReport check_bounded(const Bicombing& sigma, std::size_t radius, BoundedOptions options = {});

struct EquivarianceReport {
  bool pass = true;
  std::size_t checked = 0;
  std::optional<std::tuple<Element, Element, Element>> counterexample;
};

/// Vertexwise g sigma(x, y) = sigma(gx, gy) on every triple (g, x, y).
EquivarianceReport check_equivariance(const Bicombing& sigma,
                                      const std::vector<std::tuple<Element, Element, Element>>& sample);

struct ConstantsReport {
  std::size_t k = 0;
  std::size_t radius = 0;
  std::size_t members = 0;
  /// Every membership answer in the ball was exact.
  bool exhaustive = true;
  /// (h, t) realizing k.
  std::optional<std::pair<Element, std::size_t>> witness;
};

/// k = max over h in H within B(radius) and all t of the distance from
/// sigma(1, h)(t) to the members of H found in B(radius).
ConstantsReport quasiconvexity_constant(const Bicombing& sigma, const SubgroupModel& h, std::size_t radius,
                                        BallOptions options = {});

/// { g in B(n) : g a g^-1 = a } in ball order.
std::vector<Element> centralizer_ball(const MarkedGroup& g, const Element& a, std::size_t n,
                                      BallOptions options = {});

/// Shortlex-least word psi with ||psi|| <= cap and psi gamma psi^-1 = a.
std::optional<Word> conjugator_search(const MarkedGroup& g, const Element& a, const Element& gamma,
                                      std::size_t cap, BallOptions options = {});

struct ConjugatorWitness {
  Element vertex;
  Element gamma;  // v^-1 a v
  std::optional<Word> psi;
};

struct CentralizerReport {
  Element a;
  ConstantsReport constants;
  std::size_t centralizer_size = 0;
  std::vector<ConjugatorWitness> witnesses;  // one per distinct combing vertex, in first-visit order
  std::size_t max_psi_length = 0;
  bool all_conjugators_found = true;
};

/// Z(a) within B(radius), its quasi-convexity constant, and for each vertex v
/// on a combing line sigma(1, h), h in Z(a), the shortest psi with
/// psi (v^-1 a v) psi^-1 = a, searched up to the measured k.
CentralizerReport centralizer_quasiconvexity_report(const MarkedGroup& g, const Element& a,
                                                    const Bicombing& sigma, std::size_t radius,
                                                    BallOptions options = {});

}  // namespace gdist
