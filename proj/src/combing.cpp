#include "gdist/combing.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <thread>
#include <unordered_map>
#include <unordered_set>

#include "gdist/errors.hpp"

namespace gdist {

DiscretePath::DiscretePath(std::vector<Element> vertices) : vertices_(std::move(vertices)) {
  if (vertices_.empty()) throw InvalidArgument("a discrete path needs at least one vertex");
}

bool is_edge_path(const DiscretePath& p, const MarkedGroup& g) {
  const auto letters = g.alphabet().letters();
  for (std::size_t i = 0; i + 1 < p.vertices().size(); ++i) {
    bool step = false;
    for (Letter l : letters) {
      if (g.multiply(p.vertices()[i], g.letter_element(l)) == p.vertices()[i + 1]) {
        step = true;
        break;
      }
    }
    if (!step) return false;
  }
  return true;
}

Bicombing::Bicombing(MarkedGroup group, Rule rule, std::string name, bool equivariant_by_construction)
    : group_(group),
      rule_(std::move(rule)),
      name_(std::move(name)),
      equivariant_(equivariant_by_construction),
      metric_(std::make_shared<WordMetric>(std::move(group))) {}

DiscretePath Bicombing::operator()(const Element& x, const Element& y) const {
  DiscretePath p = rule_(x, y);
  if (p.front() != x || p.back() != y)
    throw InvalidArgument("combing '" + name_ + "' returned a path with the wrong endpoints");
  return p;
}

Bicombing shortlex_bicombing(const MarkedGroup& g, std::size_t cap, BallOptions options) {
  auto metric = std::make_shared<WordMetric>(g, options);
  auto rule = [g, metric, cap](const Element& x, const Element& y) {
    Word w = metric->geodesic(g.multiply(g.invert(x), y), cap);
    std::vector<Element> vertices{x};
    for (Letter l : w) vertices.push_back(g.multiply(vertices.back(), g.letter_element(l)));
    return DiscretePath(std::move(vertices));
  };
  return Bicombing(g, rule, "shortlex", true);
}

QuasiGeodesicReport check_quasi_geodesic(const Bicombing& sigma,
                                         const std::vector<std::pair<Element, Element>>& sample,
                                         std::size_t cap) {
  if (sample.empty()) throw TooFewPoints("quasi-geodesic check needs a nonempty sample");
  const MarkedGroup& g = sigma.group();
  QuasiGeodesicReport report;
  // (|t-s|, d) -> first segment showing it
  std::map<std::pair<std::size_t, std::size_t>, std::tuple<std::size_t, std::size_t, std::size_t>> seen;
  for (std::size_t i = 0; i < sample.size(); ++i) {
    DiscretePath p = sigma(sample[i].first, sample[i].second);
    ++report.pairs;
    for (std::size_t s = 0; s < p.vertices().size(); ++s) {
      for (std::size_t t = s + 1; t < p.vertices().size(); ++t) {
        std::size_t d = sigma.metric().distance(p.vertices()[s], p.vertices()[t], cap);
        ++report.segments;
        seen.try_emplace({t - s, d}, std::make_tuple(i, s, t));
      }
    }
  }

  std::set<mpq_class> candidates{mpq_class(1)};
  for (const auto& [key, where] : seen) {
    auto [delta, d] = key;
    if (d == 0) continue;
    mpq_class r(static_cast<unsigned long>(delta), static_cast<unsigned long>(d));
    r.canonicalize();
    if (r >= 1) candidates.insert(r);
    if (r > 0 && 1 / r >= 1) candidates.insert(1 / r);
  }
  auto epsilon_for = [&](const mpq_class& lambda, std::optional<std::tuple<std::size_t, std::size_t, std::size_t>>* w) {
    mpq_class eps = 0;
    for (const auto& [key, where] : seen) {
      mpq_class delta = static_cast<unsigned long>(key.first);
      mpq_class d = static_cast<unsigned long>(key.second);
      mpq_class need = std::max<mpq_class>(delta / lambda - d, d - lambda * delta);
      if (need > eps) {
        eps = need;
        if (w) *w = where;
      }
    }
    return eps;
  };
  bool first = true;
  for (const auto& lambda : candidates) {  // ascending, so ties keep the smaller lambda
    mpq_class eps = epsilon_for(lambda, nullptr);
    if (first || lambda + eps < report.lambda + report.epsilon) {
      report.lambda = lambda;
      report.epsilon = eps;
      first = false;
    }
  }
  if (report.epsilon > 0) epsilon_for(report.lambda, &report.witness);
  return report;
}

BoundedReport check_bounded(const Bicombing& sigma, std::size_t radius, BoundedOptions options) {
  const MarkedGroup& g = sigma.group();
  const WordMetric& metric = sigma.metric();
  const std::size_t spread = options.endpoint_spread.value_or(radius);
  const std::size_t outer = std::max(radius, std::max(options.basepoint_spread, spread));
  BallIndex b = ball(g, outer);
  const std::size_t y_count = b.layer_end(radius);
  const std::size_t xp_count = b.layer_end(options.basepoint_spread);
  const std::size_t s_count = b.layer_end(spread);
  const std::size_t length_cap = 4 * outer + 4;

  struct Best {
    std::size_t k2 = 0;
    std::size_t pairs = 0;
    std::optional<std::tuple<std::size_t, std::size_t, std::size_t, std::size_t>> at;  // y, x', y'/s, t
  };
  auto work = [&](std::size_t from, std::size_t to, Best& best) {
    const Element one = g.identity();
    for (std::size_t yi = from; yi < to; ++yi) {
      const Element& y = b.entry(yi).element;
      DiscretePath p = sigma(one, y);
      for (std::size_t xi = 0; xi < xp_count; ++xi) {
        const Element& xp = b.entry(xi).element;
        const std::size_t dx = b.entry(xi).distance;
        for (std::size_t si = 0; si < (options.endpoint_spread ? s_count : y_count); ++si) {
          Element yp;
          std::size_t dy;
          if (options.endpoint_spread) {
            yp = g.multiply(y, b.entry(si).element);
            dy = b.entry(si).distance;
          } else {
            yp = b.entry(si).element;
            dy = metric.distance(y, yp, length_cap);
          }
          const std::size_t m = std::max(dx, dy);
          DiscretePath q = sigma(xp, yp);
          ++best.pairs;
          const std::size_t steps = std::max(p.length(), q.length());
          for (std::size_t t = 0; t <= steps; ++t) {
            Element diff = g.multiply(g.invert(p.at(t)), q.at(t));
            // Only distances beating the current k2 need an exact value.
            if (metric.try_length(diff, m + best.k2)) continue;
            std::size_t d = metric.length(diff, length_cap);
            if (d > m + best.k2) {
              best.k2 = d - m;
              best.at = std::make_tuple(yi, xi, si, t);
            }
          }
        }
      }
    }
  };

  const std::size_t workers = std::max<std::size_t>(1, std::min<std::size_t>(options.threads, y_count / 16));
  std::vector<Best> results(workers);
  if (workers == 1) {
    work(0, y_count, results[0]);
  } else {
    std::vector<std::thread> pool;
    std::vector<std::exception_ptr> errors(workers);
    for (std::size_t w = 0; w < workers; ++w) {
      pool.emplace_back([&, w] {
        try {
          work(y_count * w / workers, y_count * (w + 1) / workers, results[w]);
        } catch (...) {
          errors[w] = std::current_exception();
        }
      });
    }
    for (auto& t : pool) t.join();
    for (auto& e : errors)
      if (e) std::rethrow_exception(e);
  }

  BoundedReport report;
  report.radius = radius;
  report.exhaustive = sigma.equivariant_by_construction();
  Best total;
  for (const auto& r : results) {  // chunks in order; earlier chunk wins ties
    total.pairs += r.pairs;
    if (r.at && (!total.at || r.k2 > total.k2)) {
      total.k2 = r.k2;
      total.at = r.at;
    }
  }
  report.pairs = total.pairs;
  report.k2 = static_cast<unsigned long>(total.k2);
  if (total.at) {
    auto [yi, xi, si, t] = *total.at;
    const Element& y = b.entry(yi).element;
    Element yp = options.endpoint_spread ? g.multiply(y, b.entry(si).element) : b.entry(si).element;
    report.witness = std::make_tuple(g.identity(), y, b.entry(xi).element, yp, t);
  }
  return report;
}

EquivarianceReport check_equivariance(const Bicombing& sigma,
                                      const std::vector<std::tuple<Element, Element, Element>>& sample) {
  const MarkedGroup& g = sigma.group();
  EquivarianceReport report;
  for (const auto& [h, x, y] : sample) {
    ++report.checked;
    DiscretePath p = sigma(x, y);
    DiscretePath q = sigma(g.multiply(h, x), g.multiply(h, y));
    bool same = p.length() == q.length();
    for (std::size_t i = 0; same && i < p.vertices().size(); ++i)
      same = g.multiply(h, p.vertices()[i]) == q.vertices()[i];
    if (!same) {
      report.pass = false;
      report.counterexample = std::make_tuple(h, x, y);
      break;
    }
  }
  return report;
}

namespace {

// Distance from v to the nearest member, found by scanning v * B(L) in
// ball order.
std::size_t distance_to_members(const BallIndex& b, const MarkedGroup& g, const Element& v,
                                const std::unordered_set<std::string>& members) {
  for (std::size_t i = 0; i < b.size(); ++i) {
    if (members.count(g.multiply(v, b.entry(i).element).key())) return b.entry(i).distance;
  }
  throw ExceedsCap("no subgroup member within the enumerated ball of " + g.describe(v));
}

ConstantsReport quasiconvexity_over(const Bicombing& sigma, const BallIndex& b, const std::vector<std::size_t>& member_indices,
                                    std::size_t radius, std::vector<Element>* first_visit) {
  const MarkedGroup& g = sigma.group();
  std::unordered_set<std::string> members;
  for (std::size_t i : member_indices) members.insert(b.entry(i).element.key());
  std::unordered_map<std::string, std::size_t> cache;
  ConstantsReport report;
  report.radius = radius;
  report.members = member_indices.size();
  for (std::size_t i : member_indices) {
    DiscretePath p = sigma(g.identity(), b.entry(i).element);
    for (std::size_t t = 0; t < p.vertices().size(); ++t) {
      const Element& v = p.vertices()[t];
      auto it = cache.find(v.key());
      if (it == cache.end()) {
        it = cache.emplace(v.key(), distance_to_members(b, g, v, members)).first;
        if (first_visit) first_visit->push_back(v);
      }
      if (!report.witness || it->second > report.k) {
        report.k = it->second;
        report.witness = std::make_pair(b.entry(i).element, t);
      }
    }
  }
  return report;
}

std::optional<Word> conjugator_in_ball(const BallIndex& b, const MarkedGroup& g, const Element& a,
                                       const Element& gamma, std::size_t cap) {
  const std::size_t end = b.layer_end(std::min(cap, b.radius()));
  for (std::size_t i = 0; i < end; ++i) {
    const Element& psi = b.entry(i).element;
    if (g.multiply(g.multiply(psi, gamma), g.invert(psi)) == a) return b.witness(i);
  }
  return std::nullopt;
}

}  // namespace

ConstantsReport quasiconvexity_constant(const Bicombing& sigma, const SubgroupModel& h, std::size_t radius,
                                        BallOptions options) {
  BallIndex b = ball(sigma.group(), radius, options);
  std::vector<std::size_t> members;
  bool exact = true;
  for (std::size_t i = 0; i < b.size(); ++i) {
    Membership m = h.query(b.entry(i).element);
    if (m.member)
      members.push_back(i);
    else
      exact = exact && m.exact;
  }
  ConstantsReport report = quasiconvexity_over(sigma, b, members, radius, nullptr);
  report.exhaustive = exact;
  return report;
}

std::vector<Element> centralizer_ball(const MarkedGroup& g, const Element& a, std::size_t n, BallOptions options) {
  BallIndex b = ball(g, n, options);
  std::vector<Element> out;
  for (std::size_t i = 0; i < b.size(); ++i) {
    const Element& x = b.entry(i).element;
    if (g.multiply(x, a) == g.multiply(a, x)) out.push_back(x);
  }
  return out;
}

std::optional<Word> conjugator_search(const MarkedGroup& g, const Element& a, const Element& gamma,
                                      std::size_t cap, BallOptions options) {
  BallIndex b(g, options);
  for (std::size_t d = 0;; ++d) {
    for (std::size_t i = b.layer_begin(d); i < b.layer_end(d); ++i) {
      const Element& psi = b.entry(i).element;
      if (g.multiply(g.multiply(psi, gamma), g.invert(psi)) == a) return b.witness(i);
    }
    if (d == cap || b.exhausted()) return std::nullopt;
    b.extend_to(d + 1);
  }
}

CentralizerReport centralizer_quasiconvexity_report(const MarkedGroup& g, const Element& a,
                                                    const Bicombing& sigma, std::size_t radius,
                                                    BallOptions options) {
  BallIndex b = ball(g, radius, options);
  std::vector<std::size_t> members;
  for (std::size_t i = 0; i < b.size(); ++i) {
    const Element& x = b.entry(i).element;
    if (g.multiply(x, a) == g.multiply(a, x)) members.push_back(i);
  }
  CentralizerReport report;
  report.a = a;
  report.centralizer_size = members.size();
  std::vector<Element> vertices;
  report.constants = quasiconvexity_over(sigma, b, members, radius, &vertices);
  for (const auto& v : vertices) {
    ConjugatorWitness w{v, g.multiply(g.multiply(g.invert(v), a), v), std::nullopt};
    w.psi = conjugator_in_ball(b, g, a, w.gamma, report.constants.k);
    if (w.psi)
      report.max_psi_length = std::max(report.max_psi_length, w.psi->size());
    else
      report.all_conjugators_found = false;
    report.witnesses.push_back(std::move(w));
  }
  return report;
}

}  // namespace gdist
