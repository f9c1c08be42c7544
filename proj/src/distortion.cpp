#include "gdist/distortion.hpp"

#include <algorithm>
#include <cmath>
#include <json.hpp>
#include <limits>
#include <thread>

#include "gdist/errors.hpp"

namespace gdist {

namespace {

constexpr std::size_t kFiniteOrderCap = 1024;

std::size_t to_size(const mpz_class& v) {
  if (sgn(v) < 0 || !v.fits_ulong_p()) throw ArithmeticOverflow("subgroup length out of range");
  return static_cast<std::size_t>(v.get_ui());
}

std::optional<mpz_class> free_candidate(const FreeGroup& f, const Element& g, const Element& e) {
  // g = u c u^-1 with c cyclically reduced; g^j = u c^j u^-1.
  Word w = f.word(g);
  std::size_t strip = 0;
  while (2 * (strip + 1) <= w.size() && w[strip] == w[w.size() - 1 - strip].inverted()) ++strip;
  Word u(std::vector<Letter>(w.begin(), w.begin() + static_cast<std::ptrdiff_t>(strip)));
  Word c(std::vector<Letter>(w.begin() + static_cast<std::ptrdiff_t>(strip),
                             w.end() - static_cast<std::ptrdiff_t>(strip)));
  Element conj = f.multiply(f.multiply(f.element(u.inverse()), e), f.element(u));
  Word v = f.word(conj);
  if (v.empty() || v.size() % c.size() != 0) return std::nullopt;
  mpz_class j = static_cast<unsigned long>(v.size() / c.size());
  if (v[0] == c[0]) return j;
  if (v[0] == c.inverse()[0]) return mpz_class(-j);
  return std::nullopt;
}

std::optional<mpz_class> dyadic_candidate(const DyadicAffineGroup& d, const Element& g, const Element& e) {
  auto mg = d.map(g);
  auto me = d.map(e);
  if (mg.k != 0) {
    if (me.k % mg.k != 0) return std::nullopt;
    return mpz_class(static_cast<long>(me.k / mg.k));
  }
  if (me.k != 0) return std::nullopt;
  mpq_class j = me.m / mg.m;
  if (j.get_den() != 1) return std::nullopt;
  return mpz_class(j.get_num());
}

std::optional<mpz_class> matrix_candidate(const IntegerMatrixGroup& m, const Element& g, const Element& e) {
  const std::size_t n = m.dimension();
  auto a = m.matrix(g);
  auto b = m.matrix(e);
  for (std::size_t i = 0; i < n; ++i) {
    a[i * n + i] -= 1;
    b[i * n + i] -= 1;
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t k = 0; k < n; ++k) {
      mpz_class s = 0;
      for (std::size_t t = 0; t < n; ++t) s += a[i * n + t] * a[t * n + k];
      if (s != 0) throw UnsupportedSubgroup("cyclic subgroup of a non-unipotent matrix: " + m.describe(g));
    }
  }
  // g = I + N with N^2 = 0, so g^j = I + jN.
  for (std::size_t i = 0; i < n * n; ++i) {
    if (a[i] == 0) continue;
    if (b[i] % a[i] != 0) return std::nullopt;
    return mpz_class(b[i] / a[i]);
  }
  return std::nullopt;
}

mpz_class exponent_sum(const BraidGroup& b, const Element& e) {
  auto nf = b.normal_form(e);
  const long n = b.strands();
  mpz_class sum = mpz_class(static_cast<long>(nf.inf)) * (n * (n - 1) / 2);
  for (const auto& p : nf.factors) {
    for (std::size_t i = 0; i < p.size(); ++i)
      for (std::size_t j = i + 1; j < p.size(); ++j)
        if (p[i] > p[j]) sum += 1;
  }
  return sum;
}

std::optional<mpz_class> candidate_exponent(const GroupModel& model, const Element& g, const Element& e) {
  if (auto f = dynamic_cast<const FreeGroup*>(&model)) return free_candidate(*f, g, e);
  if (auto d = dynamic_cast<const DyadicAffineGroup*>(&model)) return dyadic_candidate(*d, g, e);
  if (auto m = dynamic_cast<const IntegerMatrixGroup*>(&model)) return matrix_candidate(*m, g, e);
  if (auto b = dynamic_cast<const BraidGroup*>(&model)) {
    mpz_class sg = exponent_sum(*b, g);
    if (sg == 0) throw UnsupportedSubgroup("cyclic subgroup of a braid with exponent sum 0");
    mpz_class se = exponent_sum(*b, e);
    if (se % sg != 0) return std::nullopt;
    return mpz_class(se / sg);
  }
  if (auto p = dynamic_cast<const DirectProduct*>(&model)) {
    auto gc = p->components(g);
    auto ec = p->components(e);
    for (std::size_t i = 0; i < gc.size(); ++i) {
      const GroupModel& f = p->factor(i);
      if (f.is_identity(gc[i])) {
        if (!f.is_identity(ec[i])) return std::nullopt;
        continue;
      }
      if (order_of_element(gc[i], f, kFiniteOrderCap)) continue;
      return candidate_exponent(f, gc[i], ec[i]);
    }
  }
  throw UnsupportedSubgroup("no exponent extraction for " + model.kind() + " element " + model.describe(g));
}

}  // namespace

bool SubgroupModel::contains(const Element& g) const {
  Membership m = query(g);
  if (!m.exact) throw InexactOracle("membership of " + ambient_.describe(g) + " undecided within cap");
  return m.member;
}

std::size_t SubgroupModel::length_in_H(const Element& h) const {
  Membership m = query(h);
  if (!m.exact) throw InexactOracle("subgroup length of " + ambient_.describe(h) + " undecided within cap");
  if (!m.member) throw InvalidArgument(ambient_.describe(h) + " is not in the subgroup");
  return m.length;
}

std::optional<mpz_class> cyclic_exponent(const GroupModel& model, const Element& g, const Element& e) {
  if (model.is_identity(e)) return mpz_class(0);
  if (model.is_identity(g)) return std::nullopt;
  if (auto order = order_of_element(g, model, kFiniteOrderCap)) {
    Element acc = model.identity();
    for (std::size_t j = 1; j < *order; ++j) {
      acc = model.multiply(acc, g);
      if (acc == e) return mpz_class(static_cast<unsigned long>(std::min(j, *order - j))) *
                           (j <= *order - j ? 1 : -1);
    }
    return std::nullopt;
  }
  auto j = candidate_exponent(model, g, e);
  if (!j || model.power(g, *j) != e) return std::nullopt;
  return j;
}

CyclicExact::CyclicExact(MarkedGroup ambient, Element generator)
    : SubgroupModel(std::move(ambient)), generator_(std::move(generator)) {
  const GroupModel& m = this->ambient().model();
  order_ = order_of_element(generator_, m, kFiniteOrderCap);
  if (order_) {
    Element acc = m.identity();
    for (std::size_t j = 0; j < *order_; ++j) {
      powers_.push_back(acc);
      acc = m.multiply(acc, generator_);
    }
  } else {
    candidate_exponent(m, generator_, generator_);  // rejects unsupported generators up front
  }
}

std::string CyclicExact::description() const { return "<" + ambient().describe(generator_) + ">"; }

Membership CyclicExact::query(const Element& g) const {
  if (order_) {
    for (std::size_t j = 0; j < powers_.size(); ++j) {
      if (powers_[j] == g) return {true, std::min(j, *order_ - j), true};
    }
    return {false, 0, true};
  }
  const GroupModel& m = ambient().model();
  if (m.is_identity(g)) return {true, 0, true};
  auto j = candidate_exponent(m, generator_, g);
  if (!j || m.power(generator_, *j) != g) return {false, 0, true};
  return {true, to_size(abs(*j)), true};
}

EnumeratedWithCap::EnumeratedWithCap(MarkedGroup ambient, std::vector<std::string> names,
                                     std::vector<Element> generators, std::size_t radius_cap, BallOptions options)
    : SubgroupModel(ambient),
      subgroup_(ambient.name() + "-subgroup", ambient.model_ptr(), Alphabet(std::move(names)),
                std::move(generators)),
      ball_(subgroup_, options) {
  try {
    while (ball_.radius() < radius_cap && !ball_.exhausted()) ball_.extend_to(ball_.radius() + 1);
  } catch (const MemoryCapExceeded&) {
    cap_reached_ = true;
  }
  complete_ = !cap_reached_ && ball_.closed();
}

EnumeratedWithCap EnumeratedWithCap::whole(const MarkedGroup& g, std::size_t radius_cap, BallOptions options) {
  return EnumeratedWithCap(g, g.alphabet().names(), g.marking(), radius_cap, options);
}

std::string EnumeratedWithCap::description() const {
  std::string out = "<";
  for (std::size_t i = 0; i < subgroup_.marking().size(); ++i) {
    if (i) out += ", ";
    out += ambient().describe(subgroup_.marking()[i]);
  }
  return out + ">";
}

Membership EnumeratedWithCap::query(const Element& g) const {
  if (auto d = ball_.distance_of(g)) return {true, *d, true};
  return {false, 0, complete_};
}

namespace {

std::vector<Element> image_elements(const MarkedHomomorphism& h) {
  std::vector<Element> out;
  for (const auto& w : h.images) out.push_back(evaluate(w, h.target));
  return out;
}

}  // namespace

HomImage::HomImage(const MarkedHomomorphism& h, std::size_t radius_cap, BallOptions options)
    : EnumeratedWithCap(h.target, h.source.alphabet().names(), image_elements(h), radius_cap, options) {}

namespace {

const DirectProduct& product_model(const MarkedGroup& g) {
  auto p = dynamic_cast<const DirectProduct*>(&g.model());
  if (!p) throw UnsupportedSubgroup("'" + g.name() + "' is not a direct product");
  return *p;
}

MarkedGroup factor_group(const MarkedGroup& g, std::size_t index, std::vector<Element>& ambient_generators) {
  const DirectProduct& p = product_model(g);
  if (index >= p.factor_count()) throw InvalidArgument("factor index out of range");
  std::vector<std::string> names;
  std::vector<Element> marking;
  for (std::uint32_t i = 0; i < g.alphabet().generator_count(); ++i) {
    auto parts = p.components(g.marking()[i]);
    bool supported = true;
    for (std::size_t j = 0; j < parts.size(); ++j)
      if (j != index && !p.factor(j).is_identity(parts[j])) supported = false;
    if (!supported || p.factor(index).is_identity(parts[index])) continue;
    names.push_back(g.alphabet().name(i));
    marking.push_back(parts[index]);
    ambient_generators.push_back(g.marking()[i]);
  }
  return MarkedGroup(g.name() + "-factor" + std::to_string(index + 1), p.factor_ptr(index),
                     Alphabet(std::move(names)), std::move(marking));
}

}  // namespace

DirectFactor::DirectFactor(MarkedGroup ambient, std::size_t index, std::size_t length_cap)
    : SubgroupModel(ambient),
      index_(index),
      length_cap_(length_cap),
      factor_(factor_group(ambient, index, generators_)),
      metric_(factor_) {}

std::string DirectFactor::description() const { return "factor " + std::to_string(index_ + 1); }

Membership DirectFactor::query(const Element& g) const {
  const DirectProduct& p = product_model(ambient());
  auto parts = p.components(g);
  for (std::size_t j = 0; j < parts.size(); ++j)
    if (j != index_ && !p.factor(j).is_identity(parts[j])) return {false, 0, true};
  if (auto d = metric_.try_length(parts[index_], length_cap_)) return {true, *d, true};
  return {true, length_cap_ + 1, false};
}

bool DistortionProfile::all_exact() const {
  return std::all_of(entries.begin(), entries.end(), [](const auto& e) { return e.exact; });
}

std::vector<DistortionEntry> DistortionProfile::exact_entries() const {
  std::vector<DistortionEntry> out;
  for (const auto& e : entries)
    if (e.exact) out.push_back(e);
  return out;
}

DistortionProfile distortion_profile(const MarkedGroup& g, const SubgroupModel& h, std::size_t n_max,
                                     BallOptions options) {
  if (n_max < 1) throw InvalidArgument("n_max must be at least 1");
  BallIndex b = ball(g, n_max, options);

  std::vector<Membership> answers(b.size());
  auto work = [&](std::size_t from, std::size_t to) {
    for (std::size_t i = from; i < to; ++i) answers[i] = h.query(b.entry(i).element);
  };
  const std::size_t workers = std::max<std::size_t>(1, std::min<std::size_t>(options.threads, b.size() / 256));
  if (workers == 1) {
    work(0, b.size());
  } else {
    std::vector<std::thread> pool;
    std::vector<std::exception_ptr> errors(workers);
    for (std::size_t w = 0; w < workers; ++w) {
      pool.emplace_back([&, w] {
        try {
          work(b.size() * w / workers, b.size() * (w + 1) / workers);
        } catch (...) {
          errors[w] = std::current_exception();
        }
      });
    }
    for (auto& t : pool) t.join();
    for (auto& e : errors)
      if (e) std::rethrow_exception(e);
  }

  DistortionProfile p;
  p.group = g.name();
  p.subgroup = h.description();
  std::size_t best = 0;
  std::size_t best_index = 0;  // identity
  bool exact = true;
  for (std::size_t d = 0; d <= n_max; ++d) {
    for (std::size_t i = b.layer_begin(d); i < b.layer_end(d); ++i) {
      const Membership& m = answers[i];
      exact = exact && m.exact;
      if (!m.member) continue;
      if (m.length > best || (m.length == best && b.entry(i).element < b.entry(best_index).element)) {
        best = m.length;
        best_index = i;
      }
    }
    if (d == 0) continue;
    p.entries.push_back(DistortionEntry{d, best, exact, b.entry(best_index).element, b.witness(best_index)});
  }
  return p;
}

std::string profile_csv(const DistortionProfile& p, const MarkedGroup& g) {
  std::string out = "n,delta,exact,witness_key,witness_word,dH\n";
  for (const auto& e : p.entries) {
    out += std::to_string(e.n) + ',' + std::to_string(e.delta) + ',' + (e.exact ? "true" : "false") + ',' +
           key_hex(e.witness) + ',' + g.format(e.witness_word) + ',' + std::to_string(e.delta) + '\n';
  }
  return out;
}

std::string GrowthClass::label() const {
  switch (kind) {
    case GrowthKind::kBounded:
      return "bounded";
    case GrowthKind::kLinear:
      return "linear";
    case GrowthKind::kPolynomial:
      return "polynomial(" + std::to_string(degree) + ")";
    case GrowthKind::kExponential:
      return "exponential";
    case GrowthKind::kInconclusive:
      break;
  }
  return "inconclusive";
}

namespace {

struct LineFit {
  double a = 0;
  double b = 0;
  double rss = 0;
};

// Least squares for y = a f(x) + b.
LineFit fit_affine(const std::vector<double>& f, const std::vector<double>& y) {
  const double n = static_cast<double>(f.size());
  double sf = 0, sy = 0, sff = 0, sfy = 0;
  for (std::size_t i = 0; i < f.size(); ++i) {
    sf += f[i];
    sy += y[i];
    sff += f[i] * f[i];
    sfy += f[i] * y[i];
  }
  LineFit out;
  const double den = n * sff - sf * sf;
  if (std::abs(den) <= 1e-12 * std::max(1.0, n * sff)) {
    out.b = sy / n;
  } else {
    out.a = (n * sfy - sf * sy) / den;
    out.b = (sy - out.a * sf) / n;
  }
  for (std::size_t i = 0; i < f.size(); ++i) {
    double r = out.a * f[i] + out.b - y[i];
    out.rss += r * r;
  }
  return out;
}

}  // namespace

GrowthClass classify_growth(const std::vector<std::pair<double, double>>& points, ClassifyOptions options) {
  if (points.size() < std::max<std::size_t>(options.min_points, 2))
    throw TooFewPoints("growth classification needs at least " + std::to_string(options.min_points) +
                       " exact points, got " + std::to_string(points.size()));
  std::vector<double> x, y;
  double norm = 0;
  for (auto [n, v] : points) {
    x.push_back(n);
    y.push_back(v);
    norm += v * v;
  }
  norm = std::sqrt(norm);
  auto relative = [&](double rss) { return norm > 0 ? std::sqrt(rss) / norm : std::sqrt(rss); };

  GrowthClass out;
  {
    double mean = 0;
    for (double v : y) mean += v;
    mean /= static_cast<double>(y.size());
    double rss = 0;
    for (double v : y) rss += (v - mean) * (v - mean);
    out.fits.push_back({"bounded", relative(rss), {mean}});
  }
  for (int d = 1; d <= 3; ++d) {
    std::vector<double> f;
    for (double n : x) f.push_back(std::pow(n, d));
    LineFit lf = fit_affine(f, y);
    out.fits.push_back({d == 1 ? "linear" : "polynomial(" + std::to_string(d) + ")", relative(lf.rss), {lf.a, lf.b}});
  }
  {
    // a e^{cx} + b: affine in the basis for fixed c, so scan c then refine.
    const double span = std::max(1.0, x.back() - x.front());
    auto at = [&](double c) {
      std::vector<double> f;
      for (double n : x) f.push_back(std::exp(c * (n - x.back())));
      return fit_affine(f, y);
    };
    const double lo = 0.02, hi = 20.0 / span;
    double best_c = lo;
    double best_rss = std::numeric_limits<double>::infinity();
    for (int i = 0; i <= 400; ++i) {
      double c = lo + (hi - lo) * i / 400.0;
      double rss = at(c).rss;
      if (rss < best_rss) best_rss = rss, best_c = c;
    }
    double step = (hi - lo) / 400.0;
    for (int it = 0; it < 60; ++it) {
      step /= 2;
      for (double c : {best_c - step, best_c + step}) {
        if (c < lo) continue;
        double rss = at(c).rss;
        if (rss < best_rss) best_rss = rss, best_c = c;
      }
    }
    LineFit lf = at(best_c);
    out.fits.push_back({"exponential", relative(lf.rss), {lf.a * std::exp(-best_c * x.back()), best_c, lf.b}});
  }

  // The fits are listed from simplest to most complex. Take the best, then
  // prefer any simpler fit that comes within the margin.
  std::size_t best = 0;
  for (std::size_t i = 1; i < out.fits.size(); ++i)
    if (out.fits[i].residual < out.fits[best].residual) best = i;
  const double bar = out.fits[best].residual * (1 + options.margin) + 1e-9;
  std::size_t chosen = best;
  for (std::size_t i = 0; i < best; ++i) {
    if (out.fits[i].residual <= bar) {
      chosen = i;
      break;
    }
  }
  if (out.fits[chosen].residual > options.max_residual) return out;
  switch (chosen) {
    case 0:
      out.kind = GrowthKind::kBounded;
      break;
    case 1:
      out.kind = GrowthKind::kLinear;
      break;
    case 2:
    case 3:
      out.kind = GrowthKind::kPolynomial;
      out.degree = static_cast<int>(chosen);
      break;
    default:
      out.kind = GrowthKind::kExponential;
  }
  return out;
}

GrowthClass classify_growth(const DistortionProfile& p, ClassifyOptions options) {
  std::vector<std::pair<double, double>> points;
  for (const auto& e : p.entries)
    if (e.exact) points.emplace_back(static_cast<double>(e.n), static_cast<double>(e.delta));
  return classify_growth(points, options);
}

UndistortedVerdict undistorted_check(const DistortionProfile& p) {
  auto entries = p.exact_entries();
  if (entries.size() < 3)
    throw TooFewPoints("undistorted check needs at least 3 exact entries, got " + std::to_string(entries.size()));
  UndistortedVerdict v;
  for (const auto& e : entries) {
    mpq_class r(static_cast<unsigned long>(e.delta), static_cast<unsigned long>(e.n));
    r.canonicalize();
    if (v.ratios.empty() || r > v.K) {
      v.K = r;
      v.n_at_max = e.n;
    }
    v.ratios.push_back(r);
  }
  v.window = (entries.size() + 2) / 3;
  const std::size_t split = entries.size() - v.window;
  mpq_class head = *std::max_element(v.ratios.begin(), v.ratios.begin() + static_cast<std::ptrdiff_t>(split));
  mpq_class tail = *std::max_element(v.ratios.begin() + static_cast<std::ptrdiff_t>(split), v.ratios.end());
  v.undistorted = tail <= head;
  return v;
}

std::string profile_json(const DistortionProfile& p, const MarkedGroup& g) {
  using nlohmann::json;
  json rows = json::array();
  for (const auto& e : p.entries) {
    rows.push_back({{"n", e.n},
                    {"delta", e.delta},
                    {"exact", e.exact},
                    {"witness_key", key_hex(e.witness)},
                    {"witness_word", g.format(e.witness_word)}});
  }
  json out = {{"group", p.group}, {"subgroup", p.subgroup}, {"all_exact", p.all_exact()}, {"profile", rows}};
  try {
    GrowthClass c = classify_growth(p);
    json fits = json::object();
    for (const auto& f : c.fits) fits[f.model] = {{"residual", f.residual}, {"parameters", f.parameters}};
    out["classification"] = {{"verdict", c.label()}, {"fits", fits}};
  } catch (const TooFewPoints& e) {
    out["classification"] = {{"verdict", "too_few_points"}, {"error", e.what()}};
  }
  try {
    UndistortedVerdict u = undistorted_check(p);
    out["undistorted"] = {{"verdict", u.undistorted},
                          {"K", u.K.get_str()},
                          {"n_at_max", u.n_at_max},
                          {"window", u.window},
                          {"diagnostic", "finite-ball heuristic, not an asymptotic proof"}};
  } catch (const TooFewPoints& e) {
    out["undistorted"] = {{"verdict", nullptr}, {"error", e.what()}};
  }
  return out.dump(2);
}

}  // namespace gdist
