#include "gdist/experiments.hpp"

#include <algorithm>
#include <chrono>
#include <json.hpp>
#include <random>
#include <set>

#include "gdist/combing.hpp"
#include "gdist/errors.hpp"
#include "gdist/surfaces.hpp"
#include "gdist/zoo.hpp"

namespace gdist {

namespace {

class Stopwatch {
 public:
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string yes_no(bool b) { return b ? "true" : "false"; }

// Ball entries sorted by distance, then canonical key.
std::vector<std::size_t> csv_order(const BallIndex& b) {
  std::vector<std::size_t> order(b.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
    if (b.entry(x).distance != b.entry(y).distance) return b.entry(x).distance < b.entry(y).distance;
    return b.entry(x).element < b.entry(y).element;
  });
  return order;
}

bool generators_commute(const MarkedGroup& g) {
  for (const auto& a : g.marking())
    for (const auto& b : g.marking())
      if (g.multiply(a, b) != g.multiply(b, a)) return false;
  return true;
}

std::vector<Word> split_words(const std::string& text, const MarkedGroup& g) {
  std::vector<Word> out;
  std::size_t start = 0;
  for (;;) {
    auto pos = text.find(',', start);
    out.push_back(g.parse(text.substr(start, pos - start)));
    if (pos == std::string::npos) break;
    start = pos + 1;
  }
  return out;
}

}  // namespace

std::string ExperimentReport::to_json() const {
  nlohmann::json j = {{"name", name},
                      {"inputs", inputs},
                      {"verdict", verdict},
                      {"as_expected", as_expected},
                      {"tables", tables},
                      {"witnesses", witnesses},
                      {"runtime_seconds", runtime_seconds}};
  return j.dump(2);
}

ExperimentReport run_klein_check(std::size_t radius, BallOptions options, std::size_t order_cap) {
  if (radius < 2) throw InvalidArgument("klein check needs radius at least 2");
  Stopwatch clock;
  MarkedGroup g = zoo_group("sl2z");
  const auto& model = dynamic_cast<const IntegerMatrixGroup&>(g.model());
  const Element minus_one = model.element({{-1, 0}, {0, -1}});

  ExperimentReport r;
  r.name = "klein-check";
  r.inputs = {{"group", "sl2z"}, {"radius", std::to_string(radius)}, {"order_cap", std::to_string(order_cap)}};

  BallIndex b = ball(g, radius, options);
  std::map<std::string, std::size_t> counts;
  std::vector<std::size_t> involutions;
  std::vector<Element> square_roots_of_one;  // orders 1 and 2
  std::string census = "key,distance,witness_word,order\n";
  bool orders_ok = true;
  static const std::set<std::size_t> kTorsion{1, 2, 3, 4, 6};
  for (std::size_t i : csv_order(b)) {
    const Element& e = b.entry(i).element;
    auto order = order_of_element(e, model, order_cap);
    std::string label = order ? std::to_string(*order) : "exceeds_cap";
    if (order && !kTorsion.count(*order)) orders_ok = false;
    if (order == 2) involutions.push_back(i);
    if (order && *order <= 2) square_roots_of_one.push_back(e);
    ++counts[label];
    census += key_hex(e) + ',' + std::to_string(b.entry(i).distance) + ',' + g.format(b.witness(i)) + ',' +
              label + '\n';
  }
  std::string summary = "order,count\n";
  for (const auto& [label, count] : counts) summary += label + ',' + std::to_string(count) + '\n';

  // Any homomorphism from Z2 x Z2 sends x and y to square roots of 1.
  MarkedGroup v4 = zoo_group("kleinfour");
  std::string homs = "x_image,y_image,relators_hold,injective\n";
  bool any_injective = false;
  for (const auto& x : square_roots_of_one) {
    for (const auto& y : square_roots_of_one) {
      bool relators = true;
      for (const auto& rel : v4.presentation()->relators()) {
        Element acc = g.identity();
        for (Letter l : rel) {
          const Element& img = l.generator == 0 ? x : y;
          acc = g.multiply(acc, l.inverse ? g.invert(img) : img);
        }
        relators = relators && acc == g.identity();
      }
      std::set<std::string> image{g.identity().key(), x.key(), y.key(), g.multiply(x, y).key()};
      const bool injective = relators && image.size() == 4;
      any_injective = any_injective || injective;
      homs += csv_field(g.describe(x)) + ',' + csv_field(g.describe(y)) + ',' + yes_no(relators) + ',' +
              yes_no(injective) + '\n';
    }
  }

  r.tables = {{"census", census}, {"orders", summary}, {"homomorphisms", homs}};
  for (std::size_t i : involutions)
    r.witnesses.push_back("order 2: " + g.format(b.witness(i)) + " = " + g.describe(b.entry(i).element));
  const bool unique_involution = involutions.size() == 1 && b.entry(involutions[0]).element == minus_one;
  r.verdict = any_injective ? "injective homomorphism Z2xZ2 -> SL(2,Z) found"
                            : "no injective homomorphism Z2xZ2 -> SL(2,Z)";
  r.as_expected = unique_involution && orders_ok && !any_injective;
  if (!unique_involution) r.witnesses.push_back(std::to_string(involutions.size()) + " elements of order 2 in the ball");
  r.runtime_seconds = clock.seconds();
  return r;
}

std::vector<DistortionRun> default_distortion_suite() {
  return {
      {"z-in-z2", "z2", "factor:0", 12, "linear", true},
      {"bs12-cyclic", "bs12", "cyclic:a", 17, "exponential", false},
      {"heis3-center", "heis3", "cyclic:a b a^-1 b^-1", 24, "polynomial(2)", false},
      {"z2-diagonal", "z2", "cyclic:x y", 12, "linear", true},
      {"z2-whole", "z2", "whole", 12, "linear", true},
  };
}

std::unique_ptr<SubgroupModel> make_subgroup(const MarkedGroup& g, const std::string& spec, std::size_t radius_cap,
                                             BallOptions options) {
  auto colon = spec.find(':');
  const std::string kind = spec.substr(0, colon);
  const std::string arg = colon == std::string::npos ? "" : spec.substr(colon + 1);
  if (kind == "whole")
    return std::make_unique<EnumeratedWithCap>(EnumeratedWithCap::whole(g, radius_cap, options));
  if (kind == "factor") return std::make_unique<DirectFactor>(g, std::stoul(arg));
  if (kind == "cyclic") return std::make_unique<CyclicExact>(g, g.element(arg));
  if (kind == "generated") {
    std::vector<std::string> names;
    std::vector<Element> gens;
    for (const auto& w : split_words(arg, g)) {
      names.push_back("h" + std::to_string(names.size() + 1));
      gens.push_back(evaluate(w, g));
    }
    return std::make_unique<EnumeratedWithCap>(g, names, gens, radius_cap, options);
  }
  throw InvalidArgument("unknown subgroup spec '" + spec + "'");
}

ExperimentReport run_distortion(const DistortionRun& run, BallOptions options) {
  Stopwatch clock;
  ExperimentReport r;
  r.name = "distortion:" + run.name;
  r.inputs = {{"group", run.group},
              {"subgroup", run.subgroup},
              {"n_max", std::to_string(run.n_max)},
              {"expected_growth", run.expected_growth}};
  if (run.expected_undistorted) r.inputs["expected_undistorted"] = yes_no(*run.expected_undistorted);
  try {
    MarkedGroup g = resolve_group(run.group);
    std::size_t cap = 4 * run.n_max;
    if (run.subgroup.rfind("whole", 0) == 0) cap = run.n_max;
    if (run.subgroup.rfind("generated", 0) == 0) cap = 2 * run.n_max;
    auto h = make_subgroup(g, run.subgroup, cap, options);
    DistortionProfile p = distortion_profile(g, *h, run.n_max, options);
    r.tables["profile"] = profile_csv(p, g);
    GrowthClass c = classify_growth(p);
    std::string fits = "model,residual\n";
    for (const auto& f : c.fits) {
      char buf[32];
      std::snprintf(buf, sizeof buf, "%.6g", f.residual);
      fits += f.model + ',' + buf + '\n';
    }
    r.tables["fits"] = fits;
    UndistortedVerdict u = undistorted_check(p);
    r.verdict = c.label() + (u.undistorted ? "; undistorted on ball, K=" : "; distorted on ball, K=") + u.K.get_str();
    if (!p.all_exact()) r.verdict += "; lower bounds only";
    const auto& last = p.entries.back();
    r.witnesses.push_back("delta(" + std::to_string(last.n) + ") = " + std::to_string(last.delta) + " at " +
                          g.format(last.witness_word));
    r.as_expected = (run.expected_growth.empty() || c.label() == run.expected_growth) &&
                    (!run.expected_undistorted || *run.expected_undistorted == u.undistorted);
  } catch (const Error& e) {
    r.verdict = std::string("error: ") + e.what();
    r.as_expected = false;
  }
  r.runtime_seconds = clock.seconds();
  return r;
}

std::vector<ExperimentReport> run_distortion_suite(const std::vector<DistortionRun>& runs, BallOptions options) {
  std::vector<ExperimentReport> out;
  for (const auto& run : runs) out.push_back(run_distortion(run, options));
  return out;
}

namespace {

void add_centralizer_rows(const MarkedGroup& g, const Bicombing& sigma, const std::string& text, std::size_t radius,
                          BallOptions options, std::string& summary, std::string& conjugators,
                          std::vector<std::size_t>& ks, bool& all_found, std::size_t& max_psi) {
  CentralizerReport c = centralizer_quasiconvexity_report(g, g.element(text), sigma, radius, options);
  summary += csv_field(text) + ',' + std::to_string(c.centralizer_size) + ',' + std::to_string(c.constants.k) +
             ',' + std::to_string(c.max_psi_length) + ',' + yes_no(c.all_conjugators_found) + '\n';
  for (const auto& w : c.witnesses) {
    conjugators += csv_field(text) + ',' + g.format(sigma.metric().geodesic(w.vertex, 4 * radius + 8)) + ',' +
                   (w.psi ? g.format(*w.psi) : std::string("not_found")) + '\n';
  }
  ks.push_back(c.constants.k);
  all_found = all_found && c.all_conjugators_found;
  max_psi = std::max(max_psi, c.max_psi_length);
}

}  // namespace

ExperimentReport run_combing_report(const CombingConfig& config, BallOptions options) {
  Stopwatch clock;
  MarkedGroup g = resolve_group(config.group);
  ExperimentReport r;
  r.name = "combing-check";
  r.inputs = {{"group", config.group},
              {"radius", std::to_string(config.radius)},
              {"equivariance_triples", std::to_string(config.equivariance_triples)},
              {"seed", std::to_string(config.seed)}};

  Bicombing sigma = shortlex_bicombing(g, 4 * config.radius + 8, options);
  std::mt19937_64 rng(config.seed);
  const std::size_t half = std::max<std::size_t>(1, config.radius / 2);
  auto random_element = [&]() {
    std::uniform_int_distribution<std::size_t> len(0, half);
    const std::size_t n = g.alphabet().generator_count();
    Element e = g.identity();
    if (n == 0) return e;
    std::uniform_int_distribution<std::uint32_t> gen(0, static_cast<std::uint32_t>(n - 1));
    std::bernoulli_distribution inv(0.5);
    for (std::size_t i = len(rng); i > 0; --i) e = g.multiply(e, g.letter_element(Letter{gen(rng), inv(rng)}));
    return e;
  };

  BallIndex b = ball(g, config.radius, options);
  std::vector<std::pair<Element, Element>> pairs;
  for (std::size_t i = 0; i < std::min<std::size_t>(b.size(), 500); ++i)
    pairs.emplace_back(g.identity(), b.entry(i).element);
  for (int i = 0; i < 500; ++i) {
    Element x = random_element();
    Element y = random_element();
    pairs.emplace_back(x, y);
  }
  QuasiGeodesicReport qg = check_quasi_geodesic(sigma, pairs, 4 * config.radius + 8);

  std::vector<std::tuple<Element, Element, Element>> triples;
  for (std::size_t i = 0; i < config.equivariance_triples; ++i) {
    Element a = random_element();
    Element x = random_element();
    Element y = random_element();
    triples.emplace_back(a, x, y);
  }
  EquivarianceReport eq = check_equivariance(sigma, triples);

  BoundedReport outer = check_bounded(sigma, config.radius, {.threads = options.threads});
  std::optional<BoundedReport> inner;
  if (config.radius >= 3) inner = check_bounded(sigma, config.radius - 2, {.threads = options.threads});
  const bool stable = !inner || inner->k2 == outer.k2;

  std::vector<std::string> elements = config.centralizer_elements;
  if (elements.empty()) {
    for (const auto& n : g.alphabet().names()) elements.push_back(n);
    if (g.alphabet().generator_count() >= 2) elements.push_back(g.alphabet().name(0) + " " + g.alphabet().name(1));
  }
  std::string summary = "element,centralizer_size,k,max_psi_length,all_conjugators_found\n";
  std::string conjugators = "element,vertex,psi\n";
  std::vector<std::size_t> ks;
  bool all_found = true;
  std::size_t max_psi = 0;
  for (const auto& text : elements)
    add_centralizer_rows(g, sigma, text, config.radius, options, summary, conjugators, ks, all_found, max_psi);

  std::string constants = "quantity,value\n";
  constants += "lambda," + qg.lambda.get_str() + "\n";
  constants += "epsilon," + qg.epsilon.get_str() + "\n";
  constants += "quasi_geodesic_pairs," + std::to_string(qg.pairs) + "\n";
  constants += "k1," + outer.k1.get_str() + "\n";
  constants += "k2_radius_" + std::to_string(config.radius) + "," + outer.k2.get_str() + "\n";
  if (inner) constants += "k2_radius_" + std::to_string(config.radius - 2) + "," + inner->k2.get_str() + "\n";
  constants += "k2_stable," + yes_no(stable) + "\n";
  constants += "bounded_exhaustive," + yes_no(outer.exhaustive) + "\n";
  constants += "equivariance_checked," + std::to_string(eq.checked) + "\n";
  constants += "equivariance_pass," + yes_no(eq.pass) + "\n";
  r.tables = {{"constants", constants}, {"centralizers", summary}, {"conjugators", conjugators}};

  if (outer.witness) {
    const auto& [x, y, xp, yp, t] = *outer.witness;
    r.witnesses.push_back("k2 at y=" + g.format(sigma.metric().geodesic(y, 4 * config.radius + 8)) +
                          " x'=" + g.format(sigma.metric().geodesic(xp, 4 * config.radius + 8)) +
                          " y'=" + g.format(sigma.metric().geodesic(yp, 4 * config.radius + 8)) +
                          " t=" + std::to_string(t));
  }
  const bool abelian = generators_commute(g);
  const bool centralizers_ok =
      all_found && (!abelian || std::all_of(ks.begin(), ks.end(), [](std::size_t k) { return k == 0; }));
  r.verdict = "lambda=" + qg.lambda.get_str() + " epsilon=" + qg.epsilon.get_str() + " k1=1 k2=" +
              outer.k2.get_str() + (stable ? " (stable)" : " (unstable)") +
              (eq.pass ? " equivariant" : " not equivariant");
  r.as_expected = qg.lambda == 1 && qg.epsilon == 0 && eq.pass && stable && centralizers_ok;
  r.runtime_seconds = clock.seconds();
  return r;
}

ExperimentReport run_centralizer(const MarkedGroup& g, const std::string& element, std::size_t radius,
                                 BallOptions options) {
  Stopwatch clock;
  ExperimentReport r;
  r.name = "centralizer";
  r.inputs = {{"group", g.name()}, {"element", element}, {"radius", std::to_string(radius)}};
  Bicombing sigma = shortlex_bicombing(g, 4 * radius + 8, options);
  std::string summary = "element,centralizer_size,k,max_psi_length,all_conjugators_found\n";
  std::string conjugators = "element,vertex,psi\n";
  std::vector<std::size_t> ks;
  bool all_found = true;
  std::size_t max_psi = 0;
  add_centralizer_rows(g, sigma, element, radius, options, summary, conjugators, ks, all_found, max_psi);
  r.tables = {{"centralizers", summary}, {"conjugators", conjugators}};
  r.verdict = "k=" + std::to_string(ks[0]) + " max_psi_length=" + std::to_string(max_psi);
  r.as_expected = all_found && max_psi <= ks[0] && (!generators_commute(g) || ks[0] == 0);
  r.runtime_seconds = clock.seconds();
  return r;
}

ExperimentReport run_cover_table(std::size_t max_complexity) {
  Stopwatch clock;
  ExperimentReport r;
  r.name = "cover-table";
  r.inputs = {{"max_complexity", std::to_string(max_complexity)}};
  std::string table = "signature,cover,chi_base,chi_cover,doubled,exceptional\n";
  bool all_doubled = true;
  bool flags_ok = true;
  std::size_t rows = 0;
  for (unsigned c = 1; c <= max_complexity; ++c) {
    for (unsigned g = 1; g <= c; ++g) {
      for (unsigned p = 0; g + p <= c; ++p) {
        const unsigned b = c - g - p;
        SurfaceSig n = SurfaceSig::N(g, p, b);
        SurfaceSig s = orientation_double_cover(n);
        const long chi_n = euler_characteristic(n);
        const long chi_s = euler_characteristic(s);
        const bool doubled = chi_s == 2 * chi_n;
        ExceptionalCase ex = exceptional_case(n);
        const bool should_flag = b == 0 && p == 0 && (g == 1 || g == 2);
        all_doubled = all_doubled && doubled;
        flags_ok = flags_ok && (should_flag == (ex != ExceptionalCase::kNone));
        table += csv_field(n.to_string()) + ',' + csv_field(s.to_string()) + ',' + std::to_string(chi_n) + ',' + std::to_string(chi_s) +
                 ',' + yes_no(doubled) + ',' + to_string(ex) + '\n';
        ++rows;
      }
    }
  }
  r.tables = {{"covers", table}};
  r.verdict = std::to_string(rows) + " signatures; chi(cover) = 2 chi(base) " + (all_doubled ? "on all" : "fails") +
              "; exceptional flags " + (flags_ok ? "only at N1, N2" : "misplaced");
  r.as_expected = all_doubled && flags_ok;
  r.runtime_seconds = clock.seconds();
  return r;
}

ExperimentReport run_iota_verification(const LiftData& data, BallOptions options) {
  Stopwatch clock;
  ExperimentReport r;
  r.name = "verify-hom";
  r.inputs = {{"source", data.source.name()},
              {"target", data.target.name()},
              {"J", data.involution_text},
              {"radius", std::to_string(data.radius)},
              {"expect", data.expect_pass ? "pass" : "fail"}};
  if (data.surface) {
    r.inputs["surface"] = data.surface->to_string();
    ExceptionalCase ex = exceptional_case(*data.surface);
    if (ex != ExceptionalCase::kNone)
      throw InvalidArgument("lift verification is not offered for the exceptional surface " +
                            data.surface->to_string() + " (" + to_string(ex) + ")");
  }
  const MarkedGroup& t = data.target;
  if (order_of_element(data.involution, t.model(), 2) != 2)
    throw BadCosetRep("J = " + data.involution_text + " does not have order 2");

  MarkedHomomorphism h(data.source, data.target, data.images);
  PresentationReport rel = verify_homomorphism(h);
  std::string relators = "relator,holds,image\n";
  for (const auto& c : rel.relators)
    relators += csv_field(c.text) + ',' + yes_no(c.holds) + ',' + csv_field(c.value) + '\n';

  std::string commute = "generator,image,commutes_with_J\n";
  bool all_commute = true;
  for (std::uint32_t i = 0; i < data.source.alphabet().generator_count(); ++i) {
    Element img = evaluate(data.images[i], t);
    const bool c = t.multiply(img, data.involution) == t.multiply(data.involution, img);
    all_commute = all_commute && c;
    commute += data.source.alphabet().name(i) + ',' + csv_field(t.format(data.images[i])) + ',' + yes_no(c) + '\n';
  }

  InjectivityReport inj = injectivity_on_ball(h, data.radius, options);
  std::string injectivity = "radius,elements_checked,injective_on_ball,exact,collision\n";
  std::string collision;
  if (inj.collision)
    collision = data.source.format(inj.collision->first) + " ~ " + data.source.format(inj.collision->second);
  injectivity += std::to_string(inj.radius) + ',' + std::to_string(inj.elements_checked) + ',' +
                 yes_no(inj.injective_on_ball) + ',' + yes_no(inj.exact) + ',' + csv_field(collision) + '\n';

  r.tables = {{"relators", relators}, {"commutation", commute}, {"injectivity", injectivity}};
  if (!collision.empty()) r.witnesses.push_back("same image: " + collision);
  std::vector<std::string> failures;
  if (!rel.pass) failures.push_back("relators");
  if (!all_commute) failures.push_back("commutation with J");
  if (!inj.injective_on_ball) failures.push_back("injectivity");
  const bool pass = failures.empty();
  if (pass) {
    r.verdict = std::string("pass") + (inj.exact ? " (exact)" : " (on ball)");
  } else {
    r.verdict = "fail:";
    for (const auto& f : failures) r.verdict += " " + f;
  }
  r.as_expected = pass == data.expect_pass;
  r.runtime_seconds = clock.seconds();
  return r;
}

ExperimentReport run_ball(const MarkedGroup& g, std::size_t radius, BallOptions options) {
  Stopwatch clock;
  ExperimentReport r;
  r.name = "ball";
  r.inputs = {{"group", g.name()}, {"radius", std::to_string(radius)}};
  BallIndex b = ball(g, radius, options);
  r.tables["ball"] = ball_csv(b);
  std::string growth = "radius,sphere_size,ball_size\n";
  std::size_t total = 0;
  for (std::size_t d = 0; d < b.sphere_sizes().size(); ++d) {
    total += b.sphere_sizes()[d];
    growth += std::to_string(d) + ',' + std::to_string(b.sphere_sizes()[d]) + ',' + std::to_string(total) + '\n';
  }
  r.tables["growth"] = growth;
  r.verdict = std::to_string(b.size()) + " elements" + (b.closed() ? ", whole group" : "");
  r.as_expected = true;
  r.runtime_seconds = clock.seconds();
  return r;
}

}  // namespace gdist
