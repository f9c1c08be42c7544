#include <chrono>
#include <cstdio>
#include <exception>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "gdist/cayley.hpp"
#include "gdist/combing.hpp"
#include "gdist/config.hpp"
#include "gdist/distortion.hpp"
#include "gdist/errors.hpp"
#include "gdist/experiments.hpp"
#include "gdist/surfaces.hpp"
#include "gdist/zoo.hpp"

using namespace gdist;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      if (!detail.empty()) detail += "; ";
      detail += what;
    }
  }
};

Element random_element(const MarkedGroup& g, std::mt19937_64& rng, std::size_t max_length) {
  const std::size_t n = g.alphabet().generator_count();
  Element e = g.identity();
  if (n == 0) return e;
  std::uniform_int_distribution<std::size_t> len(0, max_length);
  std::uniform_int_distribution<std::uint32_t> gen(0, static_cast<std::uint32_t>(n - 1));
  std::bernoulli_distribution inv(0.5);
  for (std::size_t i = len(rng); i > 0; --i) e = g.multiply(e, g.letter_element(Letter{gen(rng), inv(rng)}));
  return e;
}

std::size_t delta_at(const DistortionProfile& p, std::size_t n) { return p.entries.at(n - 1).delta; }

Outcome klein_obstruction() {
  Outcome o;
  ExperimentReport r = run_klein_check(8);
  std::istringstream census(r.tables.at("census"));
  std::string line;
  std::getline(census, line);
  std::size_t involutions = 0;
  std::string involution;
  while (std::getline(census, line)) {
    if (line.substr(line.rfind(',') + 1) == "2") {
      ++involutions;
      involution = line.substr(0, line.find(','));
    }
  }
  MarkedGroup sl2 = zoo_group("sl2z");
  o.require(involutions == 1, "census has " + std::to_string(involutions) + " elements of order 2");
  o.require(involution == key_hex(sl2.element("a a")), "the order-2 element is not -I");
  o.require(r.verdict == "no injective homomorphism Z2xZ2 -> SL(2,Z)", "verdict '" + r.verdict + "'");
  o.require(r.as_expected, "report not as expected");
  return o;
}

Outcome presentations() {
  Outcome o;
  MarkedGroup sl2 = zoo_group("sl2z");
  auto p = Presentation::parse(sl2.alphabet(), {"a a a a", "b b b b b b", "a a b^-1 b^-1 b^-1"});
  o.require(verify_presentation(sl2, p).pass, "SL(2,Z) relators fail");
  MarkedGroup v4 = zoo_group("kleinfour");
  auto q = Presentation::parse(v4.alphabet(), {"x x", "y y", "x y x^-1 y^-1"});
  o.require(verify_presentation(v4, q).pass, "Z2xZ2 relators fail");
  o.require(ball(v4, 4).size() == 4 && ball(v4, 4).closed(), "table group is not of order 4");
  return o;
}

Outcome distortion_oracles() {
  Outcome o;
  MarkedGroup z2 = zoo_group("z2");
  auto factor = distortion_profile(z2, DirectFactor(z2, 0), 12);
  for (std::size_t n = 1; n <= 12; ++n)
    o.require(delta_at(factor, n) == n && factor.entries[n - 1].exact, "Z in Z^2 at n=" + std::to_string(n));

  MarkedGroup bs = zoo_group("bs12");
  auto bsp = distortion_profile(bs, CyclicExact(bs, bs.element("a")), 17);
  for (std::size_t n = 0; n <= 8; ++n)
    o.require(bsp.entries[2 * n].exact && delta_at(bsp, 2 * n + 1) >= (std::size_t{1} << n),
              "BS(1,2) at n=" + std::to_string(n));
  auto bsc = classify_growth(bsp);
  o.require(bsc.label() == "exponential", "BS(1,2) verdict " + bsc.label());

  MarkedGroup heis = zoo_group("heis3");
  auto hp = distortion_profile(heis, CyclicExact(heis, heis.element("a b a^-1 b^-1")), 24);
  for (std::size_t n = 1; n <= 6; ++n)
    o.require(hp.entries[4 * n - 1].exact && delta_at(hp, 4 * n) >= n * n, "Heisenberg at n=" + std::to_string(n));
  auto hc = classify_growth(hp);
  o.require(hc.label() == "polynomial(2)", "Heisenberg verdict " + hc.label());
  return o;
}

Outcome undistorted_verdicts() {
  Outcome o;
  MarkedGroup z2 = zoo_group("z2");
  auto factor = undistorted_check(distortion_profile(z2, DirectFactor(z2, 0), 12));
  o.require(factor.undistorted && factor.K <= 1, "Z in Z^2: K=" + factor.K.get_str());
  auto whole = undistorted_check(distortion_profile(z2, EnumeratedWithCap::whole(z2, 12), 12));
  o.require(whole.undistorted && whole.K <= 1, "H=G: K=" + whole.K.get_str());
  MarkedGroup bs = zoo_group("bs12");
  auto bsv = undistorted_check(distortion_profile(bs, CyclicExact(bs, bs.element("a")), 17));
  o.require(!bsv.undistorted, "BS(1,2) reported undistorted");
  return o;
}

Outcome bicombing_constants() {
  Outcome o;
  std::mt19937_64 rng(2024);
  for (const auto& name : zoo_names()) {
    MarkedGroup g = zoo_group(name);
    Bicombing sigma = shortlex_bicombing(g, 32);
    BallIndex b = ball(g, 5);
    std::vector<std::pair<Element, Element>> pairs;
    for (std::size_t i = 0; i < std::min<std::size_t>(b.size(), 400); ++i)
      pairs.emplace_back(g.identity(), b.entry(i).element);
    for (int i = 0; i < 400; ++i) pairs.emplace_back(random_element(g, rng, 5), random_element(g, rng, 5));
    auto qg = check_quasi_geodesic(sigma, pairs, 32);
    o.require(qg.lambda == 1 && qg.epsilon == 0,
              name + ": (" + qg.lambda.get_str() + ", " + qg.epsilon.get_str() + ")");
    std::vector<std::tuple<Element, Element, Element>> triples;
    for (int i = 0; i < 1000; ++i)
      triples.emplace_back(random_element(g, rng, 5), random_element(g, rng, 5), random_element(g, rng, 5));
    auto eq = check_equivariance(sigma, triples);
    o.require(eq.pass && eq.checked == 1000, name + ": equivariance");
  }
  MarkedGroup f2 = zoo_group("free2");
  Bicombing sigma = shortlex_bicombing(f2, 40);
  unsigned threads = std::max(1u, std::thread::hardware_concurrency());
  auto r6 = check_bounded(sigma, 6, {.threads = threads});
  auto r8 = check_bounded(sigma, 8, {.threads = threads});
  o.require(r6.exhaustive && r8.exhaustive, "free2 bounded check not exhaustive");
  o.require(r6.k2 == r8.k2, "free2 k2 " + r6.k2.get_str() + " vs " + r8.k2.get_str());
  return o;
}

Outcome centralizers() {
  Outcome o;
  MarkedGroup f2 = zoo_group("free2");
  Bicombing sigma = shortlex_bicombing(f2, 48);
  auto r = centralizer_quasiconvexity_report(f2, f2.element("x y"), sigma, 10);
  o.require(r.constants.k == 1, "free2 Z(xy): k=" + std::to_string(r.constants.k));
  o.require(r.all_conjugators_found, "free2 Z(xy): missing conjugator");
  for (const auto& w : r.witnesses)
    o.require(w.psi && w.psi->size() <= 1, "free2 Z(xy): psi longer than 1");
  for (const auto& name : zoo_names()) {
    if (!zoo_group_is_abelian(name)) continue;
    MarkedGroup g = zoo_group(name);
    Bicombing s = shortlex_bicombing(g, 32);
    std::vector<Element> elements{g.identity()};
    for (const auto& e : g.marking()) elements.push_back(e);
    for (const auto& a : elements) {
      auto c = centralizer_quasiconvexity_report(g, a, s, 6);
      o.require(c.constants.k == 0, name + ": k=" + std::to_string(c.constants.k));
    }
  }
  return o;
}

Outcome cover_arithmetic() {
  Outcome o;
  std::size_t flagged = 0;
  for (unsigned g = 1; g <= 20; ++g)
    for (unsigned b = 0; g + b <= 20; ++b)
      for (unsigned p = 0; g + b + p <= 20; ++p) {
        SurfaceSig n = SurfaceSig::N(g, p, b);
        if (euler_characteristic(orientation_double_cover(n)) != 2 * euler_characteristic(n))
          o.require(false, "chi fails at " + n.to_string());
        ExceptionalCase e = exceptional_case(n);
        const bool expected = b == 0 && p == 0 && g <= 2;
        if ((e != ExceptionalCase::kNone) != expected) o.require(false, "flag wrong at " + n.to_string());
        if (e != ExceptionalCase::kNone) ++flagged;
      }
  o.require(flagged == 2, "expected two exceptional signatures");
  o.require(exceptional_case(SurfaceSig::N(1)) == ExceptionalCase::kProjectivePlane, "N1 flag");
  o.require(exceptional_case(SurfaceSig::N(2)) == ExceptionalCase::kKleinBottle, "N2 flag");
  ExperimentReport r = run_cover_table(20);
  o.require(r.as_expected, "cover table report");
  return o;
}

Outcome section_four_arithmetic() {
  Outcome o;
  struct Case {
    SurfaceSig component;
    bool negative;
    ComponentCase expected;
  };
  using S = SurfaceSig;
  const std::vector<Case> fixture = {
      {S::S(0, 3), true, ComponentCase::kB},        {S::S(0, 1, 2), true, ComponentCase::kB},
      {S::S(0, 0, 3), true, ComponentCase::kB},     {S::S(1, 0, 1), true, ComponentCase::kA},
      {S::S(0, 2, 2), true, ComponentCase::kA},     {S::S(2), true, ComponentCase::kA},
      {S::N(2, 0, 1), true, ComponentCase::kD},     {S::N(1, 2), true, ComponentCase::kD},
      {S::N(3, 1, 1), true, ComponentCase::kC},     {S::N(1, 0, 3), true, ComponentCase::kC},
      {S::S(0, 0, 1), false, ComponentCase::kNone}, {S::N(1, 0, 1), false, ComponentCase::kNone},
  };
  const SurfaceSig f = S::N(7, 0, 4);
  for (const auto& c : fixture) {
    auto report = admissible_pair_check(f, {c.component});
    o.require(report.pass == c.negative, c.component.to_string() + ": pass");
    o.require(report.components.at(0).component_case == c.expected, c.component.to_string() + ": case");
  }
  const SurfaceSig f6 = S::N(6, 0, 3);
  const SurfaceSig fp = S::N(3, 0, 1);
  o.require(excess_rank(f6, fp, {S::N(2, 0, 1)}, 0) == 1, "r for [N2^1]");
  o.require(excess_rank(f6, fp, {S::S(0, 3)}, 3) == 3, "r for [S0,3], 3 outside");
  o.require(excess_rank(f6, fp, {S::S(1, 1)}, 0) == 0, "r for [S1,1]");
  return o;
}

Outcome determinism() {
  Outcome o;
  BallOptions one{.max_elements = 10'000'000, .threads = 1};
  BallOptions many{.max_elements = 10'000'000, .threads = std::max(4u, std::thread::hardware_concurrency())};
  auto same = [&](const std::string& what, const std::function<ExperimentReport(BallOptions)>& run) {
    o.require(run(one).tables == run(many).tables, what);
  };
  same("ball", [](BallOptions b) { return run_ball(zoo_group("braid3"), 7, b); });
  same("klein-check", [](BallOptions b) { return run_klein_check(8, b); });
  for (const auto& d : default_distortion_suite())
    same("distortion " + d.name, [&](BallOptions b) { return run_distortion(d, b); });
  same("combing-check", [](BallOptions b) { return run_combing_report({"free2", 6, {"x y"}, 1000, 1}, b); });
  same("centralizer", [](BallOptions b) { return run_centralizer(zoo_group("braid3"), "s1 s2", 6, b); });
  same("cover-table", [](BallOptions) { return run_cover_table(20); });
  LiftData lift = parse_lift_data(R"({"source": "c2", "target": "sl2z", "images": {"x": "a a"}, "J": "a a"})");
  same("verify-hom", [&](BallOptions b) { return run_iota_verification(lift, b); });
  return o;
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* name;
    double limit_seconds;
    Outcome (*run)();
  };
  const Criterion criteria[] = {
      {1, "klein-bottle obstruction", 60, klein_obstruction},
      {2, "presentation check", 1, presentations},
      {3, "distortion oracles", 300, distortion_oracles},
      {4, "undistorted verdicts", 120, undistorted_verdicts},
      {5, "bicombing constants", 300, bicombing_constants},
      {6, "centralizer quasi-convexity", 120, centralizers},
      {7, "cover arithmetic", 1, cover_arithmetic},
      {8, "admissible pairs and excess rank", 1, section_four_arithmetic},
      {9, "thread determinism", 600, determinism},
  };
  int failures = 0;
  for (const auto& c : criteria) {
    auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o.require(false, std::string("exception: ") + e.what());
    }
    double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (seconds > c.limit_seconds)
      o.require(false, "took " + std::to_string(seconds) + " s, limit " + std::to_string(c.limit_seconds) + " s");
    std::printf("%s %d %s (%.2f s)%s%s\n", o.pass ? "PASS" : "FAIL", c.id, c.name, seconds,
                o.detail.empty() ? "" : ": ", o.detail.c_str());
    std::fflush(stdout);
    if (!o.pass) ++failures;
  }
  return failures == 0 ? 0 : 1;
}
