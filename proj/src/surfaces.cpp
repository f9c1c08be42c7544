#include "gdist/surfaces.hpp"

#include <charconv>
#include <json.hpp>

#include "gdist/errors.hpp"
#include "gdist/zoo.hpp"

namespace gdist {

SurfaceSig SurfaceSig::S(unsigned g, unsigned p, unsigned b) { return SurfaceSig{true, g, b, p}; }

SurfaceSig SurfaceSig::N(unsigned g, unsigned p, unsigned b) {
  if (g == 0) throw InvalidArgument("a nonorientable surface needs genus at least 1");
  return SurfaceSig{false, g, b, p};
}

std::string SurfaceSig::to_string() const {
  return std::string(orientable ? "S" : "N") + std::to_string(genus) + "," + std::to_string(punctures) + "^" +
         std::to_string(boundary);
}

SurfaceSig SurfaceSig::parse(std::string_view text) {
  auto fail = [&]() { return ParseError("bad surface signature '" + std::string(text) + "'"); };
  if (text.empty() || (text[0] != 'S' && text[0] != 'N')) throw fail();
  const bool orientable = text[0] == 'S';
  const char* pos = text.data() + 1;
  const char* end = text.data() + text.size();
  auto number = [&](unsigned& out) {
    auto [next, ec] = std::from_chars(pos, end, out);
    if (ec != std::errc() || next == pos) throw fail();
    pos = next;
  };
  unsigned g = 0, p = 0, b = 0;
  number(g);
  if (pos != end && *pos == ',') {
    ++pos;
    number(p);
  }
  if (pos != end && *pos == '^') {
    ++pos;
    number(b);
  }
  if (pos != end) throw fail();
  return orientable ? S(g, p, b) : N(g, p, b);
}

long euler_characteristic(const SurfaceSig& s) {
  const long g = s.genus, b = s.boundary, p = s.punctures;
  return s.orientable ? 2 - 2 * g - b - p : 2 - g - b - p;
}

SurfaceSig orientation_double_cover(const SurfaceSig& n) {
  if (n.orientable || n.genus < 1)
    throw NotNonorientable(n.to_string() + " is not a nonorientable surface");
  return SurfaceSig::S(n.genus - 1, 2 * n.punctures, 2 * n.boundary);
}

std::string to_string(ExceptionalCase c) {
  switch (c) {
    case ExceptionalCase::kKleinBottle:
      return "klein_bottle";
    case ExceptionalCase::kProjectivePlane:
      return "projective_plane";
    case ExceptionalCase::kNone:
      break;
  }
  return "none";
}

ExceptionalCase exceptional_case(const SurfaceSig& n) {
  if (n.orientable || n.genus < 1)
    throw NotNonorientable(n.to_string() + " is not a nonorientable surface");
  if (n.boundary != 0 || n.punctures != 0) return ExceptionalCase::kNone;
  if (n.genus == 1) return ExceptionalCase::kProjectivePlane;
  if (n.genus == 2) return ExceptionalCase::kKleinBottle;
  return ExceptionalCase::kNone;
}

namespace {

CatalogEntry entry(SurfaceSig sig, std::string iso, const char* zoo, std::string provenance,
                   std::vector<std::string> generators = {}) {
  CatalogEntry e{sig, std::move(iso), std::nullopt, std::nullopt, std::move(generators), std::move(provenance)};
  if (zoo) {
    e.group = zoo_group(zoo);
    e.presentation = e.group->presentation();
  }
  return e;
}

const std::vector<CatalogEntry>& small_table() {
  static const std::vector<CatalogEntry> table = [] {
    const std::string alexander = "standard: trivial by the Alexander method";
    std::vector<CatalogEntry> t;
    t.push_back(entry(SurfaceSig::S(0), "1", "trivial", alexander + " (sphere)"));
    t.push_back(entry(SurfaceSig::S(0, 1), "1", "trivial", alexander + " (once-punctured sphere)"));
    t.push_back(entry(SurfaceSig::S(0, 0, 1), "1", "trivial", alexander + " (disk)"));
    t.push_back(entry(SurfaceSig::S(0, 2), "Z2", "c2", "swap of the two punctures"));
    t.push_back(entry(SurfaceSig::S(0, 1, 1), "1", "trivial", alexander + " (once-punctured disk)"));
    t.push_back(entry(SurfaceSig::S(0, 0, 2), "Z", "z", "generated by the twist about the core curve of the annulus"));
    t.push_back(entry(SurfaceSig::S(1), "SL(2,Z)", "sl2z",
                      "action on first homology; presentation <a,b | a^4, b^6, a^2 b^-3>"));
    t.push_back(entry(SurfaceSig::N(1), "1", "trivial", "projective plane: trivial mapping class group"));
    t.push_back(entry(SurfaceSig::N(2), "Z2+Z2", "kleinfour",
                      "Klein bottle: presentation <x,y | x^2, y^2, [x,y]>"));
    return t;
  }();
  return table;
}

const std::vector<CatalogEntry>& twist_table() {
  static const std::vector<CatalogEntry> table = [] {
    std::vector<CatalogEntry> t;
    t.push_back(entry(SurfaceSig::N(1, 1, 1), "Z", "z", "twist subgroup, one peripheral curve",
                      {"peripheral: twist about the curve parallel to the boundary"}));
    t.push_back(entry(SurfaceSig::N(1, 0, 2), "Z^2", "z2", "twist subgroup, two peripheral curves",
                      {"peripheral: twist about the first boundary curve",
                       "peripheral: twist about the second boundary curve"}));
    t.push_back(entry(SurfaceSig::N(2, 0, 1), "Z^2", "z2", "twist subgroup, one peripheral and one generic curve",
                      {"peripheral: twist about the curve parallel to the boundary",
                       "generic: twist about the two-sided nonperipheral curve"}));
    return t;
  }();
  return table;
}

std::optional<CatalogEntry> lookup(const std::vector<CatalogEntry>& table, const SurfaceSig& s) {
  for (const auto& e : table)
    if (e.signature == s) return e;
  return std::nullopt;
}

}  // namespace

std::optional<CatalogEntry> small_mcg_lookup(const SurfaceSig& s) { return lookup(small_table(), s); }
std::vector<CatalogEntry> small_mcg_catalog() { return small_table(); }
std::optional<CatalogEntry> twist_subgroup_lookup(const SurfaceSig& s) { return lookup(twist_table(), s); }
std::vector<CatalogEntry> twist_subgroup_catalog() { return twist_table(); }

std::string catalog_json() {
  using nlohmann::json;
  auto dump = [](const std::vector<CatalogEntry>& table) {
    json rows = json::array();
    for (const auto& e : table) {
      json row = {{"signature", e.signature.to_string()},
                  {"euler_characteristic", euler_characteristic(e.signature)},
                  {"group", e.isomorphism_class},
                  {"provenance", e.provenance}};
      if (e.group) {
        row["model"] = e.group->name();
        row["presentation_verified"] = verify_presentation(*e.group, *e.presentation).pass;
      }
      if (e.presentation) {
        json rels = json::array();
        for (const auto& r : e.presentation->relators()) rels.push_back(format_word(r, e.presentation->alphabet()));
        row["generators"] = e.presentation->alphabet().names();
        row["relators"] = rels;
      }
      if (!e.generators.empty()) row["generator_descriptions"] = e.generators;
      rows.push_back(row);
    }
    return rows;
  };
  return json{{"small_mcg", dump(small_table())}, {"twist_subgroups", dump(twist_table())}}.dump(2);
}

std::string to_string(ComponentCase c) {
  switch (c) {
    case ComponentCase::kA:
      return "a";
    case ComponentCase::kB:
      return "b";
    case ComponentCase::kC:
      return "c";
    case ComponentCase::kD:
      return "d";
    case ComponentCase::kNone:
      break;
  }
  return "none";
}

ComponentCase classify_component(const SurfaceSig& s) {
  if (euler_characteristic(s) >= 0) return ComponentCase::kNone;
  const unsigned bp = s.boundary + s.punctures;
  if (s.orientable) return (s.genus == 0 && bp == 3) ? ComponentCase::kB : ComponentCase::kA;
  return s.genus + bp == 3 ? ComponentCase::kD : ComponentCase::kC;
}

AdmissibleReport admissible_pair_check(const SurfaceSig& f, const std::vector<SurfaceSig>& components) {
  AdmissibleReport report;
  report.surface = f;
  report.pass = true;
  for (const auto& c : components) {
    ComponentVerdict v{c, euler_characteristic(c), false, classify_component(c)};
    v.negative = v.euler < 0;
    report.pass = report.pass && v.negative;
    report.components.push_back(v);
  }
  return report;
}

unsigned excess_rank(const SurfaceSig& f, const SurfaceSig& f_prime, const std::vector<SurfaceSig>& components,
                     unsigned boundary_outside) {
  if (!admissible_pair_check(f, components).pass)
    throw InadmissiblePair("a component of " + f.to_string() + " minus " + f_prime.to_string() +
                           " has non-negative Euler characteristic");
  if (boundary_outside > f.boundary)
    throw InadmissiblePair(std::to_string(boundary_outside) + " boundary components outside " +
                           f_prime.to_string() + " but " + f.to_string() + " has only " +
                           std::to_string(f.boundary));
  unsigned r = boundary_outside;
  for (const auto& c : components)
    if (c == SurfaceSig::N(2, 0, 1)) ++r;
  return r;
}

}  // namespace gdist
