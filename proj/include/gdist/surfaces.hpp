#pragma once

#include <compare>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "gdist/groups.hpp"

namespace gdist {

/// A compact surface with punctures: S_{g,p}^b when orientable, N_{g,p}^b
/// otherwise (g counts crosscaps, g >= 1).
struct SurfaceSig {
  bool orientable = true;
  unsigned genus = 0;
  unsigned boundary = 0;
  unsigned punctures = 0;

  static SurfaceSig S(unsigned g, unsigned p = 0, unsigned b = 0);
  /// Throws InvalidArgument when g = 0.
  static SurfaceSig N(unsigned g, unsigned p = 0, unsigned b = 0);

  /// "S[g],[p]^[b]" or "N[g],[p]^[b]", e.g. "N3,1^2".
  std::string to_string() const;
  /// Accepts the full form and the short forms "N3", "N3,1", "N3^2".
  static SurfaceSig parse(std::string_view text);

  friend auto operator<=>(const SurfaceSig&, const SurfaceSig&) = default;
};

long euler_characteristic(const SurfaceSig& s);

/// N_{g,p}^b -> S_{g-1,2p}^{2b}. Throws NotNonorientable.
SurfaceSig orientation_double_cover(const SurfaceSig& n);

enum class ExceptionalCase { kNone, kKleinBottle, kProjectivePlane };
std::string to_string(ExceptionalCase c);

/// (2,0,0) is the Klein bottle, (1,0,0) the projective plane. Throws NotNonorientable.
ExceptionalCase exceptional_case(const SurfaceSig& n);

struct CatalogEntry {
  SurfaceSig signature;
  std::string isomorphism_class;
  std::optional<Presentation> presentation;
  std::optional<MarkedGroup> group;
  /// Generator descriptions (twist-subgroup entries).
  std::vector<std::string> generators;
  std::string provenance;
};

/// Mapping class groups of the seven orientable surfaces with chi >= 0 and
/// of N1, N2.
std::optional<CatalogEntry> small_mcg_lookup(const SurfaceSig& s);
std::vector<CatalogEntry> small_mcg_catalog();

/// Twist subgroups of N_{1,1}^1, N_1^2 and N_2^1.
std::optional<CatalogEntry> twist_subgroup_lookup(const SurfaceSig& s);
std::vector<CatalogEntry> twist_subgroup_catalog();

std::string catalog_json();

enum class ComponentCase { kNone, kA, kB, kC, kD };
std::string to_string(ComponentCase c);

/// (a) orientable, g >= 1 or b + p >= 4; (b) orientable, g = 0, b + p = 3;
/// (c) nonorientable, g + b + p >= 4; (d) nonorientable, g + b + p = 3.
/// kNone when chi >= 0.
ComponentCase classify_component(const SurfaceSig& s);

struct ComponentVerdict {
  SurfaceSig signature;
  long euler = 0;
  bool negative = false;
  ComponentCase component_case = ComponentCase::kNone;
};

struct AdmissibleReport {
  SurfaceSig surface;
  std::vector<ComponentVerdict> components;
  bool pass = false;
};

/// Checks that every complementary component has negative Euler
/// characteristic. The components are caller data; no topology is computed.
AdmissibleReport admissible_pair_check(const SurfaceSig& f, const std::vector<SurfaceSig>& components);

/// boundary_outside plus the number of components homeomorphic to N_2^1.
/// Throws InadmissiblePair when the pair check fails or boundary_outside
/// exceeds b(F).
unsigned excess_rank(const SurfaceSig& f, const SurfaceSig& f_prime, const std::vector<SurfaceSig>& components,
                     unsigned boundary_outside);

}  // namespace gdist
