#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "gdist/groups.hpp"
#include "gdist/surfaces.hpp"

namespace gdist {

/// Builds a marked group from a JSON group config:
///   {"kind": "table"|"matrix"|"dyadic_affine"|"free"|"braid"|"product",
///    "name": "...", "alphabet": [...], "marking": {...},
///    "presentation": {"relators": ["a a a a", ...]}}
/// Marking values by kind:
///   table          element index; the table itself is "table": [[...]]
///   matrix         rows of decimal integer strings
///   dyadic_affine  {"k": int, "m": "p/q"} for x -> 2^k x + m
///   free           word over "basis" (default: the alphabet)
///   braid          word over s1 .. s{n-1}; "strands": n
/// A product lists "factors", each a zoo name or a nested config.
/// Throws ParseError or InvalidArgument on malformed input.
MarkedGroup parse_group_config(std::string_view json_text);

/// A zoo name, or else a path to a JSON group config.
MarkedGroup resolve_group(const std::string& name_or_path);

std::string read_text_file(const std::string& path);

/// Input of the lift verification: a homomorphism Mod(N) -> Mod(S) given on
/// generators, and the involution J of the target.
struct LiftData {
  MarkedGroup source;
  MarkedGroup target;
  std::vector<Word> images;
  Element involution;
  std::string involution_text;
  std::size_t radius = 4;
  std::optional<SurfaceSig> surface;
  /// Expected outcome; the experiment reports whether it matched.
  bool expect_pass = true;
};

///   {"source": <zoo name or group config>, "target": "<zoo name>",
///    "images": {"x": "a a"}, "J": "a a", "radius": 4,
///    "surface": "N3,1^2", "expect": "pass"|"fail"}
LiftData parse_lift_data(std::string_view json_text);

}  // namespace gdist
