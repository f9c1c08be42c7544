#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "gdist/groups.hpp"

namespace gdist {

/// Built-in marked groups, each with an exact canonical form:
///   trivial    the trivial group
///   c2         Z/2 = <x | x^2>
///   z          Z = <x>
///   z2         Z^2 = <x, y | [x, y]>
///   free2      free group on x, y
///   sl2z       SL(2,Z), a -> [[0,-1],[1,0]], b -> [[0,-1],[1,1]]
///   bs12       BS(1,2) as affine maps, a: x -> x+1, t: x -> 2x
///   heis3      integral Heisenberg group, a = I+E12, b = I+E23
///   braid3     braid group on three strands, s1, s2
///   kleinfour  Z/2 x Z/2 as a multiplication table, x, y the factors
/// Names joined with '+' form direct products, e.g. "c2+z".
std::vector<std::string> zoo_names();

MarkedGroup zoo_group(std::string_view name);

bool zoo_group_is_abelian(std::string_view name);

/// Direct product of marked groups. Generator names are kept when they are
/// distinct and otherwise suffixed with the factor number ("x_1", "x_2").
/// The presentation, when every factor has one, adds commuting relators.
MarkedGroup direct_product(const std::vector<MarkedGroup>& factors, std::string name = {});

}  // namespace gdist
