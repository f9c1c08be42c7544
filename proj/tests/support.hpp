#pragma once

#include <random>

#include "gdist/cayley.hpp"
#include "gdist/groups.hpp"
#include "gdist/words.hpp"

namespace gdist::testing {

inline Word random_word(std::mt19937_64& rng, std::size_t generators, std::size_t max_length) {
  std::uniform_int_distribution<std::size_t> len(0, max_length);
  std::uniform_int_distribution<std::uint32_t> gen(0, static_cast<std::uint32_t>(generators - 1));
  std::bernoulli_distribution inv(0.5);
  Word w;
  const std::size_t n = len(rng);
  for (std::size_t i = 0; i < n; ++i) w.push_back(Letter{gen(rng), inv(rng)});
  return w;
}

inline Element random_element(std::mt19937_64& rng, const MarkedGroup& g, std::size_t max_length) {
  if (g.alphabet().generator_count() == 0) return g.identity();
  return evaluate(random_word(rng, g.alphabet().generator_count(), max_length), g);
}

}  // namespace gdist::testing
