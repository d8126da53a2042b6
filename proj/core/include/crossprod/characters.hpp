#pragma once

#include "crossprod/reps.hpp"

#include <cstdint>
#include <vector>

namespace crossprod {

struct CharacterTable {
  FiniteGroup group;
  std::vector<std::vector<int>> classes;    // identity class first
  std::vector<std::vector<Complex>> chars;  // chars[rho][class]
  std::vector<int> dims;
  std::vector<Rep> irreps;  // labelled by group element label

  int size() const { return static_cast<int>(dims.size()); }
  int class_of(int g) const;
  // chi_rho as a function on group elements.
  std::vector<Complex> on_elements(int rho) const;
};

// Generator label used for group element x in group_regular_rep and CharacterTable::irreps.
std::string element_generator_label(const FiniteGroup& g, int x);

// Left regular representation of the group algebra, one generator per element.
Rep group_regular_rep(const FiniteGroup& g);

// Irreps ordered by dimension, then by the character vector rounded to 1e-6
// (lexicographic on (re, im) pairs).
CharacterTable character_table(const FiniteGroup& g, std::uint64_t seed, const Tolerance& tol = {});

}  // namespace crossprod
