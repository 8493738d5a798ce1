#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "oflp/max_result.hpp"
#include "oflp/orbit_model.hpp"
#include "oflp/reduction.hpp"
#include "oflp/simplex.hpp"

namespace oflp {

using AtomTuple = std::vector<unsigned>;

struct ColumnLabel {
  std::size_t orbit = 0;
  AtomTuple atoms;  // non-repeating, over {1..n}
};

struct RowLabel {
  std::size_t orbit = 0;
  RowPattern pattern;
  AtomTuple atoms;  // positions in the pattern over {1..n}, the rest fresh (> n)
};

// The finite LP obtained by keeping the columns supported in {1..n} and one
// row per orbit of the atom permutations fixing {1..n} pointwise.
struct FiniteInstance {
  FiniteLP lp;
  std::vector<Rational> objective;
  std::vector<ColumnLabel> columns;
  std::vector<RowLabel> rows;
  std::vector<std::size_t> orbit_offset;  // first column of each orbit; size r + 1
  unsigned atom_count = 0;

  std::size_t column_index(std::size_t orbit, const AtomTuple& atoms) const;
};

// Requires a canonical system.
FiniteInstance instantiate_finite(const OrbitSystem& sys, unsigned n);

MaxResult oracle_supremum(const FiniteInstance& inst);
MaxResult oracle_supremum(const OrbitSystem& sys, unsigned n);

// Average of x over all n! permutations of {1..n}. Refuses n > 6.
std::vector<Rational> symmetrize(const FiniteInstance& inst, std::span<const Rational> x);
// Average over the permutations of the given atoms only, all others fixed.
std::vector<Rational> symmetrize_over(const FiniteInstance& inst, std::span<const Rational> x,
                                      std::span<const unsigned> atoms);

std::vector<Rational> orbit_sums(const FiniteInstance& inst, std::span<const Rational> x);

// Labeled text dump, one constraint per line.
std::string print_instance(const FiniteInstance& inst);

}  // namespace oflp
