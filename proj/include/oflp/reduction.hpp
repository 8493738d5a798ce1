#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "oflp/orbit_model.hpp"
#include "oflp/paramlp.hpp"

namespace oflp {

// Row orbit i together with the set I of positions filled from the finite
// support; the remaining positions hold fresh atoms.
struct RowPattern {
  std::size_t row = 0;       // 0-based
  unsigned mask = 0;         // bit k set iff position k+1 is in I
  unsigned arity = 0;        // dimension of the row orbit

  unsigned fixed_count() const;
  bool contains(unsigned position) const { return (mask >> (position - 1)) & 1U; }
  // "(1,{1,2})" with 1-based row index.
  std::string to_string() const;

  auto operator<=>(const RowPattern&) const = default;
};

// Ordered by row, then I in binary-counting order (empty set first).
std::vector<RowPattern> enumerate_row_patterns(const OrbitSystem& sys);

struct ReducedProgram {
  ParamSystem system;
  std::vector<RowPattern> patterns;  // source pattern of each kept inequality
  std::vector<Integer> objective;    // one entry per column orbit
  unsigned dim_d = 0;
  unsigned n_floor = 0;  // 2 * dim_d

  std::vector<Rational> objective_rationals() const;
};

// One inequality per row pattern over the column orbits. Requires a canonical
// system; throws std::invalid_argument otherwise.
ReducedProgram build_p1(const OrbitSystem& sys);

// P1 rescaled into the monotonic form whose unknowns are orbit sums.
ReducedProgram build_p2(const OrbitSystem& sys);

// One inequality per line followed by the objective line.
std::string print_reduced(const ReducedProgram& r);

}  // namespace oflp
