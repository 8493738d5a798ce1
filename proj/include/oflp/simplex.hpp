#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "oflp/numerics.hpp"

namespace oflp {

// One row "coeffs . x (>= or =) rhs".
struct LinearRow {
  std::vector<Rational> coeffs;
  Rational rhs;
};

// Ordinary linear program over free (sign-unrestricted) rational unknowns.
struct FiniteLP {
  std::size_t num_vars = 0;
  std::vector<LinearRow> geq;
  std::vector<LinearRow> eq;

  explicit FiniteLP(std::size_t k = 0) : num_vars(k) {}
  void add_geq(std::vector<Rational> coeffs, Rational rhs);
  void add_eq(std::vector<Rational> coeffs, Rational rhs);
  // Throws std::invalid_argument if some row has the wrong length.
  void check_well_formed() const;
};

enum class LPStatus { Infeasible, Feasible, Optimal, Unbounded };

std::string to_string(LPStatus s);

struct LPOutcome {
  LPStatus status = LPStatus::Infeasible;
  std::vector<Rational> witness;  // set for Feasible / Optimal
  Rational value;                 // set for Optimal
};

Rational dot(std::span<const Rational> a, std::span<const Rational> x);

// Exact substitution check of every geq and eq row.
bool satisfies(const FiniteLP& lp, std::span<const Rational> x);

// Two-phase simplex over exact rationals with Bland's rule. Every returned
// witness has been substituted back into the program.
LPOutcome feasible(const FiniteLP& lp);
LPOutcome maximize(const FiniteLP& lp, std::span<const Rational> objective);

// Point solving lp with geq[strict_index] strengthened to a strict
// inequality, or nullopt when that system has no solution. Throws
// std::out_of_range on a bad index.
std::optional<std::vector<Rational>> strict_witness(const FiniteLP& lp, std::size_t strict_index);
bool strict_feasible(const FiniteLP& lp, std::size_t strict_index);

}  // namespace oflp
