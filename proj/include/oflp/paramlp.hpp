#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "oflp/max_result.hpp"
#include "oflp/numerics.hpp"
#include "oflp/simplex.hpp"

namespace oflp {

// p_1(n) x_1 + ... + p_k(n) x_k >= q(n)
struct ParamIneq {
  std::vector<Polynomial> lhs;
  Polynomial rhs;

  // Maximal degree over lhs and rhs.
  std::size_t degree() const;
  // Number of nonzero monomials across lhs and rhs.
  std::size_t size() const;
  // Identically "0 >= 0".
  bool is_trivial() const;
  bool lhs_is_zero() const;

  // "(n-1)·x1 - n·x2 >= n^2"
  std::string to_string() const;

  bool operator==(const ParamIneq&) const = default;
};

// Parametrised inequalities P plus ordinary equalities Gamma over the same k
// unknowns.
struct ParamSystem {
  std::size_t num_vars = 0;
  std::vector<ParamIneq> inequalities;
  std::vector<LinearRow> gamma;

  explicit ParamSystem(std::size_t k = 0) : num_vars(k) {}

  // Silently drops "0 >= 0". Throws std::invalid_argument on a length mismatch.
  void add(ParamIneq e);
  std::size_t total_size() const;
  std::size_t max_degree() const;
  void check_well_formed() const;
};

// Coefficients of n^d, d = degree(E). A constant E is its own head.
LinearRow head(const ParamIneq& e);
// E with the n^d monomial removed; nullopt when that leaves "0 >= 0".
std::optional<ParamIneq> tail(const ParamIneq& e);

// HD(P) together with Gamma, as a finite LP.
FiniteLP head_system(const ParamSystem& p);

// P(n): every inequality evaluated at n; Gamma carried over.
FiniteLP evaluate_at(const ParamSystem& p, unsigned long n);

struct IterationRecord {
  enum class Outcome { Degenerate, Solvable, Unsolvable };

  std::size_t iteration = 0;  // 1-based
  Outcome outcome = Outcome::Degenerate;
  // For Degenerate: index (into the current P) and text of the chosen E.
  std::size_t chosen = 0;
  std::string chosen_text;
  bool tail_dropped = false;
  std::size_t p_before = 0;
  std::size_t p_after = 0;
  std::size_t size_before = 0;
  std::size_t size_after = 0;
  std::size_t gamma_size = 0;  // after the iteration

  std::string to_string() const;
};

struct AlmostAllVerdict {
  bool solvable = false;
  std::vector<Rational> witness;  // set when solvable
  std::vector<IterationRecord> trace;
  ParamSystem final_system;  // P and Gamma at termination
};

// Decides whether a single vector solves P(n) for all sufficiently large n.
// The first degenerate inequality in sequence order is the one replaced by
// its tail.
AlmostAllVerdict almost_all_solve(const ParamSystem& p);

// Supremum of S over almost-all-solutions of P. The attained flag of a
// finite result is filled by attained().
MaxResult almost_all_maximize(const ParamSystem& p, std::span<const Rational> objective);

// Whether P plus "S.x = v" still has an almost-all-solution.
bool attained(const ParamSystem& p, std::span<const Rational> objective, const Rational& v);

// n0 such that x solves P(n) for every n >= n0. Throws std::logic_error when
// x fails P(n0) or P(n0+1), i.e. when x was not an almost-all-solution.
Integer valid_threshold(const ParamSystem& p, std::span<const Rational> x);

}  // namespace oflp
