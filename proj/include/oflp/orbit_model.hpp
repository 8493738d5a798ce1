#pragma once

#include <compare>
#include <cstddef>
#include <istream>
#include <map>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "oflp/max_result.hpp"
#include "oflp/numerics.hpp"

namespace oflp {

// Partial injection from {1..source_arity} to {1..target_arity}, one per
// equivariant orbit of A^(p) x A^(m). image[k] is the 1-based image of
// position k+1, or 0 when undefined.
struct PartialInjection {
  unsigned target_arity = 0;
  std::vector<unsigned> image;

  unsigned source_arity() const { return static_cast<unsigned>(image.size()); }
  unsigned domain_size() const;
  bool is_injective() const;
  bool within_arity() const;

  static PartialInjection empty(unsigned source_arity, unsigned target_arity);
  static PartialInjection identity(unsigned arity);

  // "1,0,2"; "-" for source arity 0.
  std::string to_string() const;
  // Inverse of to_string; target_arity must be supplied by the caller.
  static PartialInjection parse(std::string_view text, unsigned target_arity);

  auto operator<=>(const PartialInjection&) const = default;
  bool operator==(const PartialInjection&) const = default;
};

enum class Sense { Geq, Eq };
enum class Sign { Free, NonNeg };

struct RowOrbit {
  unsigned dim = 0;
  Sense sense = Sense::Geq;
  Integer target = 0;
  bool operator==(const RowOrbit&) const = default;
};

struct ColOrbit {
  unsigned dim = 0;
  Sign sign = Sign::Free;
  Integer objective = 0;
  bool operator==(const ColOrbit&) const = default;
};

// 0-based orbit indices.
struct CoefKey {
  std::size_t row = 0;
  std::size_t col = 0;
  PartialInjection inj;

  auto operator<=>(const CoefKey&) const = default;
  bool operator==(const CoefKey&) const = default;
};

// Equivariant orbit-finite LP with rows A^(p_1) + ... + A^(p_s) and columns
// A^(m_1) + ... + A^(m_r). Coefficients are constant on each orbit of
// A^(p_i) x A^(m_j) and stored sparsely; an absent key means zero.
struct OrbitSystem {
  std::vector<RowOrbit> rows;
  std::vector<ColOrbit> cols;
  std::map<CoefKey, Integer> coefficients;

  // Stores nonzero values, erases on zero.
  void set_coefficient(std::size_t row, std::size_t col, PartialInjection inj, const Integer& value);
  const Integer& coefficient(const CoefKey& key) const;

  bool is_canonical() const;
  bool operator==(const OrbitSystem&) const = default;
};

class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, std::size_t column, const std::string& message);
  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

// Line-oriented text format:
//   rows: p1 p2 ...         cols: m1 m2 ...
//   sense <i> eq            sign <j> nonneg
//   coef <i> <j> <inj> <v>  target <i> <v>      objective <j> <v>
// Indices are 1-based, '#' starts a comment.
OrbitSystem parse_system(std::istream& in);
OrbitSystem parse_system_string(std::string_view text);
OrbitSystem load_system(const std::string& path);
std::string print_system(const OrbitSystem& sys);

std::vector<std::string> validate(const OrbitSystem& sys);

// Equalities become pairs of inequalities, nonnegative columns get an
// explicit "x >= 0" row orbit. The result is all-Geq / all-Free.
OrbitSystem canonicalize(const OrbitSystem& sys);

unsigned atom_dimension(const OrbitSystem& sys);

}  // namespace oflp
