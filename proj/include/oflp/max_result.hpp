#pragma once

#include <string>

#include "oflp/numerics.hpp"

namespace oflp {

// Supremum of a linear objective: -inf (infeasible), a rational, or +inf.
struct MaxResult {
  enum class Kind { NegInfinity, Finite, PosInfinity };

  Kind kind = Kind::NegInfinity;
  Rational value;         // meaningful only when Finite
  bool attained = false;  // meaningful only when Finite

  static MaxResult neg_infinity() { return {Kind::NegInfinity, 0, false}; }
  static MaxResult pos_infinity() { return {Kind::PosInfinity, 0, false}; }
  static MaxResult finite(Rational v, bool attained) { return {Kind::Finite, std::move(v), attained}; }

  bool is_finite() const { return kind == Kind::Finite; }

  // Compares kind and value only; attainment is a separate question.
  bool same_value(const MaxResult& o) const {
    return kind == o.kind && (kind != Kind::Finite || value == o.value);
  }

  // "-inf", "+inf" or the value.
  std::string value_string() const {
    switch (kind) {
      case Kind::NegInfinity: return "-inf";
      case Kind::PosInfinity: return "+inf";
      case Kind::Finite: return to_string(value);
    }
    return "?";
  }
};

}  // namespace oflp
