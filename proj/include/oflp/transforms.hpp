#pragma once

#include "oflp/orbit_model.hpp"

namespace oflp {

// Requires all rows Eq and all columns NonNeg. Each equality row orbit is
// split into a pair of inequalities and every column orbit gets an "x >= 0"
// row orbit. Throws std::invalid_argument on a precondition violation.
OrbitSystem nonneg_eq_to_ineq(const OrbitSystem& sys);

// Requires a canonical system. Columns become C + C + B (positive part,
// negative part, one slack orbit per row orbit), rows become equalities and
// every column is nonnegative.
OrbitSystem ineq_to_nonneg_eq(const OrbitSystem& sys);

// Requires a canonical system. Adds a dimension-0 column y and the row
// "sum of all x >= y".
OrbitSystem fin_to_general(const OrbitSystem& sys);

}  // namespace oflp
