#include "oflp/transforms.hpp"

#include <algorithm>
#include <stdexcept>

namespace oflp {

namespace {

void require_canonical(const OrbitSystem& sys, const char* what) {
  if (!sys.is_canonical()) throw std::invalid_argument(std::string(what) + " requires an all-Geq, all-Free system");
}

}  // namespace

OrbitSystem nonneg_eq_to_ineq(const OrbitSystem& sys) {
  const bool ok = std::all_of(sys.rows.begin(), sys.rows.end(), [](const RowOrbit& r) { return r.sense == Sense::Eq; }) &&
                  std::all_of(sys.cols.begin(), sys.cols.end(), [](const ColOrbit& c) { return c.sign == Sign::NonNeg; });
  if (!ok) throw std::invalid_argument("nonneg_eq_to_ineq requires all-Eq rows and all-NonNeg columns");
  return canonicalize(sys);
}

OrbitSystem ineq_to_nonneg_eq(const OrbitSystem& sys) {
  require_canonical(sys, "ineq_to_nonneg_eq");
  const std::size_t r = sys.cols.size();
  OrbitSystem out;
  for (const auto& row : sys.rows) out.rows.push_back({row.dim, Sense::Eq, row.target});
  for (const auto& c : sys.cols) out.cols.push_back({c.dim, Sign::NonNeg, c.objective});
  for (const auto& c : sys.cols) out.cols.push_back({c.dim, Sign::NonNeg, -c.objective});
  for (const auto& row : sys.rows) out.cols.push_back({row.dim, Sign::NonNeg, 0});
  for (const auto& [key, v] : sys.coefficients) {
    out.set_coefficient(key.row, key.col, key.inj, v);
    out.set_coefficient(key.row, r + key.col, key.inj, -v);
  }
  for (std::size_t i = 0; i < sys.rows.size(); ++i)
    out.set_coefficient(i, 2 * r + i, PartialInjection::identity(sys.rows[i].dim), -1);
  return out;
}

OrbitSystem fin_to_general(const OrbitSystem& sys) {
  require_canonical(sys, "fin_to_general");
  OrbitSystem out = sys;
  const std::size_t y = out.cols.size();
  const std::size_t row = out.rows.size();
  out.cols.push_back({0, Sign::Free, 0});
  out.rows.push_back({0, Sense::Geq, 0});
  for (std::size_t j = 0; j < y; ++j) out.set_coefficient(row, j, PartialInjection::empty(0, out.cols[j].dim), 1);
  out.set_coefficient(row, y, PartialInjection::empty(0, 0), -1);
  return out;
}

}  // namespace oflp
