#include "oflp/reduction.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>

namespace oflp {

unsigned RowPattern::fixed_count() const { return static_cast<unsigned>(std::popcount(mask)); }

std::string RowPattern::to_string() const {
  std::string out = "(" + std::to_string(row + 1) + ",{";
  bool first = true;
  for (unsigned k = 1; k <= arity; ++k) {
    if (!contains(k)) continue;
    if (!first) out += ',';
    out += std::to_string(k);
    first = false;
  }
  return out + "})";
}

std::vector<RowPattern> enumerate_row_patterns(const OrbitSystem& sys) {
  std::vector<RowPattern> out;
  for (std::size_t i = 0; i < sys.rows.size(); ++i) {
    const unsigned p = sys.rows[i].dim;
    if (p >= 31) throw std::invalid_argument("row orbit dimension too large");
    for (unsigned mask = 0; mask < (1U << p); ++mask) out.push_back({i, mask, p});
  }
  return out;
}

std::vector<Rational> ReducedProgram::objective_rationals() const {
  return {objective.begin(), objective.end()};
}

namespace {

bool domain_within(const PartialInjection& inj, const RowPattern& pat) {
  for (unsigned k = 0; k < inj.image.size(); ++k)
    if (inj.image[k] != 0 && !pat.contains(k + 1)) return false;
  return true;
}

}  // namespace

ReducedProgram build_p1(const OrbitSystem& sys) {
  if (!sys.is_canonical()) throw std::invalid_argument("reduction requires an all-Geq, all-Free system");
  if (auto v = validate(sys); !v.empty()) throw std::invalid_argument("invalid system: " + v.front());

  ReducedProgram out;
  out.system = ParamSystem(sys.cols.size());
  out.dim_d = atom_dimension(sys);
  out.n_floor = 2 * out.dim_d;
  for (const auto& c : sys.cols) out.objective.push_back(c.objective);

  for (const RowPattern& pat : enumerate_row_patterns(sys)) {
    ParamIneq e;
    e.lhs.assign(sys.cols.size(), Polynomial());
    e.rhs = Polynomial::constant(sys.rows[pat.row].target);
    const unsigned fixed = pat.fixed_count();
    // Keys are ordered by row first, so this visits exactly row pat.row.
    auto it = sys.coefficients.lower_bound(CoefKey{pat.row, 0, {}});
    for (; it != sys.coefficients.end() && it->first.row == pat.row; ++it) {
      const auto& [key, value] = *it;
      if (!domain_within(key.inj, pat)) continue;
      const unsigned m = sys.cols[key.col].dim;
      const unsigned k = key.inj.domain_size();
      e.lhs[key.col] += falling_factorial(m - k, fixed) * value;
    }
    if (e.is_trivial()) continue;
    out.system.add(std::move(e));
    out.patterns.push_back(pat);
  }
  return out;
}

ReducedProgram build_p2(const OrbitSystem& sys) {
  ReducedProgram out = build_p1(sys);
  const unsigned d = out.dim_d;
  std::vector<Polynomial> col_scale;
  for (const auto& c : sys.cols) col_scale.push_back(falling_factorial(d - c.dim, c.dim));
  const Polynomial rhs_scale = falling_factorial(d, 0);
  for (auto& e : out.system.inequalities) {
    for (std::size_t j = 0; j < e.lhs.size(); ++j) e.lhs[j] *= col_scale[j];
    e.rhs *= rhs_scale;
  }
  return out;
}

std::string print_reduced(const ReducedProgram& r) {
  std::string out;
  for (const auto& e : r.system.inequalities) out += e.to_string() + '\n';
  out += "objective:";
  for (const auto& a : r.objective) out += ' ' + a.get_str();
  out += '\n';
  return out;
}

}  // namespace oflp
