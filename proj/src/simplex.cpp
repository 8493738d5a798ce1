#include "oflp/simplex.hpp"

#include <stdexcept>

namespace oflp {

void FiniteLP::add_geq(std::vector<Rational> coeffs, Rational rhs) {
  geq.push_back({std::move(coeffs), std::move(rhs)});
}

void FiniteLP::add_eq(std::vector<Rational> coeffs, Rational rhs) {
  eq.push_back({std::move(coeffs), std::move(rhs)});
}

void FiniteLP::check_well_formed() const {
  for (const auto* rows : {&geq, &eq})
    for (const auto& row : *rows)
      if (row.coeffs.size() != num_vars)
        throw std::invalid_argument("constraint row length " + std::to_string(row.coeffs.size()) +
                                    " != num_vars " + std::to_string(num_vars));
}

std::string to_string(LPStatus s) {
  switch (s) {
    case LPStatus::Infeasible: return "infeasible";
    case LPStatus::Feasible: return "feasible";
    case LPStatus::Optimal: return "optimal";
    case LPStatus::Unbounded: return "unbounded";
  }
  return "unknown";
}

Rational dot(std::span<const Rational> a, std::span<const Rational> x) {
  Rational acc = 0;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] != 0) acc += a[i] * x[i];
  return acc;
}

bool satisfies(const FiniteLP& lp, std::span<const Rational> x) {
  if (x.size() != lp.num_vars) return false;
  for (const auto& row : lp.geq)
    if (dot(row.coeffs, x) < row.rhs) return false;
  for (const auto& row : lp.eq)
    if (dot(row.coeffs, x) != row.rhs) return false;
  return true;
}

namespace {

// Dense tableau in equality standard form. Each free unknown x_j is split as
// u_j - v_j (columns 2j, 2j+1); geq rows get a surplus column; rows without a
// natural unit column get an artificial one.
class Tableau {
 public:
  explicit Tableau(const FiniteLP& lp) : num_vars_(lp.num_vars) {
    const std::size_t k = lp.num_vars;
    const std::size_t n_geq = lp.geq.size();
    const std::size_t n_rows = n_geq + lp.eq.size();

    // Decide orientation first so we know how many artificials we need.
    struct RowPlan {
      const LinearRow* row;
      bool is_geq;
      bool negate;
      bool needs_artificial;
    };
    std::vector<RowPlan> plan;
    plan.reserve(n_rows);
    for (const auto& r : lp.geq) {
      // a.x - s = b. For b <= 0 negate: -a.x + s = -b >= 0 with s basic.
      bool neg = r.rhs <= 0;
      plan.push_back({&r, true, neg, !neg});
    }
    for (const auto& r : lp.eq) plan.push_back({&r, false, r.rhs < 0, true});

    std::size_t n_art = 0;
    for (const auto& p : plan) n_art += p.needs_artificial ? 1 : 0;

    surplus_begin_ = 2 * k;
    art_begin_ = surplus_begin_ + n_geq;
    cols_ = art_begin_ + n_art;
    rhs_ = cols_;

    a_.assign(n_rows, std::vector<Rational>(cols_ + 1));
    basis_.assign(n_rows, 0);
    allowed_.assign(cols_, true);

    std::size_t art = art_begin_;
    for (std::size_t i = 0; i < n_rows; ++i) {
      const RowPlan& p = plan[i];
      auto& row = a_[i];
      const Rational sgn = p.negate ? -1 : 1;
      for (std::size_t j = 0; j < k; ++j) {
        const Rational& c = p.row->coeffs[j];
        if (c == 0) continue;
        row[2 * j] = sgn * c;
        row[2 * j + 1] = -sgn * c;
      }
      if (p.is_geq) row[surplus_begin_ + i] = -sgn;
      row[rhs_] = sgn * p.row->rhs;
      if (p.needs_artificial) {
        row[art] = 1;
        basis_[i] = art++;
      } else {
        basis_[i] = surplus_begin_ + i;
      }
    }
  }

  bool has_artificials() const { return art_begin_ < cols_; }

  // Phase 1. Returns false when the program is infeasible.
  bool find_feasible_basis() {
    if (has_artificials()) {
      std::vector<Rational> cost(cols_);
      for (std::size_t j = art_begin_; j < cols_; ++j) cost[j] = -1;
      set_objective(cost);
      run();  // bounded above by 0
      if (objective_value() < 0) return false;
      drive_out_artificials();
    }
    for (std::size_t j = art_begin_; j < cols_; ++j) allowed_[j] = false;
    return true;
  }

  // Phase 2 on the original unknowns. Returns false when unbounded.
  bool maximize(std::span<const Rational> objective) {
    std::vector<Rational> cost(cols_);
    for (std::size_t j = 0; j < num_vars_; ++j) {
      cost[2 * j] = objective[j];
      cost[2 * j + 1] = -objective[j];
    }
    set_objective(cost);
    return run();
  }

  std::vector<Rational> solution() const {
    std::vector<Rational> col_value(cols_);
    for (std::size_t i = 0; i < a_.size(); ++i) col_value[basis_[i]] = a_[i][rhs_];
    std::vector<Rational> x(num_vars_);
    for (std::size_t j = 0; j < num_vars_; ++j) x[j] = col_value[2 * j] - col_value[2 * j + 1];
    return x;
  }

 private:
  void set_objective(const std::vector<Rational>& cost) {
    cost_ = cost;
    // reduced[j] = sum_i cost[basis_i] * a_ij - cost_j; reduced[rhs] = objective value.
    reduced_.assign(cols_ + 1, Rational(0));
    for (std::size_t j = 0; j < cols_; ++j) reduced_[j] = -cost[j];
    for (std::size_t i = 0; i < a_.size(); ++i) {
      const Rational& cb = cost[basis_[i]];
      if (cb == 0) continue;
      for (std::size_t j = 0; j <= cols_; ++j)
        if (a_[i][j] != 0) reduced_[j] += cb * a_[i][j];
    }
  }

  Rational objective_value() const { return reduced_[rhs_]; }

  // Bland's rule: lowest-index improving column enters; ratio ties are broken
  // by lowest-index basic variable. Returns false on unboundedness.
  bool run() {
    for (;;) {
      std::size_t enter = cols_;
      for (std::size_t j = 0; j < cols_; ++j) {
        if (allowed_[j] && reduced_[j] < 0) {
          enter = j;
          break;
        }
      }
      if (enter == cols_) return true;

      std::size_t leave = a_.size();
      Rational best_ratio;
      for (std::size_t i = 0; i < a_.size(); ++i) {
        const Rational& piv = a_[i][enter];
        if (piv <= 0) continue;
        Rational ratio = a_[i][rhs_] / piv;
        if (leave == a_.size() || ratio < best_ratio ||
            (ratio == best_ratio && basis_[i] < basis_[leave])) {
          leave = i;
          best_ratio = std::move(ratio);
        }
      }
      if (leave == a_.size()) return false;
      pivot(leave, enter);
    }
  }

  void pivot(std::size_t r, std::size_t q) {
    auto& prow = a_[r];
    {
      const Rational inv = 1 / prow[q];
      for (auto& v : prow)
        if (v != 0) v *= inv;
    }
    std::vector<std::size_t> nz;
    for (std::size_t j = 0; j <= cols_; ++j)
      if (prow[j] != 0) nz.push_back(j);

    Rational tmp;
    auto eliminate = [&](std::vector<Rational>& row) {
      if (row[q] == 0) return;
      const Rational f = row[q];
      for (std::size_t j : nz) {
        mpq_mul(tmp.get_mpq_t(), f.get_mpq_t(), prow[j].get_mpq_t());
        mpq_sub(row[j].get_mpq_t(), row[j].get_mpq_t(), tmp.get_mpq_t());
      }
    };
    for (std::size_t i = 0; i < a_.size(); ++i)
      if (i != r) eliminate(a_[i]);
    if (!reduced_.empty()) eliminate(reduced_);
    basis_[r] = q;
  }

  // After a successful phase 1 every artificial still in the basis sits at
  // zero. Pivot it out on any non-artificial column; otherwise the row is
  // redundant and is dropped.
  void drive_out_artificials() {
    for (std::size_t i = 0; i < a_.size();) {
      if (basis_[i] < art_begin_) {
        ++i;
        continue;
      }
      std::size_t q = art_begin_;
      for (std::size_t j = 0; j < art_begin_; ++j) {
        if (a_[i][j] != 0) {
          q = j;
          break;
        }
      }
      if (q < art_begin_) {
        pivot(i, q);
        ++i;
      } else {
        a_.erase(a_.begin() + static_cast<std::ptrdiff_t>(i));
        basis_.erase(basis_.begin() + static_cast<std::ptrdiff_t>(i));
      }
    }
  }

  std::size_t num_vars_;
  std::size_t surplus_begin_ = 0;
  std::size_t art_begin_ = 0;
  std::size_t cols_ = 0;
  std::size_t rhs_ = 0;
  std::vector<std::vector<Rational>> a_;
  std::vector<std::size_t> basis_;
  std::vector<bool> allowed_;
  std::vector<Rational> cost_;
  std::vector<Rational> reduced_;
};

void verify_witness(const FiniteLP& lp, const std::vector<Rational>& x) {
  if (!satisfies(lp, x)) throw std::logic_error("simplex produced a witness that violates the program");
}

}  // namespace

LPOutcome feasible(const FiniteLP& lp) {
  lp.check_well_formed();
  Tableau t(lp);
  if (!t.find_feasible_basis()) return {LPStatus::Infeasible, {}, {}};
  LPOutcome out{LPStatus::Feasible, t.solution(), {}};
  verify_witness(lp, out.witness);
  return out;
}

LPOutcome maximize(const FiniteLP& lp, std::span<const Rational> objective) {
  lp.check_well_formed();
  if (objective.size() != lp.num_vars) throw std::invalid_argument("objective length mismatch");
  Tableau t(lp);
  if (!t.find_feasible_basis()) return {LPStatus::Infeasible, {}, {}};
  if (!t.maximize(objective)) return {LPStatus::Unbounded, {}, {}};
  LPOutcome out{LPStatus::Optimal, t.solution(), {}};
  verify_witness(lp, out.witness);
  out.value = dot(objective, out.witness);
  return out;
}

std::optional<std::vector<Rational>> strict_witness(const FiniteLP& lp, std::size_t strict_index) {
  if (strict_index >= lp.geq.size()) throw std::out_of_range("strict_index out of range");
  LPOutcome base = feasible(lp);
  if (base.status == LPStatus::Infeasible) return std::nullopt;

  const LinearRow& strict = lp.geq[strict_index];
  if (dot(strict.coeffs, base.witness) > strict.rhs) return base.witness;

  FiniteLP rest(lp.num_vars);
  rest.eq = lp.eq;
  for (std::size_t i = 0; i < lp.geq.size(); ++i)
    if (i != strict_index) rest.geq.push_back(lp.geq[i]);

  LPOutcome sup = maximize(rest, strict.coeffs);
  if (sup.status == LPStatus::Optimal) {
    if (sup.value > strict.rhs) return sup.witness;
    return std::nullopt;
  }
  // Unbounded: push the strict row one unit past its bound.
  rest.add_geq(strict.coeffs, strict.rhs + 1);
  LPOutcome pushed = feasible(rest);
  if (pushed.status != LPStatus::Feasible) throw std::logic_error("unbounded direction lost");
  return pushed.witness;
}

bool strict_feasible(const FiniteLP& lp, std::size_t strict_index) {
  return strict_witness(lp, strict_index).has_value();
}

}  // namespace oflp
