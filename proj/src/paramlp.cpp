#include "oflp/paramlp.hpp"

#include <algorithm>
#include <stdexcept>

namespace oflp {

std::size_t ParamIneq::degree() const {
  std::size_t d = rhs.degree();
  for (const auto& p : lhs) d = std::max(d, p.degree());
  return d;
}

std::size_t ParamIneq::size() const {
  std::size_t s = rhs.monomial_count();
  for (const auto& p : lhs) s += p.monomial_count();
  return s;
}

bool ParamIneq::lhs_is_zero() const {
  return std::all_of(lhs.begin(), lhs.end(), [](const Polynomial& p) { return p.is_zero(); });
}

bool ParamIneq::is_trivial() const { return rhs.is_zero() && lhs_is_zero(); }

namespace {

// Coefficient rendering for one lhs term, given the coefficient is nonzero.
// Returns the magnitude part and whether the term is subtracted.
std::pair<std::string, bool> render_coefficient(const Polynomial& p) {
  const bool negative = p.leading() < 0;
  const Polynomial mag = negative ? -p : p;
  if (mag == Polynomial::constant(1)) return {"", negative};
  if (mag.monomial_count() == 1) return {mag.to_string(true) + "·", negative};
  return {"(" + mag.to_string(true) + ")·", negative};
}

}  // namespace

std::string ParamIneq::to_string() const {
  std::string out;
  for (std::size_t j = 0; j < lhs.size(); ++j) {
    if (lhs[j].is_zero()) continue;
    auto [coef, negative] = render_coefficient(lhs[j]);
    if (out.empty())
      out += negative ? "-" : "";
    else
      out += negative ? " - " : " + ";
    out += coef + "x" + std::to_string(j + 1);
  }
  if (out.empty()) out = "0";
  return out + " >= " + rhs.to_string(true);
}

void ParamSystem::add(ParamIneq e) {
  if (e.lhs.size() != num_vars)
    throw std::invalid_argument("inequality has " + std::to_string(e.lhs.size()) + " coefficients, expected " +
                                std::to_string(num_vars));
  if (e.is_trivial()) return;
  inequalities.push_back(std::move(e));
}

std::size_t ParamSystem::total_size() const {
  std::size_t s = 0;
  for (const auto& e : inequalities) s += e.size();
  return s;
}

std::size_t ParamSystem::max_degree() const {
  std::size_t d = 0;
  for (const auto& e : inequalities) d = std::max(d, e.degree());
  return d;
}

void ParamSystem::check_well_formed() const {
  for (const auto& e : inequalities)
    if (e.lhs.size() != num_vars) throw std::invalid_argument("parametrised inequality of wrong length");
  for (const auto& g : gamma)
    if (g.coeffs.size() != num_vars) throw std::invalid_argument("gamma equality of wrong length");
}

LinearRow head(const ParamIneq& e) {
  const std::size_t d = e.degree();
  LinearRow row;
  row.coeffs.reserve(e.lhs.size());
  for (const auto& p : e.lhs) row.coeffs.emplace_back(p.coeff(d));
  row.rhs = e.rhs.coeff(d);
  return row;
}

std::optional<ParamIneq> tail(const ParamIneq& e) {
  const std::size_t d = e.degree();
  ParamIneq t;
  t.lhs.reserve(e.lhs.size());
  for (const auto& p : e.lhs) t.lhs.push_back(p.without_monomial(d));
  t.rhs = e.rhs.without_monomial(d);
  if (t.is_trivial()) return std::nullopt;
  return t;
}

FiniteLP head_system(const ParamSystem& p) {
  FiniteLP lp(p.num_vars);
  for (const auto& e : p.inequalities) lp.geq.push_back(head(e));
  lp.eq = p.gamma;
  return lp;
}

FiniteLP evaluate_at(const ParamSystem& p, unsigned long n) {
  FiniteLP lp(p.num_vars);
  const Integer at(n);
  for (const auto& e : p.inequalities) {
    LinearRow row;
    row.coeffs.reserve(e.lhs.size());
    for (const auto& c : e.lhs) row.coeffs.emplace_back(c.evaluate(at));
    row.rhs = e.rhs.evaluate(at);
    lp.geq.push_back(std::move(row));
  }
  lp.eq = p.gamma;
  return lp;
}

std::string IterationRecord::to_string() const {
  std::string out = "iteration " + std::to_string(iteration) + ": ";
  switch (outcome) {
    case Outcome::Degenerate:
      out += "degenerate E" + std::to_string(chosen + 1) + " [" + chosen_text + "] " +
             (tail_dropped ? "dropped" : "replaced by tail");
      break;
    case Outcome::Solvable: out += "all heads strictly satisfiable, SOLVABLE"; break;
    case Outcome::Unsolvable: out += "head system infeasible, UNSOLVABLE"; break;
  }
  out += "; |P| " + std::to_string(p_before) + " -> " + std::to_string(p_after) + "; size " +
         std::to_string(size_before) + " -> " + std::to_string(size_after) + "; |Gamma| " +
         std::to_string(gamma_size);
  return out;
}

namespace {

bool strictly_satisfies_heads(const FiniteLP& heads, std::span<const Rational> x) {
  for (const auto& row : heads.geq)
    if (dot(row.coeffs, x) <= row.rhs) return false;
  for (const auto& row : heads.eq)
    if (dot(row.coeffs, x) != row.rhs) return false;
  return true;
}

}  // namespace

AlmostAllVerdict almost_all_solve(const ParamSystem& input) {
  input.check_well_formed();
  AlmostAllVerdict verdict;
  ParamSystem p(input.num_vars);
  p.gamma = input.gamma;
  for (const auto& e : input.inequalities) p.add(e);

  for (std::size_t iteration = 1;; ++iteration) {
    IterationRecord rec;
    rec.iteration = iteration;
    rec.p_before = p.inequalities.size();
    rec.size_before = p.total_size();

    const FiniteLP heads = head_system(p);
    LPOutcome base = feasible(heads);
    if (base.status == LPStatus::Infeasible) {
      rec.outcome = IterationRecord::Outcome::Unsolvable;
      rec.p_after = rec.p_before;
      rec.size_after = rec.size_before;
      rec.gamma_size = p.gamma.size();
      verdict.trace.push_back(std::move(rec));
      verdict.final_system = std::move(p);
      return verdict;
    }

    // Strict points found so far, starting from the base witness; a point
    // already strict on E answers E without another LP.
    std::vector<std::vector<Rational>> strict_points{base.witness};
    std::vector<bool> used{false};
    std::optional<std::size_t> degenerate;
    for (std::size_t e = 0; e < p.inequalities.size(); ++e) {
      const LinearRow& row = heads.geq[e];
      auto hit = std::find_if(strict_points.begin(), strict_points.end(),
                              [&](const auto& w) { return dot(row.coeffs, w) > row.rhs; });
      if (hit != strict_points.end()) {
        used[hit - strict_points.begin()] = true;
        continue;
      }
      auto w = strict_witness(heads, e);
      if (!w) {
        degenerate = e;
        break;
      }
      strict_points.push_back(std::move(*w));
      used.push_back(true);
    }

    if (!degenerate) {
      std::vector<Rational> x = base.witness;
      unsigned long count = 0;
      for (std::size_t i = 0; i < strict_points.size(); ++i) {
        if (!used[i]) continue;
        if (count++ == 0) std::fill(x.begin(), x.end(), Rational(0));
        for (std::size_t j = 0; j < x.size(); ++j) x[j] += strict_points[i][j];
      }
      if (count > 1)
        for (auto& v : x) v /= Rational(count);
      if (!strictly_satisfies_heads(heads, x))
        throw std::logic_error("averaged witness does not solve the strict head system");
      rec.outcome = IterationRecord::Outcome::Solvable;
      rec.p_after = rec.p_before;
      rec.size_after = rec.size_before;
      rec.gamma_size = p.gamma.size();
      verdict.trace.push_back(std::move(rec));
      verdict.solvable = true;
      verdict.witness = std::move(x);
      verdict.final_system = std::move(p);
      return verdict;
    }

    const std::size_t e = *degenerate;
    rec.chosen = e;
    rec.chosen_text = p.inequalities[e].to_string();
    p.gamma.push_back(heads.geq[e]);
    if (auto t = tail(p.inequalities[e])) {
      p.inequalities[e] = std::move(*t);
    } else {
      rec.tail_dropped = true;
      p.inequalities.erase(p.inequalities.begin() + static_cast<std::ptrdiff_t>(e));
    }
    rec.outcome = IterationRecord::Outcome::Degenerate;
    rec.p_after = p.inequalities.size();
    rec.size_after = p.total_size();
    rec.gamma_size = p.gamma.size();
    if (rec.size_after >= rec.size_before) throw std::logic_error("size measure did not decrease");
    verdict.trace.push_back(std::move(rec));
  }
}

MaxResult almost_all_maximize(const ParamSystem& p, std::span<const Rational> objective) {
  if (objective.size() != p.num_vars) throw std::invalid_argument("objective length mismatch");
  AlmostAllVerdict v = almost_all_solve(p);
  if (!v.solvable) return MaxResult::neg_infinity();
  LPOutcome out = maximize(head_system(v.final_system), objective);
  switch (out.status) {
    case LPStatus::Unbounded: return MaxResult::pos_infinity();
    case LPStatus::Optimal: return MaxResult::finite(out.value, attained(p, objective, out.value));
    default: throw std::logic_error("head system infeasible after a solvable verdict");
  }
}

bool attained(const ParamSystem& p, std::span<const Rational> objective, const Rational& v) {
  if (objective.size() != p.num_vars) throw std::invalid_argument("objective length mismatch");
  ParamSystem q = p;
  std::vector<Rational> all(objective.begin(), objective.end());
  all.push_back(v);
  const Integer scale = lcm_of_denominators(all);
  ParamIneq up, down;
  for (const auto& s : objective) {
    Integer c = Rational(s * scale).get_num();
    up.lhs.push_back(Polynomial::constant(c));
    down.lhs.push_back(Polynomial::constant(-c));
  }
  Integer b = Rational(v * scale).get_num();
  up.rhs = Polynomial::constant(b);
  down.rhs = Polynomial::constant(-b);
  q.add(std::move(up));
  q.add(std::move(down));
  return almost_all_solve(q).solvable;
}

Integer valid_threshold(const ParamSystem& p, std::span<const Rational> x) {
  if (x.size() != p.num_vars) throw std::invalid_argument("witness length mismatch");
  Integer n0 = 1;
  for (const auto& e : p.inequalities) {
    // g(n) = rhs(n) - sum_j lhs_j(n) x_j must end up <= 0.
    std::vector<Rational> g(e.degree() + 1);
    for (std::size_t i = 0; i < g.size(); ++i) {
      g[i] = e.rhs.coeff(i);
      for (std::size_t j = 0; j < x.size(); ++j)
        if (x[j] != 0) g[i] -= e.lhs[j].coeff(i) * x[j];
    }
    const bool zero = std::all_of(g.begin(), g.end(), [](const Rational& c) { return c == 0; });
    if (!zero) n0 = std::max(n0, sign_stability_bound(g));
  }
  if (!n0.fits_ulong_p()) throw std::overflow_error("threshold does not fit an unsigned long");
  const unsigned long n = n0.get_ui();
  for (unsigned long m : {n, n + 1})
    if (!satisfies(evaluate_at(p, m), x))
      throw std::logic_error("vector is not an almost-all-solution: fails at n = " + std::to_string(m));
  return n0;
}

}  // namespace oflp
