#include "oflp/instantiate.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace oflp {

namespace {

// All non-repeating tuples of length len over {1..n}, lexicographic.
std::vector<AtomTuple> arrangements(unsigned n, unsigned len) {
  std::vector<AtomTuple> out;
  if (len > n) return out;
  AtomTuple cur;
  std::vector<bool> used(n + 1, false);
  auto rec = [&](auto&& self) -> void {
    if (cur.size() == len) {
      out.push_back(cur);
      return;
    }
    for (unsigned a = 1; a <= n; ++a) {
      if (used[a]) continue;
      used[a] = true;
      cur.push_back(a);
      self(self);
      cur.pop_back();
      used[a] = false;
    }
  };
  rec(rec);
  return out;
}

std::size_t falling(unsigned n, unsigned w) {
  std::size_t r = 1;
  for (unsigned i = 0; i < w; ++i) r *= n - i;
  return r;
}

}  // namespace

std::size_t FiniteInstance::column_index(std::size_t orbit, const AtomTuple& atoms) const {
  const unsigned n = atom_count;
  const auto m = static_cast<unsigned>(atoms.size());
  std::vector<bool> used(n + 1, false);
  std::size_t rank = 0;
  for (unsigned k = 0; k < m; ++k) {
    const unsigned a = atoms[k];
    if (a < 1 || a > n || used[a]) throw std::out_of_range("not a column tuple");
    unsigned smaller = 0;
    for (unsigned b = 1; b < a; ++b) smaller += used[b] ? 0 : 1;
    rank += smaller * falling(n - k - 1, m - k - 1);
    used[a] = true;
  }
  return orbit_offset.at(orbit) + rank;
}

FiniteInstance instantiate_finite(const OrbitSystem& sys, unsigned n) {
  if (!sys.is_canonical()) throw std::invalid_argument("instantiation requires an all-Geq, all-Free system");
  FiniteInstance inst;
  inst.atom_count = n;
  for (std::size_t j = 0; j < sys.cols.size(); ++j) {
    inst.orbit_offset.push_back(inst.columns.size());
    for (auto& t : arrangements(n, sys.cols[j].dim)) {
      inst.columns.push_back({j, std::move(t)});
      inst.objective.emplace_back(sys.cols[j].objective);
    }
  }
  inst.orbit_offset.push_back(inst.columns.size());
  inst.lp = FiniteLP(inst.columns.size());

  for (const RowPattern& pat : enumerate_row_patterns(sys)) {
    const unsigned fixed = pat.fixed_count();
    for (const AtomTuple& filling : arrangements(n, fixed)) {
      AtomTuple row(pat.arity);
      unsigned next_fixed = 0;
      unsigned next_fresh = n + 1;
      for (unsigned k = 1; k <= pat.arity; ++k) row[k - 1] = pat.contains(k) ? filling[next_fixed++] : next_fresh++;

      std::vector<Rational> coeffs(inst.columns.size());
      for (std::size_t c = 0; c < inst.columns.size(); ++c) {
        const ColumnLabel& col = inst.columns[c];
        PartialInjection inj{static_cast<unsigned>(col.atoms.size()), std::vector<unsigned>(row.size(), 0)};
        for (std::size_t k = 0; k < row.size(); ++k)
          for (std::size_t l = 0; l < col.atoms.size(); ++l)
            if (row[k] == col.atoms[l]) inj.image[k] = static_cast<unsigned>(l + 1);
        const Integer& v = sys.coefficient(CoefKey{pat.row, col.orbit, std::move(inj)});
        if (v != 0) coeffs[c] = v;
      }
      inst.lp.add_geq(std::move(coeffs), Rational(sys.rows[pat.row].target));
      inst.rows.push_back({pat.row, pat, std::move(row)});
    }
  }
  return inst;
}

MaxResult oracle_supremum(const FiniteInstance& inst) {
  LPOutcome out = maximize(inst.lp, inst.objective);
  switch (out.status) {
    case LPStatus::Infeasible: return MaxResult::neg_infinity();
    case LPStatus::Unbounded: return MaxResult::pos_infinity();
    default: return MaxResult::finite(out.value, true);
  }
}

MaxResult oracle_supremum(const OrbitSystem& sys, unsigned n) { return oracle_supremum(instantiate_finite(sys, n)); }

std::vector<Rational> symmetrize_over(const FiniteInstance& inst, std::span<const Rational> x,
                                      std::span<const unsigned> atoms) {
  if (x.size() != inst.columns.size()) throw std::invalid_argument("vector length does not match the columns");
  if (atoms.size() > 6) throw std::invalid_argument("symmetrization over more than 6 atoms is not supported");
  std::vector<unsigned> from(atoms.begin(), atoms.end());
  std::sort(from.begin(), from.end());
  std::vector<unsigned> to = from;
  std::vector<unsigned> sigma(inst.atom_count + 1);

  std::vector<Rational> y(x.size());
  unsigned long count = 0;
  do {
    std::iota(sigma.begin(), sigma.end(), 0U);
    for (std::size_t k = 0; k < from.size(); ++k) sigma.at(from[k]) = to[k];
    for (std::size_t c = 0; c < inst.columns.size(); ++c) {
      if (x[c] == 0) continue;
      AtomTuple image = inst.columns[c].atoms;
      for (auto& a : image) a = sigma[a];
      y[inst.column_index(inst.columns[c].orbit, image)] += x[c];
    }
    ++count;
  } while (std::next_permutation(to.begin(), to.end()));

  const Rational denom(count);
  for (auto& v : y) v /= denom;
  return y;
}

std::vector<Rational> symmetrize(const FiniteInstance& inst, std::span<const Rational> x) {
  if (inst.atom_count > 6) throw std::invalid_argument("symmetrize refuses more than 6 atoms");
  std::vector<unsigned> all(inst.atom_count);
  std::iota(all.begin(), all.end(), 1U);
  return symmetrize_over(inst, x, all);
}

std::vector<Rational> orbit_sums(const FiniteInstance& inst, std::span<const Rational> x) {
  if (x.size() != inst.columns.size()) throw std::invalid_argument("vector length does not match the columns");
  std::vector<Rational> sums(inst.orbit_offset.size() - 1);
  for (std::size_t c = 0; c < x.size(); ++c) sums[inst.columns[c].orbit] += x[c];
  return sums;
}

namespace {

std::string tuple_string(const AtomTuple& t) {
  std::string out = "(";
  for (std::size_t k = 0; k < t.size(); ++k) out += (k ? "," : "") + std::to_string(t[k]);
  return out + ")";
}

}  // namespace

std::string print_instance(const FiniteInstance& inst) {
  std::ostringstream out;
  out << "atoms: " << inst.atom_count << '\n';
  out << "columns:\n";
  for (std::size_t c = 0; c < inst.columns.size(); ++c)
    out << "  x" << c + 1 << " = orbit " << inst.columns[c].orbit + 1 << ' ' << tuple_string(inst.columns[c].atoms)
        << '\n';
  out << "rows:\n";
  for (std::size_t r = 0; r < inst.rows.size(); ++r) {
    const RowLabel& lbl = inst.rows[r];
    const LinearRow& row = inst.lp.geq[r];
    out << "  " << lbl.pattern.to_string() << ' ' << tuple_string(lbl.atoms) << ": ";
    bool first = true;
    for (std::size_t c = 0; c < row.coeffs.size(); ++c) {
      const Rational& a = row.coeffs[c];
      if (a == 0) continue;
      const bool neg = a < 0;
      const Rational mag = neg ? Rational(-a) : a;
      out << (first ? (neg ? "-" : "") : (neg ? " - " : " + "));
      if (mag != 1) out << to_string(mag) << "·";
      out << 'x' << c + 1;
      first = false;
    }
    if (first) out << '0';
    out << " >= " << to_string(row.rhs) << '\n';
  }
  out << "objective:";
  for (const auto& s : inst.objective) out << ' ' << to_string(s);
  out << '\n';
  return out.str();
}

}  // namespace oflp
