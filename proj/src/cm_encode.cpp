#include "oflp/cm_encode.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace oflp {

void CounterMachine::check_well_formed() const {
  if (dim == 0) throw std::invalid_argument("counter machine needs at least one counter");
  for (std::size_t i = 0; i < instructions.size(); ++i)
    if (instructions[i].size() != dim)
      throw std::invalid_argument("instruction " + std::to_string(i + 1) + " has " +
                                  std::to_string(instructions[i].size()) + " entries, expected " + std::to_string(dim));
}

bool is_step(const CounterMachine& m, const Config& c, std::size_t instruction, const Config& next) {
  if (instruction >= m.instructions.size() || c.size() != m.dim || next.size() != m.dim) return false;
  const Instruction& ins = m.instructions[instruction];
  for (unsigned k = 0; k < m.dim; ++k) {
    if (c[k] < 0 || next[k] < 0) return false;
    if (ins[k]) {
      if (next[k] != c[k] + *ins[k]) return false;
    } else if (c[k] != 0 || next[k] != 0) {
      return false;
    }
  }
  return true;
}

void validate_run(const CounterMachine& m, const Run& r) {
  m.check_well_formed();
  if (r.configs.empty()) throw std::invalid_argument("run has no configurations");
  if (r.steps.size() + 1 != r.configs.size())
    throw std::invalid_argument("run has " + std::to_string(r.steps.size()) + " steps but " +
                                std::to_string(r.configs.size()) + " configurations");
  for (const auto& c : r.configs) {
    if (c.size() != m.dim) throw std::invalid_argument("configuration of wrong width");
    if (std::any_of(c.begin(), c.end(), [](std::int64_t v) { return v < 0; }))
      throw std::invalid_argument("configuration with a negative counter");
  }
  for (std::size_t j = 0; j < r.steps.size(); ++j)
    if (!is_step(m, r.configs[j], r.steps[j], r.configs[j + 1]))
      throw std::invalid_argument("step " + std::to_string(j + 1) + " (instruction " + std::to_string(r.steps[j] + 1) +
                                  ") is not a valid transition");
}

namespace {

std::vector<std::string> split_tokens(const std::string& line) {
  std::string body = line.substr(0, line.find('#'));
  std::istringstream in(body);
  std::vector<std::string> out;
  for (std::string tok; in >> tok;) out.push_back(tok);
  return out;
}

std::int64_t parse_int64(const std::string& tok, const std::string& context) {
  try {
    std::size_t used = 0;
    long long v = std::stoll(tok, &used);
    if (used != tok.size()) throw std::invalid_argument("");
    return v;
  } catch (const std::exception&) {
    throw std::invalid_argument(context + ": expected an integer, got '" + tok + "'");
  }
}

}  // namespace

CounterMachine parse_machine(std::istream& in) {
  CounterMachine m;
  bool have_dim = false;
  std::size_t line_no = 0;
  for (std::string line; std::getline(in, line);) {
    ++line_no;
    auto toks = split_tokens(line);
    if (toks.empty()) continue;
    const std::string where = "line " + std::to_string(line_no);
    if (!have_dim) {
      if (toks.size() != 2 || toks[0] != "dim") throw std::invalid_argument(where + ": expected 'dim <d>'");
      std::int64_t d = parse_int64(toks[1], where);
      if (d < 1 || d > 64) throw std::invalid_argument(where + ": dimension out of range");
      m.dim = static_cast<unsigned>(d);
      have_dim = true;
      continue;
    }
    if (toks.size() != m.dim)
      throw std::invalid_argument(where + ": instruction has " + std::to_string(toks.size()) + " entries, expected " +
                                  std::to_string(m.dim));
    Instruction ins;
    for (const auto& tok : toks) {
      if (tok == "Z" || tok == "z")
        ins.emplace_back(std::nullopt);
      else
        ins.emplace_back(parse_int64(tok, where));
    }
    m.instructions.push_back(std::move(ins));
  }
  if (!have_dim) throw std::invalid_argument("missing 'dim' line");
  return m;
}

Config parse_config(const std::string& text, unsigned dim) {
  std::string spaced = text;
  std::replace(spaced.begin(), spaced.end(), ',', ' ');
  auto toks = split_tokens(spaced);
  if (toks.size() != dim)
    throw std::invalid_argument("configuration '" + text + "' has " + std::to_string(toks.size()) +
                                " entries, expected " + std::to_string(dim));
  Config c;
  for (const auto& tok : toks) c.push_back(parse_int64(tok, "configuration"));
  return c;
}

Run parse_run(std::istream& in, unsigned dim) {
  Run r;
  bool expect_config = true;
  std::size_t line_no = 0;
  for (std::string line; std::getline(in, line);) {
    ++line_no;
    auto toks = split_tokens(line);
    if (toks.empty()) continue;
    const std::string where = "line " + std::to_string(line_no);
    if (toks[0] == "config") {
      if (!expect_config) throw std::invalid_argument(where + ": expected 'step'");
      if (toks.size() != dim + 1) throw std::invalid_argument(where + ": configuration of wrong width");
      Config c;
      for (std::size_t k = 1; k < toks.size(); ++k) c.push_back(parse_int64(toks[k], where));
      r.configs.push_back(std::move(c));
      expect_config = false;
    } else if (toks[0] == "step") {
      if (expect_config) throw std::invalid_argument(where + ": expected 'config'");
      if (toks.size() != 2) throw std::invalid_argument(where + ": expected 'step <k>'");
      std::int64_t k = parse_int64(toks[1], where);
      if (k < 1) throw std::invalid_argument(where + ": instruction indices are 1-based");
      r.steps.push_back(static_cast<std::size_t>(k - 1));
      expect_config = true;
    } else {
      throw std::invalid_argument(where + ": unknown directive '" + toks[0] + "'");
    }
  }
  if (r.configs.empty() || expect_config) throw std::invalid_argument("run must start and end with a configuration");
  return r;
}

// ---------------------------------------------------------------------------

CMInstance::CMInstance(unsigned atoms, std::size_t instructions, unsigned dim)
    : n_(atoms), instructions_(instructions), dim_(dim) {}

std::size_t CMInstance::num_e_vars() const { return std::size_t{n_} * (n_ - 1); }
std::size_t CMInstance::num_t_vars() const { return instructions_ * n_; }
std::size_t CMInstance::num_c_vars() const { return std::size_t{n_} * (n_ - 1) * (n_ - 2) * dim_; }
std::size_t CMInstance::num_vars() const { return num_e_vars() + num_t_vars() + num_c_vars(); }

std::size_t CMInstance::pair_index(unsigned a, unsigned b) const {
  if (a < 1 || a > n_ || b < 1 || b > n_ || a == b) throw std::out_of_range("bad atom pair");
  return std::size_t{a - 1} * (n_ - 1) + (b < a ? b - 1 : b - 2);
}

std::size_t CMInstance::triple_index(unsigned a, unsigned b, unsigned g) const {
  if (g < 1 || g > n_ || g == a || g == b) throw std::out_of_range("bad atom triple");
  unsigned g_rank = g - 1 - (a < g ? 1 : 0) - (b < g ? 1 : 0);
  return pair_index(a, b) * (n_ - 2) + g_rank;
}

std::size_t CMInstance::e(unsigned a, unsigned b) const { return pair_index(a, b); }

std::size_t CMInstance::t(std::size_t i, unsigned a) const {
  if (i < 1 || i > instructions_ || a < 1 || a > n_) throw std::out_of_range("bad t index");
  return num_e_vars() + (i - 1) * n_ + (a - 1);
}

std::size_t CMInstance::c(unsigned a, unsigned b, unsigned g, unsigned k) const {
  if (k < 1 || k > dim_) throw std::out_of_range("bad counter index");
  return num_e_vars() + num_t_vars() + triple_index(a, b, g) * dim_ + (k - 1);
}

std::string CMInstance::var_name(std::size_t v) const {
  if (v < num_e_vars()) {
    unsigned a = static_cast<unsigned>(v / (n_ - 1)) + 1;
    unsigned r = static_cast<unsigned>(v % (n_ - 1)) + 1;
    unsigned b = r < a ? r : r + 1;
    return "e[" + std::to_string(a) + "," + std::to_string(b) + "]";
  }
  v -= num_e_vars();
  if (v < num_t_vars()) return "t[" + std::to_string(v / n_ + 1) + "," + std::to_string(v % n_ + 1) + "]";
  v -= num_t_vars();
  if (v >= num_c_vars()) throw std::out_of_range("variable index out of range");
  const unsigned k = static_cast<unsigned>(v % dim_) + 1;
  std::size_t tri = v / dim_;
  const unsigned g_rank = static_cast<unsigned>(tri % (n_ - 2));
  const std::size_t pair = tri / (n_ - 2);
  const unsigned a = static_cast<unsigned>(pair / (n_ - 1)) + 1;
  const unsigned r = static_cast<unsigned>(pair % (n_ - 1)) + 1;
  const unsigned b = r < a ? r : r + 1;
  unsigned g = 0;
  for (unsigned cand = 1, seen = 0; cand <= n_; ++cand) {
    if (cand == a || cand == b) continue;
    if (seen++ == g_rank) {
      g = cand;
      break;
    }
  }
  return "c[" + std::to_string(a) + "," + std::to_string(b) + "," + std::to_string(g) + "," + std::to_string(k) + "]";
}

std::optional<std::size_t> CMInstance::find_var(const std::string& name) const {
  if (name.size() < 4 || name[1] != '[' || name.back() != ']') return std::nullopt;
  std::vector<unsigned> idx;
  std::istringstream in(name.substr(2, name.size() - 3));
  for (std::string part; std::getline(in, part, ',');) {
    if (part.empty() || !std::all_of(part.begin(), part.end(), [](char ch) { return ch >= '0' && ch <= '9'; }))
      return std::nullopt;
    idx.push_back(static_cast<unsigned>(std::stoul(part)));
  }
  try {
    if (name[0] == 'e' && idx.size() == 2) return e(idx[0], idx[1]);
    if (name[0] == 't' && idx.size() == 2) return t(idx[0], idx[1]);
    if (name[0] == 'c' && idx.size() == 4) return c(idx[0], idx[1], idx[2], idx[3]);
  } catch (const std::out_of_range&) {
  }
  return std::nullopt;
}

std::size_t CMInstance::count_family(const std::string& family) const {
  return static_cast<std::size_t>(
      std::count_if(constraints.begin(), constraints.end(), [&](const IntConstraint& c) { return c.family == family; }));
}

CMInstance encode(const CounterMachine& m, const Config& c0, const Config& cf, unsigned n) {
  m.check_well_formed();
  if (n < 3) throw std::invalid_argument("encoding needs at least 3 atoms");
  if (c0.size() != m.dim || cf.size() != m.dim) throw std::invalid_argument("configuration of wrong width");

  CMInstance inst(n, m.instructions.size(), m.dim);
  auto& out = inst.constraints;
  const unsigned iota = CMInstance::kIota, zeta = CMInstance::kZeta;
  const std::size_t num_ins = m.instructions.size();
  auto atom = [](unsigned a) { return std::to_string(a); };

  for (unsigned a = 1; a <= n; ++a)
    for (unsigned b = 1; b <= n; ++b)
      if (a != b) out.push_back({"42", "a=" + atom(a) + " b=" + atom(b), {{inst.e(a, b), 1}}, Relation::Le, 1});

  auto in_edges = [&](unsigned a, std::int64_t coef, std::vector<std::pair<std::size_t, std::int64_t>>& terms) {
    for (unsigned b = 1; b <= n; ++b)
      if (b != a) terms.push_back({inst.e(b, a), coef});
  };
  auto out_edges = [&](unsigned a, std::int64_t coef, std::vector<std::pair<std::size_t, std::int64_t>>& terms) {
    for (unsigned b = 1; b <= n; ++b)
      if (b != a) terms.push_back({inst.e(a, b), coef});
  };

  for (unsigned a = 1; a <= n; ++a) {
    if (a == iota || a == zeta) continue;
    IntConstraint balance{"43", "a=" + atom(a) + " in=out", {}, Relation::Eq, 0};
    in_edges(a, 1, balance.terms);
    out_edges(a, -1, balance.terms);
    out.push_back(std::move(balance));
    IntConstraint bound{"43", "a=" + atom(a) + " out<=1", {}, Relation::Le, 1};
    out_edges(a, 1, bound.terms);
    out.push_back(std::move(bound));
  }

  {
    IntConstraint c1{"44", "in(iota)=0", {}, Relation::Eq, 0};
    in_edges(iota, 1, c1.terms);
    IntConstraint c2{"44", "out(iota)=1", {}, Relation::Eq, 1};
    out_edges(iota, 1, c2.terms);
    IntConstraint c3{"44", "in(zeta)=1", {}, Relation::Eq, 1};
    in_edges(zeta, 1, c3.terms);
    IntConstraint c4{"44", "out(zeta)=0", {}, Relation::Eq, 0};
    out_edges(zeta, 1, c4.terms);
    for (auto* c : {&c1, &c2, &c3, &c4}) out.push_back(std::move(*c));
  }

  for (unsigned a = 1; a <= n; ++a) {
    if (a == iota || a == zeta) continue;
    IntConstraint c{"45", "a=" + atom(a), {}, Relation::Eq, 0};
    for (std::size_t i = 1; i <= num_ins; ++i) c.terms.push_back({inst.t(i, a), 1});
    out_edges(a, -1, c.terms);
    out.push_back(std::move(c));
  }

  // c <= e for every counter; a zero test of counter k at a forces c = 0 on
  // all out-edges of a through c + sum_{ZERO(k)} t <= 1.
  for (unsigned k = 1; k <= m.dim; ++k) {
    std::vector<std::size_t> zero_tests;
    for (std::size_t i = 1; i <= num_ins; ++i)
      if (!m.instructions[i - 1][k - 1]) zero_tests.push_back(i);
    for (unsigned a = 1; a <= n; ++a)
      for (unsigned b = 1; b <= n; ++b)
        for (unsigned g = 1; g <= n; ++g) {
          if (a == b || g == a || g == b) continue;
          const std::string label = "a=" + atom(a) + " b=" + atom(b) + " g=" + atom(g) + " k=" + atom(k);
          out.push_back({"46", label, {{inst.c(a, b, g, k), 1}, {inst.e(a, b), -1}}, Relation::Le, 0});
          if (zero_tests.empty()) continue;
          IntConstraint z{"49", label, {{inst.c(a, b, g, k), 1}}, Relation::Le, 1};
          for (std::size_t i : zero_tests) z.terms.push_back({inst.t(i, a), 1});
          out.push_back(std::move(z));
        }
  }

  for (unsigned a = 1; a <= n; ++a) {
    if (a == iota || a == zeta) continue;
    for (unsigned k = 1; k <= m.dim; ++k) {
      IntConstraint c{"48", "a=" + atom(a) + " k=" + atom(k), {}, Relation::Eq, 0};
      for (unsigned b = 1; b <= n; ++b)
        for (unsigned g = 1; g <= n; ++g) {
          if (b == a || g == a || g == b) continue;
          c.terms.push_back({inst.c(b, a, g, k), 1});
          c.terms.push_back({inst.c(a, b, g, k), -1});
        }
      for (std::size_t i = 1; i <= num_ins; ++i) {
        const auto& upd = m.instructions[i - 1][k - 1];
        if (upd && *upd != 0) c.terms.push_back({inst.t(i, a), *upd});
      }
      out.push_back(std::move(c));
    }
  }

  for (unsigned k = 1; k <= m.dim; ++k) {
    IntConstraint src{"c0", "k=" + atom(k), {}, Relation::Eq, c0[k - 1]};
    IntConstraint dst{"cf", "k=" + atom(k), {}, Relation::Eq, cf[k - 1]};
    for (unsigned b = 1; b <= n; ++b)
      for (unsigned g = 1; g <= n; ++g) {
        if (b != iota && g != iota && g != b) src.terms.push_back({inst.c(iota, b, g, k), 1});
        if (b != zeta && g != zeta && g != b) dst.terms.push_back({inst.c(b, zeta, g, k), 1});
      }
    out.push_back(std::move(src));
    out.push_back(std::move(dst));
  }

  for (std::size_t v = 0; v < inst.num_vars(); ++v) out.push_back({"nonneg", "", {{v, 1}}, Relation::Ge, 0});
  return inst;
}

unsigned min_atoms_for_run(const Run& r) {
  std::int64_t max_counter = 0;
  for (const auto& c : r.configs)
    for (auto v : c) max_counter = std::max(max_counter, v);
  const auto path_atoms = static_cast<std::int64_t>(r.steps.size()) + 2;
  return static_cast<unsigned>(std::max<std::int64_t>({3, path_atoms, max_counter + 2}));
}

Assignment run_to_witness(const CounterMachine& m, const Run& r, const CMInstance& inst) {
  validate_run(m, r);
  if (inst.dim() != m.dim || inst.instruction_count() != m.instructions.size())
    throw std::invalid_argument("instance was not encoded from this machine");
  const unsigned need = min_atoms_for_run(r);
  const unsigned n = inst.atom_count();
  if (n < need)
    throw std::length_error("run needs at least " + std::to_string(need) + " atoms, instance has " + std::to_string(n));

  // Path nodes: iota, 3, 4, ..., zeta.
  std::vector<unsigned> path{CMInstance::kIota};
  for (unsigned j = 0; j < r.steps.size(); ++j) path.push_back(3 + j);
  path.push_back(CMInstance::kZeta);

  Assignment x(inst.num_vars(), 0);
  for (std::size_t j = 0; j + 1 < path.size(); ++j) {
    const unsigned a = path[j], b = path[j + 1];
    x[inst.e(a, b)] = 1;
    if (j > 0) x[inst.t(r.steps[j - 1] + 1, a)] = 1;
    for (unsigned k = 1; k <= m.dim; ++k) {
      std::int64_t remaining = r.configs[j][k - 1];
      for (unsigned g = 1; g <= n && remaining > 0; ++g) {
        if (g == a || g == b) continue;
        x[inst.c(a, b, g, k)] = 1;
        --remaining;
      }
    }
  }
  return x;
}

std::string print_constraint(const CMInstance& inst, const IntConstraint& c) {
  std::string out = "(" + c.family + ")";
  if (!c.label.empty()) out += " [" + c.label + "]";
  out += ' ';
  bool first = true;
  for (const auto& [v, coef] : c.terms) {
    if (coef == 0) continue;
    const std::int64_t mag = coef < 0 ? -coef : coef;
    out += first ? (coef < 0 ? "-" : "") : (coef < 0 ? " - " : " + ");
    if (mag != 1) out += std::to_string(mag) + "*";
    out += inst.var_name(v);
    first = false;
  }
  if (first) out += '0';
  out += c.rel == Relation::Le ? " <= " : c.rel == Relation::Eq ? " = " : " >= ";
  return out + std::to_string(c.rhs);
}

CheckResult check_witness(const CMInstance& inst, const Assignment& x) {
  CheckResult res;
  if (x.size() > inst.num_vars()) {
    res.ok = false;
    res.violations.push_back("assignment has more entries than the instance has variables");
    return res;
  }
  auto value = [&](std::size_t v) { return v < x.size() ? x[v] : 0; };
  for (const auto& c : inst.constraints) {
    std::int64_t lhs = 0;
    for (const auto& [v, coef] : c.terms) lhs += coef * value(v);
    const bool holds = c.rel == Relation::Le ? lhs <= c.rhs : c.rel == Relation::Eq ? lhs == c.rhs : lhs >= c.rhs;
    if (!holds) {
      res.ok = false;
      res.violations.push_back(print_constraint(inst, c) + "  (lhs = " + std::to_string(lhs) + ")");
    }
  }
  return res;
}

Assignment parse_assignment(std::istream& in, const CMInstance& inst) {
  Assignment x(inst.num_vars(), 0);
  std::size_t line_no = 0;
  for (std::string line; std::getline(in, line);) {
    ++line_no;
    auto toks = split_tokens(line);
    if (toks.empty()) continue;
    const std::string where = "line " + std::to_string(line_no);
    if (toks.size() != 2) throw std::invalid_argument(where + ": expected '<name> <value>'");
    auto v = inst.find_var(toks[0]);
    if (!v) throw std::invalid_argument(where + ": unknown variable '" + toks[0] + "'");
    x[*v] = parse_int64(toks[1], where);
  }
  return x;
}

std::string print_assignment(const CMInstance& inst, const Assignment& x) {
  std::string out;
  for (std::size_t v = 0; v < x.size(); ++v)
    if (x[v] != 0) out += inst.var_name(v) + ' ' + std::to_string(x[v]) + '\n';
  return out;
}

}  // namespace oflp
