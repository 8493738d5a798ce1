#pragma once

#include <cstddef>
#include <cstdint>
#include <istream>
#include <optional>
#include <string>
#include <vector>

namespace oflp {

// Update value per counter; nullopt is a zero test.
using Instruction = std::vector<std::optional<std::int64_t>>;

struct CounterMachine {
  unsigned dim = 0;
  std::vector<Instruction> instructions;

  // Throws std::invalid_argument when an instruction has the wrong width.
  void check_well_formed() const;
};

using Config = std::vector<std::int64_t>;

struct Run {
  std::vector<Config> configs;
  std::vector<std::size_t> steps;  // 0-based instruction indices
};

// Whether c --i--> next is a step of m.
bool is_step(const CounterMachine& m, const Config& c, std::size_t instruction, const Config& next);
// Throws std::invalid_argument naming the first bad step or configuration.
void validate_run(const CounterMachine& m, const Run& r);

// "dim d" line followed by one instruction per line: d tokens, each an
// integer or Z.
CounterMachine parse_machine(std::istream& in);
// Lines "config v1 .. vd" and "step k" (1-based), alternating and starting
// and ending with a config.
Run parse_run(std::istream& in, unsigned dim);
// Entries separated by commas or whitespace.
Config parse_config(const std::string& text, unsigned dim);

enum class Relation { Le, Eq, Ge };

struct IntConstraint {
  std::string family;  // "42" .. "49", "c0", "cf", "nonneg"
  std::string label;   // instance description, e.g. "alpha=3 k=1"
  std::vector<std::pair<std::size_t, std::int64_t>> terms;
  Relation rel = Relation::Le;
  std::int64_t rhs = 0;
};

// Integer constraint system over e[a,b], t[i,a] and c[a,b,g,k] for atoms
// {1..n}, with the distinguished atoms 1 (source end) and 2 (target end).
class CMInstance {
 public:
  static constexpr unsigned kIota = 1;
  static constexpr unsigned kZeta = 2;

  CMInstance(unsigned atoms, std::size_t instructions, unsigned dim);

  unsigned atom_count() const { return n_; }
  std::size_t instruction_count() const { return instructions_; }
  unsigned dim() const { return dim_; }

  std::size_t num_vars() const;
  std::size_t num_e_vars() const;
  std::size_t num_t_vars() const;
  std::size_t num_c_vars() const;

  // Atoms and instructions 1-based, counters 1-based.
  std::size_t e(unsigned a, unsigned b) const;
  std::size_t t(std::size_t i, unsigned a) const;
  std::size_t c(unsigned a, unsigned b, unsigned g, unsigned k) const;
  std::string var_name(std::size_t v) const;
  std::optional<std::size_t> find_var(const std::string& name) const;

  std::vector<IntConstraint> constraints;

  std::size_t count_family(const std::string& family) const;

 private:
  std::size_t pair_index(unsigned a, unsigned b) const;
  std::size_t triple_index(unsigned a, unsigned b, unsigned g) const;

  unsigned n_;
  std::size_t instructions_;
  unsigned dim_;
};

// Throws std::invalid_argument when n < 3 or the configurations have the
// wrong width.
CMInstance encode(const CounterMachine& m, const Config& c0, const Config& cf, unsigned n);

using Assignment = std::vector<std::int64_t>;

// Atoms needed to lay out r as a single path with its counters.
unsigned min_atoms_for_run(const Run& r);

// Path 1 -> 3 -> 4 -> ... -> 2 carrying the run. Throws std::invalid_argument
// on an invalid run and std::length_error (with the minimum) when the
// instance has too few atoms.
Assignment run_to_witness(const CounterMachine& m, const Run& r, const CMInstance& inst);

struct CheckResult {
  bool ok = true;
  std::vector<std::string> violations;
};

// Missing trailing entries count as 0.
CheckResult check_witness(const CMInstance& inst, const Assignment& x);

// "name value" lines; unknown names are an error.
Assignment parse_assignment(std::istream& in, const CMInstance& inst);
std::string print_assignment(const CMInstance& inst, const Assignment& x);  // nonzero entries only
std::string print_constraint(const CMInstance& inst, const IntConstraint& c);

}  // namespace oflp
