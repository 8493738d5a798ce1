// Command-line front end for the orbit-finite LP solver.

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "oflp/cm_encode.hpp"
#include "oflp/instantiate.hpp"
#include "oflp/orbit_model.hpp"
#include "oflp/paramlp.hpp"
#include "oflp/reduction.hpp"
#include "oflp/transforms.hpp"

namespace {

using namespace oflp;
using nlohmann::json;

constexpr int kOk = 0;
constexpr int kNegative = 1;
constexpr int kInputError = 2;

// Thrown for anything the user can fix: bad files, bad flags.
struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Options {
  std::string file;
  std::string format = "text";
  bool trace = false;
  bool minimize = false;
  bool p1 = false;
  bool solve = false;
  unsigned atoms = 0;
  std::string range;
  std::string to;
  std::string output;
  std::string machine, run, assignment, from, target;
  bool dump = false;
};

OrbitSystem load_canonical(const std::string& path) {
  OrbitSystem sys;
  try {
    sys = load_system(path);
  } catch (const ParseError& e) {
    throw InputError(path + ", " + e.what());
  } catch (const std::runtime_error& e) {
    throw InputError(e.what());
  }
  if (auto v = validate(sys); !v.empty()) throw InputError(path + ": " + v.front());
  return canonicalize(sys);
}

json vector_json(const std::vector<Rational>& v) {
  json out = json::array();
  for (const auto& x : v) out.push_back(to_string(x));
  return out;
}

std::string vector_text(const std::vector<Rational>& v) {
  std::string out;
  for (std::size_t j = 0; j < v.size(); ++j) out += (j ? " " : "") + to_string(v[j]);
  return out;
}

json trace_json(const std::vector<IterationRecord>& trace) {
  json out = json::array();
  for (const auto& r : trace) out.push_back(r.to_string());
  return out;
}

json empty_report() {
  return json{{"verdict", nullptr}, {"sup", nullptr},     {"attained", nullptr},
              {"threshold", nullptr}, {"witness", nullptr}, {"trace", json::array()}};
}

int cmd_solve(const Options& o) {
  const OrbitSystem sys = load_canonical(o.file);
  const ReducedProgram red = build_p2(sys);
  const AlmostAllVerdict v = almost_all_solve(red.system);
  json report = empty_report();
  report["verdict"] = v.solvable ? "SOLVABLE" : "UNSOLVABLE";
  if (o.trace) report["trace"] = trace_json(v.trace);
  Integer threshold;
  if (v.solvable) {
    threshold = std::max(valid_threshold(red.system, v.witness), Integer(red.n_floor));
    report["threshold"] = threshold.get_str();
    report["witness"] = vector_json(v.witness);
  }
  if (o.format == "json") {
    std::cout << report.dump(2) << '\n';
  } else {
    if (o.trace)
      for (const auto& r : v.trace) std::cout << r.to_string() << '\n';
    std::cout << (v.solvable ? "SOLVABLE" : "UNSOLVABLE") << '\n';
    if (v.solvable) {
      std::cout << "witness (orbit sums): " << vector_text(v.witness) << '\n';
      std::cout << "threshold: " << threshold.get_str() << '\n';
    }
  }
  return v.solvable ? kOk : kNegative;
}

int cmd_max(const Options& o) {
  const OrbitSystem sys = load_canonical(o.file);
  const ReducedProgram red = build_p2(sys);
  std::vector<Rational> objective = red.objective_rationals();
  if (o.minimize)
    for (auto& s : objective) s = -s;
  const MaxResult r = almost_all_maximize(red.system, objective);

  json report = empty_report();
  std::string line;
  const bool infeasible = r.kind == MaxResult::Kind::NegInfinity;
  report["verdict"] = infeasible ? "UNSOLVABLE" : "SOLVABLE";
  if (r.is_finite()) {
    const Rational value = o.minimize ? Rational(-r.value) : r.value;
    report["sup"] = to_string(value);
    report["attained"] = r.attained;
    line = std::string(o.minimize ? "inf" : "sup") + " = " + to_string(value) +
           (r.attained ? " (attained)" : " (not attained)");
  } else {
    // Minimizing s is maximizing -s, so the infinities swap.
    const bool plus = (r.kind == MaxResult::Kind::PosInfinity) != o.minimize;
    line = plus ? "+inf" : "-inf";
    report["sup"] = line;
  }
  if (o.trace) {
    const AlmostAllVerdict v = almost_all_solve(red.system);
    report["trace"] = trace_json(v.trace);
    if (o.format != "json")
      for (const auto& rec : v.trace) std::cout << rec.to_string() << '\n';
  }
  if (o.format == "json")
    std::cout << report.dump(2) << '\n';
  else
    std::cout << line << '\n';
  return infeasible ? kNegative : kOk;
}

int cmd_reduce(const Options& o) {
  const OrbitSystem sys = load_canonical(o.file);
  const ReducedProgram red = o.p1 ? build_p1(sys) : build_p2(sys);
  std::cout << print_reduced(red);
  std::cout << "d = " << red.dim_d << ", valid for n >= " << red.n_floor << '\n';
  return kOk;
}

int cmd_instantiate(const Options& o) {
  if (o.atoms == 0) throw InputError("instantiate needs --atoms N with N >= 1");
  const OrbitSystem sys = load_canonical(o.file);
  const FiniteInstance inst = instantiate_finite(sys, o.atoms);
  std::cout << print_instance(inst);
  if (!o.solve) return kOk;
  LPOutcome out = maximize(inst.lp, inst.objective);
  switch (out.status) {
    case LPStatus::Infeasible: std::cout << "infeasible\n"; return kNegative;
    case LPStatus::Unbounded: std::cout << "unbounded\n"; return kOk;
    default: break;
  }
  std::cout << "max = " << to_string(out.value) << '\n';
  for (std::size_t c = 0; c < out.witness.size(); ++c)
    if (out.witness[c] != 0) std::cout << "  x" << c + 1 << " = " << to_string(out.witness[c]) << '\n';
  return kOk;
}

std::pair<unsigned, unsigned> parse_range(const std::string& text) {
  auto dots = text.find("..");
  if (dots == std::string::npos) throw InputError("range must look like A..B");
  try {
    unsigned long a = std::stoul(text.substr(0, dots));
    unsigned long b = std::stoul(text.substr(dots + 2));
    if (a < 1 || b < a || b > 64) throw InputError("range out of bounds: " + text);
    return {static_cast<unsigned>(a), static_cast<unsigned>(b)};
  } catch (const std::logic_error&) {
    throw InputError("range must look like A..B");
  }
}

int cmd_crosscheck(const Options& o) {
  const OrbitSystem sys = load_canonical(o.file);
  const ReducedProgram red = build_p2(sys);
  unsigned lo = std::max(1U, red.n_floor), hi = lo + 3;
  if (!o.range.empty()) std::tie(lo, hi) = parse_range(o.range);
  const std::vector<Rational> objective = red.objective_rationals();

  bool all_match = true;
  json rows = json::array();
  for (unsigned n = lo; n <= hi; ++n) {
    const MaxResult oracle = oracle_supremum(sys, n);
    const LPOutcome reduced_lp = maximize(evaluate_at(red.system, n), objective);
    MaxResult reduced = reduced_lp.status == LPStatus::Infeasible  ? MaxResult::neg_infinity()
                        : reduced_lp.status == LPStatus::Unbounded ? MaxResult::pos_infinity()
                                                                   : MaxResult::finite(reduced_lp.value, true);
    const bool match = oracle.same_value(reduced);
    all_match = all_match && match;
    std::string line = "n = " + std::to_string(n) + ": ";
    if (match)
      line += "match, sup = " + oracle.value_string();
    else
      line += "MISMATCH, oracle = " + oracle.value_string() + ", reduced = " + reduced.value_string();
    if (o.format == "json")
      rows.push_back({{"n", n}, {"match", match}, {"oracle", oracle.value_string()}, {"reduced", reduced.value_string()}});
    else
      std::cout << line << '\n';
  }
  if (o.format == "json") std::cout << json{{"rows", rows}, {"match", all_match}}.dump(2) << '\n';
  return all_match ? kOk : kNegative;
}

int cmd_transform(const Options& o) {
  OrbitSystem sys;
  try {
    sys = load_system(o.file);
  } catch (const std::runtime_error& e) {
    throw InputError(o.file + ": " + e.what());
  }
  if (auto v = validate(sys); !v.empty()) throw InputError(o.file + ": " + v.front());
  OrbitSystem out;
  try {
    if (o.to == "ineq") {
      const bool eq_form =
          std::all_of(sys.rows.begin(), sys.rows.end(), [](const RowOrbit& r) { return r.sense == Sense::Eq; }) &&
          std::all_of(sys.cols.begin(), sys.cols.end(), [](const ColOrbit& c) { return c.sign == Sign::NonNeg; });
      out = eq_form ? nonneg_eq_to_ineq(sys) : canonicalize(sys);
    } else if (o.to == "nonneg-eq") {
      out = ineq_to_nonneg_eq(canonicalize(sys));
    } else if (o.to == "embed-fin") {
      out = fin_to_general(canonicalize(sys));
    } else {
      throw InputError("--to must be one of ineq, nonneg-eq, embed-fin");
    }
  } catch (const std::invalid_argument& e) {
    throw InputError(e.what());
  }
  const std::string text = print_system(out);
  if (o.output.empty()) {
    std::cout << text;
  } else {
    std::ofstream f(o.output);
    if (!f) throw InputError("cannot write '" + o.output + "'");
    f << text;
  }
  return kOk;
}

CounterMachine load_machine(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open '" + path + "'");
  try {
    return parse_machine(in);
  } catch (const std::invalid_argument& e) {
    throw InputError(path + ": " + e.what());
  }
}

int cmd_cm_encode(const Options& o) {
  const CounterMachine m = load_machine(o.machine);
  CMInstance inst = [&] {
    try {
      return encode(m, parse_config(o.from, m.dim), parse_config(o.target, m.dim), o.atoms);
    } catch (const std::invalid_argument& e) {
      throw InputError(e.what());
    }
  }();
  std::cout << "atoms: " << inst.atom_count() << '\n';
  std::cout << "variables: " << inst.num_vars() << " (e " << inst.num_e_vars() << ", t " << inst.num_t_vars() << ", c "
            << inst.num_c_vars() << ")\n";
  for (const char* f : {"42", "43", "44", "45", "46", "48", "49", "c0", "cf", "nonneg"})
    if (std::size_t n = inst.count_family(f)) std::cout << "family (" << f << "): " << n << '\n';
  if (o.dump)
    for (const auto& c : inst.constraints) std::cout << print_constraint(inst, c) << '\n';
  return kOk;
}

int cmd_cm_witness(const Options& o) {
  const CounterMachine m = load_machine(o.machine);
  std::ifstream in(o.run);
  if (!in) throw InputError("cannot open '" + o.run + "'");
  Run r;
  try {
    r = parse_run(in, m.dim);
    validate_run(m, r);
  } catch (const std::invalid_argument& e) {
    throw InputError(o.run + ": " + e.what());
  }
  const unsigned n = o.atoms ? o.atoms : min_atoms_for_run(r);
  if (n < min_atoms_for_run(r))
    throw InputError("run needs at least " + std::to_string(min_atoms_for_run(r)) + " atoms");
  const CMInstance inst = encode(m, r.configs.front(), r.configs.back(), n);
  const Assignment x = run_to_witness(m, r, inst);
  const CheckResult res = check_witness(inst, x);
  std::cout << "# atoms " << n << '\n' << print_assignment(inst, x);
  if (!res.ok) {
    for (const auto& v : res.violations) std::cerr << "violated: " << v << '\n';
    return kNegative;
  }
  return kOk;
}

int cmd_cm_check(const Options& o) {
  const CounterMachine m = load_machine(o.machine);
  CMInstance inst = [&] {
    try {
      return encode(m, parse_config(o.from, m.dim), parse_config(o.target, m.dim), o.atoms);
    } catch (const std::invalid_argument& e) {
      throw InputError(e.what());
    }
  }();
  std::ifstream in(o.assignment);
  if (!in) throw InputError("cannot open '" + o.assignment + "'");
  Assignment x;
  try {
    x = parse_assignment(in, inst);
  } catch (const std::invalid_argument& e) {
    throw InputError(o.assignment + ": " + e.what());
  }
  const CheckResult res = check_witness(inst, x);
  if (res.ok) {
    std::cout << "OK\n";
    return kOk;
  }
  for (const auto& v : res.violations) std::cout << "violated: " << v << '\n';
  return kNegative;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact solver for orbit-finite linear programs"};
  app.require_subcommand(1);
  Options o;

  auto add_format = [&](CLI::App* sub) {
    sub->add_option("--format", o.format, "Output format")->check(CLI::IsMember({"text", "json"}));
  };

  auto* solve = app.add_subcommand("solve", "Decide solvability");
  solve->add_option("file", o.file)->required();
  solve->add_flag("--trace", o.trace, "Print one line per iteration");
  add_format(solve);

  auto* max = app.add_subcommand("max", "Supremum of the objective");
  max->add_option("file", o.file)->required();
  max->add_flag("--trace", o.trace, "Print one line per iteration");
  max->add_flag("--minimize", o.minimize, "Infimum instead of supremum");
  add_format(max);

  auto* reduce = app.add_subcommand("reduce", "Print the parametrised program");
  reduce->add_option("file", o.file)->required();
  reduce->add_flag("--p1", o.p1, "Print the unscaled program");

  auto* inst = app.add_subcommand("instantiate", "Finite LP over N atoms");
  inst->add_option("file", o.file)->required();
  inst->add_option("--atoms", o.atoms, "Atom count")->required();
  inst->add_flag("--solve", o.solve, "Also maximize the instantiated objective");

  auto* cross = app.add_subcommand("crosscheck", "Compare the finite oracle against the reduction");
  cross->add_option("file", o.file)->required();
  cross->add_option("--range", o.range, "Atom counts A..B (default 2d..2d+3)");
  add_format(cross);

  auto* transform = app.add_subcommand("transform", "Convert between problem forms");
  transform->add_option("file", o.file)->required();
  transform->add_option("--to", o.to, "ineq | nonneg-eq | embed-fin")->required();
  transform->add_option("-o,--output", o.output, "Output file (default stdout)");

  auto* cm = app.add_subcommand("cm", "Counter-machine encoding");
  cm->require_subcommand(1);
  auto* cm_encode = cm->add_subcommand("encode", "Emit the constraint system");
  auto* cm_witness = cm->add_subcommand("witness", "Build a solution from a run");
  auto* cm_check = cm->add_subcommand("check", "Check an assignment");
  for (auto* sub : {cm_encode, cm_witness, cm_check}) sub->add_option("--machine", o.machine)->required();
  for (auto* sub : {cm_encode, cm_check}) {
    sub->add_option("--from", o.from, "Source configuration, e.g. \"0 1\"")->required();
    sub->add_option("--to", o.target, "Target configuration")->required();
    sub->add_option("--atoms", o.atoms)->required();
  }
  cm_encode->add_flag("--dump", o.dump, "Print every constraint");
  cm_witness->add_option("--run", o.run)->required();
  cm_witness->add_option("--atoms", o.atoms, "Atom count (default: the minimum)");
  cm_check->add_option("--assignment", o.assignment)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kInputError;
  }

  try {
    if (*solve) return cmd_solve(o);
    if (*max) return cmd_max(o);
    if (*reduce) return cmd_reduce(o);
    if (*inst) return cmd_instantiate(o);
    if (*cross) return cmd_crosscheck(o);
    if (*transform) return cmd_transform(o);
    if (*cm_encode) return cmd_cm_encode(o);
    if (*cm_witness) return cmd_cm_witness(o);
    if (*cm_check) return cmd_cm_check(o);
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kInputError;
  }
  return kInputError;
}
