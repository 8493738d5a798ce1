#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "oflp/instantiate.hpp"
#include "oflp/orbit_model.hpp"
#include "support/oracles.hpp"

using namespace oflp;

namespace {

const char* kComplementSum = R"(
# x(a) summed over a != b is at least 1, for each b
rows: 1
cols: 1
coef 1 1 0 1
target 1 1
)";

const char* kCliqueFlow = R"(
rows: 1 0
cols: 1 2
coef 1 1 1 -1
coef 1 2 1 1
coef 1 2 2 -1
coef 2 1 - 1
target 2 1
)";

std::size_t error_line(const std::string& text) {
  try {
    parse_system_string(text);
  } catch (const ParseError& e) {
    return e.line();
  }
  return 0;
}

}  // namespace

TEST_CASE("PartialInjection basics") {
  auto p = PartialInjection::parse("1,0,2", 2);
  CHECK(p.source_arity() == 3);
  CHECK(p.domain_size() == 2);
  CHECK(p.is_injective());
  CHECK(p.to_string() == "1,0,2");
  CHECK(PartialInjection::parse("-", 3).source_arity() == 0);
  CHECK(PartialInjection::parse("-", 3).to_string() == "-");
  CHECK_FALSE(PartialInjection::parse("1,1", 1).is_injective());
  CHECK_FALSE(PartialInjection::parse("3", 2).within_arity());
  CHECK(PartialInjection::identity(2).to_string() == "1,2");
  CHECK(PartialInjection::empty(2, 3).domain_size() == 0);
  CHECK_THROWS_AS(PartialInjection::parse("1,,2", 2), std::invalid_argument);
  CHECK_THROWS_AS(PartialInjection::parse("a", 2), std::invalid_argument);
}

TEST_CASE("parse the complement-sum system") {
  OrbitSystem sys = parse_system_string(kComplementSum);
  REQUIRE(sys.rows.size() == 1);
  REQUIRE(sys.cols.size() == 1);
  CHECK(sys.rows[0].target == 1);
  CHECK(sys.coefficients.size() == 1);
  CHECK(sys.coefficient({0, 0, PartialInjection::parse("0", 1)}) == 1);
  // Diagonal (identity injection) is absent, i.e. 0.
  CHECK(sys.coefficient({0, 0, PartialInjection::identity(1)}) == 0);
  CHECK(validate(sys).empty());
  CHECK(atom_dimension(sys) == 1);
  // Matrix (1): off-diagonal 1, diagonal 0 once instantiated.
  FiniteInstance inst = instantiate_finite(sys, 3);
  for (std::size_t r = 0; r < inst.rows.size(); ++r) {
    if (inst.rows[r].pattern.mask == 0) continue;
    const unsigned beta = inst.rows[r].atoms[0];
    for (std::size_t c = 0; c < inst.columns.size(); ++c)
      CHECK(inst.lp.geq[r].coeffs[c] == (inst.columns[c].atoms[0] == beta ? 0 : 1));
  }
}

TEST_CASE("parse errors carry positions") {
  CHECK(error_line("rows: 2\ncols: 1\ncoef 1 1 1,1 1\n") == 3);  // non-injective
  CHECK(error_line("rows: 1\ncols: 1\ncoef 1 1 1,0 1\n") == 3);  // arity mismatch
  CHECK(error_line("rows: 1\ncols: 1\ncoef 1 1 2 1\n") == 3);    // image beyond target arity
  CHECK(error_line("rows: 1\ncols: 1\ncoef 1 1 1 1\ncoef 1 1 1 2\n") == 4);
  CHECK(error_line("rows: 1\ncols: 1\nfoo 1\n") == 3);
  CHECK(error_line("cols: 1\ncoef 1 1 1 1\n") == 2);  // rows not yet declared
  CHECK(error_line("rows: 1\ncols: 1\ncoef 1 2 1 1\n") == 3);
  CHECK(error_line("rows: 1\ncols: 1\ntarget 1 x\n") == 3);
  CHECK(error_line("rows: 1\ncols: 1\ntarget 1 1/2\n") == 3);
  CHECK(error_line("rows: 1\n") == 2);  // missing cols
  try {
    parse_system_string("rows: 2\ncols: 1\ncoef 1 1   1,1 1\n");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.column() == 12);
    CHECK(std::string(e.what()).find("non-injective") != std::string::npos);
  }
}

TEST_CASE("degenerate infeasible system") {
  OrbitSystem sys = parse_system_string("rows: 0\ncols:\ntarget 1 1\n");
  CHECK(sys.rows.size() == 1);
  CHECK(sys.cols.empty());
  CHECK(sys.coefficients.empty());
  CHECK(oracle_supremum(sys, 1).kind == MaxResult::Kind::NegInfinity);
}

TEST_CASE("zero coefficients are not stored but duplicates still count") {
  OrbitSystem sys = parse_system_string("rows: 1\ncols: 1\ncoef 1 1 1 0\n");
  CHECK(sys.coefficients.empty());
  CHECK(error_line("rows: 1\ncols: 1\ncoef 1 1 1 0\ncoef 1 1 1 3\n") == 4);
}

TEST_CASE("validate reports violations") {
  OrbitSystem sys = parse_system_string(kComplementSum);
  CHECK(validate(sys).empty());

  OrbitSystem bad = parse_system_string("rows: 1 1\ncols: 1\n");
  bad.coefficients[{4, 0, PartialInjection::parse("0", 1)}] = 1;
  CHECK(validate(bad).size() == 1);

  OrbitSystem arity = parse_system_string("rows: 1\ncols: 1\n");
  arity.coefficients[{0, 0, PartialInjection::parse("0,0", 1)}] = 1;
  CHECK(validate(arity).size() == 1);

  OrbitSystem zero = parse_system_string("rows: 1\ncols: 1\n");
  zero.coefficients[{0, 0, PartialInjection::parse("1", 1)}] = 0;
  CHECK(validate(zero).size() == 1);
}

TEST_CASE("atom_dimension") {
  CHECK(atom_dimension(parse_system_string(kComplementSum)) == 1);
  CHECK(atom_dimension(parse_system_string(kCliqueFlow)) == 2);
  CHECK(atom_dimension(parse_system_string("rows: 0 0\ncols: 0\n")) == 0);
}

TEST_CASE("canonicalize examples") {
  OrbitSystem sys = parse_system_string(kComplementSum);
  CHECK(canonicalize(sys) == sys);

  OrbitSystem eq = parse_system_string("rows: 1\ncols: 1\nsense 1 eq\ncoef 1 1 0 2\ncoef 1 1 1 -1\ntarget 1 3\n");
  OrbitSystem c = canonicalize(eq);
  REQUIRE(c.rows.size() == 2);
  CHECK(c.rows[0].target == 3);
  CHECK(c.rows[1].target == -3);
  CHECK(c.coefficient({1, 0, PartialInjection::parse("0", 1)}) == -2);
  CHECK(c.coefficient({1, 0, PartialInjection::parse("1", 1)}) == 1);
  CHECK(c.is_canonical());

  OrbitSystem nn = parse_system_string("rows:\ncols: 1\nsign 1 nonneg\n");
  OrbitSystem cn = canonicalize(nn);
  REQUIRE(cn.rows.size() == 1);
  CHECK(cn.rows[0].dim == 1);
  CHECK(cn.rows[0].target == 0);
  CHECK(cn.coefficients.size() == 1);
  CHECK(cn.coefficient({0, 0, PartialInjection::identity(1)}) == 1);
  CHECK(cn.cols[0].sign == Sign::Free);
}

TEST_CASE("print/parse round trip and canonicalize idempotence on random systems") {
  std::mt19937_64 rng(2024);
  std::bernoulli_distribution coin(0.3);
  for (int trial = 0; trial < 200; ++trial) {
    OrbitSystem sys = testing::random_canonical_system(rng);
    for (auto& r : sys.rows)
      if (coin(rng)) r.sense = Sense::Eq;
    for (auto& c : sys.cols)
      if (coin(rng)) c.sign = Sign::NonNeg;
    const std::string text = print_system(sys);
    CAPTURE(text);
    CHECK(parse_system_string(text) == sys);
    OrbitSystem once = canonicalize(sys);
    CHECK(canonicalize(once) == once);
    CHECK(once.is_canonical());
  }
}

TEST_CASE("canonicalize preserves instantiated solution sets") {
  std::mt19937_64 rng(99);
  std::bernoulli_distribution coin(0.4);
  std::uniform_int_distribution<int> obj(-3, 3);
  testing::RandomSystemShape shape;
  shape.max_row_orbits = 2;
  shape.max_col_orbits = 2;
  for (int trial = 0; trial < 40; ++trial) {
    OrbitSystem sys = testing::random_canonical_system(rng, shape);
    for (auto& r : sys.rows)
      if (coin(rng)) r.sense = Sense::Eq;
    for (auto& c : sys.cols)
      if (coin(rng)) c.sign = Sign::NonNeg;
    const OrbitSystem canon = canonicalize(sys);
    for (unsigned n = 1; n <= 3; ++n) {
      // Instantiate the surface form by hand: Geq rows plus Eq rows, and
      // x >= 0 for nonnegative columns.
      OrbitSystem geq_only = sys;
      for (auto& r : geq_only.rows) r.sense = Sense::Geq;
      for (auto& c : geq_only.cols) c.sign = Sign::Free;
      FiniteInstance raw = instantiate_finite(geq_only, n);
      FiniteLP surface(raw.lp.num_vars);
      for (std::size_t r = 0; r < raw.rows.size(); ++r) {
        if (sys.rows[raw.rows[r].orbit].sense == Sense::Eq)
          surface.eq.push_back(raw.lp.geq[r]);
        else
          surface.geq.push_back(raw.lp.geq[r]);
      }
      for (std::size_t c = 0; c < raw.columns.size(); ++c) {
        if (sys.cols[raw.columns[c].orbit].sign != Sign::NonNeg) continue;
        std::vector<Rational> row(raw.columns.size());
        row[c] = 1;
        surface.add_geq(row, 0);
      }
      FiniteInstance ci = instantiate_finite(canon, n);
      REQUIRE(ci.columns.size() == raw.columns.size());
      // Sampled vertices (simplex optima) of each lie in the other, and the
      // optima agree.
      for (int k = 0; k < 4; ++k) {
        std::vector<Rational> s(raw.columns.size());
        for (auto& v : s) v = obj(rng);
        LPOutcome a = maximize(surface, s);
        LPOutcome b = maximize(ci.lp, s);
        CHECK(a.status == b.status);
        if (a.status == LPStatus::Optimal && b.status == LPStatus::Optimal) {
          CHECK(a.value == b.value);
          CHECK(satisfies(ci.lp, a.witness));
          CHECK(satisfies(surface, b.witness));
        }
      }
    }
  }
}
