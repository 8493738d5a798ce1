#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sys/wait.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <set>
#include <string>

namespace fs = std::filesystem;

namespace {

struct Result {
  int status = -1;
  std::string out;
};

Result run(const std::string& args) {
  const std::string cmd = std::string(OFLP_CLI_PATH) + " " + args + " 2>/dev/null";
  Result r;
  FILE* p = popen(cmd.c_str(), "r");
  REQUIRE(p != nullptr);
  char buf[4096];
  while (std::size_t got = fread(buf, 1, sizeof buf, p)) r.out.append(buf, got);
  const int raw = pclose(p);
  r.status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  return r;
}

std::string data(const std::string& name) { return std::string(OFLP_DATA_DIR) + "/" + name; }

fs::path scratch(const std::string& name, const std::string& contents) {
  const fs::path dir = fs::temp_directory_path() / "oflp_cli_test";
  fs::create_directories(dir);
  const fs::path p = dir / name;
  std::ofstream(p) << contents;
  return p;
}

bool has_line(const std::string& text, const std::string& line) {
  return ("\n" + text).find("\n" + line + "\n") != std::string::npos;
}

}  // namespace

TEST_CASE("solve") {
  Result a = run("solve " + data("complement_sum.ofs"));
  CHECK(a.status == 0);
  CHECK(has_line(a.out, "SOLVABLE"));
  CHECK(has_line(a.out, "witness (orbit sums): 2"));
  CHECK(has_line(a.out, "threshold: 3"));

  Result b = run("solve " + data("clique_flow.ofs"));
  CHECK(b.status == 1);
  CHECK(has_line(b.out, "UNSOLVABLE"));

  Result t = run("solve " + data("complement_sum.ofs") + " --trace");
  CHECK(t.out.rfind("iteration 1: ", 0) == 0);
}

TEST_CASE("max") {
  Result a = run("max " + data("complement_sum.ofs"));
  CHECK(a.status == 0);
  CHECK(a.out == "sup = -2 (not attained)\n");

  Result b = run("max " + data("clique_flow_double.ofs"));
  CHECK(b.out == "sup = -3 (attained)\n");

  CHECK(run("max " + data("unbounded.ofs")).out == "+inf\n");

  Result c = run("max " + data("clique_flow.ofs"));
  CHECK(c.out == "-inf\n");
  CHECK(c.status == 1);

  // Minimizing 2 * sum(x) directly.
  auto two = scratch("two.ofs", "rows: 1\ncols: 1\ncoef 1 1 0 1\ntarget 1 1\nobjective 1 2\n");
  CHECK(run("max " + two.string() + " --minimize").out == "inf = 2 (not attained)\n");
  CHECK(run("max " + data("unbounded.ofs") + " --minimize").out == "inf = 0 (attained)\n");
}

TEST_CASE("reduce") {
  Result a = run("reduce " + data("complement_sum.ofs"));
  CHECK(a.status == 0);
  CHECK(has_line(a.out, "(n-1)·x1 >= n"));
  CHECK(has_line(a.out, "n·x1 >= n"));
  CHECK(has_line(a.out, "d = 1, valid for n >= 2"));

  Result p1 = run("reduce " + data("clique_flow_double.ofs") + " --p1");
  CHECK(has_line(p1.out, "-x1 - (n-1)·x2 >= 0"));
  CHECK(has_line(p1.out, "n·x1 >= 1"));
}

TEST_CASE("instantiate") {
  Result a = run("instantiate " + data("complement_sum.ofs") + " --atoms 2");
  CHECK(a.status == 0);
  CHECK(has_line(a.out, "  (1,{}) (3): x1 + x2 >= 1"));
  CHECK(has_line(a.out, "  (1,{1}) (1): x2 >= 1"));
  CHECK(has_line(a.out, "  (1,{1}) (2): x1 >= 1"));
  Result s = run("instantiate " + data("complement_sum.ofs") + " --atoms 2 --solve");
  CHECK(s.out.find("-4") != std::string::npos);
  CHECK(run("instantiate " + data("complement_sum.ofs") + " --atoms 0").status == 2);
}

TEST_CASE("crosscheck") {
  Result a = run("crosscheck " + data("clique_flow_double.ofs") + " --range 4..7");
  CHECK(a.status == 0);
  CHECK(a.out ==
        "n = 4: match, sup = -3\n"
        "n = 5: match, sup = -3\n"
        "n = 6: match, sup = -3\n"
        "n = 7: match, sup = -3\n");
  Result d = run("crosscheck " + data("complement_sum.ofs"));
  CHECK(d.status == 0);
  CHECK(d.out.rfind("n = 2: match", 0) == 0);
  CHECK(run("crosscheck " + data("complement_sum.ofs") + " --range 5..3").status == 2);
}

TEST_CASE("transform") {
  Result a = run("transform " + data("complement_sum.ofs") + " --to embed-fin");
  CHECK(a.status == 0);
  auto out = scratch("embedded.ofs", a.out);
  CHECK(run("max " + out.string()).out == "sup = -2 (not attained)\n");

  Result eq = run("transform " + data("complement_sum.ofs") + " --to nonneg-eq");
  CHECK(eq.status == 0);
  CHECK(has_line(eq.out, "cols: 1 1 1"));
  CHECK(has_line(eq.out, "sense 1 eq"));

  auto eqfile = scratch("eq.ofs", eq.out);
  Result back = run("transform " + eqfile.string() + " --to ineq");
  CHECK(back.status == 0);
  CHECK(has_line(back.out, "rows: 1 1 1 1 1"));

  const fs::path target = fs::temp_directory_path() / "oflp_cli_test" / "written.ofs";
  fs::remove(target);
  CHECK(run("transform " + data("complement_sum.ofs") + " --to embed-fin -o " + target.string()).status == 0);
  CHECK(fs::exists(target));
  CHECK(run("transform " + data("complement_sum.ofs") + " --to nowhere").status == 2);
}

TEST_CASE("cm subcommands") {
  const std::string m = data("one_counter.cm");
  Result w = run("cm witness --machine " + m + " --run " + data("one_counter.run"));
  REQUIRE(w.status == 0);
  CHECK(w.out.rfind("# atoms 6\n", 0) == 0);
  auto assignment = scratch("w.txt", w.out);
  Result ok = run("cm check --machine " + m + " --from 0 --to 1 --atoms 6 --assignment " + assignment.string());
  CHECK(ok.status == 0);
  CHECK(ok.out == "OK\n");

  auto broken = scratch("bad.txt", w.out + "e[2,1] 1\n");
  Result bad = run("cm check --machine " + m + " --from 0 --to 1 --atoms 6 --assignment " + broken.string());
  CHECK(bad.status == 1);
  CHECK(bad.out.find("(44)") != std::string::npos);

  Result enc = run("cm encode --machine " + m + " --from 0 --to 1 --atoms 4");
  CHECK(enc.status == 0);
  CHECK(has_line(enc.out, "variables: 48 (e 12, t 12, c 24)"));
  CHECK(run("cm encode --machine " + m + " --from 0 --to 1 --atoms 2").status == 2);
  CHECK(run("cm witness --machine " + m + " --run " + data("one_counter.run") + " --atoms 4").status == 2);
}

TEST_CASE("input errors exit with 2") {
  CHECK(run("solve /nonexistent/file.ofs").status == 2);
  auto bad = scratch("bad.ofs", "rows: 1\ncols: 1\ncoef 1 1 7 1\n");
  Result r = run("solve " + bad.string());
  CHECK(r.status == 2);
  CHECK(run("frobnicate").status == 2);
  CHECK(run("").status == 2);
  CHECK(run("max " + data("complement_sum.ofs") + " --format xml").status == 2);
}

TEST_CASE("json output keys") {
  const std::set<std::string> keys{"verdict", "sup", "attained", "threshold", "witness", "trace"};
  for (const std::string args : {"solve " + data("complement_sum.ofs") + " --format json",
                                 "solve " + data("clique_flow.ofs") + " --format json",
                                 "max " + data("clique_flow_double.ofs") + " --format json --trace",
                                 "max " + data("unbounded.ofs") + " --format json"}) {
    Result r = run(args);
    auto j = nlohmann::json::parse(r.out);
    std::set<std::string> got;
    for (auto it = j.begin(); it != j.end(); ++it) got.insert(it.key());
    CAPTURE(args);
    CHECK(got == keys);
  }
  auto j = nlohmann::json::parse(run("max " + data("clique_flow_double.ofs") + " --format json").out);
  CHECK(j["sup"] == "-3");
  CHECK(j["attained"] == true);
  CHECK(j["verdict"] == "SOLVABLE");
  auto s = nlohmann::json::parse(run("solve " + data("complement_sum.ofs") + " --format json").out);
  CHECK(s["witness"] == nlohmann::json::array({"2"}));
  CHECK(s["threshold"] == "3");
}

TEST_CASE("output is deterministic") {
  for (const std::string args : {"solve " + data("complement_sum.ofs") + " --trace",
                                 "crosscheck " + data("clique_flow_double.ofs"),
                                 "instantiate " + data("clique_flow_double.ofs") + " --atoms 3"}) {
    CHECK(run(args).out == run(args).out);
  }
}
