#include <doctest.h>

#include <sys/wait.h>

#include <cstdio>
#include <fstream>
#include <string>

#include <nlohmann/json.hpp>

namespace {

struct Run {
  int code = -1;
  std::string out;
};

// stdout only; stderr is folded in when `merge` is set.
Run run(const std::string& args, bool merge = false) {
  std::string cmd = std::string(INCTREE_CLI_PATH) + " " + args + (merge ? " 2>&1" : " 2>/dev/null");
  Run r;
  FILE* p = popen(cmd.c_str(), "r");
  REQUIRE(p);
  char buf[4096];
  std::size_t got;
  while ((got = fread(buf, 1, sizeof buf, p)) > 0) r.out.append(buf, got);
  int status = pclose(p);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::string temp_file(const std::string& name, const std::string& content) {
  std::string path = std::string(P_tmpdir) + "/inctree_cli_" + name;
  std::ofstream(path) << content;
  return path;
}

}  // namespace

TEST_CASE("mult on the star") {
  auto r = run("mult --matrix adj --alpha 0 " + temp_file("star.txt", "4 1 1 1\n"));
  CHECK(r.code == 0);
  CHECK(r.out == "{\"multiplicity\": 2}\n");
  r = run("mult --alpha 0 < " + temp_file("star2.txt", "4 1 1 1\n\n2 1\n"));
  CHECK(r.out == "{\"multiplicity\": 2}\n{\"multiplicity\": 0}\n");
  // L(P2) has spectrum {0, 2}; deleting the root leaves the block [1].
  r = run("--format csv toll --matrix lap --alpha 1 " + temp_file("p2.txt", "2 1\n"));
  CHECK(r.out == "toll\n-1\n");
  r = run("--format csv toll --matrix adj --alpha 1 " + temp_file("p2.txt", "2 1\n"));
  CHECK(r.out == "toll\n1\n");
}

TEST_CASE("exit codes") {
  auto star = temp_file("star3.txt", "4 1 1 1\n");
  auto r = run("mult --alpha \"x^2-1\" " + star, true);
  CHECK(r.code == 3);
  CHECK(r.out.find("x - 1") != std::string::npos);
  CHECK(run("mult --alpha \"2x-1\" " + star).code == 2);
  CHECK(run("mult --alpha 0 --no-such-flag " + star).code == 2);
  CHECK(run("mult --alpha 0 --matrix foo " + star).code == 2);
  CHECK(run("mult --alpha 0 " + temp_file("bad.txt", "3 1 7\n")).code == 2);
  CHECK(run("enum --family bin --n 40").code == 4);
  CHECK(run("series --family rec --order 500").code == 4);
  CHECK(run("").code == 2);
  CHECK(run("--help").code == 0);
}

TEST_CASE("help lists every flag") {
  auto r = run("--help-all");
  CHECK(r.code == 0);
  for (const char* flag : {"--family", "--alpha", "--matrix", "--n ", "--samples", "--per-sample", "--seed",
                           "--format", "--tol", "--threads", "--deterministic", "--version", "--count", "--mode",
                           "--k-exact", "--k-mc", "--rows-csv", "--closed-form", "--order", "--emit-per-n",
                           "--pattern", "--base", "--assign"}) {
    CHECK_MESSAGE(r.out.find(flag) != std::string::npos, flag);
  }
  for (const char* sub : {"gen", "enum", "mult", "toll", "toll-series", "constants", "series", "mc", "fringe",
                          "forcing", "independence"}) {
    CHECK_MESSAGE(r.out.find(sub) != std::string::npos, sub);
  }
  CHECK(run("mc --help").out.find("--per-sample") != std::string::npos);
}

TEST_CASE("version") {
  auto r = run("--version");
  CHECK(r.code == 0);
  CHECK(!r.out.empty());
}

TEST_CASE("gen output feeds mult") {
  auto g = run("gen --family bin --n 12 --count 20 --seed 4");
  CHECK(g.code == 0);
  auto file = temp_file("gen.txt", g.out);
  auto m = run("mult --alpha 0 " + file);
  CHECK(m.code == 0);
  std::size_t lines = 0;
  for (char c : m.out) lines += c == '\n';
  CHECK(lines == 20);
  CHECK(run("gen --family bin --n 12 --count 20 --seed 4").out == g.out);
  CHECK(run("gen --family bin --n 12 --count 20 --seed 5").out != g.out);

  auto j = run("--format json gen --family bin --n 5 --count 2");
  auto first = j.out.substr(0, j.out.find('\n'));
  CHECK(nlohmann::json::parse(first).contains("slots"));
}

TEST_CASE("enum and series CSV") {
  auto e = run("enum --family rec --n 3");
  CHECK(e.out.rfind("shape_key,prob_num,prob_den\n", 0) == 0);
  CHECK(e.out.find(",1,2\n") != std::string::npos);
  auto s = run("series --family rec --order 4 --emit-per-n");
  CHECK(s.out == "n,mean_num,mean_den,var_num,var_den\n1,1,1,0,1\n2,0,1,0,1\n3,1,1,0,1\n4,2,3,8,9\n");
  CHECK(run("series --family rec --order 4").out == "n,mean_num,mean_den,var_num,var_den\n4,2,3,8,9\n");
}

TEST_CASE("JSON reports") {
  auto c = run("constants --family rec --deterministic");
  REQUIRE(c.code == 0);
  auto j = nlohmann::json::parse(c.out);
  CHECK(j["schema_version"] == 1);
  CHECK(!j.contains("generated_at"));
  CHECK(std::abs(j["mean_rec"].get<double>() - 0.192694) < 1e-5);
  CHECK(std::abs(j["k1"].get<double>() - 0.138629) < 1e-4);
  CHECK(nlohmann::json::parse(run("constants --family rec").out).contains("generated_at"));

  auto pattern = temp_file("pattern.txt", "3 1 2\n");
  auto f = nlohmann::json::parse(run("fringe --family rec --pattern " + pattern).out);
  CHECK(f["mu"]["num"] == "1");
  CHECK(f["mu"]["den"] == "24");

  auto base = temp_file("base.txt", "2 1\n");
  auto dot = temp_file("dot.txt", "1\n");
  auto fo = nlohmann::json::parse(run("forcing --base " + base + " --pattern " + dot + " --assign 0:2,1:3 --alpha 0").out);
  CHECK(fo["holds"] == true);
  CHECK(run("forcing --base " + base + " --pattern " + dot + " --assign 0:2 --alpha 1").code == 2);

  auto ind = nlohmann::json::parse(run("independence --family rec --n 100 --samples 50").out);
  CHECK(ind["identity_failures"] == 0);
}

TEST_CASE("reports are reproducible") {
  const std::string args = "--deterministic --seed 9 mc --family rec --alpha 0 --alpha x^2-2 --n 200 --samples 100";
  auto a = run(args + " --threads 1");
  auto b = run(args + " --threads 2");
  CHECK(a.code == 0);
  CHECK(a.out == b.out);
  auto t1 = run("--deterministic toll-series --family rec --alpha 1 --k-exact 7 --k-mc 9 --samples 100");
  auto t2 = run("--deterministic toll-series --family rec --alpha 1 --k-exact 7 --k-mc 9 --samples 100");
  CHECK(t1.out == t2.out);
  auto csv = run("--format csv toll-series --family rec --alpha 1 --k-exact 5 --k-mc 6 --samples 10");
  CHECK(csv.out.rfind("k,exact,value", 0) == 0);
}
