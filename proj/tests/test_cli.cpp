#include <doctest.h>

#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>

namespace {

struct Run {
  int code = -1;
  std::string out;
};

Run run(const std::string& args) {
  const std::string cmd = std::string(TROPMEAS_CLI) + " " + args + " 2>/dev/null";
  Run r;
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe);
  std::array<char, 4096> buf{};
  std::size_t n = 0;
  while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), n);
  const int status = pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::string write_temp(const std::string& name, const std::string& text) {
  const auto path = std::filesystem::temp_directory_path() / ("tropmeas_cli_" + name);
  std::ofstream(path) << text;
  return path.string();
}

const char* kWorked = R"({
  "space": {"points": ["a", "b"], "dist": [[0, 2], [2, 0]]},
  "measures": {
    "mu1": {"support": [{"atom": "a", "weight": 0}, {"atom": "b", "weight": -1}]},
    "mu2": {"support": [{"atom": "a", "weight": -3}, {"atom": "b", "weight": 0}]},
    "M":   {"support": [{"atom": "mu1", "weight": 0}, {"atom": "mu2", "weight": -2}]}
  }
})";

}  // namespace

TEST_CASE("dist prints H and the truncated distance") {
  const auto file = write_temp("worked.json", kWorked);
  const auto r = run("dist " + file + " mu1 mu2");
  CHECK(r.code == 0);
  CHECK(r.out == "H = 3, rho_I = 2 (truncated at diam = 2)\n");

  const auto o = run("dist --oracle " + file + " mu1 mu2");
  CHECK(o.code == 0);
  CHECK(o.out == "H = 3, rho_I = 2 (truncated at diam = 2)\nH_oracle = 3 (agrees)\n");

  CHECK(run("dist " + file + " mu1 mu1").out == "H = 0, rho_I = 0\n");
  CHECK(run("dist " + file + " mu1 M").code == 2);
}

TEST_CASE("flatten, push and eval") {
  const auto file = write_temp("worked.json", kWorked);
  const auto f = run("flatten " + file + " M");
  CHECK(f.code == 0);
  CHECK(f.out.find("\"weight\": -1") != std::string::npos);
  CHECK(f.out.find("\"M\"") != std::string::npos);

  const auto p = run("push " + file + " mu1 --map a=b,b=b");
  CHECK(p.code == 0);
  CHECK(p.out.find("\"atom\": \"a\"") == std::string::npos);

  const auto e = run("eval " + file + " mu1 --phi a=1,b=5");
  CHECK(e.code == 0);
  CHECK(e.out == "4\n");
}

TEST_CASE("exit codes") {
  const auto file = write_temp("worked.json", kWorked);
  CHECK(run("").code == 1);
  CHECK(run("dist " + file).code == 1);
  CHECK(run("verify nonsense").code == 1);
  CHECK(run("dist /nonexistent/file.json a b").code == 2);
  CHECK(run("dist " + file + " mu1 nope").code == 2);
  CHECK(run("push " + file + " mu1 --map a=b").code == 2);
  CHECK(run("eval " + file + " mu1 --phi a=1").code == 2);
  CHECK(run("eval " + file + " mu1 --phi a=1,b=x").code == 2);

  const auto bad = write_temp("bad.json", R"({"space": {"points": ["a"], "dist": [[0]]},
    "measures": {"m": {"support": [{"atom": "a", "weight": -1}]}}})");
  CHECK(run("dist " + bad + " m m").code == 2);

  CHECK(run("verify oracle --cases 50 --mutate skip-columns").code == 3);
}

TEST_CASE("verify output is deterministic") {
  const auto a = run("verify axioms --cases 100 --seed 3 --json");
  const auto b = run("verify axioms --cases 100 --seed 3 --json");
  CHECK(a.code == 0);
  CHECK(a.out == b.out);
  CHECK(run("verify monad --cases 50").out.find("PASS") != std::string::npos);
}
