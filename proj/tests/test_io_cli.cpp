#include <catch2/catch_amalgamated.hpp>

#include <unistd.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include "projsum/core_order.hpp"
#include "projsum/pointset_io.hpp"

using namespace projsum;

namespace {

struct RunResult {
  int status = -1;
  std::string out;
};

// Run the CLI with a shell command line; stderr is discarded.
RunResult run_cli(const std::string& args, const std::string& stdin_data = {}) {
  std::string cmd;
  if (!stdin_data.empty()) {
    char tmpl[] = "/tmp/projsum_cli_XXXXXX";
    const int fd = mkstemp(tmpl);
    REQUIRE(fd >= 0);
    {
      std::ofstream tmp(tmpl);
      tmp << stdin_data;
    }
    close(fd);
    cmd = std::string(PROJSUM_CLI_PATH) + " " + args + " < " + tmpl + " 2>/dev/null";
  } else {
    cmd = std::string(PROJSUM_CLI_PATH) + " " + args + " 2>/dev/null";
  }
  RunResult res;
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  char buf[4096];
  std::size_t got;
  while ((got = fread(buf, 1, sizeof buf, pipe)) > 0) res.out.append(buf, got);
  const int raw = pclose(pipe);
  res.status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  return res;
}

}  // namespace

TEST_CASE("point set parsing") {
  {
    std::istringstream in("0 0\n1 0\n0 1\n");
    CHECK(parse_pointset(in) == initial_segment(2, 3));
  }
  {
    std::istringstream in("# comment\n\n 3 4 \n0 0\n");
    const PointSet a = parse_pointset(in);
    CHECK(a == PointSet::make(2, {{3, 4}, {0, 0}}));
  }
  {
    std::istringstream in("0 0\n0 0\n");
    try {
      parse_pointset(in);
      FAIL("expected a duplicate-point error");
    } catch (const ParseError& e) {
      CHECK(e.line() == 2);
      CHECK(std::string(e.what()).find("duplicate") != std::string::npos);
    }
  }
  {
    std::istringstream in("0 0\n1 0 0\n");
    try {
      parse_pointset(in);
      FAIL("expected an arity error");
    } catch (const ParseError& e) {
      CHECK(e.line() == 2);
    }
  }
  {
    std::istringstream in("0 x\n");
    CHECK_THROWS_AS(parse_pointset(in), ParseError);
  }
  {
    std::istringstream in("0 -1\n");
    CHECK_THROWS_AS(parse_pointset(in), ParseError);
  }
  {
    std::istringstream in("# nothing\n");
    CHECK_THROWS_AS(parse_pointset(in), ParseError);
  }
}

TEST_CASE("format and parse round trip") {
  for (int n : {1, 2, 3}) {
    const PointSet seg = initial_segment(n, 17);
    std::istringstream in(format_pointset(seg));
    CHECK(parse_pointset(in) == seg);
  }
}

TEST_CASE("json report shapes") {
  const PointSet a = initial_segment(2, 3);
  const nlohmann::json prof = to_json(a.dim, a.size(), sigma_profile(a));
  CHECK(prof["kind"] == "sigma");
  CHECK(prof["n"] == 2);
  CHECK(prof["size"] == 3);
  CHECK(prof["per_axis"].size() == 2);
  CHECK(prof["total"] == 4);

  const RearrangeTrace tr = rearrange_to_segment(a);
  const nlohmann::json trace = to_json(tr);
  REQUIRE(trace.is_array());
  CHECK(trace[0]["label"] == "input");
  CHECK(trace[0]["size"] == 3);
  CHECK(trace[0]["sigma"] == 4);
  CHECK(trace[0]["points"].size() == 3);
  const nlohmann::json elided = to_json(tr, 2);
  CHECK_FALSE(elided[0].contains("points"));

  const OracleResult res = brute_force_min(ProfileKind::hyperplane, 2, 2, {2, 2});
  const nlohmann::json oj = to_json(res);
  CHECK(oj["kind"] == "sigma");
  CHECK(oj["min_value"] == 3);
  CHECK(oj["minimiser_count"] == 4);
  CHECK(oj["witnesses"].size() == 4);

  LawReport rep{"idt", "demo"};
  rep.cases_checked = 5;
  const nlohmann::json rj = to_json(rep);
  CHECK(rj["law"] == "idt");
  CHECK(rj["ok"] == true);
  CHECK(rj["violations"].empty());
}

TEST_CASE("cli values and round trips") {
  CHECK(run_cli("sigma 3 5").out == "10\n");
  CHECK(run_cli("lambda 3 8").out == "6\n");
  CHECK(run_cli("unrank 3 16").out == "2 2 0\n");
  CHECK(run_cli("rank 2 2 0").out == "16\n");

  const RunResult seg = run_cli("segment 2 10");
  CHECK(seg.status == 0);
  std::istringstream in(seg.out);
  CHECK(parse_pointset(in) == initial_segment(2, 10));
}

TEST_CASE("cli profile and minimise") {
  const RunResult prof = run_cli("profile - --kind sigma --json", "0 0\n2 3\n5 1\n");
  CHECK(prof.status == 0);
  const nlohmann::json pj = nlohmann::json::parse(prof.out);
  CHECK(pj["kind"] == "sigma");
  CHECK(pj["total"] == 6);

  const RunResult mini = run_cli("minimise - --json", "0 0\n2 3\n5 1\n");
  CHECK(mini.status == 0);
  const nlohmann::json mj = nlohmann::json::parse(mini.out);
  CHECK(mj.front()["sigma"] == 6);
  CHECK(mj.back()["sigma"] == 4);

  // minimise on segment output: a one-entry identity trace
  const RunResult idt = run_cli("minimise - --json", format_pointset(initial_segment(3, 17)));
  CHECK(nlohmann::json::parse(idt.out).size() == 1);
}

TEST_CASE("cli oracle and verify") {
  const RunResult orc = run_cli("oracle 2 2 --box 2,2 --json");
  CHECK(orc.status == 0);
  CHECK(nlohmann::json::parse(orc.out)["min_value"] == 3);

  const RunResult ver = run_cli("verify --suite sub --n 2 --mmax 60 --json");
  CHECK(ver.status == 0);
  std::istringstream lines(ver.out);
  std::string line;
  int reports = 0;
  while (std::getline(lines, line)) {
    const nlohmann::json rj = nlohmann::json::parse(line);
    CHECK(rj["ok"] == true);
    CHECK(rj["cases_checked"] > 0);
    ++reports;
  }
  CHECK(reports == 3);
}

TEST_CASE("cli exit codes") {
  CHECK(run_cli("frobnicate").status == 2);
  CHECK(run_cli("sigma 3").status == 2);
  CHECK(run_cli("segment 0 5").status == 2);
  CHECK(run_cli("minimise -", "0 0\n0 0\n").status == 2);
  CHECK(run_cli("oracle 2 5 --box 4,4 --budget 10").status == 3);
  CHECK(run_cli("--help").status == 0);
}
