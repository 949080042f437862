#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <sys/wait.h>

#include "common.hpp"
#include "fusactk/error.hpp"
#include "fusactk/job.hpp"
#include "fusactk/limits.hpp"

using namespace testing;
using nlohmann::json;

namespace {

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  REQUIRE(in);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string golden(const std::string& name) { return std::string(FUSACTK_GOLDEN_DIR) + "/" + name; }

// Runs the command line tool and returns its exit status; stdout goes to out.
int run_cli(const std::string& args, std::string* out = nullptr) {
  std::string cmd = std::string(FUSACTK_CLI) + " " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe);
  std::string text;
  char buf[4096];
  std::size_t n;
  while ((n = fread(buf, 1, sizeof buf, pipe)) > 0) text.append(buf, n);
  int status = pclose(pipe);
  if (out) *out = text;
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

JobSpec s3_job(std::vector<JobCommand> commands) {
  JobSpec s;
  s.degree = 3;
  s.group_generators = {"(0 1)", "(0 1 2)"};
  s.prime = 2;
  s.commands = std::move(commands);
  return s;
}

}  // namespace

TEST_CASE("parse_job and emit_job round trip to a canonical form") {
  auto j = json::parse(slurp(golden("s3_job.json")));
  auto spec = parse_job(j);
  CHECK(spec.commands.size() == 7);
  CHECK(spec.commands[4].params["point"] == 2);
  auto canon = emit_job(spec);
  CHECK(emit_job(parse_job(canon)) == canon);
  CHECK(canon["commands"][1]["criterion"] == "all");

  auto messy = json::parse(R"j({"degree": 4, "group_generators": ["(1 0)", "(3 2 1 0)"], "prime": 2, "commands": []})j");
  auto c = emit_job(parse_job(messy));
  CHECK(c["group_generators"] == json({"(0 1)", "(0 3 2 1)"}));
  CHECK(c["action"] == "natural");
}

TEST_CASE("parse_job rejects malformed input") {
  CHECK_THROWS_AS(parse_job_text("{"), InputError);
  CHECK_THROWS_AS(parse_job_text(R"j({"degree": 3, "group_generators": ["(0 1"], "prime": 2})j"), InputError);
  CHECK_THROWS_AS(parse_job_text(R"j({"degree": 3, "group_generators": ["(0 5)"], "prime": 2})j"), InputError);
  CHECK_THROWS_AS(parse_job_text(R"j({"degree": 3, "group_generators": ["(0 1)"], "prime": 4})j"), InputError);
  CHECK_THROWS_AS(parse_job_text(R"j({"degree": 3, "group_generators": ["(0 1)"], "prime": 2, "commands": ["frobnicate"]})j"),
                  InputError);
  CHECK_THROWS_AS(parse_job_text(R"j({"degree": 3, "group_generators": ["(0 1)"], "prime": 2, "commands": ["stabilizer"]})j"),
                  InputError);
  CHECK_THROWS_AS(
      parse_job_text(R"j({"degree": 3, "group_generators": ["(0 1)"], "prime": 2, "commands": [{"name": "core", "x": 1}]})j"),
      InputError);
}

TEST_CASE("run_job examples") {
  auto rep = run_job(s3_job({{"saturation-check", {{"criterion", "all"}}}}));
  CHECK(rep.exit_code == kExitOk);
  CHECK(rep.json["results"][0]["verdict"] == "saturated");
  CHECK(rep.json["status"] == "ok");

  JobSpec pt;
  pt.degree = 2;
  pt.group_generators = {"(0 1)"};
  pt.action = "point";
  pt.action_size = 1;
  pt.commands = {{"obstruction", {{"max_degree", 3}}}};
  auto po = run_job(pt);
  CHECK(po.exit_code == kExitOk);
  std::vector<std::string> groups;
  for (const auto& l : po.json["results"][0]["limits"]) groups.push_back(l["group"]);
  CHECK(groups == std::vector<std::string>{"Z/2", "0", "0", "0"});

  JobSpec c = job_from_fixture(fixture_spec("FIX-C"));
  c.commands = {{"analyze", json::object()}, {"core", json::object()}, {"kappa", json::object()}};
  auto rc = run_job(c);
  CHECK(rc.exit_code == kExitOk);
  CHECK(rc.json["results"][0]["core_order"] == 4);
  CHECK(rc.json["results"][1]["normal"] == true);

  // A failing precondition is recorded per command.
  JobSpec b = job_from_fixture(fixture_spec("FIX-B"));
  b.commands = {{"stabilizer", {{"point", 7}}}};
  auto rb = run_job(b);
  CHECK(rb.exit_code != kExitOk);
  CHECK(rb.json["results"][0]["status"] == "error");
}

TEST_CASE("run_job reports the cap") {
  Limits saved = limits();
  Limits small = saved;
  small.max_group_order = 10;
  set_limits(small);
  auto rep = run_job(job_from_fixture(fixture_spec("FIX-A")));
  set_limits(saved);
  CHECK(rep.exit_code == kExitCap);
  CHECK(rep.json["error"] == "cap");
}

TEST_CASE("list_fixtures_json") {
  auto l = list_fixtures_json();
  REQUIRE(l.size() == 5);
  for (const auto& f : l) {
    CAPTURE(f.dump());
    auto spec = parse_job(f["job"]);
    CHECK(emit_job(spec) == f["job"]);
    CHECK(job_fixture_spec(spec).degree == fixture_spec(f["name"]).degree);
  }
}

TEST_CASE("report_text renders every command") {
  auto rep = run_job(s3_job({{"analyze", json::object()}, {"centric", json::object()}}));
  auto t = report_text(rep.json);
  CHECK(t.find("analyze: ok") != std::string::npos);
  CHECK(t.find("centric: ok") != std::string::npos);
  CHECK(t.find("status: ok") != std::string::npos);
}

TEST_CASE("command line tool: golden report") {
  std::string a, b;
  CHECK(run_cli("run --json " + golden("s3_job.json"), &a) == 0);
  CHECK(run_cli("run --json " + golden("s3_job.json"), &b) == 0);
  CHECK(a == b);
  CHECK(json::parse(a) == json::parse(slurp(golden("s3_report.json"))));
}

TEST_CASE("command line tool: exit codes") {
  std::string out;
  CHECK(run_cli("saturation-check --fixture FIX-B --json", &out) == 0);
  CHECK(json::parse(out)["results"][0]["verdict"] == "saturated");
  CHECK(run_cli("analyze --fixture FIX-Q") == 2);
  CHECK(run_cli("no-such-command") == 2);
  CHECK(run_cli("run /nonexistent/job.json") == 2);
  CHECK(run_cli("--max-order 10 analyze --fixture FIX-A") == 3);
  CHECK(run_cli("list-fixtures --json", &out) == 0);
  CHECK(json::parse(out).size() == 5);
  CHECK(run_cli("obstruction --fixture FIX-C --json --max-degree 2", &out) == 0);
  CHECK(json::parse(out)["results"][0]["limits"].size() == 3);
}
