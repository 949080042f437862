#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "fusactk/error.hpp"
#include "fusactk/fixtures.hpp"
#include "fusactk/job.hpp"
#include "fusactk/limits.hpp"

using nlohmann::json;
using namespace fusactk;

namespace {

struct Options {
  std::string job_file;
  std::string fixture;
  std::string output;
  bool as_json = false;
  std::size_t max_order = 0;
  std::size_t max_pgroup_order = 0;
  std::size_t max_chains = 0;
  std::string criterion = "all";
  std::size_t point = 0;
  std::vector<std::string> subgroup;
  std::size_t max_degree = 3;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void apply_limits(const Options& o) {
  Limits l = limits();
  if (o.max_order) l.max_group_order = o.max_order;
  if (o.max_pgroup_order) l.max_pgroup_order = o.max_pgroup_order;
  if (o.max_chains) l.max_chains = o.max_chains;
  set_limits(l);
}

int emit(const Options& o, const Report& rep) {
  std::string text = rep.json.dump(2) + "\n";
  if (!o.output.empty()) {
    std::ofstream out(o.output);
    if (!out) {
      std::cerr << "cannot write " << o.output << "\n";
      return kExitInput;
    }
    out << text;
  }
  std::cout << (o.as_json ? text : report_text(rep.json));
  return rep.exit_code;
}

JobSpec base_job(const Options& o) {
  if (!o.job_file.empty() && !o.fixture.empty()) throw InputError("give either --job or --fixture");
  if (!o.job_file.empty()) {
    JobSpec s = parse_job_text(read_file(o.job_file));
    s.commands.clear();
    return s;
  }
  if (o.fixture.empty()) throw InputError("a --job file or a --fixture name is required");
  return job_from_fixture(fixture_spec(o.fixture));
}

int guarded(const std::function<int()>& f) {
  try {
    return f();
  } catch (const InputError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kExitInput;
  } catch (const CapExceeded& e) {
    std::cerr << "cap exceeded: " << e.what() << "\n";
    return kExitCap;
  } catch (const PreconditionError& e) {
    std::cerr << "precondition failed: " << e.what() << "\n";
    return kExitVerification;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Fusion action systems: saturation, subsystems, linking systems and obstruction groups"};
  app.require_subcommand(1);
  Options o;
  app.add_option("--max-order", o.max_order, "Cap on |G| (default from FUSACTK_MAX_ORDER or 20000)");
  app.add_option("--max-pgroup-order", o.max_pgroup_order, "Cap on |S| (default 256)");
  app.add_option("--max-chains", o.max_chains, "Cap on bar complex chains (default 2000000)");

  int code = kExitOk;

  auto* run = app.add_subcommand("run", "Run a JSON job file");
  run->add_option("job", o.job_file, "Job file")->required();
  run->add_option("-o,--output", o.output, "Write the JSON report to a file");
  run->add_flag("--json", o.as_json, "Print the JSON report");
  run->callback([&] {
    code = guarded([&] {
      apply_limits(o);
      return emit(o, run_job(parse_job_text(read_file(o.job_file))));
    });
  });

  auto* canon = app.add_subcommand("canonical", "Print the canonical form of a job file");
  canon->add_option("job", o.job_file, "Job file")->required();
  canon->callback([&] {
    code = guarded([&] {
      std::cout << emit_job(parse_job_text(read_file(o.job_file))).dump(2) << "\n";
      return kExitOk;
    });
  });

  auto* list = app.add_subcommand("list-fixtures", "List the built-in fixtures");
  list->add_flag("--json", o.as_json, "Print JSON");
  list->callback([&] {
    json l = list_fixtures_json();
    if (o.as_json) {
      std::cout << l.dump(2) << "\n";
    } else {
      for (const auto& f : l) std::cout << f["name"].get<std::string>() << "  " << f["description"].get<std::string>() << "\n";
    }
  });

  auto add_analysis = [&](const std::string& name, const std::string& help) {
    auto* sc = app.add_subcommand(name, help);
    sc->add_option("--job", o.job_file, "Job file supplying the group, prime and action");
    sc->add_option("--fixture", o.fixture, "Built-in fixture name");
    sc->add_option("-o,--output", o.output, "Write the JSON report to a file");
    sc->add_flag("--json", o.as_json, "Print the JSON report");
    return sc;
  };
  std::vector<std::pair<CLI::App*, std::string>> analyses;
  for (const auto& [name, help] : std::vector<std::pair<std::string, std::string>>{
           {"analyze", "Summary of the ambient fusion action system"},
           {"saturation-check", "Run the saturation checkers"},
           {"alperin-factor", "Factor every morphism into restricted automorphisms"},
           {"core", "Core subsystem and normality conditions"},
           {"kappa", "The map from X(1) to Out of the core system"},
           {"stabilizer", "Point stabilizer subsystem and stabilizer linking system"},
           {"k-normalizer", "K-normalizer subsystems"},
           {"centric", "X-centric subgroups"},
           {"transporter", "Ambient transporter category and its axioms"},
           {"linking", "Ambient linking action system and its axioms"},
           {"theta-roundtrip", "Rebuild the system and linking category from theta"},
           {"obstruction", "Center functor and its higher limits"}}) {
    auto* sc = add_analysis(name, help);
    if (name == "saturation-check")
      sc->add_option("--criterion", o.criterion, "full, rs, stancu or all")
          ->check(CLI::IsMember({"full", "rs", "stancu", "all"}));
    if (name == "stabilizer") sc->add_option("--point", o.point, "Point of X")->required();
    if (name == "k-normalizer") sc->add_option("--subgroup", o.subgroup, "Generators of P in S (default: all P)");
    if (name == "obstruction") sc->add_option("--max-degree", o.max_degree, "Highest degree of lim");
    analyses.push_back({sc, name});
  }
  for (auto& [sc, name] : analyses) {
    std::string n = name;
    sc->callback([&, n] {
      code = guarded([&] {
        apply_limits(o);
        JobSpec s = base_job(o);
        json c = {{"name", n}};
        if (n == "saturation-check") c["criterion"] = o.criterion;
        if (n == "stabilizer") c["point"] = o.point;
        if (n == "k-normalizer") c["subgroup"] = o.subgroup;
        if (n == "obstruction") c["max_degree"] = o.max_degree;
        json j = emit_job(s);
        j["commands"] = json::array({c});
        return emit(o, run_job(parse_job(j)));
      });
    });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int r = app.exit(e);
    return r == 0 ? kExitOk : kExitInput;
  }
  return code;
}
