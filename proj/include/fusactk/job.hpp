#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include <json.hpp>

#include "fusactk/action_system.hpp"
#include "fusactk/fixtures.hpp"

namespace fusactk {

// One analysis request: a command name plus its parameters.
struct JobCommand {
  std::string name;
  nlohmann::json params = nlohmann::json::object();
};

// A group, a prime, an action and an ordered list of commands.
struct JobSpec {
  std::size_t degree = 0;
  std::vector<std::string> group_generators;
  unsigned prime = 2;
  std::vector<std::string> sylow_generators;  // empty: computed Sylow subgroup
  std::string action = "natural";             // natural | point | images
  std::size_t action_size = 0;
  std::vector<std::string> action_images;     // one per group generator
  std::vector<JobCommand> commands;
};

// Exit codes.
inline constexpr int kExitOk = 0;
inline constexpr int kExitVerification = 1;
inline constexpr int kExitInput = 2;
inline constexpr int kExitCap = 3;

// The command names accepted in a job.
const std::vector<std::string>& job_command_names();

// Throws InputError on malformed specs, including bad cycle notation.
JobSpec parse_job(const nlohmann::json& j);
JobSpec parse_job_text(const std::string& text);
// Canonical form: cycles normalized, defaults filled in, keys sorted.
nlohmann::json emit_job(const JobSpec& spec);
JobSpec job_from_fixture(const FixtureSpec& f);
FixtureSpec job_fixture_spec(const JobSpec& spec);

struct Report {
  nlohmann::json json;
  int exit_code = kExitOk;
};

// Runs every command in order over one shared ambient construction.
// Errors raised by a command are recorded in its result; an error while
// building the ambient data aborts the run.
Report run_job(const JobSpec& spec);

nlohmann::json list_fixtures_json();

// Plain text rendering of a report.
std::string report_text(const nlohmann::json& report);

}  // namespace fusactk
