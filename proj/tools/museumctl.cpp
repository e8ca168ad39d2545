#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "museum/core/error.hpp"
#include "museum/core/json_codec.hpp"
#include "museum/reports/reports.hpp"
#include "museum/server/server.hpp"
#include "museum/sim/simulation.hpp"

namespace {

using namespace museum;

EventLog load_log(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::LogFormat, "cannot open " + path);
  return EventLog::read_ndjson(in);
}

template <class Fn>
void write_to(const std::string& path, Fn&& write) {
  if (path.empty() || path == "-") {
    write(std::cout);
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::ConfigError, "cannot write " + path);
  write(out);
}

struct RunOptions {
  std::string config;
  std::optional<std::uint64_t> seed;
  std::optional<double> alpha;
  std::optional<double> epsilon;
  std::string out;
};

struct ReportOptions {
  std::string log;
  int kind = 0;
  std::optional<Tick> from;
  std::optional<Tick> to;
  std::string format = "json";
  std::string out;
  reports::ReportParams params;
};

int cmd_validate(const std::string& config) {
  const auto file = sim::load_museum_file(config);
  file.validate();
  std::cout << "ok: " << file.museum.map.size() << " nodes, " << file.museum.objects.size() << " objects\n";
  return 0;
}

int cmd_run(const RunOptions& o) {
  auto file = sim::load_museum_file(o.config);
  if (o.seed) file.scenario.seed = *o.seed;
  if (o.alpha) file.scenario.routing_alpha = *o.alpha;
  if (o.epsilon) file.museum.location_epsilon = *o.epsilon;
  const auto log = sim::run_scenario(file);
  write_to(o.out, [&log](std::ostream& out) { log.write_ndjson(out); });
  return 0;
}

int cmd_report(const ReportOptions& o) {
  const auto log = load_log(o.log);
  const auto events = log.events();
  reports::Interval interval{o.from.value_or(0), o.to.value_or(log.last_timestamp())};
  const auto report = reports::generate_report(events, o.kind, interval, o.params);
  write_to(o.out, [&](std::ostream& out) {
    if (o.format == "csv") out << report.to_csv();
    else out << report.to_json().dump(2) << '\n';
  });
  return 0;
}

int cmd_replay(const std::string& path) {
  const auto log = load_log(path);
  const auto state = server::rebuild_state(log.events());
  nlohmann::json crowd = nlohmann::json::object();
  for (const auto& [object, n] : server::crowd_snapshot(state)) crowd[object.str()] = n;
  nlohmann::json out{{"events", log.size()},
                     {"watermark", state.watermark},
                     {"occupancy", server::occupancy(state)},
                     {"alarms", state.alarms.size()},
                     {"crowd", crowd}};
  std::cout << out.dump(2) << '\n';
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Museum RFID automation: validate configs, simulate, replay logs and report"};
  app.require_subcommand(0, 1);
  bool version = false;
  app.add_flag("--version", version, "Print schema versions");

  std::string validate_config;
  auto* validate = app.add_subcommand("validate", "Check a museum configuration file");
  validate->add_option("--config", validate_config, "Configuration file")->required()->check(CLI::ExistingFile);

  RunOptions run;
  auto* run_cmd = app.add_subcommand("run", "Simulate a scenario and write its event log (NDJSON)");
  run_cmd->add_option("--config", run.config, "Configuration file")->required()->check(CLI::ExistingFile);
  run_cmd->add_option("--seed", run.seed, "Override the scenario seed");
  run_cmd->add_option("--alpha", run.alpha, "Crowd weight for crowd-balanced routing")->check(CLI::NonNegativeNumber);
  run_cmd->add_option("--epsilon", run.epsilon, "Location-change tolerance in metres")->check(CLI::PositiveNumber);
  run_cmd->add_option("--out", run.out, "Output log file (default: stdout)");

  ReportOptions rep;
  auto* report = app.add_subcommand("report", "Generate a management report from an event log");
  report->add_option("--log", rep.log, "Event log file")->required()->check(CLI::ExistingFile);
  report->add_option("--kind", rep.kind, "Report kind 1..14")->required();
  report->add_option("--from", rep.from, "Interval start (s, default 0)");
  report->add_option("--to", rep.to, "Interval end (s, inclusive, default last event)");
  report->add_option("--format", rep.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
  report->add_option("--out", rep.out, "Output file (default: stdout)");
  report->add_option("--min-support", rep.params.min_support, "Minimum co-visit support (kinds 12, 14)");
  report->add_option("--top-k", rep.params.top_k_routes, "Routes listed in kind 4");
  report->add_option("--bucket", rep.params.bucket_seconds, "Histogram bucket seconds (kinds 2, 11)");
  report->add_option("--day-seconds", rep.params.day_seconds, "Length of a day in seconds (kinds 8, 13)");
  report->add_option("--horizon", rep.params.forecast_horizon, "Forecast days (kind 13)");

  std::string replay_log;
  auto* replay = app.add_subcommand("replay", "Rebuild live state from an event log");
  replay->add_option("--log", replay_log, "Event log file")->required()->check(CLI::ExistingFile);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (version) {
      std::cout << "museumctl config-schema " << sim::kConfigSchemaVersion << " event-schema " << kEventSchemaVersion
                << " report-schema " << reports::kReportSchemaVersion << '\n';
      return 0;
    }
    if (validate->parsed()) return cmd_validate(validate_config);
    if (run_cmd->parsed()) return cmd_run(run);
    if (report->parsed()) return cmd_report(rep);
    if (replay->parsed()) return cmd_replay(replay_log);
    std::cerr << app.help();
    return 2;
  } catch (const Error& e) {
    std::cerr << "error: " << to_string(e.code()) << ": " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: Internal: " << e.what() << '\n';
    return 1;
  }
}
