// Copyright 2026 The servopneu Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


// Command-line front end: run builtin or file scenarios, list builtins,
// validate scenario files, summarise trace files.

#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "servopneu/servopneu.hpp"

namespace {

enum ExitCode : int {
  kOk = 0,
  kFailure = 1,
  kParse = 2,
  kInvariant = 3,
  kIntegration = 4,
};

std::string format_summary(const servopneu::RunSummary& s) {
  std::ostringstream o;
  o.precision(6);
  o << "max_speed        " << s.max_speed << " m/s\n";
  o << "dead_time        ";
  if (s.dead_time) o << *s.dead_time << " s";
  else o << "absent";
  o << "  (|v| > " << servopneu::kMotionThreshold << " m/s)\n";
  o << "peak_p1          " << s.peak_p1 << " Pa\n";
  o << "peak_p2          " << s.peak_p2 << " Pa\n";
  o << "final_position   " << s.final_position << " m\n";
  o << "reversals        " << s.reversals << "\n";
  o << "amplitude        " << s.amplitude << " m\n";
  return o.str();
}

std::string summary_json(const servopneu::RunSummary& s, const std::string& name) {
  nlohmann::json j;
  j["scenario"] = name;
  j["max_speed"] = s.max_speed;
  j["dead_time"] = s.dead_time ? nlohmann::json(*s.dead_time) : nlohmann::json(nullptr);
  j["dead_time_threshold"] = servopneu::kMotionThreshold;
  j["peak_p1"] = s.peak_p1;
  j["peak_p2"] = s.peak_p2;
  j["final_position"] = s.final_position;
  j["reversals"] = s.reversals;
  j["amplitude"] = s.amplitude;
  return j.dump(2) + "\n";
}

template <typename F>
int guarded(F&& f) {
  try {
    return f();
  } catch (const servopneu::ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kParse;
  } catch (const servopneu::InvariantViolation& e) {
    std::cerr << "invalid parameters: " << e.what() << "\n";
    return kInvariant;
  } catch (const servopneu::InstabilityError& e) {
    std::cerr << "integration failed: " << e.what() << "\n";
    return kIntegration;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kFailure;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Lumped-parameter servopneumatic actuator simulator"};
  app.require_subcommand(1);

  std::string source;
  std::vector<std::string> overrides;
  std::string out_dir = "out";
  std::optional<double> dt, duration, sample;
  std::vector<std::string> formats{"trace", "plot", "summary"};
  auto* run = app.add_subcommand("run", "Run a builtin scenario or a scenario file");
  run->add_option("scenario", source, "Builtin name or scenario file")->required();
  run->add_option("--set", overrides, "Parameter override key=value (repeatable)");
  run->add_option("--out", out_dir, "Output directory");
  run->add_option("--dt", dt, "Integrator step [s]");
  run->add_option("--duration", duration, "Simulated time [s]");
  run->add_option("--sample", sample, "Output sample interval [s]");
  run->add_option("--formats", formats, "Outputs to write: trace, plot, summary")
      ->delimiter(',')
      ->check(CLI::IsMember({"trace", "plot", "summary"}));
  bool dump_scenario = false;
  run->add_flag("--dump-scenario", dump_scenario, "Also write the resolved scenario as JSON");

  auto* list = app.add_subcommand("list", "List builtin scenarios");
  bool list_json = false;
  list->add_flag("--json", list_json, "Print the full resolved documents");

  std::string validate_path;
  auto* validate = app.add_subcommand("validate", "Check a scenario file");
  validate->add_option("file", validate_path)->required();

  std::string trace_path;
  auto* summary = app.add_subcommand("summary", "Summarise a trace CSV");
  summary->add_option("trace", trace_path)->required()->check(CLI::ExistingFile);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kOk : kFailure;
  }

  if (*run) {
    return guarded([&] {
      servopneu::Scenario sc = servopneu::parse_scenario(source);
      for (const auto& o : overrides) servopneu::apply_override(sc, o);
      if (dt) servopneu::set_parameter(sc, "integrator.dt", *dt, servopneu::Provenance::user);
      if (duration) {
        servopneu::set_parameter(sc, "integrator.duration", *duration, servopneu::Provenance::user);
      }
      if (sample) {
        servopneu::set_parameter(sc, "integrator.sample_interval", *sample,
                                 servopneu::Provenance::user);
      }
      sc.validate();

      const auto trace = servopneu::run(sc);
      const auto summary = servopneu::summarize(trace);
      const std::set<std::string> want(formats.begin(), formats.end());
      const std::filesystem::path dir(out_dir);
      std::filesystem::create_directories(dir);
      if (want.count("trace")) servopneu::export_trace(trace, dir / (sc.name + ".csv"));
      if (want.count("plot")) servopneu::emit_plot(trace, dir / (sc.name + ".svg"));
      if (want.count("summary")) {
        servopneu::write_text_file(dir / (sc.name + ".summary.json"), summary_json(summary, sc.name));
      }
      if (dump_scenario) {
        servopneu::write_text_file(dir / (sc.name + ".scenario.json"),
                                   servopneu::serialize_scenario(sc));
      }
      std::cout << sc.name << ": " << trace.size() << " samples written to " << dir.string() << "\n"
                << format_summary(summary);
      return static_cast<int>(kOk);
    });
  }
  if (*list) {
    return guarded([&] {
      nlohmann::json all = nlohmann::json::object();
      for (const auto& s : servopneu::builtin_scenarios()) {
        if (list_json) all[s.name] = servopneu::scenario_to_json(s);
        else std::cout << s.name << "  " << s.description << "\n";
      }
      if (list_json) std::cout << all.dump(2) << "\n";
      return static_cast<int>(kOk);
    });
  }
  if (*validate) {
    return guarded([&] {
      const auto sc = servopneu::parse_scenario(validate_path);
      std::cout << validate_path << ": ok (" << sc.name << ")\n";
      return static_cast<int>(kOk);
    });
  }
  if (*summary) {
    return guarded([&] {
      const auto trace = servopneu::import_trace(trace_path);
      std::cout << format_summary(servopneu::summarize(trace));
      return static_cast<int>(kOk);
    });
  }
  return kFailure;
}
