// Copyright 2026 The pensim Authors
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

#include <cstdio>
#include <exception>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "pensim/errors.hpp"
#include "pensim/runner.hpp"
#include "pensim/verify.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitNumeric = 3;
constexpr int kExitVerify = 4;

void write_file(const std::filesystem::path& path,
                const std::function<void(std::ostream&)>& writer) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw pensim::ConfigError("cannot open '" + path.string() +
                              "' for writing");
  }
  writer(out);
  out.flush();
  if (!out) {
    throw pensim::ConfigError("failed while writing '" + path.string() + "'");
  }
}

std::filesystem::path prepare_output_dir(const pensim::RunConfig& config,
                                         const std::string& override_dir) {
  const std::filesystem::path dir =
      override_dir.empty() ? config.output_dir : override_dir;
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) {
    throw pensim::ConfigError("cannot create output directory '" +
                              dir.string() + "': " + ec.message());
  }
  return dir;
}

int cmd_run(const std::string& config_path, const std::string& override_dir) {
  pensim::RunConfig config = pensim::load_config(config_path);
  const std::filesystem::path dir = prepare_output_dir(config, override_dir);

  const pensim::RunResult result = pensim::run_single(config);
  const auto trajectory_path = dir / "trajectory.csv";
  const auto bound_path = dir / "bound_report.csv";
  write_file(trajectory_path, [&](std::ostream& out) {
    pensim::write_trajectory_csv(result.trajectory, out);
  });
  write_file(bound_path, [&](std::ostream& out) {
    pensim::write_bound_csv(result.report, out);
  });

  std::printf("wrote %s (%zu rows) and %s\n", trajectory_path.c_str(),
              result.trajectory.points.size(), bound_path.c_str());
  std::printf("p_perp(t_f) = %.6e  bound = %.6e  relaxed = %.6e\n",
              result.report.p_perp_measured, result.report.bound_value,
              result.report.bound_relaxed);
  return kExitOk;
}

int cmd_sweep(const std::string& config_path, const std::string& axis_str,
              const std::vector<double>& values,
              const std::string& override_dir) {
  pensim::RunConfig config = pensim::load_config(config_path);
  const pensim::SweepAxis axis = pensim::parse_axis(axis_str);
  const std::filesystem::path dir = prepare_output_dir(config, override_dir);

  const pensim::SweepResult result =
      pensim::run_sweep(config, axis, values);
  const auto sweep_path = dir / "sweep.csv";
  write_file(sweep_path, [&](std::ostream& out) {
    pensim::write_sweep_csv(result, out);
  });

  std::printf("wrote %s (%zu points)\n", sweep_path.c_str(),
              result.points.size());
  if (result.has_fit) {
    std::printf("fit: slope = %.6g  intercept = %.6g  r2 = %.6g\n",
                result.fit.slope, result.fit.intercept,
                result.fit.r_squared);
  }
  return kExitOk;
}

int cmd_verify(const std::string& config_path, const std::string& mutate) {
  const pensim::RunConfig config = config_path.empty()
                                       ? pensim::default_config()
                                       : pensim::load_config(config_path);
  const pensim::VerifyMutation mutation =
      mutate == "kms_sign_flip" ? pensim::VerifyMutation::kms_sign_flip
                                : pensim::VerifyMutation::none;

  const pensim::VerifyReport report = pensim::verify_suite(config, mutation);
  for (const pensim::VerifyCheck& check : report.checks) {
    std::printf("[%s] %-26s max violation %.3e (tolerance %.1e)\n",
                check.passed ? "PASS" : "FAIL", check.name.c_str(),
                check.violation, check.tolerance);
  }
  if (!report.all_passed()) {
    std::printf("verification FAILED\n");
    return kExitVerify;
  }
  std::printf("all checks passed\n");
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Davies-Lindblad simulator for penalty-protected adiabatic "
               "dynamics on stabilizer codes"};
  app.require_subcommand(1);

  std::string config_path;
  std::string output_dir;
  std::string axis_str;
  std::vector<double> values;
  std::string verify_config;
  std::string mutate = "none";

  CLI::App* run_cmd = app.add_subcommand(
      "run", "Evolve one configuration; write trajectory and bound CSVs");
  run_cmd->add_option("config", config_path, "JSON configuration file")
      ->required();
  run_cmd->add_option("--output-dir", output_dir,
                      "Output directory (overrides the config)");

  CLI::App* sweep_cmd =
      app.add_subcommand("sweep", "Sweep one axis; write a combined CSV");
  sweep_cmd->add_option("config", config_path, "JSON configuration file")
      ->required();
  sweep_cmd->add_option("--axis", axis_str, "Axis: eta_p, t_f, or v")
      ->required();
  sweep_cmd
      ->add_option("--values", values, "Comma-separated axis values")
      ->required()
      ->delimiter(',');
  sweep_cmd->add_option("--output-dir", output_dir,
                        "Output directory (overrides the config)");

  CLI::App* verify_cmd =
      app.add_subcommand("verify", "Run the invariant check battery");
  verify_cmd->add_option("config", verify_config,
                         "JSON configuration file (defaults to built-in)");
  verify_cmd
      ->add_option("--mutate", mutate,
                   "Inject a fault to exercise the suite")
      ->check(CLI::IsMember({"none", "kms_sign_flip"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitConfig;
  }

  try {
    if (run_cmd->parsed()) return cmd_run(config_path, output_dir);
    if (sweep_cmd->parsed()) {
      return cmd_sweep(config_path, axis_str, values, output_dir);
    }
    return cmd_verify(verify_config, mutate);
  } catch (const pensim::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const pensim::ValidationError& e) {
    std::cerr << "validation error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const pensim::ResourceError& e) {
    std::cerr << "resource error: " << e.what() << '\n';
    return kExitNumeric;
  } catch (const pensim::NumericError& e) {
    std::cerr << "numeric error: " << e.what() << '\n';
    return kExitNumeric;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitNumeric;
  }
}
