// Copyright 2026 The nosig Authors
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

#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "nosig/commands.hpp"

namespace cli = nosig::cli;

int main(int argc, char** argv) {
  CLI::App app{"Bipartite quantum channels: no-signaling, localizability and the R_alpha counterexample"};
  app.require_subcommand(1);

  std::string alpha_text = "1/6";
  double tol = 1e-9;
  std::string report;
  auto* reproduce = app.add_subcommand("reproduce", "Build R_alpha three ways and check its verdicts");
  reproduce->add_option("--alpha", alpha_text, "alpha in [0,1], decimal or p/q")->capture_default_str();
  reproduce->add_option("--tol", tol, "No-signaling and construction tolerance")->capture_default_str();
  reproduce->add_option("--out", report, "Write a JSON report here");

  cli::CheckOptions check_opts;
  std::string check_file;
  auto* check = app.add_subcommand("check", "Analyze a Choi file");
  check->add_option("file", check_file, "Choi file (JSON)")->required();
  check->add_option("--sender", check_opts.sender, "Sender subsystem labels")->required()->delimiter(',');
  check->add_option("--receiver", check_opts.receiver, "Receiver subsystem labels (default: the rest)")
      ->delimiter(',');
  check->add_option("--tol", check_opts.tol, "CPTP and no-signaling tolerance")->capture_default_str();
  check->add_option("--out", report, "Write a JSON report here");

  std::string export_alpha = "1/6";
  std::string export_file;
  auto* exp = app.add_subcommand("export", "Write the Choi file of R_alpha");
  exp->add_option("--alpha", export_alpha, "alpha in [0,1], decimal or p/q")->capture_default_str();
  exp->add_option("file", export_file, "Output path")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : cli::kExitUsage;
  }

  try {
    if (*reproduce) {
      cli::ReproduceOptions opts;
      opts.alpha = cli::parse_alpha(alpha_text);
      opts.tol = tol;
      if (!report.empty()) opts.report_path = report;
      return cli::cmd_reproduce(opts, std::cout, std::cerr);
    }
    if (*check) {
      check_opts.file = check_file;
      if (!report.empty()) check_opts.report_path = report;
      return cli::cmd_check(check_opts, std::cout, std::cerr);
    }
    return cli::cmd_export(cli::parse_alpha(export_alpha), export_file, std::cout, std::cerr);
  } catch (const nosig::ParameterError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return cli::kExitUsage;
  }
}
