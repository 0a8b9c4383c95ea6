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

// Subcommands of the `nosig` tool. Exit codes: 0 every check passed, 1 a
// mathematical check failed, 2 usage, I/O or parse error.

#pragma once

#include <filesystem>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "nosig/analysis.hpp"

namespace nosig::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitCheckFailed = 1;
inline constexpr int kExitUsage = 2;

/// Accepts a decimal or a fraction "p/q".
double parse_alpha(std::string_view text);

struct ReproduceOptions {
  double alpha = 1.0 / 6.0;
  double tol = 1e-9;
  std::optional<std::filesystem::path> report_path;
};

/// Builds R_α by the Kraus formula, both circuits and both communication
/// realizations, analyzes it, and checks every verdict of the α = 1/6
/// counterexample.
int cmd_reproduce(const ReproduceOptions& opts, std::ostream& out, std::ostream& err);

/// Machine-readable report of cmd_reproduce, as written by --out.
std::string reproduce_report(const ReproduceOptions& opts);

struct CheckOptions {
  std::filesystem::path file;
  /// Labels owned by the sender; each is matched against inputs and outputs.
  std::vector<std::string> sender;
  /// Defaults to every subsystem not named by `sender`.
  std::vector<std::string> receiver;
  double tol = 1e-9;
  std::optional<std::filesystem::path> report_path;
};

int cmd_check(const CheckOptions& opts, std::ostream& out, std::ostream& err);

int cmd_export(double alpha, const std::filesystem::path& path, std::ostream& out, std::ostream& err);

}  // namespace nosig::cli
