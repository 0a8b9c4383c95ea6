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

#pragma once

#include <numbers>
#include <optional>

#include "nosig/channel.hpp"
#include "nosig/nosignal.hpp"

namespace nosig {

inline constexpr double kTsirelsonBound = 2 * std::numbers::sqrt2;

struct AnalysisTolerances {
  double nosignal = kNoSignalTol;
  double ppt = 1e-9;
  double chsh_slack = 1e-6;
  double gram_rel = 1e-10;
  double kraus_cutoff = kKrausCutoff;
};

struct ExtremalityResult {
  Index kraus_count = 0;
  Index rank = 0;
  /// rank == kraus_count², which certifies an extreme point of the channel set.
  bool full = false;
};

struct AnalysisReport {
  SignalingVerdict nosignaling;
  double ppt_min_eigenvalue = 0;
  bool ppt_violated = false;
  /// Empty when the channel does not have the R_α layout.
  std::optional<double> chsh_value;
  bool chsh_exceeds_tsirelson = false;
  ExtremalityResult extremality;
  AnalysisTolerances tolerances;
};

/// Smallest eigenvalue of the Choi operator partially transposed on all
/// inputs. Negative means the Choi operator is entangled across
/// outputs | inputs, so the channel is not entanglement-breaking.
double ppt_min_eig(const CpMap& c);

bool chsh_applicable(const CpMap& c);

/// |<A0B0> + <A0B1> + <A1B0> - <A1B1>| with
/// <A_n B_m> = Tr[(σ_z^{A'} ⊗ |n><n|_A ⊗ σ_z^{B'} ⊗ |m><m|_B ⊗ I_{W_A W_B}) R].
/// Requires the R_α layout; throws LabelError otherwise.
double chsh_value(const CpMap& c);

ExtremalityResult extremality_rank(const CpMap& c, double cutoff = kKrausCutoff, double rel_tol = 1e-10);

AnalysisReport analyze(const ChannelOperator& c, const Party& a, const Party& b, const AnalysisTolerances& tol = {});

}  // namespace nosig
