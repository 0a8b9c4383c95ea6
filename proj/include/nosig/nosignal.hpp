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

// Directional no-signaling tests on Choi operators, and the circuit families
// that realize no-signaling channels: local operations on a shared maximally
// entangled pair, optionally with one round of classical communication.
//
// Local pieces follow one wiring convention throughout: the shared ancilla is
// the LAST input subsystem of every local map, and the assembled channel has
// inputs (A-side ⧺ B-side) and outputs (A-side ⧺ B-side).

#pragma once

#include <span>
#include <string>
#include <vector>

#include "nosig/channel.hpp"

namespace nosig {

inline constexpr double kNoSignalTol = 1e-9;

/// Subsystems owned by one party, by label.
struct Party {
  std::vector<std::string> in_labels;
  std::vector<std::string> out_labels;
};

struct DirectionalResult {
  bool nosignaling = false;
  /// max |Tr_{O'} R - I_{I'} ⊗ S|.
  double residual = 0;
};

struct SignalingVerdict {
  bool a_to_b = false;  ///< A does not signal to B' (A ↛ B')
  bool b_to_a = false;  ///< B does not signal to A' (B ↛ A')
  double residual_a = 0;
  double residual_b = 0;
  double tolerance = kNoSignalTol;
};

/// Tests Tr_{O'}[R] = I_{I'} ⊗ S with S = Tr_{I'} Tr_{O'}[R] / d_{I'}; on
/// success S must also be a valid channel on the remaining systems.
DirectionalResult check_nosignaling_subset(const CpMap& c, std::span<const std::string> in_subset,
                                           std::span<const std::string> out_subset, double tol = kNoSignalTol);

/// sender ↛ receiver'. The two parties must partition the channel's labels.
DirectionalResult check_nosignaling_dir(const CpMap& c, const Party& sender, const Party& receiver,
                                        double tol = kNoSignalTol);

SignalingVerdict is_nosignaling(const CpMap& c, const Party& a, const Party& b, double tol = kNoSignalTol);

enum class Direction {
  AToB,  ///< A measures, B corrects: B ↛ A' by construction
  BToA,  ///< B measures, A corrects: A ↛ B' by construction
};

/// One-round classical-communication realization. The sender's instrument
/// acts on (sender_in ⧺ E_sender); correction x acts on
/// (receiver_in ⧺ E_receiver). E_A, E_B start in (1/√d)|I>>.
struct RealizationSpec {
  Direction direction = Direction::AToB;
  Index ancilla_dim = 1;
  Instrument instrument;
  std::vector<ChannelOperator> corrections;
};

/// sum_x (C_A^x ⊗ C_B^x) applied to rho ⊗ |I>><<I|/d on the ancillas.
ChannelOperator build_realization_cc(const RealizationSpec& spec);

/// Local maps g_a : (A ⧺ E_A) -> A', g_b : (B ⧺ E_B) -> B' on a shared pair.
ChannelOperator build_localizable(const ChannelOperator& g_a, const ChannelOperator& g_b, Index d);

/// (id_A' ⊗ v2) ∘ (v1 ⊗ id_B) with v1 : A -> (A' ⧺ E') and v2 : (E' ⧺ B) -> B';
/// E' is the last output of v1 and the first input of v2.
ChannelOperator build_semilocalizable(const ChannelOperator& v1, const ChannelOperator& v2);

/// Generalized Bell basis |B_{p,q}>> = (X^p Z^q ⊗ I)|I>>/√d, with X the
/// cyclic shift and Z the clock operator, and the matching corrections.
/// Outcome index x = p d + q.
struct TeleportGadget {
  Index dim = 2;
  std::vector<ComplexVector> bell_basis;
  std::vector<ComplexMatrix> corrections;
};

TeleportGadget teleport_gadget(Index d);

ComplexMatrix shift_operator(Index d);
ComplexMatrix clock_operator(Index d);

/// Replaces the quantum message E' of a semi-localizable circuit by
/// teleportation: Bell measurement of (E', E_A) on the A side, the outcome
/// sent to B, correction U_x on E_B followed by v2.
RealizationSpec teleport_reduce(const ChannelOperator& v1, const ChannelOperator& v2);

}  // namespace nosig
