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

// The no-signaling channel family R_α on qubits A, B.
//
// Ancillas: X_A, X_B share |I>>/√2; W_A, W_B share
// |Ψ_α> = √α|00> + √(1-α)|11>. Each side swaps its input with X when its W
// is |1>, both X are measured in the computational basis, and when both
// outcomes are 1 a σ_x controlled by W_A is applied to A (equivalently, by W_B
// to B). Outputs A' = (A, W_A), B' = (W_B, B).
//
// Canonical Choi layout: outputs (A, W_A, W_B, B), inputs (A, B).

#pragma once

#include "nosig/channel.hpp"
#include "nosig/nosignal.hpp"

namespace nosig {

/// α ∈ [0, 1]; throws ParameterError otherwise.
struct RAlphaParams {
  explicit RAlphaParams(double alpha);
  double alpha;
};

enum class SigmaPlacement {
  OnA,  ///< controlled-σ_x on (A, W_A): B tells A its outcome
  OnB,  ///< controlled-σ_x on (B, W_B): A tells B its outcome
};

SystemLayout r_alpha_in_layout();
SystemLayout r_alpha_out_layout();
Party r_alpha_party_a();
Party r_alpha_party_b();

/// K_{mn} = [Σ^{mn} ⊗ <m|_{X_A} <n|_{X_B}] |Φ_α>, reshaped to 16x4 operators
/// in the canonical layout, ordered (m, n) = 00, 01, 10, 11.
KrausSet r_alpha_kraus(const RAlphaParams& p);

/// sum_{mn} |K_{mn}>><<K_{mn}|.
ChannelOperator build_r_alpha_kraus(const RAlphaParams& p);

/// Density-matrix simulation of the circuit on the Choi state, with the X
/// measurements as four explicit branches.
ChannelOperator build_r_alpha_circuit(const RAlphaParams& p, SigmaPlacement variant);

/// The same circuit as a one-round classical-communication realization on a
/// maximally entangled pair of ququarts E_A = (X_A, W_A), E_B = (X_B, W_B).
/// The receiver's half of |Ψ_α> is distilled locally by the sender with a
/// two-outcome filter whose outcome k travels with the X outcome, so the
/// message is x = 2 (X outcome) + k.
RealizationSpec r_alpha_realization(const RAlphaParams& p, SigmaPlacement variant);

}  // namespace nosig
