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

// Randomized circuit pieces on qubits shared by the test suites.

#pragma once

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "nosig/counterexample.hpp"
#include "nosig/nosignal.hpp"
#include "nosig/random.hpp"

namespace fixtures {

using namespace nosig;

inline const Party kPartyA{{"A"}, {"A'"}};
inline const Party kPartyB{{"B"}, {"B'"}};

/// Local map (X ⧺ E_X) -> X' on qubits with a d-dimensional ancilla.
template <typename Rng>
ChannelOperator local_map(const std::string& side, Index d, Index rank, Rng& rng) {
  return random::channel(SystemLayout{{side, 2}, {"E_" + side, d}}, SystemLayout{{side + "'", 2}},
                         std::max(rank, d), rng);
}

/// Random one-round spec: the sender's instrument has 2..4 outcomes, every
/// correction is an independent random channel.
template <typename Rng>
RealizationSpec realization_spec(Direction dir, Rng& rng) {
  std::uniform_int_distribution<Index> dd(1, 2), nx(2, 4), rk(1, 2);
  const Index d = dd(rng);
  const Index outcomes = nx(rng);
  const std::string s = dir == Direction::AToB ? "A" : "B";
  const std::string r = dir == Direction::AToB ? "B" : "A";
  const SystemLayout s_in{{s, 2}, {"E_" + s, d}};
  const SystemLayout s_out{{s + "'", 2}};
  Index per = rk(rng);
  while (outcomes * per * 2 < 2 * d) ++per;
  RealizationSpec spec{dir, d, random::instrument(s_in, s_out, outcomes, per, rng), {}};
  for (Index x = 0; x < outcomes; ++x) spec.corrections.push_back(local_map(r, d, rk(rng), rng));
  return spec;
}

/// Localizable channel with the R_α input/output layout: A -> (A, W_A),
/// B -> (W_B, B), re-ordered to the canonical (A, W_A, W_B, B).
template <typename Rng>
ChannelOperator localizable_r_alpha_shaped(Rng& rng) {
  std::uniform_int_distribution<Index> dd(2, 4), rk(1, 3);
  const Index d = dd(rng);
  const Index min_rank = (2 * d + 3) / 4;
  const auto g_a = random::channel(SystemLayout{{"A", 2}, {"E_A", d}}, SystemLayout{{"A", 2}, {"W_A", 2}},
                                   std::max(rk(rng), min_rank), rng);
  const auto g_b = random::channel(SystemLayout{{"B", 2}, {"E_B", d}}, SystemLayout{{"W_B", 2}, {"B", 2}},
                                   std::max(rk(rng), min_rank), rng);
  const auto c = build_localizable(g_a, g_b, d);
  return ChannelOperator(permute_outputs(c, permutation_between(c.out_layout(), r_alpha_out_layout())));
}

/// Input bit n picks the Bloch angle angles[n] in the XZ plane; the E half of
/// the shared pair is measured along it and the ±1 outcome is written to the
/// output wire as |0> / |1>. W is left in |0>.
inline ChannelOperator angle_measurement(const std::string& side, const std::string& w, bool wire_first,
                                         const double (&angles)[2]) {
  KrausSet ks;
  for (Index n = 0; n < 2; ++n) {
    const double h = angles[n] / 2;
    ComplexVector basis[2] = {ComplexVector(2), ComplexVector(2)};
    basis[0] << std::cos(h), std::sin(h);
    basis[1] << -std::sin(h), std::cos(h);
    for (Index k = 0; k < 2; ++k) {
      // output (wire, W) or (W, wire) with W = |0>
      const ComplexVector out = wire_first ? ComplexVector(kron(ket(2, k), ket(2, 0))) : ComplexVector(kron(ket(2, 0), ket(2, k)));
      const ComplexVector in = kron(ket(2, n), basis[k]);
      ks.ops.push_back(out * in.adjoint());
    }
  }
  const SystemLayout o = wire_first ? SystemLayout{{side, 2}, {w, 2}} : SystemLayout{{w, 2}, {side, 2}};
  return channel_from_kraus(ks, SystemLayout{{side, 2}, {"E_" + side, 2}}, o);
}

/// The optimal quantum CHSH strategy as a localizable channel with the R_α
/// layout; its CHSH value is exactly 2√2.
inline ChannelOperator tsirelson_optimal_localizable() {
  const double pi = std::numbers::pi;
  const double a[2] = {0, pi / 2}, b[2] = {pi / 4, -pi / 4};
  return build_localizable(angle_measurement("A", "W_A", true, a), angle_measurement("B", "W_B", false, b), 2);
}

}  // namespace fixtures
