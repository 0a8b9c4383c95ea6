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

#include "nosig/counterexample.hpp"

#include <cmath>
#include <string>

namespace nosig {

namespace {

// Qubit order of the Choi-state simulation: outputs-to-be, input references,
// then ancillas.
enum Wire : Index { kA = 0, kB, kARef, kBRef, kXA, kXB, kWA, kWB, kWires };

Dims qubit_dims(Index n) { return Dims(static_cast<std::size_t>(n), 2); }

// |0><0| ⊗ I + |1><1| ⊗ SWAP on (control, t1, t2).
ComplexMatrix controlled_swap() {
  ComplexMatrix u = ComplexMatrix::Zero(8, 8);
  for (Index t = 0; t < 4; ++t) u(t, t) = 1;
  u(4, 4) = 1;
  u(5, 6) = 1;
  u(6, 5) = 1;
  u(7, 7) = 1;
  return u;
}

// |0><0| ⊗ I + |1><1| ⊗ σ_x on (control, target).
ComplexMatrix controlled_x() {
  ComplexMatrix u = ComplexMatrix::Identity(4, 4);
  u.bottomRightCorner(2, 2) = pauli::x();
  return u;
}

// <digit| on the qubit at `pos`, as a 2^{n-1} x 2^n matrix.
ComplexMatrix bra_on(Index n, Index pos, Index digit) {
  const Dims dims = qubit_dims(n);
  const Positions p{pos};
  const auto kept = detail::complement(n, p);
  const auto k_off = detail::digit_offsets(dims, kept);
  const auto p_off = detail::digit_offsets(dims, p);
  ComplexMatrix out = ComplexMatrix::Zero(static_cast<Index>(k_off.size()), Index{1} << n);
  for (std::size_t r = 0; r < k_off.size(); ++r) out(static_cast<Index>(r), k_off[r] + p_off[static_cast<std::size_t>(digit)]) = 1;
  return out;
}

ComplexMatrix on_qubits(const ComplexMatrix& op, Index n, Positions positions) {
  return embed(op, qubit_dims(n), positions);
}

ComplexVector psi_alpha(double alpha) {
  ComplexVector v = ComplexVector::Zero(4);
  v(0) = std::sqrt(alpha);
  v(3) = std::sqrt(1 - alpha);
  return v;
}

// Layout of the vector/state after the X wires are gone:
// (A, B, A_ref, B_ref, W_A, W_B) -> canonical (A, W_A, W_B, B, A_ref, B_ref).
const Positions kToCanonical{0, 4, 5, 1, 2, 3};

}  // namespace

RAlphaParams::RAlphaParams(double a) : alpha(a) {
  if (!(a >= 0.0 && a <= 1.0)) throw ParameterError("alpha must lie in [0, 1], got " + std::to_string(a));
}

SystemLayout r_alpha_in_layout() { return SystemLayout::qubits({"A", "B"}); }
SystemLayout r_alpha_out_layout() { return SystemLayout::qubits({"A", "W_A", "W_B", "B"}); }
Party r_alpha_party_a() { return {{"A"}, {"A", "W_A"}}; }
Party r_alpha_party_b() { return {{"B"}, {"W_B", "B"}}; }

KrausSet r_alpha_kraus(const RAlphaParams& p) {
  const ComplexVector refs = max_entangled(4);  // |I>> over (A B, A_ref B_ref)
  const ComplexVector x_pair = max_entangled(2) / std::sqrt(2.0);
  ComplexVector phi = kron(kron(refs, x_pair), psi_alpha(p.alpha));

  const ComplexMatrix cswap = controlled_swap();
  phi = on_qubits(cswap, kWires, {kWA, kA, kXA}) * phi;
  phi = on_qubits(cswap, kWires, {kWB, kB, kXB}) * phi;

  // After removing X_A, X_B the wires are (A, B, A_ref, B_ref, W_A, W_B).
  const ComplexMatrix project_xa[] = {bra_on(kWires, kXA, 0), bra_on(kWires, kXA, 1)};
  const ComplexMatrix sigma = on_qubits(controlled_x(), 6, {4, 0});
  KrausSet out;
  for (Index m = 0; m < 2; ++m)
    for (Index n = 0; n < 2; ++n) {
      // X_B sits at position 4 once X_A is removed.
      ComplexVector k = bra_on(kWires - 1, kXB - 1, n) * (project_xa[m] * phi);
      if (m * n == 1) k = sigma * k;
      const ComplexVector canonical = permute_vector(k, qubit_dims(6), kToCanonical);
      out.ops.push_back(unvec(canonical, 16, 4));
    }
  return out;
}

ChannelOperator build_r_alpha_kraus(const RAlphaParams& p) {
  return channel_from_kraus(r_alpha_kraus(p), r_alpha_in_layout(), r_alpha_out_layout());
}

ChannelOperator build_r_alpha_circuit(const RAlphaParams& p, SigmaPlacement variant) {
  const ComplexVector refs = max_entangled(4);
  const ComplexVector x_pair = max_entangled(2);
  const ComplexVector w_pair = psi_alpha(p.alpha);
  ComplexMatrix rho = kron(kron(ComplexMatrix(refs * refs.adjoint()), ComplexMatrix(x_pair * x_pair.adjoint()) / 2.0),
                           ComplexMatrix(w_pair * w_pair.adjoint()));

  const ComplexMatrix cswap = controlled_swap();
  const ComplexMatrix gates = on_qubits(cswap, kWires, {kWB, kB, kXB}) * on_qubits(cswap, kWires, {kWA, kA, kXA});
  rho = gates * rho * gates.adjoint();

  const ComplexMatrix sigma = variant == SigmaPlacement::OnA ? on_qubits(controlled_x(), kWires, {kWA, kA})
                                                             : on_qubits(controlled_x(), kWires, {kWB, kB});
  const Dims dims = qubit_dims(kWires);
  const Positions xs{kXA, kXB};
  ComplexMatrix choi = ComplexMatrix::Zero(64, 64);
  for (Index m = 0; m < 2; ++m)
    for (Index n = 0; n < 2; ++n) {
      ComplexMatrix outcome = ComplexMatrix::Zero(4, 4);
      outcome(2 * m + n, 2 * m + n) = 1;
      const ComplexMatrix proj = embed(outcome, dims, xs);
      ComplexMatrix branch = proj * rho * proj;
      if (m == 1 && n == 1) branch = sigma * branch * sigma.adjoint();
      choi += ptrace(branch, dims, xs);
    }
  return ChannelOperator(permute_systems(choi, qubit_dims(6), kToCanonical), r_alpha_in_layout(),
                         r_alpha_out_layout());
}

namespace {

// Sender's two-outcome filter on its W qubit. Outcome 0 turns the |I>>/√2
// pair into |Ψ_α>; outcome 1 does too once the receiver flips its W qubit.
ComplexMatrix filter(double alpha, Index k) {
  ComplexMatrix f = ComplexMatrix::Zero(2, 2);
  const double a = std::sqrt(alpha), b = std::sqrt(1 - alpha);
  if (k == 0) {
    f(0, 0) = a;
    f(1, 1) = b;
  } else {
    f(0, 0) = b;
    f(1, 1) = a;
    f = pauli::x() * f;
  }
  return f;
}

// Local wires (S, X, W) with S the party's input qubit; E = (X, W) as a
// single ququart. After <.| on X the wires are (S, W).
const SystemLayout kLocalInA{{"A", 2}, {"E_A", 4}};
const SystemLayout kLocalInB{{"B", 2}, {"E_B", 4}};

const ComplexMatrix& swap_sw() {
  static const ComplexMatrix s = permutation_unitary(Dims{2, 2}, Positions{1, 0});
  return s;
}

}  // namespace

RealizationSpec r_alpha_realization(const RAlphaParams& p, SigmaPlacement variant) {
  const ComplexMatrix cswap = on_qubits(controlled_swap(), 3, {2, 0, 1});
  const ComplexMatrix flip_w = on_qubits(pauli::x(), 3, {2});
  const ComplexMatrix sigma = on_qubits(controlled_x(), 2, {1, 0});  // control W, target S
  const bool a_sends = variant == SigmaPlacement::OnB;
  const SystemLayout a_out = SystemLayout::qubits({"A", "W_A"});
  const SystemLayout b_out = SystemLayout::qubits({"W_B", "B"});
  // The B side reports (W_B, B); local wires come out as (B, W_B).
  const ComplexMatrix a_order = identity(4);
  const ComplexMatrix b_order = swap_sw();

  const auto& s_in = a_sends ? kLocalInA : kLocalInB;
  const auto& s_out = a_sends ? a_out : b_out;
  const auto& s_order = a_sends ? a_order : b_order;
  const auto& r_in = a_sends ? kLocalInB : kLocalInA;
  const auto& r_out = a_sends ? b_out : a_out;
  const auto& r_order = a_sends ? b_order : a_order;

  std::vector<CpMap> branches;
  std::vector<ChannelOperator> corrections;
  for (Index x_outcome = 0; x_outcome < 2; ++x_outcome)
    for (Index k = 0; k < 2; ++k) {
      const ComplexMatrix f = on_qubits(filter(p.alpha, k), 3, {2});
      const ComplexMatrix sender_op[] = {s_order * bra_on(3, 1, x_outcome) * cswap * f};
      branches.push_back(cp_map_from_kraus(sender_op, s_in, s_out));

      std::vector<ComplexMatrix> receiver_ops;
      for (Index y = 0; y < 2; ++y) {
        ComplexMatrix op = bra_on(3, 1, y) * cswap * (k == 1 ? flip_w : identity(8));
        if (x_outcome * y == 1) op = sigma * op;
        receiver_ops.push_back(r_order * op);
      }
      corrections.push_back(channel_from_kraus(KrausSet{receiver_ops}, r_in, r_out));
    }
  return RealizationSpec{a_sends ? Direction::AToB : Direction::BToA, 4, Instrument(std::move(branches)),
                         std::move(corrections)};
}

}  // namespace nosig
