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

#include "nosig/nosignal.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>

namespace nosig {

namespace {

Positions sorted_positions(const SystemLayout& layout, std::span<const std::string> labels) {
  auto p = layout.positions(labels);
  std::sort(p.begin(), p.end());
  if (std::adjacent_find(p.begin(), p.end()) != p.end()) throw LabelError("label listed twice");
  return p;
}

void check_partition(const SystemLayout& layout, std::span<const std::string> a, std::span<const std::string> b,
                     const char* what) {
  std::set<std::string> seen;
  for (const auto& l : a) {
    layout.position(l);
    if (!seen.insert(l).second) throw LabelError(std::string(what) + " label '" + l + "' assigned twice");
  }
  for (const auto& l : b) {
    layout.position(l);
    if (!seen.insert(l).second) throw LabelError(std::string(what) + " label '" + l + "' assigned to both parties");
  }
  if (static_cast<Index>(seen.size()) != layout.size())
    throw LabelError(std::string(what) + " labels are not covered by the two parties");
}

}  // namespace

DirectionalResult check_nosignaling_subset(const CpMap& c, std::span<const std::string> in_subset,
                                           std::span<const std::string> out_subset, double tol) {
  const Positions in_pos = sorted_positions(c.in, in_subset);
  const Positions out_pos = sorted_positions(c.out, out_subset);
  const Dims dims = c.choi_dims();

  const ComplexMatrix marginal = ptrace(c.choi, dims, out_pos);
  const SystemLayout rest_out = c.out.without(out_pos);
  Dims mdims = rest_out.dims();
  const Dims idims = c.in.dims();
  mdims.insert(mdims.end(), idims.begin(), idims.end());

  const Index shift = rest_out.size();
  Positions sender_in;
  for (Index p : in_pos) sender_in.push_back(shift + p);
  const Index d_sender = c.in.dim_of(in_pos);
  const ComplexMatrix s = ptrace(marginal, mdims, sender_in) / static_cast<double>(d_sender);

  // I_{I'} ⊗ S is laid out as (I', rest); move each factor back to its slot.
  Positions candidate_order = sender_in;
  for (Index k = 0; k < static_cast<Index>(mdims.size()); ++k)
    if (std::find(sender_in.begin(), sender_in.end(), k) == sender_in.end()) candidate_order.push_back(k);
  Dims cdims;
  for (Index k : candidate_order) cdims.push_back(mdims[static_cast<std::size_t>(k)]);
  Positions perm(mdims.size());
  for (std::size_t k = 0; k < mdims.size(); ++k)
    perm[k] = std::find(candidate_order.begin(), candidate_order.end(), static_cast<Index>(k)) - candidate_order.begin();
  const ComplexMatrix candidate = permute_systems(kron(identity(d_sender), s), cdims, perm);

  DirectionalResult result;
  result.residual = max_abs_diff(marginal, candidate);
  result.nosignaling = result.residual <= tol;
  if (result.nosignaling) {
    const CpMap marginal_channel{s, c.in.without(in_pos), rest_out};
    const auto diag = diagnose(marginal_channel);
    result.nosignaling = diag.completely_positive(tol) && diag.trace_preserving(tol);
  }
  return result;
}

DirectionalResult check_nosignaling_dir(const CpMap& c, const Party& sender, const Party& receiver, double tol) {
  check_partition(c.in, sender.in_labels, receiver.in_labels, "input");
  check_partition(c.out, sender.out_labels, receiver.out_labels, "output");
  return check_nosignaling_subset(c, sender.in_labels, sender.out_labels, tol);
}

SignalingVerdict is_nosignaling(const CpMap& c, const Party& a, const Party& b, double tol) {
  const auto ra = check_nosignaling_dir(c, a, b, tol);
  const auto rb = check_nosignaling_dir(c, b, a, tol);
  return {ra.nosignaling, rb.nosignaling, ra.residual, rb.residual, tol};
}

namespace {

SystemLayout drop_last(const SystemLayout& l) {
  if (l.empty()) throw DimensionError("local map has no ancilla input");
  const Positions last{l.size() - 1};
  return l.without(last);
}

// Choi of rho -> rho ⊗ |I>><<I|/d with the ancilla halves appended to each side:
// (A ⧺ B) -> (A ⧺ E_A ⧺ B ⧺ E_B).
CpMap shared_pair_preparation(const SystemLayout& a_in, const SystemLayout& e_a, const SystemLayout& b_in,
                              const SystemLayout& e_b, Index d) {
  const Index dab = a_in.total_dim() * b_in.total_dim();
  const ComplexVector pass = max_entangled(dab);
  const ComplexVector pair = max_entangled(d);
  const ComplexMatrix raw = kron(pass * pass.adjoint(), pair * pair.adjoint()) / static_cast<double>(d);

  const Index na = a_in.size(), nb = b_in.size();
  Dims dims;
  for (const auto* l : {&a_in, &b_in, &a_in, &b_in})
    for (Index k = 0; k < l->size(); ++k) dims.push_back((*l)[k].dim);
  dims.push_back(d);
  dims.push_back(d);
  // old: outA, outB, inA, inB, E_A, E_B  ->  new: outA, E_A, outB, E_B, inA, inB
  Positions perm;
  for (Index k = 0; k < na; ++k) perm.push_back(k);
  perm.push_back(2 * na + 2 * nb);
  for (Index k = 0; k < nb; ++k) perm.push_back(na + k);
  perm.push_back(2 * na + 2 * nb + 1);
  for (Index k = 0; k < na + nb; ++k) perm.push_back(na + nb + k);

  SystemLayout out = concat(concat(a_in, e_a), concat(b_in, e_b));
  return {permute_systems(raw, dims, perm), concat(a_in, b_in), std::move(out)};
}

void check_ancilla(const CpMap& piece, Index d, const char* who) {
  if (piece.in.empty() || piece.in[piece.in.size() - 1].dim != d)
    throw DimensionError(std::string(who) + ": last input must be the ancilla of dimension " + std::to_string(d));
}

// Sums the joint local maps branch by branch in fixed order, then feeds the
// shared pair once.
ChannelOperator realize(std::span<const CpMap* const> a_side, std::span<const CpMap* const> b_side, Index d) {
  const CpMap& a0 = *a_side.front();
  const CpMap& b0 = *b_side.front();
  CpMap total = compose_par(a0, b0);
  for (std::size_t x = 1; x < a_side.size(); ++x) {
    const CpMap& a = *a_side[x];
    const CpMap& b = *b_side[x];
    if (a.in.dims() != a0.in.dims() || a.out.dims() != a0.out.dims() || b.in.dims() != b0.in.dims() ||
        b.out.dims() != b0.out.dims())
      throw DimensionError("local maps differ in shape across outcomes");
    total.choi += compose_par(a, b).choi;
  }
  const Positions e_a{a0.in.size() - 1};
  const Positions e_b{b0.in.size() - 1};
  const auto prep = shared_pair_preparation(drop_last(a0.in), a0.in.select(e_a), drop_last(b0.in), b0.in.select(e_b), d);
  return ChannelOperator(compose_seq(prep, total));
}

}  // namespace

ChannelOperator build_realization_cc(const RealizationSpec& spec) {
  const Index d = spec.ancilla_dim;
  if (d < 1) throw DimensionError("ancilla dimension must be positive");
  if (static_cast<Index>(spec.corrections.size()) != spec.instrument.size())
    throw DimensionError("instrument has " + std::to_string(spec.instrument.size()) + " outcomes but " +
                         std::to_string(spec.corrections.size()) + " corrections were given");
  std::vector<const CpMap*> sender, receiver;
  for (Index x = 0; x < spec.instrument.size(); ++x) {
    sender.push_back(&spec.instrument[x]);
    receiver.push_back(&spec.corrections[static_cast<std::size_t>(x)].map());
    check_ancilla(*sender.back(), d, "instrument");
    check_ancilla(*receiver.back(), d, "correction");
  }
  if (spec.direction == Direction::AToB) return realize(sender, receiver, d);
  return realize(receiver, sender, d);
}

ChannelOperator build_localizable(const ChannelOperator& g_a, const ChannelOperator& g_b, Index d) {
  check_ancilla(g_a, d, "g_a");
  check_ancilla(g_b, d, "g_b");
  const CpMap* a[] = {&g_a.map()};
  const CpMap* b[] = {&g_b.map()};
  return realize(a, b, d);
}

ChannelOperator build_semilocalizable(const ChannelOperator& v1, const ChannelOperator& v2) {
  if (v1.out_layout().empty() || v2.in_layout().empty())
    throw DimensionError("semi-localizable circuit needs a message system E'");
  const auto& eprime = v1.out_layout()[v1.out_layout().size() - 1];
  if (v2.in_layout()[0].dim != eprime.dim)
    throw DimensionError("E' has dimension " + std::to_string(eprime.dim) + " at the output of v1 but " +
                         std::to_string(v2.in_layout()[0].dim) + " at the input of v2");
  const Positions first{0};
  const SystemLayout b_in = v2.in_layout().without(first);
  const SystemLayout a_out = drop_last(v1.out_layout());

  const CpMap step1 = compose_par(v1.map(), identity_channel(b_in, b_in).map());
  const CpMap step2 = compose_par(identity_channel(a_out, a_out).map(), v2.map());
  return ChannelOperator(compose_seq(step1, relabel(step2, step1.out, step2.out)));
}

ComplexMatrix shift_operator(Index d) {
  ComplexMatrix x = ComplexMatrix::Zero(d, d);
  for (Index j = 0; j < d; ++j) x((j + 1) % d, j) = 1;
  return x;
}

ComplexMatrix clock_operator(Index d) {
  ComplexMatrix z = ComplexMatrix::Zero(d, d);
  for (Index j = 0; j < d; ++j) z(j, j) = std::polar(1.0, 2 * std::numbers::pi * static_cast<double>(j) / static_cast<double>(d));
  return z;
}

TeleportGadget teleport_gadget(Index d) {
  if (d < 2) throw DimensionError("teleportation needs d >= 2");
  TeleportGadget g;
  g.dim = d;
  const ComplexMatrix x = shift_operator(d);
  const ComplexMatrix z = clock_operator(d);
  ComplexMatrix xp = identity(d);
  for (Index p = 0; p < d; ++p) {
    ComplexMatrix w = xp;
    for (Index q = 0; q < d; ++q) {
      // ⟨B_w| on (E', E_A) leaves W† psi on E_B, undone by W.
      g.bell_basis.push_back(vec(w) / std::sqrt(static_cast<double>(d)));
      g.corrections.push_back(w);
      w = w * z;
    }
    xp = x * xp;
  }
  return g;
}

RealizationSpec teleport_reduce(const ChannelOperator& v1, const ChannelOperator& v2) {
  if (v1.out_layout().empty() || v2.in_layout().empty())
    throw DimensionError("semi-localizable circuit needs a message system E'");
  const Index d = v1.out_layout()[v1.out_layout().size() - 1].dim;
  if (v2.in_layout()[0].dim != d) throw DimensionError("E' dimensions of v1 and v2 disagree");
  const auto gadget = teleport_gadget(d);

  const SystemLayout a_out = drop_last(v1.out_layout());
  const Positions first{0};
  const SystemLayout b_in = v2.in_layout().without(first);
  const SystemLayout e_a{{"E_A", d}};
  const SystemLayout e_b{{"E_B", d}};

  // A side: (A ⧺ E_A) -> (A' ⧺ E' ⧺ E_A), then <B_x| on (E', E_A).
  const CpMap sender = compose_par(v1.map(), identity_channel(e_a, e_a).map());
  std::vector<CpMap> branches;
  const Index da = a_out.total_dim();
  for (const auto& bell : gadget.bell_basis) {
    const ComplexMatrix k = kron(identity(da), ComplexMatrix(bell.adjoint()));
    const ComplexMatrix ops[] = {k};
    branches.push_back(compose_seq(sender, cp_map_from_kraus(ops, sender.out, a_out)));
  }

  // B side: (B ⧺ E_B) -> (E' ⧺ B) with U_x on E', then v2.
  Dims bdims = b_in.dims();
  bdims.push_back(d);
  Positions to_front{static_cast<Index>(bdims.size()) - 1};
  for (Index k = 0; k + 1 < static_cast<Index>(bdims.size()); ++k) to_front.push_back(k);
  const ComplexMatrix reorder = permutation_unitary(bdims, to_front);
  const SystemLayout receiver_in = concat(b_in, e_b);
  std::vector<ChannelOperator> corrections;
  for (const auto& u : gadget.corrections) {
    const ComplexMatrix w = kron(u, identity(b_in.total_dim())) * reorder;
    const auto pre = unitary_channel(w, receiver_in, v2.in_layout());
    corrections.push_back(compose_seq(pre, v2));
  }

  return RealizationSpec{Direction::AToB, d, Instrument(std::move(branches)), std::move(corrections)};
}

}  // namespace nosig
