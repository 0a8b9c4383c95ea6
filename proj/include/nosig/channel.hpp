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

// Channels and instruments as Choi operators.
//
// Convention: the Choi operator of a map C : L(in) -> L(out) is
//
//   R_C = (C ⊗ id)(|I>><<I|),   |I>> = sum_n |n>|n>  (unnormalized),
//
// laid out over (out ⧺ in), so Tr R_C = dim(in) for a trace-preserving map
// and C(rho) = Tr_in[(I_out ⊗ rho^T) R_C].

#pragma once

#include <span>
#include <vector>

#include "nosig/layout.hpp"
#include "nosig/tensor.hpp"
#include "nosig/types.hpp"

namespace nosig {

inline constexpr double kChannelTol = 1e-9;
inline constexpr double kKrausCutoff = 1e-12;

/// A linear map given by its Choi operator over (out ⧺ in). No positivity or
/// trace condition is implied; instrument branches and intermediate circuit
/// pieces live here. Labels need only be unique within `in` and within `out`.
struct CpMap {
  ComplexMatrix choi;
  SystemLayout in;
  SystemLayout out;

  Index in_dim() const { return in.total_dim(); }
  Index out_dim() const { return out.total_dim(); }
  /// Dimensions of the Choi factors, outputs first.
  Dims choi_dims() const;
};

/// Numbers behind the channel invariants.
struct ChannelDiagnostics {
  double hermiticity = 0;     ///< max |R - R†|
  double min_eigenvalue = 0;  ///< of the Hermitian part of R
  double tp_residual = 0;     ///< max |Tr_out R - I_in|

  bool completely_positive(double tol = kChannelTol) const {
    return hermiticity <= tol && min_eigenvalue >= -tol;
  }
  bool trace_preserving(double tol = kChannelTol) const { return tp_residual <= tol; }
};

ChannelDiagnostics diagnose(const CpMap& map);

/// A completely positive, trace-preserving map. Construction validates both
/// conditions and stores the Hermitian part of the supplied Choi matrix.
class ChannelOperator {
 public:
  ChannelOperator(ComplexMatrix choi, SystemLayout in, SystemLayout out, double tol = kChannelTol);
  explicit ChannelOperator(CpMap map, double tol = kChannelTol);

  const ComplexMatrix& choi() const { return map_.choi; }
  const SystemLayout& in_layout() const { return map_.in; }
  const SystemLayout& out_layout() const { return map_.out; }
  Index in_dim() const { return map_.in_dim(); }
  Index out_dim() const { return map_.out_dim(); }

  const CpMap& map() const { return map_; }
  operator const CpMap&() const { return map_; }  // NOLINT(google-explicit-constructor)

 private:
  CpMap map_;
};

struct KrausSet {
  std::vector<ComplexMatrix> ops;

  Index size() const { return static_cast<Index>(ops.size()); }
  /// max |sum K†K - I|.
  double completeness_residual() const;
};

/// Outcome-indexed CP maps on common layouts whose sum is trace preserving.
class Instrument {
 public:
  explicit Instrument(std::vector<CpMap> branches, double tol = kChannelTol);

  const std::vector<CpMap>& branches() const { return branches_; }
  const CpMap& operator[](Index x) const { return branches_.at(static_cast<std::size_t>(x)); }
  Index size() const { return static_cast<Index>(branches_.size()); }
  const SystemLayout& in_layout() const { return branches_.front().in; }
  const SystemLayout& out_layout() const { return branches_.front().out; }

 private:
  std::vector<CpMap> branches_;
};

/// sum_k |K_k>><<K_k| with no completeness requirement.
CpMap cp_map_from_kraus(std::span<const ComplexMatrix> kraus, SystemLayout in, SystemLayout out);

ChannelOperator channel_from_kraus(const KrausSet& ks, SystemLayout in, SystemLayout out,
                                   double tol = kChannelTol);

/// Kraus operators sqrt(λ) unvec(v) for every Choi eigenpair with λ > cutoff.
/// Throws NotCompletelyPositiveError for eigenvalues below -kChannelTol.
KrausSet kraus_from_choi(const CpMap& map, double cutoff = kKrausCutoff);

ComplexMatrix apply(const CpMap& map, const ComplexMatrix& rho);

/// `second` after `first`. Choi of the composition via the link product.
CpMap compose_seq(const CpMap& first, const CpMap& second);
ChannelOperator compose_seq(const ChannelOperator& first, const ChannelOperator& second);

/// a ⊗ b with inputs (a.in ⧺ b.in) and outputs (a.out ⧺ b.out).
CpMap compose_par(const CpMap& a, const CpMap& b);
ChannelOperator compose_par(const ChannelOperator& a, const ChannelOperator& b);

ChannelOperator instrument_sum(const Instrument& ins, double tol = kChannelTol);

CpMap scaled(const CpMap& map, double factor);

/// Same operator with the subsystems renamed; dimensions must agree.
CpMap relabel(const CpMap& map, SystemLayout in, SystemLayout out);

/// Reorders output factors (new k = old perm[k]).
CpMap permute_outputs(const CpMap& map, std::span<const Index> perm);
/// Reorders input factors (new k = old perm[k]).
CpMap permute_inputs(const CpMap& map, std::span<const Index> perm);

// Elementary channels.

ChannelOperator identity_channel(const SystemLayout& in, const SystemLayout& out);
ChannelOperator unitary_channel(const ComplexMatrix& u, const SystemLayout& in, const SystemLayout& out);
/// rho -> Tr[rho] I/d_out.
ChannelOperator depolarizing_channel(const SystemLayout& in, const SystemLayout& out);
/// Prepares `state` from the trivial system.
ChannelOperator preparation(const ComplexMatrix& state, const SystemLayout& out);
/// Discards everything: rho -> Tr[rho].
ChannelOperator trace_channel(const SystemLayout& in);
/// Discards the subsystems at `positions`; the others pass through in order.
ChannelOperator partial_trace_channel(const SystemLayout& in, std::span<const Index> positions);

}  // namespace nosig
