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

// Random states, unitaries, channels and instruments for property tests.

#pragma once

#include <random>

#include "nosig/channel.hpp"

namespace nosig::random {

template <typename Rng>
ComplexMatrix ginibre(Index rows, Index cols, Rng& rng) {
  std::normal_distribution<double> n(0.0, 1.0);
  ComplexMatrix g(rows, cols);
  for (Index j = 0; j < cols; ++j)
    for (Index i = 0; i < rows; ++i) g(i, j) = Complex(n(rng), n(rng));
  return g;
}

/// rows x cols matrix with orthonormal columns (rows >= cols).
template <typename Rng>
ComplexMatrix isometry(Index rows, Index cols, Rng& rng) {
  Eigen::HouseholderQR<ComplexMatrix> qr(ginibre(rows, cols, rng));
  return qr.householderQ() * ComplexMatrix::Identity(rows, cols);
}

template <typename Rng>
ComplexMatrix unitary(Index d, Rng& rng) {
  return isometry(d, d, rng);
}

template <typename Rng>
ComplexMatrix hermitian(Index d, Rng& rng) {
  const ComplexMatrix g = ginibre(d, d, rng);
  return (g + g.adjoint()) / 2.0;
}

/// Full-rank density matrix.
template <typename Rng>
ComplexMatrix density(Index d, Rng& rng) {
  const ComplexMatrix g = ginibre(d, d, rng);
  const ComplexMatrix rho = g * g.adjoint();
  return rho / rho.trace().real();
}

/// Stinespring-style Kraus set: blocks of a random isometry d_in -> r d_out.
template <typename Rng>
KrausSet kraus(Index d_in, Index d_out, Index rank, Rng& rng) {
  if (rank * d_out < d_in) throw ParameterError("random::kraus: rank * d_out must be at least d_in");
  const ComplexMatrix v = isometry(rank * d_out, d_in, rng);
  KrausSet ks;
  for (Index k = 0; k < rank; ++k) ks.ops.push_back(v.middleRows(k * d_out, d_out));
  return ks;
}

template <typename Rng>
ChannelOperator channel(const SystemLayout& in, const SystemLayout& out, Index rank, Rng& rng) {
  return channel_from_kraus(kraus(in.total_dim(), out.total_dim(), rank, rng), in, out);
}

/// Instrument whose outcome x collects Kraus operators x*per_outcome ... .
template <typename Rng>
Instrument instrument(const SystemLayout& in, const SystemLayout& out, Index outcomes, Index per_outcome, Rng& rng) {
  const auto ks = kraus(in.total_dim(), out.total_dim(), outcomes * per_outcome, rng);
  std::vector<CpMap> branches;
  for (Index x = 0; x < outcomes; ++x) {
    const std::span<const ComplexMatrix> ops(ks.ops.data() + x * per_outcome, static_cast<std::size_t>(per_outcome));
    branches.push_back(cp_map_from_kraus(ops, in, out));
  }
  return Instrument(std::move(branches));
}

}  // namespace nosig::random
