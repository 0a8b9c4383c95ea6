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

#include "nosig/analysis.hpp"

#include <cmath>
#include <numeric>

#include "nosig/counterexample.hpp"

namespace nosig {

double ppt_min_eig(const CpMap& c) {
  Positions inputs(static_cast<std::size_t>(c.in.size()));
  std::iota(inputs.begin(), inputs.end(), c.out.size());
  const ComplexMatrix pt = ptranspose(hermitian_part(c.choi), c.choi_dims(), inputs);
  return eigh(pt).values.minCoeff();
}

bool chsh_applicable(const CpMap& c) { return c.in == r_alpha_in_layout() && c.out == r_alpha_out_layout(); }

double chsh_value(const CpMap& c) {
  if (!chsh_applicable(c)) throw LabelError("CHSH test needs outputs (A, W_A, W_B, B) and inputs (A, B) of qubits");
  const ComplexMatrix sz = pauli::z();
  const ComplexMatrix i4 = identity(4);
  // Built as (A', A, B', B, W_A W_B), then moved to (A', W_A, W_B, B', A, B).
  const Dims dims{2, 2, 2, 2, 2, 2};
  const Positions perm{0, 4, 5, 2, 1, 3};
  double corr[2][2];
  for (Index n = 0; n < 2; ++n)
    for (Index m = 0; m < 2; ++m) {
      const ComplexVector kn = ket(2, n), km = ket(2, m);
      const ComplexMatrix obs = kron(kron(kron(kron(sz, ComplexMatrix(kn * kn.adjoint())), sz), ComplexMatrix(km * km.adjoint())), i4);
      corr[n][m] = (permute_systems(obs, dims, perm).cwiseProduct(c.choi.transpose())).sum().real();
    }
  return std::abs(corr[0][0] + corr[0][1] + corr[1][0] - corr[1][1]);
}

ExtremalityResult extremality_rank(const CpMap& c, double cutoff, double rel_tol) {
  const auto kraus = kraus_from_choi(c, cutoff);
  std::vector<ComplexMatrix> products;
  for (const auto& ki : kraus.ops)
    for (const auto& kj : kraus.ops) products.push_back(ki.adjoint() * kj);
  ExtremalityResult r;
  r.kraus_count = kraus.size();
  r.rank = gram_rank(products, rel_tol);
  r.full = r.rank == r.kraus_count * r.kraus_count;
  return r;
}

AnalysisReport analyze(const ChannelOperator& c, const Party& a, const Party& b, const AnalysisTolerances& tol) {
  AnalysisReport report;
  report.tolerances = tol;
  report.nosignaling = is_nosignaling(c, a, b, tol.nosignal);
  report.ppt_min_eigenvalue = ppt_min_eig(c);
  report.ppt_violated = report.ppt_min_eigenvalue < -tol.ppt;
  if (chsh_applicable(c)) {
    report.chsh_value = chsh_value(c);
    report.chsh_exceeds_tsirelson = *report.chsh_value > kTsirelsonBound + tol.chsh_slack;
  }
  report.extremality = extremality_rank(c, tol.kraus_cutoff, tol.gram_rel);
  return report;
}

}  // namespace nosig
