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

#include <doctest.h>

#include <cmath>
#include <random>

#include "nosig/analysis.hpp"
#include "nosig/counterexample.hpp"
#include "oracle/oracle.hpp"
#include "support/fixtures.hpp"

using namespace nosig;

namespace {

// Frozen from the Jacobi oracle below; see "PPT of R_1/6 against the oracle".
constexpr double kPptMinRSixth = -0.359718732530;

// <A_n B_m> straight from the Kraus columns: sum_k v† (σz ⊗ I ⊗ I ⊗ σz) v
// with v the column of K_k for input |n m>.
double oracle_chsh(const KrausSet& ks) {
  double corr[2][2] = {};
  for (int n = 0; n < 2; ++n)
    for (int m = 0; m < 2; ++m)
      for (const auto& k : ks.ops)
        for (Index o = 0; o < 16; ++o) {
          const int a_out = static_cast<int>(o >> 3) & 1, b_out = static_cast<int>(o) & 1;
          const double sign = (a_out ^ b_out) ? -1.0 : 1.0;
          corr[n][m] += sign * std::norm(k(o, 2 * n + m));
        }
  return std::abs(corr[0][0] + corr[0][1] + corr[1][0] - corr[1][1]);
}

Index svd_rank(const std::vector<ComplexMatrix>& ops) {
  ComplexMatrix stacked(static_cast<Index>(ops.size()), ops.front().size());
  for (std::size_t i = 0; i < ops.size(); ++i)
    for (Index r = 0; r < ops[i].rows(); ++r)
      for (Index c = 0; c < ops[i].cols(); ++c) stacked(static_cast<Index>(i), r * ops[i].cols() + c) = ops[i](r, c);
  Eigen::JacobiSVD<ComplexMatrix> svd(stacked);
  const auto s = svd.singularValues();
  Index rank = 0;
  for (Index k = 0; k < s.size(); ++k)
    if (s(k) > 1e-8 * s(0)) ++rank;
  return rank;
}

}  // namespace

TEST_CASE("CHSH closed form on a grid") {
  for (int k = 0; k <= 10; ++k) {
    const double alpha = k / 10.0;
    const RAlphaParams p(alpha);
    const double c = chsh_value(build_r_alpha_kraus(p));
    CHECK(std::abs(c - std::abs(4 - 6 * alpha)) <= 1e-9);
    CHECK(std::abs(c - oracle_chsh(r_alpha_kraus(p))) <= 1e-12);
  }
  const double c6 = chsh_value(build_r_alpha_kraus(RAlphaParams(1.0 / 6.0)));
  CHECK(std::abs(c6 - 3.0) <= 1e-9);
  CHECK(c6 > kTsirelsonBound);
  CHECK(std::abs(chsh_value(build_r_alpha_kraus(RAlphaParams(2.0 / 3.0)))) <= 1e-9);
}

TEST_CASE("CHSH layout checks") {
  const auto q = SystemLayout::qubits({"A", "B"});
  const auto id = identity_channel(q, SystemLayout::qubits({"A'", "B'"}));
  CHECK_FALSE(chsh_applicable(id));
  CHECK_THROWS_AS(chsh_value(id), LabelError);
  CHECK(chsh_applicable(build_r_alpha_kraus(RAlphaParams(0.3))));
}

TEST_CASE("Cirel'son bound for localizable channels") {
  std::mt19937_64 rng(40);
  for (int trial = 0; trial < 25; ++trial) {
    const auto c = fixtures::localizable_r_alpha_shaped(rng);
    CHECK(chsh_value(c) <= kTsirelsonBound + 1e-6);
  }
  const auto best = fixtures::tsirelson_optimal_localizable();
  CHECK(best.out_layout() == r_alpha_out_layout());
  CHECK(std::abs(chsh_value(best) - 2 * std::sqrt(2.0)) < 1e-12);
  const auto v = is_nosignaling(best, r_alpha_party_a(), r_alpha_party_b());
  CHECK(v.a_to_b);
  CHECK(v.b_to_a);
}

TEST_CASE("PPT minimum eigenvalue") {
  const auto q = SystemLayout::qubits({"A"});
  CHECK(ppt_min_eig(identity_channel(q, SystemLayout::qubits({"A'"}))) == doctest::Approx(-1.0));

  // measure and prepare
  KrausSet mp;
  std::mt19937_64 rng(41);
  const ComplexMatrix u = random::unitary(2, rng);
  for (Index k = 0; k < 2; ++k) {
    const ComplexVector prep = u.col(k);
    mp.ops.push_back(prep * ket(2, k).adjoint());
  }
  CHECK(ppt_min_eig(channel_from_kraus(mp, q, SystemLayout::qubits({"A'"}))) >= -1e-10);

  const auto dep = depolarizing_channel(q, SystemLayout::qubits({"A'"}));
  const auto dd = compose_par(dep, relabel(dep, SystemLayout::qubits({"B"}), SystemLayout::qubits({"B'"})));
  CHECK(ppt_min_eig(dd) >= -1e-10);
}

TEST_CASE("PPT of R_1/6 against the oracle") {
  const auto r = build_r_alpha_kraus(RAlphaParams(1.0 / 6.0));
  const double lib = ppt_min_eig(r);
  const auto pt = oracle::ptranspose(r.choi(), {2, 2, 2, 2, 2, 2}, {4, 5});
  const double ref = oracle::hermitian_eigenvalues(pt).front();
  CHECK(std::abs(lib - ref) < 1e-10);
  CHECK(std::abs(lib - kPptMinRSixth) < 1e-9);
  CHECK(lib < -1e-6);
}

TEST_CASE("PPT spectrum does not depend on the transposed side") {
  std::mt19937_64 rng(42);
  for (int trial = 0; trial < 5; ++trial) {
    const auto c = random::channel(SystemLayout{{"A", 2}}, SystemLayout{{"B", 3}}, 2, rng);
    const double inputs = ppt_min_eig(c);
    const double outputs = eigh(ptranspose(c.choi(), Dims{3, 2}, Positions{0})).values.minCoeff();
    CHECK(std::abs(inputs - outputs) < 1e-12);
  }
  const auto r = build_r_alpha_kraus(RAlphaParams(1.0 / 6.0));
  const double outputs = eigh(ptranspose(r.choi(), r.map().choi_dims(), Positions{0, 1, 2, 3})).values.minCoeff();
  CHECK(std::abs(ppt_min_eig(r) - outputs) < 1e-12);
}

TEST_CASE("extremality of simple channels") {
  std::mt19937_64 rng(43);
  const auto q = SystemLayout::qubits({"A"});
  const auto qo = SystemLayout::qubits({"A'"});
  const auto e1 = extremality_rank(unitary_channel(random::unitary(2, rng), q, qo));
  CHECK(e1.kraus_count == 1);
  CHECK(e1.rank == 1);
  CHECK(e1.full);

  KrausSet mix;
  mix.ops = {identity(2) / std::sqrt(2.0), ComplexMatrix(pauli::x() / std::sqrt(2.0))};
  const auto m = channel_from_kraus(mix, q, qo);
  const auto e2 = extremality_rank(m);
  CHECK(e2.kraus_count == 2);
  CHECK(e2.rank == 2);
  CHECK_FALSE(e2.full);

  // amplitude damping at intermediate strength is extremal
  const double g = 0.3;
  KrausSet ad;
  ComplexMatrix k0 = ComplexMatrix::Zero(2, 2), k1 = ComplexMatrix::Zero(2, 2);
  k0(0, 0) = 1;
  k0(1, 1) = std::sqrt(1 - g);
  k1(0, 1) = std::sqrt(g);
  ad.ops = {k0, k1};
  const auto e3 = extremality_rank(channel_from_kraus(ad, q, qo));
  CHECK(e3.kraus_count == 2);
  CHECK(e3.rank == 4);
  CHECK(e3.full);
}

TEST_CASE("extremality rank is independent of the Kraus representation") {
  std::mt19937_64 rng(44);
  for (int trial = 0; trial < 5; ++trial) {
    const auto ks = random::kraus(2, 3, 2, rng);
    const auto c = channel_from_kraus(ks, SystemLayout{{"A", 2}}, SystemLayout{{"B", 3}});
    const auto e = extremality_rank(c);
    std::vector<ComplexMatrix> products;
    for (const auto& a : ks.ops)
      for (const auto& b : ks.ops) products.push_back(a.adjoint() * b);
    CHECK(e.rank == svd_rank(products));
    const auto again = extremality_rank(channel_from_kraus(kraus_from_choi(c), c.in_layout(), c.out_layout()));
    CHECK(again.rank == e.rank);
  }
}

// The 16 products K_mn† K_m'n' of R_1/6 span only a 10-dimensional space, so
// the channel is a proper mixture of two distinct channels.
TEST_CASE("R_1/6 extremality rank and an explicit decomposition") {
  const RAlphaParams p(1.0 / 6.0);
  const auto ks = r_alpha_kraus(p);
  const auto r = build_r_alpha_kraus(p);
  const auto e = extremality_rank(r);
  CHECK(e.kraus_count == 4);

  std::vector<ComplexMatrix> products;
  for (const auto& a : ks.ops)
    for (const auto& b : ks.ops) products.push_back(a.adjoint() * b);
  const Index independent = svd_rank(products);
  CHECK(e.rank == independent);
  CHECK(independent == 10);
  CHECK_FALSE(e.full);

  // K_01† K_11 = 0, so ρ -> ±(K_01 ρ K_11† + K_11 ρ K_01†) / 2 leaves the trace alone.
  const ComplexMatrix& k01 = ks.ops[1];
  const ComplexMatrix& k11 = ks.ops[3];
  CHECK(max_abs_diff(ComplexMatrix(k01.adjoint() * k11), ComplexMatrix::Zero(4, 4)) < 1e-15);
  const ComplexVector v01 = vec(k01), v11 = vec(k11);
  const ComplexMatrix cross = (v01 * v11.adjoint() + v11 * v01.adjoint()) / 2.0;
  const ChannelOperator plus(r.choi() + cross, r.in_layout(), r.out_layout());
  const ChannelOperator minus(r.choi() - cross, r.in_layout(), r.out_layout());
  CHECK(max_abs_diff(ComplexMatrix((plus.choi() + minus.choi()) / 2.0), r.choi()) < 1e-15);
  CHECK(max_abs_diff(plus.choi(), minus.choi()) > 0.01);
}

TEST_CASE("analyze aggregates the verdicts") {
  const auto r = build_r_alpha_kraus(RAlphaParams(1.0 / 6.0));
  const auto rep = analyze(r, r_alpha_party_a(), r_alpha_party_b());
  CHECK(rep.nosignaling.a_to_b);
  CHECK(rep.nosignaling.b_to_a);
  CHECK(rep.ppt_violated);
  CHECK(rep.ppt_violated == (rep.ppt_min_eigenvalue < -rep.tolerances.ppt));
  REQUIRE(rep.chsh_value);
  CHECK(*rep.chsh_value == doctest::Approx(3.0).epsilon(1e-12));
  CHECK(rep.chsh_exceeds_tsirelson);
  CHECK(rep.extremality.full == (rep.extremality.rank == rep.extremality.kraus_count * rep.extremality.kraus_count));

  std::mt19937_64 rng(45);
  const auto ua = unitary_channel(random::unitary(2, rng), SystemLayout::qubits({"A"}), SystemLayout::qubits({"A'"}));
  const auto ub = unitary_channel(random::unitary(2, rng), SystemLayout::qubits({"B"}), SystemLayout::qubits({"B'"}));
  const auto prod = analyze(compose_par(ua, ub), fixtures::kPartyA, fixtures::kPartyB);
  CHECK(prod.nosignaling.a_to_b);
  CHECK(prod.nosignaling.b_to_a);
  CHECK(prod.ppt_min_eigenvalue == doctest::Approx(-1.0));
  CHECK_FALSE(prod.chsh_value.has_value());
  CHECK(prod.extremality.full);
}
