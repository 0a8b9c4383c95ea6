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

// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fail.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>

#include "nosig/analysis.hpp"
#include "nosig/counterexample.hpp"
#include "nosig/nosignal.hpp"
#include "nosig/random.hpp"
#include "support/fixtures.hpp"

using namespace nosig;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

std::string num(double v) {
  std::ostringstream os;
  os.precision(6);
  os << v;
  return os.str();
}

const double kSixth = 1.0 / 6.0;
const double kAlphaGrid[] = {0.0, kSixth, 0.5, 1.0};

Outcome chsh_closed_form() {
  const auto t0 = Clock::now();
  double worst = 0;
  for (int k = 0; k <= 10; ++k) {
    const double alpha = k / 10.0;
    worst = std::max(worst, std::abs(chsh_value(build_r_alpha_kraus(RAlphaParams(alpha))) - std::abs(4 - 6 * alpha)));
  }
  const double c = chsh_value(build_r_alpha_kraus(RAlphaParams(kSixth)));
  const double t = seconds_since(t0);
  Outcome o;
  o.pass = worst <= 1e-9 && std::abs(c - 3) <= 1e-9 && c > kTsirelsonBound && t < 1.0;
  o.detail = "max |c - |4-6a|| = " + num(worst) + ", c(1/6) = " + num(c) + ", " + num(t) + " s";
  return o;
}

Outcome construction_equivalence() {
  const auto t0 = Clock::now();
  double worst = 0;
  for (double alpha : kAlphaGrid) {
    const RAlphaParams p(alpha);
    const auto k = build_r_alpha_kraus(p);
    const auto a = build_r_alpha_circuit(p, SigmaPlacement::OnA);
    const auto b = build_r_alpha_circuit(p, SigmaPlacement::OnB);
    worst = std::max({worst, (k.choi() - a.choi()).norm(), (k.choi() - b.choi()).norm(), (a.choi() - b.choi()).norm()});
  }
  const double t = seconds_since(t0);
  return {worst <= 1e-9 && t < 5.0, "max pairwise Frobenius = " + num(worst) + ", " + num(t) + " s"};
}

Outcome r_alpha_nosignaling() {
  double worst = 0;
  bool all = true;
  for (double alpha : kAlphaGrid) {
    const auto v = is_nosignaling(build_r_alpha_kraus(RAlphaParams(alpha)), r_alpha_party_a(), r_alpha_party_b());
    all = all && v.a_to_b && v.b_to_a;
    worst = std::max({worst, v.residual_a, v.residual_b});
  }
  return {all && worst <= 1e-9, "max residual = " + num(worst)};
}

Outcome ppt_violation() {
  const double m = ppt_min_eig(build_r_alpha_kraus(RAlphaParams(kSixth)));
  return {m < -1e-6, "min eigenvalue of the partial transpose = " + num(m)};
}

Outcome extremality() {
  const auto e = extremality_rank(build_r_alpha_kraus(RAlphaParams(kSixth)));
  return {e.kraus_count == 4 && e.rank == 16,
          std::to_string(e.kraus_count) + " Kraus operators, Gram rank " + std::to_string(e.rank) + " of " +
              std::to_string(e.kraus_count * e.kraus_count) + " (16 required)"};
}

Outcome realization_property() {
  const auto t0 = Clock::now();
  std::mt19937_64 rng(20260601);
  double worst = 0;
  int failures = 0;
  for (int trial = 0; trial < 100; ++trial) {
    const auto ab = build_realization_cc(fixtures::realization_spec(Direction::AToB, rng));
    const auto rab = check_nosignaling_dir(ab, fixtures::kPartyB, fixtures::kPartyA);
    const auto ba = build_realization_cc(fixtures::realization_spec(Direction::BToA, rng));
    const auto rba = check_nosignaling_dir(ba, fixtures::kPartyA, fixtures::kPartyB);
    if (!rab.nosignaling || !rba.nosignaling) ++failures;
    worst = std::max({worst, rab.residual, rba.residual});
  }
  for (int trial = 0; trial < 100; ++trial) {
    const Index d = 1 + trial % 4;
    const auto c = build_localizable(fixtures::local_map("A", d, 2, rng), fixtures::local_map("B", d, 2, rng), d);
    const auto v = is_nosignaling(c, fixtures::kPartyA, fixtures::kPartyB);
    if (!v.a_to_b || !v.b_to_a) ++failures;
    worst = std::max({worst, v.residual_a, v.residual_b});
  }
  const double t = seconds_since(t0);
  return {failures == 0 && worst <= 1e-9 && t < 60.0,
          "200 one-round + 100 localizable, failures " + std::to_string(failures) + ", max residual " + num(worst) +
              ", " + num(t) + " s"};
}

Outcome tsirelson_property() {
  std::mt19937_64 rng(20260602);
  double worst = 0;
  for (int trial = 0; trial < 100; ++trial)
    worst = std::max(worst, chsh_value(fixtures::localizable_r_alpha_shaped(rng)));
  const double optimal = chsh_value(fixtures::tsirelson_optimal_localizable());
  return {worst <= kTsirelsonBound + 1e-6 && optimal <= kTsirelsonBound + 1e-6,
          "max CHSH over 100 random localizable channels = " + num(worst) + ", optimal strategy = " +
              num(optimal) + " (bound " + num(kTsirelsonBound) + ")"};
}

Outcome teleportation_identity() {
  double worst = 0;
  for (Index d : {2, 3, 4}) {
    const SystemLayout a{{"A", d}}, e{{"E'", d}}, b{{"B'", d}};
    const auto c = build_realization_cc(teleport_reduce(identity_channel(a, e), identity_channel(e, b)));
    worst = std::max(worst, (c.choi() - identity_channel(a, b).choi()).norm());
  }
  return {worst <= 1e-10, "max Frobenius distance to the identity (d = 2, 3, 4) = " + num(worst)};
}

Outcome library_invariants() {
  std::mt19937_64 rng(20260603);
  double eig_recon = 0, eig_trace = 0, kraus_rt = 0, ptr = 0;
  for (int trial = 0; trial < 50; ++trial) {
    const Index d = 1 + trial % 16;
    const ComplexMatrix h = random::hermitian(d, rng);
    const auto e = eigh(h);
    const ComplexMatrix recon = e.vectors * e.values.cast<Complex>().asDiagonal() * e.vectors.adjoint();
    eig_recon = std::max(eig_recon, max_abs_diff(recon, h));
    eig_trace = std::max(eig_trace, std::abs(e.values.sum() - h.trace().real()));

    const Index din = 1 + trial % 3, dout = 1 + (trial / 3) % 3;
    const Index rank = std::max<Index>(1 + trial % 4, (din + dout - 1) / dout);
    const auto ch =
        channel_from_kraus(random::kraus(din, dout, rank, rng), SystemLayout{{"I", din}}, SystemLayout{{"O", dout}});
    const auto back = channel_from_kraus(kraus_from_choi(ch), ch.in_layout(), ch.out_layout());
    kraus_rt = std::max(kraus_rt, (back.choi() - ch.choi()).norm());

    const Index da = 1 + trial % 3, db = 1 + (trial / 2) % 4;
    const ComplexMatrix a = random::ginibre(da, da, rng), b = random::ginibre(db, db, rng);
    const Dims dims{da, db};
    const ComplexMatrix ab = kron(a, b);
    ptr = std::max({ptr, max_abs_diff(ptrace(ab, dims, Positions{1}), ComplexMatrix(a * b.trace())),
                    max_abs_diff(ptrace(ab, dims, Positions{0}), ComplexMatrix(b * a.trace())),
                    std::abs(ptrace(ab, dims, Positions{0}).trace() - ab.trace())});
  }
  const bool pass = eig_recon <= 1e-9 && eig_trace <= 1e-9 && kraus_rt <= 1e-8 && ptr <= 1e-10;
  return {pass, "eigh reconstruction " + num(eig_recon) + ", eigenvalue-sum vs trace " + num(eig_trace) +
                    ", Kraus round trip " + num(kraus_rt) + ", partial trace " + num(ptr)};
}

}  // namespace

int main() {
  const std::pair<const char*, std::function<Outcome()>> criteria[] = {
      {"CHSH closed form", chsh_closed_form},
      {"construction equivalence", construction_equivalence},
      {"no-signaling of R_alpha", r_alpha_nosignaling},
      {"PPT violation of R_1/6", ppt_violation},
      {"extremality of R_1/6", extremality},
      {"one-round realizations do not signal back", realization_property},
      {"Cirel'son bound for localizable channels", tsirelson_property},
      {"teleportation identity", teleportation_identity},
      {"library invariants", library_invariants},
  };
  int failed = 0;
  int index = 1;
  for (const auto& [name, run] : criteria) {
    Outcome o;
    try {
      o = run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    if (!o.pass) ++failed;
    std::printf("[%s] %d. %s: %s\n", o.pass ? "PASS" : "FAIL", index++, name, o.detail.c_str());
  }
  std::printf("%d of %d criteria passed\n", index - 1 - failed, index - 1);
  return failed == 0 ? 0 : 1;
}
