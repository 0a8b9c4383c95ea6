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

#include "nosig/channel.hpp"

#include <cmath>
#include <numeric>
#include <sstream>

namespace nosig {

namespace {

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(3);
  os << v;
  return os.str();
}

void check_choi_shape(const CpMap& map) {
  const Index d = map.in_dim() * map.out_dim();
  if (map.choi.rows() != d || map.choi.cols() != d)
    throw DimensionError("Choi matrix is " + std::to_string(map.choi.rows()) + "x" +
                         std::to_string(map.choi.cols()) + ", layouts require side " + std::to_string(d));
}

Positions range(Index begin, Index end) {
  Positions p(static_cast<std::size_t>(end - begin));
  std::iota(p.begin(), p.end(), begin);
  return p;
}

// Tr_out of a Choi matrix, done directly on the (out, in) block structure.
ComplexMatrix trace_outputs(const CpMap& map) {
  const Index di = map.in_dim();
  ComplexMatrix acc = ComplexMatrix::Zero(di, di);
  for (Index o = 0; o < map.out_dim(); ++o) acc += map.choi.block(o * di, o * di, di, di);
  return acc;
}

}  // namespace

Dims CpMap::choi_dims() const {
  Dims d = out.dims();
  const Dims i = in.dims();
  d.insert(d.end(), i.begin(), i.end());
  return d;
}

ChannelDiagnostics diagnose(const CpMap& map) {
  check_choi_shape(map);
  ChannelDiagnostics diag;
  diag.hermiticity = hermiticity_residual(map.choi);
  const ComplexMatrix h = hermitian_part(map.choi);
  diag.min_eigenvalue = eigh(h).values.minCoeff();
  diag.tp_residual = max_abs_diff(trace_outputs(map), identity(map.in_dim()));
  return diag;
}

ChannelOperator::ChannelOperator(ComplexMatrix choi, SystemLayout in, SystemLayout out, double tol)
    : ChannelOperator(CpMap{std::move(choi), std::move(in), std::move(out)}, tol) {}

ChannelOperator::ChannelOperator(CpMap map, double tol) : map_(std::move(map)) {
  const auto diag = diagnose(map_);
  if (diag.hermiticity > tol)
    throw NotCompletelyPositiveError("Choi operator is not Hermitian (residual " + fmt(diag.hermiticity) + ")");
  if (diag.min_eigenvalue < -tol)
    throw NotCompletelyPositiveError("Choi operator has eigenvalue " + fmt(diag.min_eigenvalue));
  if (diag.tp_residual > tol)
    throw NotTracePreservingError("Tr_out of the Choi operator deviates from identity by " + fmt(diag.tp_residual));
  map_.choi = hermitian_part(map_.choi);
}

double KrausSet::completeness_residual() const {
  if (ops.empty()) throw DimensionError("empty Kraus set");
  const Index di = ops.front().cols();
  ComplexMatrix acc = ComplexMatrix::Zero(di, di);
  for (const auto& k : ops) {
    if (k.cols() != di || k.rows() != ops.front().rows()) throw DimensionError("Kraus operators differ in shape");
    acc += k.adjoint() * k;
  }
  return max_abs_diff(acc, identity(di));
}

Instrument::Instrument(std::vector<CpMap> branches, double tol) : branches_(std::move(branches)) {
  if (branches_.empty()) throw DimensionError("instrument needs at least one outcome");
  const Index di = branches_.front().in_dim();
  ComplexMatrix total = ComplexMatrix::Zero(branches_.front().choi.rows(), branches_.front().choi.cols());
  for (std::size_t x = 0; x < branches_.size(); ++x) {
    auto& b = branches_[x];
    check_choi_shape(b);
    if (b.in.dims() != in_layout().dims() || b.out.dims() != out_layout().dims())
      throw DimensionError("instrument branches act on different systems");
    const auto diag = diagnose(b);
    if (!diag.completely_positive(tol))
      throw NotCompletelyPositiveError("instrument branch " + std::to_string(x) + " is not completely positive");
    b.choi = hermitian_part(b.choi);
    total += b.choi;
  }
  const CpMap sum{total, in_layout(), out_layout()};
  if (max_abs_diff(trace_outputs(sum), identity(di)) > tol)
    throw NotTracePreservingError("instrument branches do not sum to a trace-preserving map");
}

CpMap cp_map_from_kraus(std::span<const ComplexMatrix> kraus, SystemLayout in, SystemLayout out) {
  const Index di = in.total_dim();
  const Index dout = out.total_dim();
  ComplexMatrix choi = ComplexMatrix::Zero(di * dout, di * dout);
  for (const auto& k : kraus) {
    if (k.rows() != dout || k.cols() != di)
      throw DimensionError("Kraus operator is " + std::to_string(k.rows()) + "x" + std::to_string(k.cols()) +
                           ", expected " + std::to_string(dout) + "x" + std::to_string(di));
    const ComplexVector v = vec(k);
    choi.noalias() += v * v.adjoint();
  }
  return {std::move(choi), std::move(in), std::move(out)};
}

ChannelOperator channel_from_kraus(const KrausSet& ks, SystemLayout in, SystemLayout out, double tol) {
  auto map = cp_map_from_kraus(ks.ops, std::move(in), std::move(out));
  const double residual = ks.completeness_residual();
  if (residual > tol) throw NotTracePreservingError("Kraus completeness violated by " + fmt(residual));
  return ChannelOperator(std::move(map), tol);
}

KrausSet kraus_from_choi(const CpMap& map, double cutoff) {
  check_choi_shape(map);
  const auto herm = hermiticity_residual(map.choi);
  if (herm > kChannelTol) throw NotCompletelyPositiveError("Choi operator is not Hermitian");
  const auto es = eigh(hermitian_part(map.choi));
  if (es.values.minCoeff() < -kChannelTol)
    throw NotCompletelyPositiveError("Choi operator has eigenvalue " + fmt(es.values.minCoeff()));
  KrausSet out;
  for (Index k = 0; k < es.values.size(); ++k) {
    const double lambda = es.values(k);
    if (lambda <= cutoff) break;  // descending
    out.ops.push_back(std::sqrt(lambda) * unvec(es.vectors.col(k), map.out_dim(), map.in_dim()));
  }
  return out;
}

ComplexMatrix apply(const CpMap& map, const ComplexMatrix& rho) {
  check_choi_shape(map);
  const Index di = map.in_dim();
  const Index dout = map.out_dim();
  if (rho.rows() != di || rho.cols() != di)
    throw DimensionError("state is " + std::to_string(rho.rows()) + "x" + std::to_string(rho.cols()) +
                         ", channel input dimension is " + std::to_string(di));
  // out(o, o') = sum_{j,i} rho(j, i) R((o, j), (o', i))
  ComplexMatrix out(dout, dout);
  for (Index op = 0; op < dout; ++op)
    for (Index o = 0; o < dout; ++o)
      out(o, op) = map.choi.block(o * di, op * di, di, di).cwiseProduct(rho).sum();
  return out;
}

CpMap compose_seq(const CpMap& first, const CpMap& second) {
  check_choi_shape(first);
  check_choi_shape(second);
  const Index dm = first.out_dim();
  if (second.in_dim() != dm)
    throw DimensionError("cannot compose: first outputs dimension " + std::to_string(dm) +
                         ", second accepts " + std::to_string(second.in_dim()));
  const Index di = first.in_dim();
  const Index dout = second.out_dim();
  // Realign R2 to [(o,o'),(m,m')] and R1 to [(m,m'),(i,i')]; the link product
  // is then a single matrix product.
  ComplexMatrix p(dout * dout, dm * dm);
  for (Index op = 0; op < dout; ++op)
    for (Index o = 0; o < dout; ++o)
      for (Index mp = 0; mp < dm; ++mp)
        for (Index m = 0; m < dm; ++m) p(o * dout + op, m * dm + mp) = second.choi(o * dm + m, op * dm + mp);
  ComplexMatrix q(dm * dm, di * di);
  for (Index ip = 0; ip < di; ++ip)
    for (Index i = 0; i < di; ++i)
      for (Index mp = 0; mp < dm; ++mp)
        for (Index m = 0; m < dm; ++m) q(m * dm + mp, i * di + ip) = first.choi(m * di + i, mp * di + ip);
  const ComplexMatrix t = p * q;
  ComplexMatrix choi(dout * di, dout * di);
  for (Index op = 0; op < dout; ++op)
    for (Index o = 0; o < dout; ++o)
      for (Index ip = 0; ip < di; ++ip)
        for (Index i = 0; i < di; ++i) choi(o * di + i, op * di + ip) = t(o * dout + op, i * di + ip);
  return {std::move(choi), first.in, second.out};
}

ChannelOperator compose_seq(const ChannelOperator& first, const ChannelOperator& second) {
  return ChannelOperator(compose_seq(first.map(), second.map()));
}

CpMap compose_par(const CpMap& a, const CpMap& b) {
  check_choi_shape(a);
  check_choi_shape(b);
  auto in = concat(a.in, b.in);
  auto out = concat(a.out, b.out);
  Dims dims = a.choi_dims();
  const Dims bd = b.choi_dims();
  dims.insert(dims.end(), bd.begin(), bd.end());
  const Index nao = a.out.size(), nai = a.in.size(), nbo = b.out.size(), nbi = b.in.size();
  // kron order: a.out, a.in, b.out, b.in  ->  a.out, b.out, a.in, b.in
  Positions perm = range(0, nao);
  const auto bo = range(nao + nai, nao + nai + nbo);
  const auto ai = range(nao, nao + nai);
  const auto bi = range(nao + nai + nbo, nao + nai + nbo + nbi);
  perm.insert(perm.end(), bo.begin(), bo.end());
  perm.insert(perm.end(), ai.begin(), ai.end());
  perm.insert(perm.end(), bi.begin(), bi.end());
  return {permute_systems(kron(a.choi, b.choi), dims, perm), std::move(in), std::move(out)};
}

ChannelOperator compose_par(const ChannelOperator& a, const ChannelOperator& b) {
  return ChannelOperator(compose_par(a.map(), b.map()));
}

ChannelOperator instrument_sum(const Instrument& ins, double tol) {
  ComplexMatrix total = ComplexMatrix::Zero(ins[0].choi.rows(), ins[0].choi.cols());
  for (const auto& b : ins.branches()) total += b.choi;
  return ChannelOperator(std::move(total), ins.in_layout(), ins.out_layout(), tol);
}

CpMap scaled(const CpMap& map, double factor) { return {map.choi * factor, map.in, map.out}; }

CpMap relabel(const CpMap& map, SystemLayout in, SystemLayout out) {
  if (in.total_dim() != map.in_dim() || out.total_dim() != map.out_dim())
    throw DimensionError("relabel: total dimensions must agree");
  return {map.choi, std::move(in), std::move(out)};
}

CpMap permute_outputs(const CpMap& map, std::span<const Index> perm) {
  const Index no = map.out.size();
  Positions full(perm.begin(), perm.end());
  for (Index k = 0; k < map.in.size(); ++k) full.push_back(no + k);
  return {permute_systems(map.choi, map.choi_dims(), full), map.in, map.out.permuted(perm)};
}

CpMap permute_inputs(const CpMap& map, std::span<const Index> perm) {
  const Index no = map.out.size();
  Positions full = range(0, no);
  for (Index p : perm) full.push_back(no + p);
  return {permute_systems(map.choi, map.choi_dims(), full), map.in.permuted(perm), map.out};
}

ChannelOperator identity_channel(const SystemLayout& in, const SystemLayout& out) {
  if (in.total_dim() != out.total_dim()) throw DimensionError("identity channel needs equal dimensions");
  const ComplexVector v = max_entangled(in.total_dim());
  return ChannelOperator(v * v.adjoint(), in, out);
}

ChannelOperator unitary_channel(const ComplexMatrix& u, const SystemLayout& in, const SystemLayout& out) {
  const ComplexMatrix ops[] = {u};
  return ChannelOperator(cp_map_from_kraus(ops, in, out));
}

ChannelOperator depolarizing_channel(const SystemLayout& in, const SystemLayout& out) {
  const Index dout = out.total_dim();
  return ChannelOperator(identity(dout * in.total_dim()) / static_cast<double>(dout), in, out);
}

ChannelOperator preparation(const ComplexMatrix& state, const SystemLayout& out) {
  return ChannelOperator(state, SystemLayout{}, out);
}

ChannelOperator trace_channel(const SystemLayout& in) {
  return ChannelOperator(identity(in.total_dim()), in, SystemLayout{});
}

ChannelOperator partial_trace_channel(const SystemLayout& in, std::span<const Index> positions) {
  const Dims dims = in.dims();
  const auto traced = detail::checked_set(dims, positions);
  const auto kept = detail::complement(in.size(), traced);
  const auto k_off = detail::digit_offsets(dims, kept);
  const auto t_off = detail::digit_offsets(dims, traced);
  std::vector<ComplexMatrix> kraus;
  for (Index t : t_off) {
    ComplexMatrix k = ComplexMatrix::Zero(static_cast<Index>(k_off.size()), in.total_dim());
    for (std::size_t r = 0; r < k_off.size(); ++r) k(static_cast<Index>(r), k_off[r] + t) = 1;
    kraus.push_back(std::move(k));
  }
  return ChannelOperator(cp_map_from_kraus(kraus, in, in.without(traced)));
}

}  // namespace nosig
