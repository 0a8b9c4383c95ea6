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

// Dense linear algebra on multi-subsystem Hilbert spaces.
//
// Index convention: a flat index over dims (d_0, ..., d_{n-1}) is
// i_0 d_1...d_{n-1} + ... + i_{n-1}; the first factor is the most
// significant digit, matching the Kronecker product ordering.

#pragma once

#include <algorithm>
#include <cmath>
#include <numeric>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "nosig/layout.hpp"
#include "nosig/types.hpp"

namespace nosig {

template <typename Derived>
using PlainMatrix = Eigen::Matrix<typename Derived::Scalar, Eigen::Dynamic, Eigen::Dynamic>;

inline constexpr double kHermitianTol = 1e-10;

namespace detail {

inline Index product(std::span<const Index> dims) {
  return std::accumulate(dims.begin(), dims.end(), Index{1}, std::multiplies<>());
}

// Flat-index contribution of every digit combination of the subsystems at
// `positions`, enumerated with positions[0] most significant.
inline std::vector<Index> digit_offsets(std::span<const Index> dims, std::span<const Index> positions) {
  std::vector<Index> strides(dims.size(), 1);
  for (Index k = static_cast<Index>(dims.size()) - 2; k >= 0; --k)
    strides[static_cast<std::size_t>(k)] = strides[static_cast<std::size_t>(k + 1)] * dims[static_cast<std::size_t>(k + 1)];
  std::vector<Index> offsets{0};
  for (Index p : positions) {
    const Index d = dims[static_cast<std::size_t>(p)];
    const Index s = strides[static_cast<std::size_t>(p)];
    std::vector<Index> next;
    next.reserve(offsets.size() * static_cast<std::size_t>(d));
    for (Index base : offsets)
      for (Index i = 0; i < d; ++i) next.push_back(base + i * s);
    offsets = std::move(next);
  }
  return offsets;
}

inline Positions complement(Index n, std::span<const Index> positions) {
  Positions out;
  for (Index i = 0; i < n; ++i)
    if (std::find(positions.begin(), positions.end(), i) == positions.end()) out.push_back(i);
  return out;
}

inline Positions checked_set(std::span<const Index> dims, std::span<const Index> positions) {
  Positions sorted(positions.begin(), positions.end());
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
    throw LabelError("subsystem selected twice");
  for (Index p : sorted)
    if (p < 0 || p >= static_cast<Index>(dims.size())) throw LabelError("subsystem position out of range");
  return sorted;
}

inline void check_permutation(std::span<const Index> perm, std::size_t n) {
  if (perm.size() != n) throw DimensionError("permutation length does not match subsystem count");
  std::vector<bool> hit(n, false);
  for (Index p : perm) {
    if (p < 0 || static_cast<std::size_t>(p) >= n || hit[static_cast<std::size_t>(p)])
      throw DimensionError("not a permutation of subsystem positions");
    hit[static_cast<std::size_t>(p)] = true;
  }
}

template <typename Derived>
void check_square(const Eigen::MatrixBase<Derived>& m, std::span<const Index> dims) {
  const Index d = product(dims);
  if (m.rows() != d || m.cols() != d)
    throw DimensionError("matrix is " + std::to_string(m.rows()) + "x" + std::to_string(m.cols()) +
                         ", layout requires side " + std::to_string(d));
}

}  // namespace detail

template <typename Real = double>
CMatrix<Real> identity(Index d) {
  return CMatrix<Real>::Identity(d, d);
}

/// Computational basis vector |i> in dimension d.
template <typename Real = double>
CVector<Real> ket(Index d, Index i) {
  CVector<Real> v = CVector<Real>::Zero(d);
  v(i) = 1;
  return v;
}

/// Unnormalized maximally entangled vector |I>> = sum_n |n>|n>.
template <typename Real = double>
CVector<Real> max_entangled(Index d) {
  CVector<Real> v = CVector<Real>::Zero(d * d);
  for (Index n = 0; n < d; ++n) v(n * d + n) = 1;
  return v;
}

/// Row-major vectorization |A>> = (A ⊗ I)|I>>.
template <typename Derived>
auto vec(const Eigen::MatrixBase<Derived>& a) {
  Eigen::Matrix<typename Derived::Scalar, Eigen::Dynamic, 1> v(a.size());
  for (Index i = 0; i < a.rows(); ++i)
    for (Index j = 0; j < a.cols(); ++j) v(i * a.cols() + j) = a(i, j);
  return v;
}

/// Inverse of vec for a rows x cols operator.
template <typename Derived>
auto unvec(const Eigen::MatrixBase<Derived>& v, Index rows, Index cols) {
  if (v.size() != rows * cols) throw DimensionError("unvec: length mismatch");
  PlainMatrix<Derived> a(rows, cols);
  for (Index i = 0; i < rows; ++i)
    for (Index j = 0; j < cols; ++j) a(i, j) = v(i * cols + j);
  return a;
}

namespace pauli {
template <typename Real = double>
CMatrix<Real> x() {
  CMatrix<Real> m(2, 2);
  m << 0, 1, 1, 0;
  return m;
}
template <typename Real = double>
CMatrix<Real> y() {
  CMatrix<Real> m(2, 2);
  m << 0, std::complex<Real>(0, -1), std::complex<Real>(0, 1), 0;
  return m;
}
template <typename Real = double>
CMatrix<Real> z() {
  CMatrix<Real> m(2, 2);
  m << 1, 0, 0, -1;
  return m;
}
}  // namespace pauli

/// Kronecker product; (a⊗b)(i r_b + k, j c_b + l) = a(i,j) b(k,l).
template <typename DA, typename DB>
auto kron(const Eigen::MatrixBase<DA>& a, const Eigen::MatrixBase<DB>& b) {
  using Scalar = typename Eigen::ScalarBinaryOpTraits<typename DA::Scalar, typename DB::Scalar>::ReturnType;
  Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Index i = 0; i < a.rows(); ++i)
    for (Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

/// Reorders tensor factors of a square operator: new factor k is old factor
/// perm[k]. Equivalent to P m P† with P the factor-permuting unitary.
template <typename Derived>
PlainMatrix<Derived> permute_systems(const Eigen::MatrixBase<Derived>& m, std::span<const Index> dims,
                                     std::span<const Index> perm) {
  detail::check_square(m, dims);
  detail::check_permutation(perm, dims.size());
  const auto map = detail::digit_offsets(dims, perm);
  const Index d = m.rows();
  PlainMatrix<Derived> out(d, d);
  for (Index j = 0; j < d; ++j)
    for (Index i = 0; i < d; ++i) out(i, j) = m(map[static_cast<std::size_t>(i)], map[static_cast<std::size_t>(j)]);
  return out;
}

template <typename Derived>
PlainMatrix<Derived> permute_systems(const Eigen::MatrixBase<Derived>& m, const SystemLayout& layout,
                                     std::span<const Index> perm) {
  return permute_systems(m, layout.dims(), perm);
}

/// Permutation taking `from` to `to` by label; both must hold the same labels.
inline Positions permutation_between(const SystemLayout& from, const SystemLayout& to) {
  if (from.size() != to.size()) throw LabelError("layouts differ in subsystem count");
  Positions perm;
  for (Index k = 0; k < to.size(); ++k) {
    const Index p = from.position(to[k].label);
    if (from[p].dim != to[k].dim) throw DimensionError("dimension mismatch for '" + to[k].label + "'");
    perm.push_back(p);
  }
  return perm;
}

/// Unitary P with P m P† = permute_systems(m, dims, perm).
template <typename Real = double>
CMatrix<Real> permutation_unitary(std::span<const Index> dims, std::span<const Index> perm) {
  detail::check_permutation(perm, dims.size());
  const auto map = detail::digit_offsets(dims, perm);
  const Index d = detail::product(dims);
  CMatrix<Real> p = CMatrix<Real>::Zero(d, d);
  for (Index i = 0; i < d; ++i) p(i, map[static_cast<std::size_t>(i)]) = 1;
  return p;
}

/// Same reordering as permute_systems applied to a state vector.
template <typename Derived>
auto permute_vector(const Eigen::MatrixBase<Derived>& v, std::span<const Index> dims, std::span<const Index> perm) {
  if (v.size() != detail::product(dims)) throw DimensionError("vector length does not match dims");
  detail::check_permutation(perm, dims.size());
  const auto map = detail::digit_offsets(dims, perm);
  Eigen::Matrix<typename Derived::Scalar, Eigen::Dynamic, 1> out(v.size());
  for (Index i = 0; i < v.size(); ++i) out(i) = v(map[static_cast<std::size_t>(i)]);
  return out;
}

/// Partial trace over the subsystems at `traced`; the remaining subsystems
/// keep their original order.
template <typename Derived>
PlainMatrix<Derived> ptrace(const Eigen::MatrixBase<Derived>& m, std::span<const Index> dims,
                            std::span<const Index> traced) {
  detail::check_square(m, dims);
  const auto traced_sorted = detail::checked_set(dims, traced);
  const auto kept = detail::complement(static_cast<Index>(dims.size()), traced_sorted);
  const auto kept_off = detail::digit_offsets(dims, kept);
  const auto tr_off = detail::digit_offsets(dims, traced_sorted);
  const Index dk = static_cast<Index>(kept_off.size());
  PlainMatrix<Derived> out = PlainMatrix<Derived>::Zero(dk, dk);
  for (Index c = 0; c < dk; ++c)
    for (Index r = 0; r < dk; ++r) {
      typename Derived::Scalar acc(0);
      for (Index t : tr_off) acc += m(kept_off[static_cast<std::size_t>(r)] + t, kept_off[static_cast<std::size_t>(c)] + t);
      out(r, c) = acc;
    }
  return out;
}

template <typename Derived>
PlainMatrix<Derived> ptrace(const Eigen::MatrixBase<Derived>& m, const SystemLayout& layout,
                            std::span<const std::string> traced_labels) {
  return ptrace(m, layout.dims(), layout.positions(traced_labels));
}

/// Transpose restricted to the tensor factors at `transposed`, in the
/// computational basis.
template <typename Derived>
PlainMatrix<Derived> ptranspose(const Eigen::MatrixBase<Derived>& m, std::span<const Index> dims,
                                std::span<const Index> transposed) {
  detail::check_square(m, dims);
  const auto t_sorted = detail::checked_set(dims, transposed);
  const auto kept = detail::complement(static_cast<Index>(dims.size()), t_sorted);
  const auto k_off = detail::digit_offsets(dims, kept);
  const auto t_off = detail::digit_offsets(dims, t_sorted);
  PlainMatrix<Derived> out(m.rows(), m.cols());
  for (Index kc : k_off)
    for (Index tc : t_off)
      for (Index kr : k_off)
        for (Index tr : t_off) out(kr + tr, kc + tc) = m(kr + tc, kc + tr);
  return out;
}

template <typename Derived>
PlainMatrix<Derived> ptranspose(const Eigen::MatrixBase<Derived>& m, const SystemLayout& layout,
                                std::span<const std::string> transposed_labels) {
  return ptranspose(m, layout.dims(), layout.positions(transposed_labels));
}

/// Lifts `op` acting on the subsystems at `positions` (in that order) to the
/// full space, identity elsewhere.
template <typename Derived>
PlainMatrix<Derived> embed(const Eigen::MatrixBase<Derived>& op, std::span<const Index> dims,
                           std::span<const Index> positions) {
  detail::checked_set(dims, positions);
  const auto p_off = detail::digit_offsets(dims, positions);
  const auto kept = detail::complement(static_cast<Index>(dims.size()), positions);
  const auto k_off = detail::digit_offsets(dims, kept);
  const Index dp = static_cast<Index>(p_off.size());
  if (op.rows() != dp || op.cols() != dp) throw DimensionError("embed: operator does not match subsystems");
  const Index d = detail::product(dims);
  PlainMatrix<Derived> out = PlainMatrix<Derived>::Zero(d, d);
  for (Index k : k_off)
    for (Index c = 0; c < dp; ++c)
      for (Index r = 0; r < dp; ++r) out(k + p_off[static_cast<std::size_t>(r)], k + p_off[static_cast<std::size_t>(c)]) = op(r, c);
  return out;
}

template <typename DA, typename DB>
typename DA::RealScalar max_abs_diff(const Eigen::MatrixBase<DA>& a, const Eigen::MatrixBase<DB>& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw DimensionError("max_abs_diff: shape mismatch");
  if (a.size() == 0) return 0;
  return (a - b).cwiseAbs().maxCoeff();
}

/// max |m - m†|.
template <typename Derived>
typename Derived::RealScalar hermiticity_residual(const Eigen::MatrixBase<Derived>& m) {
  if (m.rows() != m.cols()) throw DimensionError("hermiticity_residual: matrix not square");
  return max_abs_diff(m, m.adjoint());
}

template <typename Derived>
PlainMatrix<Derived> hermitian_part(const Eigen::MatrixBase<Derived>& m) {
  return (m + m.adjoint()) / typename Derived::RealScalar(2);
}

template <typename Scalar>
struct EighResult {
  using Real = typename Eigen::NumTraits<Scalar>::Real;
  /// Descending.
  RVector<Real> values;
  /// Column k is the eigenvector of values(k).
  Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> vectors;
};

/// Hermitian eigendecomposition, eigenvalues sorted descending. Deterministic
/// for a given input. Throws NotHermitianError beyond `herm_tol`.
template <typename Derived>
EighResult<typename Derived::Scalar> eigh(const Eigen::MatrixBase<Derived>& m,
                                          typename Derived::RealScalar herm_tol = kHermitianTol) {
  const auto residual = hermiticity_residual(m);
  if (!(residual <= herm_tol))
    throw NotHermitianError("eigh: input deviates from Hermitian by " + std::to_string(static_cast<double>(residual)));
  using Plain = PlainMatrix<Derived>;
  Eigen::SelfAdjointEigenSolver<Plain> solver(hermitian_part(m));
  if (solver.info() != Eigen::Success) throw Error("eigh: eigensolver did not converge");
  EighResult<typename Derived::Scalar> out;
  out.values = solver.eigenvalues().reverse();
  out.vectors = solver.eigenvectors().rowwise().reverse();
  return out;
}

/// Rank of the Gram matrix G(i,j) = Tr[ops_i† ops_j], counting eigenvalues
/// above rel_tol * λ_max.
template <typename Matrix>
Index gram_rank(std::span<const Matrix> ops, double rel_tol = 1e-10) {
  if (ops.empty()) throw DimensionError("gram_rank: empty operator list");
  const Index n = static_cast<Index>(ops.size());
  using Scalar = typename Matrix::Scalar;
  Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> gram(n, n);
  for (Index i = 0; i < n; ++i) {
    const auto& a = ops[static_cast<std::size_t>(i)];
    if (a.rows() != ops[0].rows() || a.cols() != ops[0].cols())
      throw DimensionError("gram_rank: operators differ in shape");
    for (Index j = 0; j < n; ++j) gram(i, j) = (a.conjugate().cwiseProduct(ops[static_cast<std::size_t>(j)])).sum();
  }
  const auto values = eigh(gram, 1e-8 * std::max<double>(1.0, gram.cwiseAbs().maxCoeff())).values;
  const double top = values(0);
  if (top <= 0) return 0;
  Index rank = 0;
  for (Index k = 0; k < n; ++k)
    if (values(k) > rel_tol * top) ++rank;
  return rank;
}

template <typename Matrix>
Index gram_rank(const std::vector<Matrix>& ops, double rel_tol = 1e-10) {
  return gram_rank(std::span<const Matrix>(ops), rel_tol);
}

}  // namespace nosig
