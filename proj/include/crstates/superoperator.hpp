// Copyright 2026 The crstates Authors
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

#pragma once

#include <cstdint>
#include <functional>
#include <random>

#include "crstates/hermitian_basis.hpp"
#include "crstates/random.hpp"
#include "crstates/state.hpp"

namespace crstates {

/// G_γ(X) = Tr₁(γ·(X⊗Id)); maps k×k to m×m.
inline ComplexMatrix g_apply(const BipartiteState& gamma, const ComplexMatrix& x) {
  const Index k = gamma.k();
  const Index m = gamma.m();
  if (x.rows() != k || x.cols() != k) {
    throw DimensionError("g_apply: X must be " + std::to_string(k) + "x" + std::to_string(k));
  }
  const ComplexMatrix& g = gamma.matrix();
  ComplexMatrix out = ComplexMatrix::Zero(m, m);
  for (Index i = 0; i < k; ++i) {
    for (Index j = 0; j < k; ++j) {
      const Complex w = x(j, i);
      if (w != Complex(0)) out += w * g.block(i * m, j * m, m, m);
    }
  }
  return out;
}

/// F_γ(Y) = Tr₂(γ·(Id⊗Y)); maps m×m to k×k.
inline ComplexMatrix f_apply(const BipartiteState& gamma, const ComplexMatrix& y) {
  const Index k = gamma.k();
  const Index m = gamma.m();
  if (y.rows() != m || y.cols() != m) {
    throw DimensionError("f_apply: Y must be " + std::to_string(m) + "x" + std::to_string(m));
  }
  const ComplexMatrix& g = gamma.matrix();
  const ComplexMatrix yt = y.transpose();
  ComplexMatrix out(k, k);
  for (Index i = 0; i < k; ++i) {
    for (Index j = 0; j < k; ++j) out(i, j) = g.block(i * m, j * m, m, m).cwiseProduct(yt).sum();
  }
  return out;
}

/// Hermiticity-preserving linear map from in_dim×in_dim to out_dim×out_dim
/// matrices, stored over HermitianBasis coordinates.
struct SuperOperator {
  Index in_dim = 0;
  Index out_dim = 0;
  RealMatrix rep;  // out_dim² × in_dim²

  ComplexMatrix apply(const ComplexMatrix& x) const {
    const HermitianBasis in(in_dim);
    const HermitianBasis out(out_dim);
    const ComplexVector c = in.complex_coords(x);
    return out.from_coords(ComplexVector(rep.cast<Complex>() * c));
  }

  /// Builds the representation of a map given as a function.
  static SuperOperator from_map(Index in_dim, Index out_dim,
                                const std::function<ComplexMatrix(const ComplexMatrix&)>& f) {
    const HermitianBasis in(in_dim);
    const HermitianBasis out(out_dim);
    SuperOperator op{in_dim, out_dim, RealMatrix(out.size(), in.size())};
    for (Index b = 0; b < in.size(); ++b) op.rep.col(b) = out.coords(f(in.element(b)));
    return op;
  }
};

inline SuperOperator g_superop(const BipartiteState& gamma) {
  return SuperOperator::from_map(gamma.k(), gamma.m(),
                                 [&](const ComplexMatrix& x) { return g_apply(gamma, x); });
}

inline SuperOperator f_superop(const BipartiteState& gamma) {
  return SuperOperator::from_map(gamma.m(), gamma.k(),
                                 [&](const ComplexMatrix& y) { return f_apply(gamma, y); });
}

/// T = F_γ∘G_γ on k×k matrices. Not symmetrized: symmetry is a checked property.
inline SuperOperator fg_superop(const BipartiteState& gamma) {
  const SuperOperator g = g_superop(gamma);
  const SuperOperator f = f_superop(gamma);
  return {gamma.k(), gamma.k(), f.rep * g.rep};
}

inline SuperOperator identity_map(Index k) {
  const Index n = k * k;
  return {k, k, RealMatrix::Identity(n, n)};
}

inline SuperOperator transpose_map(Index k) {
  return SuperOperator::from_map(k, k, [](const ComplexMatrix& x) { return ComplexMatrix(x.transpose()); });
}

/// Σ_{ij} E_ij ⊗ T(E_ij).
inline ComplexMatrix choi(const SuperOperator& t) {
  if (t.in_dim != t.out_dim) throw DimensionError("choi: map must be square");
  const Index k = t.in_dim;
  ComplexMatrix out(k * k, k * k);
  for (Index i = 0; i < k; ++i) {
    for (Index j = 0; j < k; ++j) {
      ComplexMatrix e = ComplexMatrix::Zero(k, k);
      e(i, j) = 1.0;
      out.block(i * k, j * k, k, k) = t.apply(e);
    }
  }
  return out;
}

struct AdjointCheck {
  double max_deviation = 0.0;
  double scale = 0.0;  // max over trials of ‖γ‖_F·‖X‖_F·‖Y‖_F
};

/// max |tr(G(X)Y*) − tr(X F(Y)*)| over seeded random Hermitian X, Y.
inline AdjointCheck verify_adjoint(const BipartiteState& gamma, int trials, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  AdjointCheck result;
  for (int t = 0; t < trials; ++t) {
    const ComplexMatrix x = random_hermitian(gamma.k(), rng);
    const ComplexMatrix y = random_hermitian(gamma.m(), rng);
    const Complex lhs = (g_apply(gamma, x) * y.adjoint()).trace();
    const Complex rhs = (x * f_apply(gamma, y).adjoint()).trace();
    result.max_deviation = std::max(result.max_deviation, std::abs(lhs - rhs));
    result.scale = std::max(result.scale, gamma.matrix().norm() * x.norm() * y.norm());
  }
  return result;
}

}  // namespace crstates
