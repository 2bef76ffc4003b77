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

#include <cmath>

#include "crstates/linalg.hpp"

namespace crstates {

/// Orthonormal (trace inner product) Hermitian basis of k×k matrices.
///
/// Ordering:
///   0                      Id/√k
///   then for j<l (lex)     (E_jl + E_lj)/√2
///   then for j<l (lex)     (−i·E_jl + i·E_lj)/√2
///   then for l = 1..k−1    (Σ_{j<l} E_jj − l·E_ll)/√(l(l+1))
///
/// Coordinates are c_a = tr(B_a X); real whenever X is Hermitian.
class HermitianBasis {
 public:
  explicit HermitianBasis(Index k) : k_(k) {
    if (k < 1) throw ParameterError("HermitianBasis: dimension must be >= 1");
  }

  Index dim() const { return k_; }
  Index size() const { return k_ * k_; }

  ComplexMatrix element(Index a) const {
    ComplexVector c = ComplexVector::Zero(size());
    c(a) = 1.0;
    return from_coords(c);
  }

  ComplexVector complex_coords(const ComplexMatrix& x) const {
    check(x);
    ComplexVector c(size());
    const double r2 = std::sqrt(0.5);
    c(0) = x.trace() / std::sqrt(static_cast<double>(k_));
    const Index pairs = k_ * (k_ - 1) / 2;
    Index s = 1;
    for (Index j = 0; j < k_; ++j) {
      for (Index l = j + 1; l < k_; ++l, ++s) {
        c(s) = (x(l, j) + x(j, l)) * r2;
        c(s + pairs) = Complex(0, 1) * (x(j, l) - x(l, j)) * r2;
      }
    }
    s += pairs;
    for (Index l = 1; l < k_; ++l, ++s) {
      Complex acc = 0;
      for (Index j = 0; j < l; ++j) acc += x(j, j);
      acc -= static_cast<double>(l) * x(l, l);
      c(s) = acc / std::sqrt(static_cast<double>(l * (l + 1)));
    }
    return c;
  }

  /// Real parts of the coordinates; exact for Hermitian input.
  RealVector coords(const ComplexMatrix& x) const { return complex_coords(x).real(); }

  ComplexMatrix from_coords(const ComplexVector& c) const {
    if (c.size() != size()) throw DimensionError("HermitianBasis: coordinate length mismatch");
    ComplexMatrix x = ComplexMatrix::Zero(k_, k_);
    const double r2 = std::sqrt(0.5);
    x.diagonal().setConstant(c(0) / std::sqrt(static_cast<double>(k_)));
    const Index pairs = k_ * (k_ - 1) / 2;
    Index s = 1;
    for (Index j = 0; j < k_; ++j) {
      for (Index l = j + 1; l < k_; ++l, ++s) {
        const Complex sym = c(s) * r2;
        const Complex anti = c(s + pairs) * r2;
        x(j, l) += sym - Complex(0, 1) * anti;
        x(l, j) += sym + Complex(0, 1) * anti;
      }
    }
    s += pairs;
    for (Index l = 1; l < k_; ++l, ++s) {
      const Complex w = c(s) / std::sqrt(static_cast<double>(l * (l + 1)));
      for (Index j = 0; j < l; ++j) x(j, j) += w;
      x(l, l) -= static_cast<double>(l) * w;
    }
    return x;
  }

  ComplexMatrix from_coords(const RealVector& c) const {
    return from_coords(ComplexVector(c.cast<Complex>()));
  }

 private:
  void check(const ComplexMatrix& x) const {
    if (x.rows() != k_ || x.cols() != k_) {
      throw DimensionError("HermitianBasis: expected " + std::to_string(k_) + "x" +
                           std::to_string(k_) + " matrix");
    }
  }

  Index k_;
};

}  // namespace crstates
