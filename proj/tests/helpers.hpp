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
#include <random>
#include <vector>

#include "crstates/crstates.hpp"
#include "oracles.hpp"

namespace testing_support {

using namespace crstates;

inline double max_abs(const ComplexMatrix& m) { return m.cwiseAbs().maxCoeff(); }

/// Random full-rank 2⊗2 states kept only when their partial transpose is PSD.
inline BipartiteState random_ppt_2x2(std::uint64_t seed) {
  for (std::uint64_t attempt = 0;; ++attempt) {
    BipartiteState s = random_state(2, 2, 4, derive_seed(seed, attempt));
    if (oracle::min_eigenvalue(partial_transpose(s)) > 1e-6) return s;
  }
}

inline ComplexMatrix diag(std::initializer_list<double> values) {
  RealVector v(static_cast<Index>(values.size()));
  Index i = 0;
  for (double x : values) v(i++) = x;
  return v.cast<Complex>().asDiagonal();
}

/// Projection onto span(e_i) for the listed indices.
inline Projection coordinate_projection(Index dim, std::initializer_list<Index> idx) {
  ComplexMatrix basis = ComplexMatrix::Zero(dim, static_cast<Index>(idx.size()));
  Index c = 0;
  for (Index i : idx) basis(i, c++) = 1.0;
  return Projection::from_orthonormal_basis(basis);
}

}  // namespace testing_support
