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
#include <numeric>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "crstates/errors.hpp"
#include "crstates/linalg.hpp"
#include "crstates/random.hpp"
#include "crstates/tolerance.hpp"

namespace crstates {

/// Factor dimensions of a (possibly multipartite) matrix and the boundary
/// between the left and the right party: factors [0, split) are left.
///
/// Composite indices are row-major over the factors, so for two factors
/// (i, p) maps to i*m + p.
class SitesDescriptor {
 public:
  SitesDescriptor() = default;

  SitesDescriptor(std::vector<Index> dims, std::size_t split)
      : dims_(std::move(dims)), split_(split) {
    if (split_ > dims_.size()) {
      throw ParameterError("sites: split " + std::to_string(split_) +
                           " exceeds factor count " + std::to_string(dims_.size()));
    }
    for (Index d : dims_) {
      if (d < 1) throw ParameterError("sites: factor dimensions must be >= 1");
    }
  }

  static SitesDescriptor bipartite(Index k, Index m) { return SitesDescriptor({k, m}, 1); }

  const std::vector<Index>& dims() const { return dims_; }
  std::size_t split() const { return split_; }
  std::size_t site_count() const { return dims_.size(); }

  Index left_dim() const { return product(0, split_); }
  Index right_dim() const { return product(split_, dims_.size()); }
  Index total_dim() const { return product(0, dims_.size()); }

  /// True when the descriptor is exactly {k, m} with split 1.
  bool is_plain_bipartite() const { return dims_.size() == 2 && split_ == 1; }

  friend bool operator==(const SitesDescriptor&, const SitesDescriptor&) = default;

 private:
  Index product(std::size_t begin, std::size_t end) const {
    Index p = 1;
    for (std::size_t i = begin; i < end; ++i) p *= dims_[i];
    return p;
  }

  std::vector<Index> dims_;
  std::size_t split_ = 0;
};

/// A square matrix on a composite space with declared factor structure.
/// No positivity requirement: partial transposes and realignments of states
/// live here too.
class BipartiteMatrix {
 public:
  BipartiteMatrix(SitesDescriptor sites, ComplexMatrix matrix)
      : sites_(std::move(sites)), matrix_(std::move(matrix)) {
    require_square(matrix_, "BipartiteMatrix");
    if (matrix_.rows() != sites_.total_dim()) {
      throw DimensionError("BipartiteMatrix: matrix dimension " +
                           std::to_string(matrix_.rows()) +
                           " does not match factor product " +
                           std::to_string(sites_.total_dim()));
    }
    if (!all_finite(matrix_)) throw DomainError("BipartiteMatrix: non-finite entry");
  }

  BipartiteMatrix(Index k, Index m, ComplexMatrix matrix)
      : BipartiteMatrix(SitesDescriptor::bipartite(k, m), std::move(matrix)) {}

  const SitesDescriptor& sites() const { return sites_; }
  const ComplexMatrix& matrix() const { return matrix_; }
  Index k() const { return sites_.left_dim(); }
  Index m() const { return sites_.right_dim(); }
  Index dim() const { return matrix_.rows(); }

 private:
  SitesDescriptor sites_;
  ComplexMatrix matrix_;
};

/// A (non-normalized) state: positive semidefinite matrix on C^k ⊗ C^m.
/// Stored Hermitized.
class BipartiteState {
 public:
  explicit BipartiteState(const BipartiteMatrix& m, const ToleranceConfig& cfg = {})
      : data_(m.sites(), hermitize(m.matrix())) {
    if (!is_hermitian(m.matrix(), cfg)) {
      throw DomainError("BipartiteState: matrix is not Hermitian");
    }
    if (!is_psd(data_.matrix(), cfg)) {
      const auto spectrum = hermitian_eigen(data_.matrix());
      throw DomainError("BipartiteState: matrix is not positive semidefinite (min eigenvalue " +
                        std::to_string(spectrum.min_value()) + ")");
    }
  }

  BipartiteState(Index k, Index m, ComplexMatrix matrix, const ToleranceConfig& cfg = {})
      : BipartiteState(BipartiteMatrix(k, m, std::move(matrix)), cfg) {}

  BipartiteState(SitesDescriptor sites, ComplexMatrix matrix, const ToleranceConfig& cfg = {})
      : BipartiteState(BipartiteMatrix(std::move(sites), std::move(matrix)), cfg) {}

  const BipartiteMatrix& as_matrix() const { return data_; }
  const ComplexMatrix& matrix() const { return data_.matrix(); }
  const SitesDescriptor& sites() const { return data_.sites(); }
  Index k() const { return data_.k(); }
  Index m() const { return data_.m(); }
  Index dim() const { return data_.dim(); }

 private:
  BipartiteMatrix data_;
};

/// Orthogonal projection, kept together with an orthonormal basis of its range.
class Projection {
 public:
  static constexpr double kTolerance = 1e-8;

  static Projection zero(Index dim) { return Projection(ComplexMatrix(dim, 0)); }
  static Projection identity(Index dim) {
    return Projection(ComplexMatrix(ComplexMatrix::Identity(dim, dim)));
  }

  /// Columns must be orthonormal (checked).
  static Projection from_orthonormal_basis(ComplexMatrix basis) {
    const Index r = basis.cols();
    const double defect = (basis.adjoint() * basis - ComplexMatrix::Identity(r, r)).norm();
    if (defect > kTolerance * std::max<Index>(1, r)) {
      throw DomainError("Projection: basis columns are not orthonormal");
    }
    return Projection(std::move(basis));
  }

  /// Validates Hermiticity and idempotence, then extracts the range basis.
  static Projection from_matrix(const ComplexMatrix& p) {
    require_square(p, "Projection");
    const double scale = std::max(1.0, p.norm());
    if ((p - p.adjoint()).norm() > kTolerance * scale) {
      throw DomainError("Projection: matrix is not Hermitian");
    }
    const ComplexMatrix h = hermitize(p);
    if ((h * h - h).norm() > kTolerance * scale) {
      throw DomainError("Projection: matrix is not idempotent");
    }
    return from_range(h);
  }

  Index dim() const { return basis_.rows(); }
  Index rank() const { return basis_.cols(); }
  const ComplexMatrix& basis() const { return basis_; }
  const ComplexMatrix& matrix() const { return matrix_; }
  bool is_zero() const { return rank() == 0; }
  bool is_identity() const { return rank() == dim(); }

  Projection complement() const {
    return from_range(ComplexMatrix::Identity(dim(), dim()) - matrix_);
  }

  /// parent − this, for this ≤ parent.
  Projection complement_within(const Projection& parent) const {
    if (parent.dim() != dim()) throw DimensionError("Projection: dimension mismatch");
    return from_range(parent.matrix_ - matrix_);
  }

  /// Entry-wise transpose (a projection onto the conjugate range).
  Projection transpose() const { return Projection(ComplexMatrix(basis_.conjugate())); }

 private:
  explicit Projection(ComplexMatrix basis)
      : basis_(std::move(basis)), matrix_(basis_ * basis_.adjoint()) {}

  // Eigenvectors with eigenvalue above 1/2 of a near-projection.
  static Projection from_range(const ComplexMatrix& h) {
    const Index n = h.rows();
    if (n == 0) return Projection(ComplexMatrix(0, 0));
    const auto spectrum = hermitian_eigen(h);
    std::vector<Index> keep;
    for (Index i = n - 1; i >= 0; --i) {
      if (spectrum.values(i) > 0.5) keep.push_back(i);
    }
    ComplexMatrix basis(n, static_cast<Index>(keep.size()));
    for (std::size_t c = 0; c < keep.size(); ++c) {
      basis.col(static_cast<Index>(c)) = spectrum.vectors.col(keep[c]);
    }
    return Projection(std::move(basis));
  }

  ComplexMatrix basis_;
  ComplexMatrix matrix_;
};

/// Projection onto the span of eigenvectors with eigenvalue > tol_psd·λ_max.
inline Projection support_projection(const ComplexMatrix& m, const ToleranceConfig& cfg = {}) {
  require_square(m, "support_projection");
  if (!is_psd(m, cfg)) {
    throw DomainError("support_projection: input is not positive semidefinite");
  }
  const Index n = m.rows();
  if (n == 0) return Projection::zero(0);
  const auto spectrum = hermitian_eigen(m);
  const double top = spectrum.max_value();
  if (!(top > 0)) return Projection::zero(n);
  const double cut = cfg.tol_psd * top;
  std::vector<Index> keep;
  for (Index i = n - 1; i >= 0; --i) {
    if (spectrum.values(i) > cut) keep.push_back(i);
  }
  ComplexMatrix basis(n, static_cast<Index>(keep.size()));
  for (std::size_t c = 0; c < keep.size(); ++c) {
    basis.col(static_cast<Index>(c)) = spectrum.vectors.col(keep[c]);
  }
  return Projection::from_orthonormal_basis(std::move(basis));
}

/// G·G* / tr for a seeded (k·m)×rank complex Gaussian G; unit trace.
inline BipartiteState random_state(Index k, Index m, Index rank, std::uint64_t seed) {
  if (k < 1 || m < 1) throw ParameterError("random_state: dimensions must be >= 1");
  if (rank < 1 || rank > k * m) {
    throw ParameterError("random_state: rank " + std::to_string(rank) +
                         " outside [1, " + std::to_string(k * m) + "]");
  }
  std::mt19937_64 rng(seed);
  const ComplexMatrix g = gaussian_matrix(k * m, rank, rng);
  ComplexMatrix rho = g * g.adjoint();
  rho /= rho.trace().real();
  return BipartiteState(k, m, hermitize(rho));
}

}  // namespace crstates
