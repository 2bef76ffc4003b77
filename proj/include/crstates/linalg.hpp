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

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <complex>
#include <string>

#include "crstates/errors.hpp"
#include "crstates/tolerance.hpp"

namespace crstates {

using Index = Eigen::Index;
using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealMatrix = Eigen::MatrixXd;
using RealVector = Eigen::VectorXd;

inline void require_square(const ComplexMatrix& m, const std::string& what) {
  if (m.rows() != m.cols()) {
    throw DimensionError(what + ": expected a square matrix, got " +
                         std::to_string(m.rows()) + "x" +
                         std::to_string(m.cols()));
  }
}

inline ComplexMatrix hermitize(const ComplexMatrix& m) {
  ComplexMatrix adj = m.adjoint();
  return (m + adj) * 0.5;
}

inline RealMatrix symmetrize(const RealMatrix& m) {
  RealMatrix t = m.transpose();
  return (m + t) * 0.5;
}

/// Kronecker product with (A⊗B)_{(i,p),(j,q)} = A_ij B_pq, row index i*rows(B)+p.
inline ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Index i = 0; i < a.rows(); ++i) {
    for (Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

inline ComplexVector kron(const ComplexVector& a, const ComplexVector& b) {
  ComplexVector out(a.size() * b.size());
  for (Index i = 0; i < a.size(); ++i) out.segment(i * b.size(), b.size()) = a(i) * b;
  return out;
}

inline bool all_finite(const ComplexMatrix& m) {
  for (Index j = 0; j < m.cols(); ++j) {
    for (Index i = 0; i < m.rows(); ++i) {
      if (!std::isfinite(m(i, j).real()) || !std::isfinite(m(i, j).imag())) return false;
    }
  }
  return true;
}

/// Eigenpairs of the Hermitian part of a square matrix, ascending.
struct HermitianSpectrum {
  RealVector values;
  ComplexMatrix vectors;

  double max_value() const { return values.size() ? values(values.size() - 1) : 0.0; }
  double min_value() const { return values.size() ? values(0) : 0.0; }
};

inline HermitianSpectrum hermitian_eigen(const ComplexMatrix& m) {
  require_square(m, "hermitian_eigen");
  if (m.rows() == 0) return {};
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(hermitize(m));
  if (solver.info() != Eigen::Success) {
    throw DomainError("hermitian_eigen: eigensolver did not converge");
  }
  return {solver.eigenvalues(), solver.eigenvectors()};
}

/// Ascending eigenpairs of a real symmetric matrix (symmetrized first).
struct SymmetricSpectrum {
  RealVector values;
  RealMatrix vectors;
};

inline SymmetricSpectrum symmetric_eigen(const RealMatrix& m) {
  if (m.rows() == 0) return {};
  Eigen::SelfAdjointEigenSolver<RealMatrix> solver(symmetrize(m));
  if (solver.info() != Eigen::Success) {
    throw DomainError("symmetric_eigen: eigensolver did not converge");
  }
  return {solver.eigenvalues(), solver.eigenvectors()};
}

/// Largest singular value.
inline double spectral_norm(const RealMatrix& m) {
  if (m.size() == 0) return 0.0;
  RealMatrix gram = m.cols() <= m.rows() ? RealMatrix(m.transpose() * m)
                                         : RealMatrix(m * m.transpose());
  const auto spectrum = symmetric_eigen(gram);
  return std::sqrt(std::max(0.0, spectrum.values.maxCoeff()));
}

/// PSD slack: negative eigenvalues down to this value are accepted.
inline double psd_slack(double max_eigenvalue, const ToleranceConfig& cfg) {
  return cfg.tol_psd * std::max(1.0, max_eigenvalue);
}

inline bool is_hermitian(const ComplexMatrix& m, const ToleranceConfig& cfg = {}) {
  require_square(m, "is_hermitian");
  const double defect = (m - m.adjoint()).norm();
  return defect <= cfg.tol_zero * std::max(1.0, m.norm());
}

/// Hermitian within tolerance and λ_min ≥ −tol_psd·max(1, λ_max).
inline bool is_psd(const ComplexMatrix& m, const ToleranceConfig& cfg = {}) {
  require_square(m, "is_psd");
  if (m.rows() == 0) return true;
  if (!is_hermitian(m, cfg)) return false;
  const auto spectrum = hermitian_eigen(m);
  return spectrum.min_value() >= -psd_slack(spectrum.max_value(), cfg);
}

/// Number of eigenvalues above tol_psd·λ_max.
inline Index numerical_rank(const RealVector& ascending_values, const ToleranceConfig& cfg) {
  if (ascending_values.size() == 0) return 0;
  const double top = ascending_values(ascending_values.size() - 1);
  if (!(top > 0)) return 0;
  const double cut = cfg.tol_psd * top;
  Index rank = 0;
  for (Index i = 0; i < ascending_values.size(); ++i) {
    if (ascending_values(i) > cut) ++rank;
  }
  return rank;
}

}  // namespace crstates
