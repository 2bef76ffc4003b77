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
#include <limits>
#include <random>
#include <vector>

#include "crstates/bipartite_ops.hpp"
#include "crstates/constructors.hpp"
#include "crstates/random.hpp"

namespace crstates {

struct ProbeOptions {
  int trials = 1000;
  std::uint64_t seed = 0;
  bool bypass_precondition = false;  // control runs on inputs without R-invariance
  bool check_compressed = true;
  double compressed_r_tolerance = 1e-8;
};

struct ProbeTrial {
  std::uint64_t seed;  // seed of the trial's generator
  double value;
  bool compressed_ppt;
  bool compressed_r_invariant;
};

struct ProbeReport {
  int trials = 0;
  std::uint64_t seed = 0;
  Index shuffled_dim = 0;  // K = kⁿ
  double min_value = std::numeric_limits<double>::infinity();
  int violations = 0;
  bool all_compressed_ppt = true;
  bool all_compressed_r_invariant = true;
  std::vector<ProbeTrial> per_trial;
};

inline constexpr Index kMaxProbeDim = 128;

namespace detail {

/// Columns orthonormalized by modified Gram–Schmidt.
inline ComplexMatrix orthonormal_columns(ComplexMatrix a) {
  for (Index j = 0; j < a.cols(); ++j) {
    for (Index i = 0; i < j; ++i) a.col(j) -= a.col(i) * a.col(i).dot(a.col(j));
    const double n = a.col(j).norm();
    if (!(n > 0)) throw DomainError("orthonormal_columns: rank-deficient sample");
    a.col(j) /= n;
  }
  return a;
}

}  // namespace detail

/// tr(Σ·vv*) for v = a⊗b + c⊗d with b = b₀a + b₁c and d = d₀a + d₁c.
inline double rank2_span_value(const BipartiteMatrix& sigma, const ComplexVector& a, const ComplexVector& c,
                               const Eigen::Vector2cd& b_coef, const Eigen::Vector2cd& d_coef) {
  if (sigma.k() != sigma.m() || a.size() != sigma.k() || c.size() != sigma.k()) {
    throw DimensionError("rank2_span_value: vectors must live in the factor space of Σ");
  }
  const ComplexVector b = b_coef(0) * a + b_coef(1) * c;
  const ComplexVector d = d_coef(0) * a + d_coef(1) * c;
  const ComplexVector v = kron(a, b) + kron(c, d);
  if (!(v.norm() > 0)) throw ParameterError("rank2_span_value: v is zero");
  return v.dot(sigma.matrix() * v).real();
}

/// Samples v = (A⊗A)w with A a random K×2 isometry and evaluates the shuffle
/// of partial transposes on vv*. Also checks the compressed 2⊗2 states.
inline ProbeReport probe(std::span<const BipartiteState> states, const ProbeOptions& opts,
                         const ToleranceConfig& cfg = {}) {
  if (states.empty()) throw ParameterError("probe: empty input list");
  if (opts.trials < 0) throw ParameterError("probe: trials must be >= 0");
  Index big_k = 1;
  for (std::size_t i = 0; i < states.size(); ++i) {
    const auto& s = states[i];
    if (s.k() != s.m() || s.k() < 2) {
      throw PreconditionError("probe: input " + std::to_string(i) + " must be square with k >= 2");
    }
    if (!opts.bypass_precondition && !*classify(s, cfg).r_invariant) {
      throw PreconditionError("probe: input " + std::to_string(i) + " is not invariant under realignment");
    }
    big_k *= s.k();
    if (big_k > kMaxProbeDim) {
      throw ParameterError("probe: shuffled factor dimension exceeds " + std::to_string(kMaxProbeDim));
    }
  }

  std::vector<BipartiteMatrix> pts;
  std::vector<BipartiteMatrix> raw;
  for (const auto& s : states) {
    pts.push_back(partial_transpose(s.as_matrix()));
    raw.push_back(s.as_matrix());
  }
  const ShuffledProduct sigma(std::move(pts));
  const ShuffledProduct shuffled(std::move(raw));

  ProbeReport report;
  report.trials = opts.trials;
  report.seed = opts.seed;
  report.shuffled_dim = big_k;
  for (int t = 0; t < opts.trials; ++t) {
    const std::uint64_t trial_seed = derive_seed(opts.seed, static_cast<std::uint64_t>(t));
    std::mt19937_64 rng(trial_seed);
    const ComplexMatrix a = detail::orthonormal_columns(gaussian_matrix(big_k, 2, rng));
    ComplexVector w = gaussian_matrix(4, 1, rng).col(0);
    w /= w.norm();
    const ComplexVector v = kron(a, ComplexMatrix(a)) * w;
    const double value = sigma.quadratic_form(v);

    ProbeTrial trial{trial_seed, value, true, true};
    if (opts.check_compressed) {
      const ComplexMatrix c = shuffled.compress(a);
      trial.compressed_ppt = is_psd(partial_transpose(c, 2, 2), cfg);
      trial.compressed_r_invariant =
          (realignment(c, 2, 2) - c).norm() <= opts.compressed_r_tolerance * c.norm();
    }
    report.min_value = std::min(report.min_value, value);
    if (value < -cfg.tol_zero) ++report.violations;
    report.all_compressed_ppt &= trial.compressed_ppt;
    report.all_compressed_r_invariant &= trial.compressed_r_invariant;
    report.per_trial.push_back(trial);
  }
  return report;
}

}  // namespace crstates
