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

#include <array>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "crstates/bipartite_ops.hpp"
#include "crstates/superoperator.hpp"

namespace crstates {

/// Condition flags of a state. The square-only entries are empty when k ≠ m.
struct TypeFlags {
  bool psd = false;
  bool ppt = false;                       // γ^Γ ≥ 0
  std::optional<bool> spc;                // R(γ^Γ) ≥ 0
  std::optional<bool> r_invariant;        // R(γ) = γ
  std::optional<bool> antisym_supported;  // Im(γ) inside the antisymmetric subspace
  Index rank = 0;

  /// At least one of ppt / spc / r_invariant.
  bool any_condition() const { return ppt || spc.value_or(false) || r_invariant.value_or(false); }
  bool no_condition() const { return !any_condition(); }
};

inline TypeFlags classify(const BipartiteState& gamma, const ToleranceConfig& cfg = {}) {
  TypeFlags f;
  const ComplexMatrix& g = gamma.matrix();
  const auto spectrum = hermitian_eigen(g);
  f.psd = spectrum.min_value() >= -psd_slack(spectrum.max_value(), cfg);
  f.rank = numerical_rank(spectrum.values, cfg);

  const ComplexMatrix pt = partial_transpose(g, gamma.k(), gamma.m());
  f.ppt = is_psd(pt, cfg);
  if (gamma.k() == gamma.m()) {
    const Index k = gamma.k();
    f.spc = is_psd(realignment(pt, k, k), cfg);
    f.r_invariant = (realignment(g, k, k) - g).norm() <= cfg.tol_zero * g.norm();
    const ComplexMatrix sym =
        ComplexMatrix::Identity(k * k, k * k) + flip_operator(k) + max_ent_projector(k);
    f.antisym_supported = (sym * g).norm() <= cfg.tol_zero * g.norm();
  }
  return f;
}

// ---------------------------------------------------------------------------
// Families.

/// Eigenvalues of a·Id + b·F + c·uu* on the antisymmetric space, the
/// symmetric space orthogonal to u, and the line through u. Sectors of
/// dimension zero are omitted.
struct WernerSectors {
  std::vector<std::pair<std::string, double>> values;
};

inline WernerSectors werner_sectors(Index k, double a, double b, double c) {
  WernerSectors s;
  if (k >= 2) {
    s.values.emplace_back("antisymmetric", a - b);
    s.values.emplace_back("symmetric", a + b);
  }
  s.values.emplace_back("maxent", a + b + static_cast<double>(k) * c);
  return s;
}

inline BipartiteState werner(Index k, double a, double b, double c, const ToleranceConfig& cfg = {}) {
  if (k < 1) throw ParameterError("werner: k must be >= 1");
  const auto sectors = werner_sectors(k, a, b, c);
  double top = 0.0;
  for (const auto& [name, v] : sectors.values) top = std::max(top, v);
  const double slack = psd_slack(top, cfg);
  for (const auto& [name, v] : sectors.values) {
    if (v < -slack) {
      std::string msg = "werner: parameters do not give a PSD matrix; sector eigenvalues:";
      for (const auto& [n2, v2] : sectors.values) msg += " " + n2 + "=" + std::to_string(v2);
      throw DomainError(msg);
    }
  }
  const Index n = k * k;
  ComplexMatrix m = a * ComplexMatrix::Identity(n, n) + b * flip_operator(k) + c * max_ent_projector(k);
  return BipartiteState(k, k, std::move(m), cfg);
}

inline BipartiteState maxent(Index k) { return BipartiteState(k, k, max_ent_projector(k)); }

/// aa* ⊗ bb*.
inline BipartiteState pure_product(const ComplexVector& a, const ComplexVector& b) {
  const ComplexVector v = kron(a, b);
  return BipartiteState(a.size(), b.size(), v * v.adjoint());
}

/// V₁ = span(e₁..e_⌊k/2⌋), V₂ = Id − V₁.
inline std::array<ComplexMatrix, 2> canonical_split(Index k) {
  if (k < 2) throw ParameterError("canonical split needs k >= 2");
  ComplexMatrix v1 = ComplexMatrix::Zero(k, k);
  for (Index i = 0; i < k / 2; ++i) v1(i, i) = 1.0;
  ComplexMatrix v2 = ComplexMatrix::Identity(k, k) - v1;
  return {v1, v2};
}

/// V₁⊗V₁ᵗ + V₂⊗V₂ᵗ.
inline BipartiteState diag_pair(Index k) {
  const auto [v1, v2] = canonical_split(k);
  return BipartiteState(k, k, kron(v1, v1.transpose()) + kron(v2, v2.transpose()));
}

struct Counterexample {
  BipartiteState state;
  double g_min_singular;  // smallest singular value of G_δ
};

/// δ = u_k u_k* + ε·(V₁⊗V₁ᵗ + V₂⊗V₂ᵗ).
inline Counterexample counterexample_delta(Index k, double eps) {
  if (!(eps > 0)) throw ParameterError("counterexample: epsilon must be > 0");
  const auto [v1, v2] = canonical_split(k);
  const ComplexMatrix m = max_ent_projector(k) + eps * (kron(v1, v1.transpose()) + kron(v2, v2.transpose()));
  BipartiteState delta(k, k, m);
  const RealMatrix g = g_superop(delta).rep;
  const Eigen::JacobiSVD<RealMatrix> svd(g);
  return {delta, svd.singularValues().minCoeff()};
}

// ---------------------------------------------------------------------------
// Functional calculus on the spectrum.

namespace detail {

template <class F>
BipartiteState spectral_map(const BipartiteState& gamma, const ToleranceConfig& cfg, F f) {
  const auto spectrum = hermitian_eigen(gamma.matrix());
  const double cut = cfg.tol_psd * std::max(0.0, spectrum.max_value());
  RealVector mapped(spectrum.values.size());
  for (Index i = 0; i < mapped.size(); ++i) {
    const double t = spectrum.values(i);
    mapped(i) = t > cut ? f(t) : 0.0;
  }
  const ComplexMatrix m =
      spectrum.vectors * mapped.cast<Complex>().asDiagonal() * spectrum.vectors.adjoint();
  return BipartiteState(gamma.sites(), hermitize(m), cfg);
}

}  // namespace detail

inline BipartiteState power(const BipartiteState& gamma, int n, const ToleranceConfig& cfg = {}) {
  if (n < 1) throw ParameterError("power: n must be >= 1");
  return detail::spectral_map(gamma, cfg, [n](double t) { return std::pow(t, n); });
}

inline BipartiteState root(const BipartiteState& gamma, int n, const ToleranceConfig& cfg = {}) {
  if (n < 1) throw ParameterError("root: n must be >= 1");
  return detail::spectral_map(gamma, cfg, [n](double t) { return std::pow(t, 1.0 / n); });
}

/// Orthogonal projection onto Im(γ), as a state.
inline BipartiteState support_state(const BipartiteState& gamma, const ToleranceConfig& cfg = {}) {
  return detail::spectral_map(gamma, cfg, [](double) { return 1.0; });
}

// ---------------------------------------------------------------------------
// Shuffles of states of different types.

struct NewTypeReport {
  BipartiteState state;
  TypeFlags flags;                  // of the shuffle
  std::vector<TypeFlags> inputs;    // of each factor
  bool each_condition_violated;     // every condition fails for some input
  bool satisfies_none;              // flags.ppt, spc, r_invariant all false
};

/// S(γ₁,…,γ_n) for square inputs with k > 2, each satisfying some condition
/// and none supported on the antisymmetric subspace.
inline NewTypeReport new_type_state(std::span<const BipartiteState> inputs, const ToleranceConfig& cfg = {}) {
  if (inputs.empty()) throw PreconditionError("new_type_state: empty input list");
  std::vector<TypeFlags> flags;
  bool ppt_fails = false, spc_fails = false, rinv_fails = false;
  for (std::size_t i = 0; i < inputs.size(); ++i) {
    const auto& g = inputs[i];
    const std::string who = "new_type_state: input " + std::to_string(i);
    if (g.k() != g.m()) throw PreconditionError(who + " is not square");
    if (g.k() <= 2) throw PreconditionError(who + " has k <= 2");
    TypeFlags f = classify(g, cfg);
    if (f.no_condition()) throw PreconditionError(who + " satisfies none of the three conditions");
    if (*f.antisym_supported) throw PreconditionError(who + " is supported on the antisymmetric subspace");
    ppt_fails |= !f.ppt;
    spc_fails |= !*f.spc;
    rinv_fails |= !*f.r_invariant;
    flags.push_back(f);
  }
  BipartiteState s = shuffle(inputs, cfg);
  TypeFlags sf = classify(s, cfg);
  const bool none = sf.no_condition();
  return {std::move(s), sf, std::move(flags), ppt_fails && spc_fails && rinv_fails, none};
}

}  // namespace crstates
