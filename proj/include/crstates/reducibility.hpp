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

#include <algorithm>
#include <deque>
#include <limits>
#include <optional>
#include <vector>

#include "crstates/hermitian_basis.hpp"
#include "crstates/superoperator.hpp"

namespace crstates {

enum class Verdict { CompletelyReducible, NotCompletelyReducible, Inconclusive };

inline const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::CompletelyReducible: return "CompletelyReducible";
    case Verdict::NotCompletelyReducible: return "NotCompletelyReducible";
    case Verdict::Inconclusive: return "Inconclusive";
  }
  return "?";
}

/// The two sides of the pair criterion for (W, V).
///   (a) tr(γ(W⊗V⊥)) = tr(γ(W⊥⊗V)) = 0
///   (b) γ = (W⊗V)γ(W⊗V) + (W⊥⊗V⊥)γ(W⊥⊗V⊥)
struct PairCertificate {
  bool holds_a = false;
  bool holds_b = false;
  double trace_w_vperp = 0.0;
  double trace_wperp_v = 0.0;
  double defect_b = 0.0;
};

inline PairCertificate certify_pair(const BipartiteState& gamma, const Projection& w,
                                    const Projection& v, const ToleranceConfig& cfg = {}) {
  if (w.dim() != gamma.k() || v.dim() != gamma.m()) {
    throw DimensionError("certify_pair: projection dimensions do not match the state");
  }
  const ComplexMatrix& g = gamma.matrix();
  const ComplexMatrix wp = ComplexMatrix::Identity(w.dim(), w.dim()) - w.matrix();
  const ComplexMatrix vp = ComplexMatrix::Identity(v.dim(), v.dim()) - v.matrix();

  PairCertificate c;
  c.trace_w_vperp = (g * kron(w.matrix(), vp)).trace().real();
  c.trace_wperp_v = (g * kron(wp, v.matrix())).trace().real();
  const double tr = g.trace().real();
  c.holds_a = std::abs(c.trace_w_vperp) <= cfg.tol_zero * tr &&
              std::abs(c.trace_wperp_v) <= cfg.tol_zero * tr;

  const ComplexMatrix a = kron(w.matrix(), v.matrix());
  const ComplexMatrix b = kron(wp, vp);
  c.defect_b = (g - a * g * a - b * g * b).norm();
  c.holds_b = c.defect_b <= cfg.tol_zero * g.norm();
  return c;
}

/// V = support of G_γ(W).
inline Projection invariant_partner(const BipartiteState& gamma, const Projection& w,
                                    const ToleranceConfig& cfg = {}) {
  if (w.dim() != gamma.k()) throw DimensionError("invariant_partner: W has the wrong dimension");
  return support_projection(hermitize(g_apply(gamma, w.matrix())), cfg);
}

struct ReducibilityBlock {
  Projection w;
  Projection v;
  double spectral_radius;
};

struct Witness {
  Projection w;
  Projection v;
  PairCertificate check;
};

struct ReducibilityCertificate {
  Verdict verdict = Verdict::Inconclusive;
  std::vector<ReducibilityBlock> blocks;
  double residual_norm = 0.0;
  double map_norm = 0.0;  // spectral norm of T
  std::optional<Witness> witness;
  double gap_report = std::numeric_limits<double>::infinity();
  ToleranceConfig tolerances;
};

/// Top of the spectrum of T restricted to P𝓜P with a PSD eigenvector.
struct PerronPair {
  ComplexMatrix rho;  // k×k, PSD, unit Frobenius norm, supported in P
  double lambda = 0.0;
  Index multiplicity = 1;
  double gap = std::numeric_limits<double>::infinity();
  bool ambiguous = false;
};

namespace detail {

/// Columns: coordinates of Q·B_a·Q* for the Hermitian basis B_a of r×r.
inline RealMatrix restricted_coords(const ComplexMatrix& q, const HermitianBasis& full) {
  const Index r = q.cols();
  const HermitianBasis small(r);
  RealMatrix c(full.size(), small.size());
  for (Index a = 0; a < small.size(); ++a) c.col(a) = full.coords(q * small.element(a) * q.adjoint());
  return c;
}

/// Coordinates of the Hermitian part of W𝓜V + V𝓜W for orthonormal bases W, V.
inline RealMatrix off_block_coords(const ComplexMatrix& w, const ComplexMatrix& v,
                                   const HermitianBasis& full) {
  const double r2 = std::sqrt(0.5);
  RealMatrix c(full.size(), 2 * w.cols() * v.cols());
  Index col = 0;
  for (Index a = 0; a < w.cols(); ++a) {
    for (Index b = 0; b < v.cols(); ++b) {
      const ComplexMatrix x = w.col(a) * v.col(b).adjoint();
      const ComplexMatrix xa = x.adjoint();
      c.col(col++) = full.coords((x + xa) * r2);
      c.col(col++) = full.coords(Complex(0, 1) * (x - xa) * r2);
    }
  }
  return c;
}

struct RestrictedSpectrum {
  SymmetricSpectrum spectrum;  // of Cᵀ·rep·C
  Index multiplicity = 1;
  double gap = std::numeric_limits<double>::infinity();
  bool ambiguous = false;
};

/// Clusters the top of an ascending spectrum by relative gap.
inline void cluster_top(RestrictedSpectrum& rs, const ToleranceConfig& cfg) {
  const RealVector& vals = rs.spectrum.values;
  const Index n = vals.size();
  const double top = vals(n - 1);
  rs.multiplicity = 1;
  for (Index i = n - 2; i >= 0; --i) {
    const double g = (top - vals(i)) / top;
    if (g <= cfg.tol_zero) {
      ++rs.multiplicity;
      continue;
    }
    rs.gap = g;
    if (g < cfg.tol_gap) rs.ambiguous = true;
    break;
  }
}

/// Hermitian r×r matrix from restricted coordinates, embedded as Q·H·Q*.
inline ComplexMatrix embed(const ComplexMatrix& q, const RealVector& coords) {
  const HermitianBasis small(q.cols());
  return q * small.from_coords(coords) * q.adjoint();
}

/// Perron data in restricted coordinates; nullopt when T vanishes on P𝓜P.
struct RestrictedPerron {
  RestrictedSpectrum rs;
  RealVector rho;          // restricted coordinates, unit norm
  RealMatrix top_vectors;  // restricted coordinates of the top eigenspace
};

inline std::optional<RestrictedPerron> restricted_perron(const RealMatrix& rep, const RealMatrix& c,
                                                         Index r, double map_norm,
                                                         const ToleranceConfig& cfg) {
  RestrictedPerron out;
  out.rs.spectrum = symmetric_eigen(RealMatrix(c.transpose() * rep * c));
  const RealVector& vals = out.rs.spectrum.values;
  const double top = vals(vals.size() - 1);
  if (!(top > cfg.tol_zero * map_norm)) return std::nullopt;
  cluster_top(out.rs, cfg);

  const Index n = vals.size();
  out.top_vectors = out.rs.spectrum.vectors.rightCols(out.rs.multiplicity);

  // The identity of the block is interior to the PSD cone; its component in
  // the top eigenspace is the limit of Tⁿ(P)/λⁿ and therefore PSD.
  RealVector id = RealVector::Zero(n);
  id(0) = std::sqrt(static_cast<double>(r));
  RealVector rho = out.top_vectors * (out.top_vectors.transpose() * id);

  const HermitianBasis small(r);
  auto psd_part = [&](const RealVector& coords) -> std::optional<RealVector> {
    const auto spectrum = hermitian_eigen(small.from_coords(coords));
    if (spectrum.min_value() < -1e-8 * std::max(spectrum.max_value(), 0.0)) return std::nullopt;
    RealVector clipped_vals = spectrum.values.cwiseMax(0.0);
    const ComplexMatrix h =
        spectrum.vectors * clipped_vals.cast<Complex>().asDiagonal() * spectrum.vectors.adjoint();
    RealVector cc = small.coords(h);
    const double nrm = cc.norm();
    if (!(nrm > 0)) return std::nullopt;
    return RealVector(cc / nrm);
  };

  auto certified = psd_part(rho);
  if (!certified) {
    // Power iteration from the block identity.
    const RealMatrix restricted = c.transpose() * rep * c;
    RealVector x = id;
    for (int it = 0; it < 500; ++it) {
      x = restricted * x;
      x /= x.norm();
    }
    certified = psd_part(x);
    if (!certified) {
      out.rs.ambiguous = true;
      certified = RealVector(id / id.norm());
    }
  }
  out.rho = *certified;
  return out;
}

inline double sort_key(const Projection& p) {
  const ComplexMatrix& m = p.matrix();
  for (Index j = 0; j < m.rows(); ++j) {
    if (m(j, j).real() > 1e-9) return static_cast<double>(j);
  }
  return static_cast<double>(m.rows());
}

}  // namespace detail

/// Spectral radius of T on P𝓜P with a PSD eigenvector; nullopt when T is
/// numerically zero there.
inline std::optional<PerronPair> perron_psd(const SuperOperator& t, const Projection& p,
                                            const ToleranceConfig& cfg = {}) {
  if (t.in_dim != t.out_dim || p.dim() != t.in_dim) {
    throw DimensionError("perron_psd: map and projection dimensions differ");
  }
  if (p.is_zero()) return std::nullopt;
  const HermitianBasis full(t.in_dim);
  const RealMatrix rep = symmetrize(t.rep);
  const double map_norm = spectral_norm(rep);
  const RealMatrix c = detail::restricted_coords(p.basis(), full);
  auto rp = detail::restricted_perron(rep, c, p.rank(), map_norm, cfg);
  if (!rp) return std::nullopt;
  PerronPair out;
  out.rho = hermitize(detail::embed(p.basis(), rp->rho));
  out.lambda = rp->rs.spectrum.values(rp->rs.spectrum.values.size() - 1);
  out.multiplicity = rp->rs.multiplicity;
  out.gap = rp->rs.gap;
  out.ambiguous = rp->rs.ambiguous;
  return out;
}

/// Decides whether F_γ∘G_γ is completely reducible.
///
/// Worklist over projections P with T(P𝓜P) ⊆ P𝓜P, starting at Id. Each P is
/// either discarded (T ≈ 0 there), emitted as an irreducible block, or split
/// along the support of a PSD top eigenvector after checking that T vanishes
/// on the off-diagonal part. A nonvanishing off-diagonal part yields a pair
/// witness. Gap decisions inside (tol_zero, tol_gap) make the verdict
/// Inconclusive.
inline ReducibilityCertificate decompose(const BipartiteState& gamma, const ToleranceConfig& cfg = {}) {
  cfg.validate();
  ReducibilityCertificate cert;
  cert.tolerances = cfg;

  const Index k = gamma.k();
  const HermitianBasis full(k);
  const RealMatrix rep = symmetrize(fg_superop(gamma).rep);
  const double map_norm = spectral_norm(rep);
  cert.map_norm = map_norm;
  const double zero_cut = cfg.tol_zero * map_norm;

  bool ambiguous = false;
  std::vector<RealMatrix> block_coords;
  std::deque<Projection> work{Projection::identity(k)};

  auto note_gap = [&](double g) { cert.gap_report = std::min(cert.gap_report, g); };

  auto finish = [&](Verdict verdict) {
    RealMatrix covered = RealMatrix::Zero(full.size(), full.size());
    for (const auto& c : block_coords) covered += c * c.transpose();
    cert.residual_norm = spectral_norm(RealMatrix(rep * (RealMatrix::Identity(full.size(), full.size()) - covered)));
    std::stable_sort(cert.blocks.begin(), cert.blocks.end(), [](const auto& a, const auto& b) {
      return detail::sort_key(a.w) < detail::sort_key(b.w);
    });
    if (verdict == Verdict::CompletelyReducible &&
        (ambiguous || cert.residual_norm > zero_cut)) {
      verdict = Verdict::Inconclusive;
    }
    cert.verdict = verdict;
    return cert;
  };

  if (!(map_norm > 0)) return finish(Verdict::CompletelyReducible);

  // Splits P into W and P−W; returns false when a witness was found.
  auto split = [&](const Projection& p, const Projection& w) -> bool {
    const Projection rest = w.complement_within(p);
    const RealMatrix off = detail::off_block_coords(w.basis(), rest.basis(), full);
    const double off_norm = spectral_norm(RealMatrix(rep * off));
    if (off_norm > zero_cut) {
      const Projection v = invariant_partner(gamma, w, cfg);
      const PairCertificate check = certify_pair(gamma, w, v, cfg);
      if (check.holds_a && !check.holds_b) {
        cert.witness = Witness{w, v, check};
        return false;
      }
      ambiguous = true;
    }
    work.push_back(w);
    work.push_back(rest);
    return true;
  };

  while (!work.empty()) {
    const Projection p = work.front();
    work.pop_front();
    if (p.is_zero()) continue;
    const Index r = p.rank();
    const RealMatrix c = detail::restricted_coords(p.basis(), full);
    auto rp = detail::restricted_perron(rep, c, r, map_norm, cfg);
    if (!rp) continue;  // T vanishes on P𝓜P: residual

    const double lambda = rp->rs.spectrum.values(rp->rs.spectrum.values.size() - 1);
    if (std::isfinite(rp->rs.gap)) note_gap(rp->rs.gap);
    if (rp->rs.ambiguous) ambiguous = true;

    const HermitianBasis small(r);
    const ComplexMatrix rho = small.from_coords(rp->rho);
    const Projection w_small = support_projection(hermitize(rho), cfg);

    if (w_small.rank() < r) {
      const Projection w = Projection::from_orthonormal_basis(p.basis() * w_small.basis());
      if (!split(p, w)) return finish(Verdict::NotCompletelyReducible);
      continue;
    }

    if (rp->rs.multiplicity == 1) {
      cert.blocks.push_back({p, invariant_partner(gamma, p, cfg), lambda});
      block_coords.push_back(c);
      continue;
    }

    // Degenerate top eigenspace with a full-support ρ: move along ρ − tσ to
    // the boundary of the PSD cone to get a top eigenvector of smaller support.
    RealVector sigma_c = RealVector::Zero(rp->rho.size());
    for (Index col = 0; col < rp->top_vectors.cols(); ++col) {
      RealVector cand = rp->top_vectors.col(col);
      cand -= rp->rho * rp->rho.dot(cand);
      if (cand.norm() > sigma_c.norm()) sigma_c = cand;
    }
    const ComplexMatrix y = hermitize(rho);
    const ComplexMatrix s = hermitize(small.from_coords(sigma_c));
    Eigen::LLT<ComplexMatrix> llt(y);
    std::optional<Projection> reduced;
    if (llt.info() == Eigen::Success && sigma_c.norm() > 0) {
      const ComplexMatrix l_inv = llt.matrixL().solve(ComplexMatrix::Identity(r, r));
      const auto mspec = hermitian_eigen(l_inv * s * l_inv.adjoint());
      double mu = mspec.max_value();
      ComplexMatrix dir = s;
      if (!(mu > 0)) {
        mu = -mspec.min_value();
        dir = -s;
      }
      if (mu > 0) {
        const ComplexMatrix boundary = hermitize(y - dir / mu);
        const auto bspec = hermitian_eigen(boundary);
        if (bspec.min_value() >= -1e-8 * bspec.max_value()) {
          RealVector vals = bspec.values.cwiseMax(0.0);
          const ComplexMatrix clipped =
              bspec.vectors * vals.cast<Complex>().asDiagonal() * bspec.vectors.adjoint();
          const Projection w2 = support_projection(hermitize(clipped), cfg);
          if (w2.rank() < r && w2.rank() > 0) reduced = w2;
        }
      }
    }
    if (!reduced) {
      ambiguous = true;
      cert.blocks.push_back({p, invariant_partner(gamma, p, cfg), lambda});
      block_coords.push_back(c);
      continue;
    }
    const Projection w = Projection::from_orthonormal_basis(p.basis() * reduced->basis());
    if (!split(p, w)) return finish(Verdict::NotCompletelyReducible);
  }

  return finish(Verdict::CompletelyReducible);
}

inline Verdict is_completely_reducible(const BipartiteState& gamma, const ToleranceConfig& cfg = {}) {
  return decompose(gamma, cfg).verdict;
}

}  // namespace crstates
