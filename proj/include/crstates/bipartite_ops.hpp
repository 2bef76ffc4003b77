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

#include <iostream>
#include <span>
#include <vector>

#include "crstates/linalg.hpp"
#include "crstates/state.hpp"

namespace crstates {

// ---------------------------------------------------------------------------
// Index permutations on a (k, m) split.

/// Out((i,p),(j,q)) = In((i,q),(j,p)).
inline ComplexMatrix partial_transpose(const ComplexMatrix& in, Index k, Index m) {
  require_square(in, "partial_transpose");
  if (in.rows() != k * m) throw DimensionError("partial_transpose: matrix is not km x km");
  ComplexMatrix out(in.rows(), in.cols());
  for (Index i = 0; i < k; ++i) {
    for (Index j = 0; j < k; ++j) {
      out.block(i * m, j * m, m, m) = in.block(i * m, j * m, m, m).transpose();
    }
  }
  return out;
}

inline BipartiteMatrix partial_transpose(const BipartiteMatrix& in) {
  return {in.sites(), partial_transpose(in.matrix(), in.k(), in.m())};
}

inline ComplexMatrix partial_transpose(const BipartiteState& state) {
  return partial_transpose(state.matrix(), state.k(), state.m());
}

/// Out((i,p),(j,q)) = In((i,j),(p,q)); only for k = m.
inline ComplexMatrix realignment(const ComplexMatrix& in, Index k, Index m) {
  require_square(in, "realignment");
  if (k != m) {
    throw UnsupportedShapeError("realignment: requires a square split, got k=" +
                                std::to_string(k) + " m=" + std::to_string(m));
  }
  if (in.rows() != k * m) throw DimensionError("realignment: matrix is not k^2 x k^2");
  ComplexMatrix out(in.rows(), in.cols());
  for (Index i = 0; i < k; ++i) {
    for (Index p = 0; p < k; ++p) {
      for (Index j = 0; j < k; ++j) {
        for (Index q = 0; q < k; ++q) {
          out(i * k + p, j * k + q) = in(i * k + j, p * k + q);
        }
      }
    }
  }
  return out;
}

inline BipartiteMatrix realignment(const BipartiteMatrix& in) {
  return {in.sites(), realignment(in.matrix(), in.k(), in.m())};
}

inline ComplexMatrix realignment(const BipartiteState& state) {
  return realignment(state.matrix(), state.k(), state.m());
}

/// F = Σ_{p,q} e_p e_qᵗ ⊗ e_q e_pᵗ.
inline ComplexMatrix flip_operator(Index k) {
  if (k < 1) throw ParameterError("flip_operator: k must be >= 1");
  ComplexMatrix f = ComplexMatrix::Zero(k * k, k * k);
  for (Index p = 0; p < k; ++p) {
    for (Index q = 0; q < k; ++q) f(p * k + q, q * k + p) = 1.0;
  }
  return f;
}

/// u_k = Σ_i e_i ⊗ e_i (not normalized).
inline ComplexVector max_ent_vector(Index k) {
  if (k < 1) throw ParameterError("max_ent_vector: k must be >= 1");
  ComplexVector u = ComplexVector::Zero(k * k);
  for (Index i = 0; i < k; ++i) u(i * k + i) = 1.0;
  return u;
}

/// u_k u_k*.
inline ComplexMatrix max_ent_projector(Index k) {
  const ComplexVector u = max_ent_vector(k);
  return u * u.adjoint();
}

// ---------------------------------------------------------------------------
// Partial trace over one factor of a multipartite matrix.

inline BipartiteMatrix partial_trace(const BipartiteMatrix& in, std::size_t site_index) {
  const auto& sites = in.sites();
  if (site_index >= sites.site_count()) {
    throw ParameterError("partial_trace: site index " + std::to_string(site_index) +
                         " out of range (" + std::to_string(sites.site_count()) + " sites)");
  }
  const auto& dims = sites.dims();
  const Index traced = dims[site_index];
  Index inner = 1;
  for (std::size_t u = site_index + 1; u < dims.size(); ++u) inner *= dims[u];
  const Index outer = in.dim() / (traced * inner);
  const Index out_dim = outer * inner;

  ComplexMatrix out = ComplexMatrix::Zero(out_dim, out_dim);
  const ComplexMatrix& m = in.matrix();
  for (Index ro = 0; ro < outer; ++ro) {
    for (Index co = 0; co < outer; ++co) {
      for (Index x = 0; x < traced; ++x) {
        out.block(ro * inner, co * inner, inner, inner) +=
            m.block((ro * traced + x) * inner, (co * traced + x) * inner, inner, inner);
      }
    }
  }

  std::vector<Index> new_dims;
  for (std::size_t u = 0; u < dims.size(); ++u) {
    if (u != site_index) new_dims.push_back(dims[u]);
  }
  const std::size_t new_split = site_index < sites.split() ? sites.split() - 1 : sites.split();
  return {SitesDescriptor(std::move(new_dims), new_split), std::move(out)};
}

inline BipartiteState partial_trace(const BipartiteState& in, std::size_t site_index,
                                    const ToleranceConfig& cfg = {}) {
  return BipartiteState(partial_trace(in.as_matrix(), site_index), cfg);
}

// ---------------------------------------------------------------------------
// Shuffle: γ_1 ⊗ … ⊗ γ_s with factors regrouped as (left parties, right parties).

namespace detail {

struct ShuffleLayout {
  SitesDescriptor sites;            // result factor structure
  std::vector<Index> factor_dims;   // k_t·m_t per input
  std::vector<Index> to_tensor;     // result index -> index in γ_1 ⊗ … ⊗ γ_s
};

inline ShuffleLayout shuffle_layout(const std::vector<SitesDescriptor>& inputs) {
  if (inputs.empty()) throw ParameterError("shuffle: empty input list");

  struct Mode {
    Index dim;
    Index tensor_stride;
  };
  // Modes in tensor order: L_1, R_1, L_2, R_2, ...
  std::vector<std::vector<Index>> left(inputs.size()), right(inputs.size());
  std::vector<Index> tensor_dims;
  for (std::size_t t = 0; t < inputs.size(); ++t) {
    const auto& d = inputs[t].dims();
    for (std::size_t u = 0; u < d.size(); ++u) {
      (u < inputs[t].split() ? left[t] : right[t]).push_back(static_cast<Index>(tensor_dims.size()));
      tensor_dims.push_back(d[u]);
    }
  }
  std::vector<Index> stride(tensor_dims.size(), 1);
  for (Index u = static_cast<Index>(tensor_dims.size()) - 2; u >= 0; --u) {
    stride[u] = stride[u + 1] * tensor_dims[u + 1];
  }

  std::vector<Mode> out_modes;
  std::vector<Index> out_dims;
  for (const auto& group : {&left, &right}) {
    for (const auto& modes : *group) {
      for (Index mode : modes) {
        out_modes.push_back({tensor_dims[mode], stride[mode]});
        out_dims.push_back(tensor_dims[mode]);
      }
    }
  }
  std::size_t split = 0;
  for (const auto& modes : left) split += modes.size();

  Index total = 1;
  for (Index d : out_dims) total *= d;
  std::vector<Index> to_tensor(static_cast<std::size_t>(total));
  for (Index r = 0; r < total; ++r) {
    Index rem = r;
    Index t_index = 0;
    for (Index u = static_cast<Index>(out_modes.size()) - 1; u >= 0; --u) {
      const Index digit = rem % out_modes[u].dim;
      rem /= out_modes[u].dim;
      t_index += digit * out_modes[u].tensor_stride;
    }
    to_tensor[static_cast<std::size_t>(r)] = t_index;
  }

  std::vector<Index> factor_dims;
  for (const auto& s : inputs) factor_dims.push_back(s.total_dim());
  return {SitesDescriptor(std::move(out_dims), split), std::move(factor_dims), std::move(to_tensor)};
}

}  // namespace detail

inline BipartiteMatrix shuffle(std::span<const BipartiteMatrix> factors) {
  std::vector<SitesDescriptor> sites;
  for (const auto& f : factors) sites.push_back(f.sites());
  const auto layout = detail::shuffle_layout(sites);

  ComplexMatrix tensor = factors[0].matrix();
  for (std::size_t t = 1; t < factors.size(); ++t) tensor = kron(tensor, factors[t].matrix());

  const Index n = tensor.rows();
  ComplexMatrix out(n, n);
  for (Index c = 0; c < n; ++c) {
    const Index tc = layout.to_tensor[static_cast<std::size_t>(c)];
    for (Index r = 0; r < n; ++r) out(r, c) = tensor(layout.to_tensor[static_cast<std::size_t>(r)], tc);
  }
  return {layout.sites, std::move(out)};
}

inline BipartiteState shuffle(std::span<const BipartiteState> states, const ToleranceConfig& cfg = {}) {
  std::vector<BipartiteMatrix> mats;
  for (const auto& s : states) mats.push_back(s.as_matrix());
  return BipartiteState(shuffle(std::span<const BipartiteMatrix>(mats)), cfg);
}

/// Applies S(M_1, …, M_s) to vectors without forming the full matrix.
class ShuffledProduct {
 public:
  explicit ShuffledProduct(std::vector<BipartiteMatrix> factors) : factors_(std::move(factors)) {
    std::vector<SitesDescriptor> sites;
    for (const auto& f : factors_) sites.push_back(f.sites());
    layout_ = detail::shuffle_layout(sites);
  }

  const SitesDescriptor& sites() const { return layout_.sites; }
  Index dim() const { return static_cast<Index>(layout_.to_tensor.size()); }

  ComplexVector apply(const ComplexVector& x) const {
    if (x.size() != dim()) throw DimensionError("ShuffledProduct: vector length mismatch");
    ComplexVector tensor(dim());
    for (Index r = 0; r < dim(); ++r) tensor(layout_.to_tensor[static_cast<std::size_t>(r)]) = x(r);

    Index outer = 1;
    Index inner = dim();
    ComplexVector fiber;
    for (std::size_t t = 0; t < factors_.size(); ++t) {
      const Index n = layout_.factor_dims[t];
      inner /= n;
      const ComplexMatrix& m = factors_[t].matrix();
      fiber.resize(n);
      for (Index o = 0; o < outer; ++o) {
        for (Index in = 0; in < inner; ++in) {
          const Index base = o * n * inner + in;
          for (Index a = 0; a < n; ++a) fiber(a) = tensor(base + a * inner);
          const ComplexVector y = m * fiber;
          for (Index a = 0; a < n; ++a) tensor(base + a * inner) = y(a);
        }
      }
      outer *= n;
    }

    ComplexVector out(dim());
    for (Index r = 0; r < dim(); ++r) out(r) = tensor(layout_.to_tensor[static_cast<std::size_t>(r)]);
    return out;
  }

  /// x* S x, real part.
  double quadratic_form(const ComplexVector& x) const { return x.dot(apply(x)).real(); }

  /// (A*⊗Aᵗ) S (A⊗Ā), Hermitized, for A of shape K×c where S acts on C^K ⊗ C^K.
  ComplexMatrix compress(const ComplexMatrix& a) const {
    if (sites().left_dim() != sites().right_dim() || a.rows() != sites().left_dim()) {
      throw DimensionError("ShuffledProduct::compress: A must have K rows on a (K, K) split");
    }
    const Index c = a.cols();
    std::vector<ComplexVector> probes;
    for (Index al = 0; al < c; ++al) {
      for (Index be = 0; be < c; ++be) {
        probes.push_back(kron(ComplexVector(a.col(al)), ComplexVector(a.col(be).conjugate())));
      }
    }
    ComplexMatrix out(c * c, c * c);
    for (std::size_t col = 0; col < probes.size(); ++col) {
      const ComplexVector image = apply(probes[col]);
      for (std::size_t row = 0; row < probes.size(); ++row) {
        out(static_cast<Index>(row), static_cast<Index>(col)) = probes[row].dot(image);
      }
    }
    return hermitize(out);
  }

 private:
  std::vector<BipartiteMatrix> factors_;
  detail::ShuffleLayout layout_;
};

// ---------------------------------------------------------------------------
// Compression to a 2-qubit-sized block: (A*⊗Aᵗ) Σ (A⊗Ā).

inline BipartiteMatrix compress(const BipartiteMatrix& sigma, const ComplexMatrix& a) {
  if (sigma.k() != sigma.m()) throw DimensionError("compress: Σ must be on a (K, K) split");
  if (a.rows() != sigma.k() || a.cols() != 2) {
    throw DimensionError("compress: A must be " + std::to_string(sigma.k()) + "x2");
  }
  Eigen::FullPivLU<ComplexMatrix> lu(a);
  if (lu.rank() < 2) std::clog << "warning: compress: A does not have full column rank\n";
  const ComplexMatrix right = kron(a, ComplexMatrix(a.conjugate()));
  const ComplexMatrix left = right.adjoint();
  return {2, 2, hermitize(left * sigma.matrix() * right)};
}

inline BipartiteState compress(const BipartiteState& sigma, const ComplexMatrix& a,
                               const ToleranceConfig& cfg = {}) {
  return BipartiteState(compress(sigma.as_matrix(), a), cfg);
}

}  // namespace crstates
