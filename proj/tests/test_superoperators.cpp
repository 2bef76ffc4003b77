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

#include "catch_amalgamated.hpp"
#include "helpers.hpp"

using namespace crstates;
using namespace testing_support;

TEST_CASE("Hermitian basis is orthonormal with the documented ordering", "[superoperators]") {
  for (Index k = 1; k <= 4; ++k) {
    const HermitianBasis basis(k);
    for (Index a = 0; a < basis.size(); ++a) {
      const ComplexMatrix ea = basis.element(a);
      CHECK(max_abs(ea - ea.adjoint()) == 0.0);
      for (Index b = 0; b < basis.size(); ++b) {
        const Complex ip = (ea * basis.element(b)).trace();
        CHECK(std::abs(ip - Complex(a == b ? 1.0 : 0.0)) < 1e-14);
      }
    }
    CHECK(max_abs(basis.element(0) - ComplexMatrix::Identity(k, k) / std::sqrt(double(k))) < 1e-15);
  }
  const HermitianBasis b3(3);
  // (E_01 + E_10)/√2 then the antisymmetric partner of the same pair at offset 3.
  CHECK(std::abs(b3.element(1)(0, 1) - Complex(std::sqrt(0.5))) < 1e-15);
  CHECK(std::abs(b3.element(4)(0, 1) - Complex(0, -std::sqrt(0.5))) < 1e-15);
  CHECK(std::abs(b3.element(8)(2, 2) + 2.0 / std::sqrt(6.0)) < 1e-15);
}

TEST_CASE("basis coordinates round-trip", "[superoperators]") {
  std::mt19937_64 rng(1);
  const HermitianBasis basis(4);
  const ComplexMatrix h = random_hermitian(4, rng);
  CHECK(max_abs(basis.from_coords(basis.coords(h)) - h) < 1e-14);
  const ComplexMatrix x = gaussian_matrix(4, 4, rng);
  CHECK(max_abs(basis.from_coords(basis.complex_coords(x)) - x) < 1e-14);
}

TEST_CASE("G and F on the maximally entangled state are transposes", "[superoperators]") {
  std::mt19937_64 rng(2);
  const BipartiteState uu = maxent(3);
  const ComplexMatrix x = gaussian_matrix(3, 3, rng);
  CHECK(max_abs(g_apply(uu, x) - x.transpose()) < 1e-15);
  CHECK(max_abs(f_apply(uu, x) - x.transpose()) < 1e-15);
}

TEST_CASE("G and F on product states", "[superoperators]") {
  std::mt19937_64 rng(3);
  const ComplexMatrix a = random_state(1, 3, 2, 1).matrix(), b = random_state(1, 2, 2, 2).matrix();
  const BipartiteState ab(3, 2, oracle::kron(a, b));
  const ComplexMatrix x = gaussian_matrix(3, 3, rng), y = gaussian_matrix(2, 2, rng);
  CHECK(max_abs(g_apply(ab, x) - (a * x).trace() * b) < 1e-14);
  CHECK(max_abs(f_apply(ab, y) - (b * y).trace() * a) < 1e-14);
  CHECK_THROWS_AS(g_apply(ab, y), DimensionError);
  CHECK_THROWS_AS(f_apply(ab, x), DimensionError);
}

TEST_CASE("G on pure states is a congruence", "[superoperators]") {
  std::mt19937_64 rng(4);
  const Index k = 3, m = 2;
  const ComplexMatrix r = gaussian_matrix(k, m, rng);
  const ComplexMatrix lift = oracle::kron(r, ComplexMatrix::Identity(m, m));
  const ComplexVector u = max_ent_vector(m);
  const BipartiteState g(k, m, lift * u * u.adjoint() * lift.adjoint());
  const ComplexMatrix x = gaussian_matrix(k, k, rng);
  CHECK(max_abs(g_apply(g, x.transpose()) - r.transpose() * x * r.conjugate()) < 1e-12);

  const SuperOperator t = fg_superop(g);
  const ComplexMatrix rr = r * r.adjoint();
  const ComplexMatrix h = random_hermitian(k, rng);
  CHECK(max_abs(t.apply(h) - rr * h * rr) < 1e-11);
}

TEST_CASE("G and F agree with literal contractions", "[superoperators]") {
  std::mt19937_64 rng(5);
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const Index k = 2 + static_cast<Index>(seed % 3), m = 2 + static_cast<Index>(seed % 2);
    const BipartiteState g = random_state(k, m, 3, seed);
    const ComplexMatrix x = gaussian_matrix(k, k, rng), y = gaussian_matrix(m, m, rng);
    CHECK(max_abs(g_apply(g, x) - oracle::g_map(g.matrix(), k, m, x)) < 1e-13);
    CHECK(max_abs(f_apply(g, y) - oracle::f_map(g.matrix(), k, m, y)) < 1e-13);
  }
}

TEST_CASE("trace pairing tr(γ(X⊗Y*)) = tr(G(X)Y*) = tr(X F(Y)*)", "[superoperators][property]") {
  std::mt19937_64 rng(6);
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const BipartiteState g = random_state(3, 2, 4, seed);
    const ComplexMatrix x = random_hermitian(3, rng), y = random_hermitian(2, rng);
    const Complex lhs = (g.matrix() * oracle::kron(x, y.adjoint())).trace();
    const Complex mid = (g_apply(g, x) * y.adjoint()).trace();
    const Complex rhs = (x * f_apply(g, y).adjoint()).trace();
    const double scale = g.matrix().norm() * x.norm() * y.norm();
    CHECK(std::abs(lhs - mid) <= 1e-10 * scale);
    CHECK(std::abs(mid - rhs) <= 1e-10 * scale);
  }
}

TEST_CASE("verify_adjoint", "[superoperators]") {
  const auto uu = verify_adjoint(maxent(3), 10, 1);
  CHECK(uu.max_deviation <= 1e-14 * uu.scale);
  const auto prod = verify_adjoint(pure_product(ComplexVector::Ones(2), ComplexVector::Ones(3)), 10, 2);
  CHECK(prod.max_deviation <= 1e-14 * prod.scale);
  const auto rnd = verify_adjoint(random_state(4, 3, 5, 3), 100, 3);
  CHECK(rnd.max_deviation <= 1e-10 * rnd.scale);
}

TEST_CASE("fg_superop anchored cases", "[superoperators]") {
  const SuperOperator id = fg_superop(maxent(3));
  CHECK((id.rep - RealMatrix::Identity(9, 9)).cwiseAbs().maxCoeff() < 1e-14);

  ComplexVector e1 = ComplexVector::Zero(3);
  e1(0) = 1;
  const BipartiteState g = pure_product(e1, e1);
  const SuperOperator t = fg_superop(g);
  std::mt19937_64 rng(7);
  const ComplexMatrix x = random_hermitian(3, rng);
  ComplexMatrix expected = ComplexMatrix::Zero(3, 3);
  expected(0, 0) = x(0, 0);
  CHECK(max_abs(t.apply(x) - expected) < 1e-14);
  // one-dimensional image: a single nonzero eigenvalue
  const auto spectrum = symmetric_eigen(t.rep);
  CHECK(spectrum.values(8) == Catch::Approx(1.0));
  CHECK(std::abs(spectrum.values(7)) < 1e-14);
}

TEST_CASE("fg_superop is symmetric PSD with squared singular values of G", "[superoperators][property]") {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const BipartiteState g = random_state(3, 2, 1 + static_cast<Index>(seed % 6), seed);
    const SuperOperator t = fg_superop(g);
    CHECK((t.rep - t.rep.transpose()).norm() <= 1e-10 * t.rep.norm());
    const auto spectrum = symmetric_eigen(t.rep);
    CHECK(spectrum.values.minCoeff() >= -1e-12 * spectrum.values.maxCoeff());
    Eigen::JacobiSVD<RealMatrix> svd(g_superop(g).rep);
    RealVector sq = svd.singularValues().cwiseAbs2();
    std::vector<double> a(sq.data(), sq.data() + sq.size());
    std::vector<double> b(spectrum.values.data(), spectrum.values.data() + spectrum.values.size());
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    // T acts on 9 dims, G has 4 singular values; T's extra eigenvalues are zero
    for (std::size_t i = 0; i < b.size(); ++i) {
      const double want = i + a.size() >= b.size() ? a[i + a.size() - b.size()] : 0.0;
      CHECK(std::abs(b[i] - want) <= 1e-12 * b.back());
    }
  }
}

TEST_CASE("Choi matrices", "[superoperators]") {
  CHECK(max_abs(choi(identity_map(3)) - max_ent_projector(3)) < 1e-15);
  const ComplexMatrix ct = choi(transpose_map(3));
  CHECK(max_abs(ct - flip_operator(3)) < 1e-15);
  CHECK_FALSE(is_psd(ct));
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    CHECK(is_psd(choi(fg_superop(random_state(3, 3, 2, seed)))));
  }
}

TEST_CASE("T of a shuffle is the tensor product of factor maps", "[superoperators][property]") {
  const BipartiteState g1 = random_state(2, 2, 3, 1), g2 = random_state(2, 2, 2, 2);
  const std::vector<BipartiteState> states{g1, g2};
  const BipartiteState s = shuffle(std::span<const BipartiteState>(states));
  const BipartiteState s_flat(4, 4, s.matrix());
  const SuperOperator ts = fg_superop(s_flat), t1 = fg_superop(g1), t2 = fg_superop(g2);
  std::mt19937_64 rng(8);
  for (int t = 0; t < 5; ++t) {
    const ComplexMatrix x1 = random_hermitian(2, rng), x2 = random_hermitian(2, rng);
    const ComplexMatrix lhs = ts.apply(oracle::kron(x1, x2));
    const ComplexMatrix rhs = oracle::kron(t1.apply(x1), t2.apply(x2));
    CHECK(max_abs(lhs - rhs) < 1e-13);
  }
}
