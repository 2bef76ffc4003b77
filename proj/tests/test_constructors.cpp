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

namespace {

/// Sector eigenvalues of a·Id + b·F + c·uu* read off the oracle spectrum:
/// the distinct values it contains, with tolerance.
bool has_eigenvalue(const std::vector<double>& ev, double x) {
  for (double v : ev)
    if (std::abs(v - x) < 1e-9) return true;
  return false;
}

}  // namespace

TEST_CASE("classify anchored cases", "[constructors]") {
  const TypeFlags uu = classify(maxent(3));
  CHECK(uu.psd);
  CHECK_FALSE(uu.ppt);
  CHECK_FALSE(*uu.r_invariant);
  CHECK(uu.rank == 1);

  const BipartiteState w1 = werner(3, 1, -1, 1);
  const TypeFlags f1 = classify(w1);
  CHECK(f1.psd);
  CHECK_FALSE(f1.ppt);
  CHECK_FALSE(*f1.spc);
  CHECK(*f1.r_invariant);
  CHECK_FALSE(*f1.antisym_supported);
  CHECK(f1.rank == 4);
  {
    const auto ev = oracle::hermitian_eigenvalues(w1.matrix());
    CHECK((has_eigenvalue(ev, 2) && has_eigenvalue(ev, 0) && has_eigenvalue(ev, 3)));
    const auto pt = oracle::hermitian_eigenvalues(partial_transpose(w1));
    CHECK((has_eigenvalue(pt, 0) && has_eigenvalue(pt, 2) && has_eigenvalue(pt, -1)));
    CHECK(pt.front() == Catch::Approx(-1.0));
  }

  const BipartiteState w2 = werner(3, 1, 0, -1.0 / 3);
  const TypeFlags f2 = classify(w2);
  CHECK(f2.psd);
  CHECK(f2.rank == 8);
  CHECK(f2.ppt);
  CHECK_FALSE(*f2.spc);
  CHECK_FALSE(*f2.r_invariant);
  {
    const auto pt = oracle::hermitian_eigenvalues(partial_transpose(w2));
    CHECK(pt.front() == Catch::Approx(2.0 / 3));
    CHECK(pt.back() == Catch::Approx(4.0 / 3));
    const ComplexMatrix spc = realignment(partial_transpose(w2), 3, 3);
    CHECK(oracle::min_eigenvalue(spc) == Catch::Approx(-1.0 / 3));
  }
}

TEST_CASE("classify leaves square-only flags empty on rectangular states", "[constructors]") {
  const TypeFlags f = classify(random_state(2, 3, 6, 1));
  CHECK(f.psd);
  CHECK_FALSE(f.spc.has_value());
  CHECK_FALSE(f.r_invariant.has_value());
  CHECK_FALSE(f.antisym_supported.has_value());
}

TEST_CASE("werner family", "[constructors]") {
  for (Index k = 2; k <= 4; ++k) {
    const BipartiteState s = werner(k, 1, 1, 1);
    CHECK(max_abs(partial_transpose(s) - s.matrix()) < 1e-14);
    CHECK(max_abs(realignment(s) - s.matrix()) < 1e-14);
  }
  const TypeFlags f = classify(werner(3, 1, -0.9, 1));
  CHECK(f.psd);
  CHECK_FALSE(f.ppt);
  CHECK(*f.r_invariant);

  try {
    werner(3, 1, 2, 0);
    FAIL("expected DomainError");
  } catch (const DomainError& e) {
    CHECK(std::string(e.what()).find("antisymmetric=-1") != std::string::npos);
  }
}

TEST_CASE("realignment swaps the Id and uu* coefficients", "[constructors][property]") {
  for (double a : {0.5, 1.0, 2.0})
    for (double b : {-0.4, 0.0, 0.3})
      for (double c : {0.2, 0.6}) {
        const BipartiteState s = werner(3, a, b, c);
        const ComplexMatrix swapped = c * ComplexMatrix::Identity(9, 9) + b * flip_operator(3) + a * max_ent_projector(3);
        CHECK(max_abs(realignment(s) - swapped) < 1e-15);
      }
}

TEST_CASE("classify on werner matches closed-form sector predicates", "[constructors][property]") {
  const std::vector<double> grid{-1.3, -0.7, -0.2, 0.4, 0.9, 1.0, 1.6};
  int checked = 0;
  for (Index k : {2, 3, 4})
    for (double a : {0.5, 1.0, 1.5})
      for (double b : grid)
        for (double c : grid) {
          const double kk = static_cast<double>(k);
          const bool psd = a - b >= 0 && a + b >= 0 && a + b + kk * c >= 0;
          const bool ppt = a - c >= 0 && a + c >= 0 && a + c + kk * b >= 0;
          if (!psd) {
            CHECK_THROWS_AS(werner(k, a, b, c), DomainError);
            const ComplexMatrix m = a * ComplexMatrix::Identity(k * k, k * k) + b * flip_operator(k) +
                                    c * max_ent_projector(k);
            CHECK(oracle::min_eigenvalue(m) < 0);
            continue;
          }
          const TypeFlags f = classify(werner(k, a, b, c));
          CHECK(f.psd);
          CHECK(f.ppt == ppt);
          CHECK(f.ppt == (oracle::min_eigenvalue(partial_transpose(werner(k, a, b, c))) >= -1e-9));
          CHECK(*f.r_invariant == (a == c));
          ++checked;
        }
  CHECK(checked > 50);
}

TEST_CASE("at k = 2 realignment-invariant werner states are PPT", "[constructors][property]") {
  for (double a = 0.05; a <= 3.0; a += 0.05)
    for (double b = -3.0; b <= 3.0; b += 0.05) {
      const bool psd = a - b >= 0 && a + b >= 0 && a + b + 2 * a >= 0;
      if (!psd) continue;
      CHECK(classify(werner(2, a, b, a)).ppt);
    }
}

TEST_CASE("power, root and support", "[constructors]") {
  const BipartiteState p = support_state(random_state(2, 2, 2, 1));
  for (int n : {1, 2, 5}) CHECK(max_abs(power(p, n).matrix() - p.matrix()) < 1e-12);

  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const BipartiteState g = random_state(3, 2, 1 + static_cast<Index>(seed % 6), seed);
    CHECK(max_abs(root(power(g, 2), 2).matrix() - g.matrix()) < 1e-9);
    const ComplexMatrix proj = support_projection(g.matrix()).matrix();
    for (const auto& h : {power(g, 3), root(g, 3), support_state(g)}) {
      CHECK(max_abs(support_projection(h.matrix()).matrix() - proj) <= 1e-9);
    }
  }
  CHECK_THROWS_AS(power(p, 0), ParameterError);
  CHECK_THROWS_AS(root(p, 0), ParameterError);
}

TEST_CASE("power, root and support keep complete reducibility", "[constructors][property]") {
  const std::vector<BipartiteState> witnesses{diag_pair(2), diag_pair(3), werner(3, 1, -1, 1),
                                              random_state(2, 2, 3, 5)};
  for (const auto& g : witnesses) {
    REQUIRE(is_completely_reducible(g) == Verdict::CompletelyReducible);
    CHECK(is_completely_reducible(power(g, 2)) == Verdict::CompletelyReducible);
    CHECK(is_completely_reducible(root(g, 2)) == Verdict::CompletelyReducible);
    CHECK(is_completely_reducible(support_state(g)) == Verdict::CompletelyReducible);
  }
}

TEST_CASE("counterexample state", "[constructors]") {
  const Counterexample ce = counterexample_delta(2, 0.1);
  const TypeFlags f = classify(ce.state);
  CHECK(f.psd);
  CHECK_FALSE(f.ppt);
  CHECK(oracle::min_eigenvalue(partial_transpose(ce.state)) < -0.5);
  CHECK(ce.g_min_singular == Catch::Approx(1.0));
  CHECK(decompose(ce.state).verdict == Verdict::NotCompletelyReducible);
  // same image as the diagonal pair it perturbs
  CHECK(max_abs(support_projection(ce.state.matrix()).matrix() -
                support_projection(diag_pair(2).matrix()).matrix()) < 1e-12);
  CHECK_THROWS_AS(counterexample_delta(2, 0.0), ParameterError);
}

TEST_CASE("new-type shuffle", "[constructors]") {
  const std::vector<BipartiteState> inputs{werner(3, 1, 0, -1.0 / 3), werner(3, 1, -1, 1)};
  const NewTypeReport r = new_type_state(inputs);
  CHECK(r.state.dim() == 81);
  CHECK(r.flags.psd);
  CHECK_FALSE(r.flags.ppt);
  CHECK_FALSE(*r.flags.spc);
  CHECK_FALSE(*r.flags.r_invariant);
  CHECK(r.flags.rank < 81);
  CHECK(r.flags.rank == 32);
  CHECK(r.each_condition_violated);
  CHECK(r.satisfies_none);
  CHECK(oracle::min_eigenvalue(partial_transpose(r.state)) < -1e-3);
  for (const auto& g : inputs) CHECK(is_completely_reducible(g) == Verdict::CompletelyReducible);
}

TEST_CASE("new-type shuffle of PPT inputs is reported as PPT", "[constructors]") {
  const std::vector<BipartiteState> inputs{werner(3, 1, 0, -1.0 / 3), werner(3, 1, 0.2, -0.1)};
  const NewTypeReport r = new_type_state(inputs);
  CHECK(r.flags.ppt);
  CHECK_FALSE(r.each_condition_violated);
  CHECK_FALSE(r.satisfies_none);
}

TEST_CASE("new-type shuffle preconditions", "[constructors]") {
  const BipartiteState antisym = werner(3, 1, -1, 0);
  CHECK(*classify(antisym).antisym_supported);
  const std::vector<BipartiteState> bad{werner(3, 1, -1, 1), antisym};
  CHECK_THROWS_AS(new_type_state(bad), PreconditionError);
  const std::vector<BipartiteState> small{werner(2, 1, 0, 0.1)};
  CHECK_THROWS_AS(new_type_state(small), PreconditionError);
  CHECK_THROWS_AS(new_type_state(std::span<const BipartiteState>()), PreconditionError);
  const std::vector<BipartiteState> none{maxent(3)};
  CHECK_THROWS_AS(new_type_state(none), PreconditionError);
}

TEST_CASE("shuffle preserves PPT and realignment invariance", "[constructors][property]") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const std::vector<BipartiteState> ppt{random_ppt_2x2(seed), random_ppt_2x2(seed + 1000)};
    CHECK(classify(shuffle(std::span<const BipartiteState>(ppt))).ppt);

    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unif(-0.9, 0.9);
    const double a1 = 1.0, b1 = unif(rng), a2 = 1.0, b2 = unif(rng);
    const std::vector<BipartiteState> rinv{werner(3, a1, b1, a1), werner(2, a2, b2, a2)};
    CHECK(*classify(shuffle(std::span<const BipartiteState>(rinv))).r_invariant);
  }
}
