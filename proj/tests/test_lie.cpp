#include <gtest/gtest.h>

#include <random>

#include "liesublat/catalog.hpp"
#include "liesublat/lie_algebra.hpp"
#include "oracles.hpp"

using namespace liesublat;

namespace {

// Jacobi by direct triple expansion over a raw 3 x 3 x 3 table.
bool jacobi_oracle(const int c[3][3][3], unsigned p) {
  auto br = [&](const std::vector<int>& x, const std::vector<int>& y) {
    std::vector<int> out(3, 0);
    for (int a = 0; a < 3; ++a)
      for (int b = 0; b < 3; ++b)
        for (int t = 0; t < 3; ++t) out[t] = (out[t] + x[a] * y[b] * c[a][b][t]) % static_cast<int>(p);
    return out;
  };
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      for (int k = 0; k < 3; ++k) {
        std::vector<int> ei(3, 0), ej(3, 0), ek(3, 0);
        ei[i] = ej[j] = ek[k] = 1;
        const auto a = br(ei, br(ej, ek)), b = br(ej, br(ek, ei)), d = br(ek, br(ei, ej));
        for (int t = 0; t < 3; ++t) {
          if ((a[t] + b[t] + d[t]) % static_cast<int>(p) != 0) return false;
        }
      }
    }
  }
  return true;
}

FqVector random_vector(std::mt19937_64& rng, std::size_t n, unsigned p) {
  FqVector v(n, p);
  for (std::size_t i = 0; i < n; ++i) v.set(i, static_cast<long long>(rng() % p));
  return v;
}

oracle::Vec to_vec(const FqVector& v) { return v.coords(); }

}  // namespace

TEST(Lie, JacobiAgreesWithTripleExpansionOnAll512Tensors) {
  const std::pair<std::size_t, std::size_t> pairs[3] = {{0, 1}, {0, 2}, {1, 2}};
  std::uint64_t valid = 0;
  for (unsigned code = 0; code < 512; ++code) {
    int c[3][3][3] = {};
    std::vector<BracketEntry> entries;
    for (int q = 0; q < 3; ++q) {
      std::vector<long long> coeffs(3);
      for (int t = 0; t < 3; ++t) coeffs[t] = (code >> (3 * q + t)) & 1;
      const auto [i, j] = pairs[q];
      for (int t = 0; t < 3; ++t) {
        c[i][j][t] = static_cast<int>(coeffs[t]);
        c[j][i][t] = static_cast<int>(coeffs[t]);  // -1 = 1 over GF(2)
      }
      entries.push_back({i, j, coeffs});
    }
    const bool ok = jacobi_oracle(c, 2);
    ASSERT_EQ(ok, !jacobi_violation(2, 3, entries).has_value()) << code;
    if (ok) ++valid;
  }
  EXPECT_EQ(enumerate_structures(3, 2), valid);
}

TEST(Lie, CreateRejectsJacobiFailure) {
  // [e0,e1] = e1, [e0,e2] = e1, [e1,e2] = e0 fails Jacobi over GF(3).
  const std::vector<BracketEntry> b{{0, 1, {0, 1, 0}}, {0, 2, {0, 1, 0}}, {1, 2, {1, 0, 0}}};
  ASSERT_TRUE(jacobi_violation(3, 3, b).has_value());
  EXPECT_THROW(LieAlgebra::create(3, 3, b), JacobiError);
  EXPECT_THROW(LieAlgebra::create(3, 3, std::vector<BracketEntry>{{1, 0, {0, 0, 1}}}), UsageError);
  EXPECT_THROW(LieAlgebra::create(4, 2, {}), UsageError);
}

TEST(Lie, BracketMatchesRawTable) {
  std::mt19937_64 rng(3);
  for (const LieAlgebra& L : {sl2(5), psl3_char3(), witt(7), algebra_K(), heisenberg(3)}) {
    const oracle::Table t(L);
    for (int trial = 0; trial < 200; ++trial) {
      const FqVector x = random_vector(rng, L.dim(), L.prime()), y = random_vector(rng, L.dim(), L.prime());
      ASSERT_EQ(to_vec(L.bracket(x, y)), t.bracket(to_vec(x), to_vec(y)));
      ASSERT_TRUE((L.bracket(x, y) + L.bracket(y, x)).is_zero());
      ASSERT_TRUE(L.bracket(x, x).is_zero());
    }
  }
}

TEST(Lie, GeneratedSubalgebraMatchesOracle) {
  std::mt19937_64 rng(11);
  for (const LieAlgebra& L : {sl2(3), algebra_K(), random_solvable(4, 3, 5)}) {
    const oracle::Table t(L);
    for (int trial = 0; trial < 40; ++trial) {
      const std::vector<FqVector> g{random_vector(rng, L.dim(), L.prime()), random_vector(rng, L.dim(), L.prime())};
      const Subspace s = generated_subalgebra(L, g);
      EXPECT_TRUE(is_subalgebra(L, s));
      EXPECT_EQ(oracle::of(s), oracle::generate(t, oracle::span({to_vec(g[0]), to_vec(g[1])}, L.dim(), L.prime())));
    }
  }
}

TEST(Lie, StructuralFacts) {
  const LieAlgebra K = algebra_K();
  EXPECT_TRUE(is_simple(K));
  EXPECT_FALSE(is_solvable(K));
  EXPECT_TRUE(is_simple(sl2(3)));
  EXPECT_TRUE(structural_flags(sl2(5)).is_three_dim_split_simple);
  EXPECT_TRUE(is_simple(psl3_char3()));
  EXPECT_TRUE(is_simple(witt(5)));
  const LieAlgebra H = heisenberg(5);
  EXPECT_TRUE(is_nilpotent(H));
  EXPECT_EQ(center(H), Subspace::span(std::vector{H.basis_vector(2)}, 3, 5));
  EXPECT_EQ(series(H, SeriesKind::lower_central).size(), 3u);
  EXPECT_TRUE(l_infinity(H).is_zero());
  const LieAlgebra N = nonabelian2(3);
  EXPECT_TRUE(is_supersolvable(N));
  EXPECT_TRUE(is_almost_abelian(N));
  EXPECT_FALSE(is_nilpotent(N));
  EXPECT_TRUE(is_supersolvable(upper_triangular(3, 2)));
}

TEST(Lie, CoreNormalizerCentralizer) {
  const LieAlgebra K = algebra_K();
  const Subspace Fc = Subspace::span(std::vector{K.basis_vector(2)}, 3, 2);
  EXPECT_TRUE(core(K, Fc).is_zero());
  const LieAlgebra N = nonabelian2(5);
  const Subspace Fy = Subspace::span(std::vector{N.basis_vector(1)}, 2, 5);
  EXPECT_EQ(core(N, Fy), Fy);
  EXPECT_TRUE(is_ideal(N, Fy));
  // Brute-force the normaliser and centraliser of every line in sl2(3).
  const LieAlgebra S = sl2(3);
  const auto all = enumerate_vectors(S.whole());
  for_each_line(S.whole(), [&](const FqVector& u) {
    const Subspace U = Subspace::span(std::vector{u}, 3, 3);
    std::vector<FqVector> nor, cen;
    for (const FqVector& x : all) {
      if (U.contains(S.bracket(x, u))) nor.push_back(x);
      if (S.bracket(x, u).is_zero()) cen.push_back(x);
    }
    EXPECT_EQ(normalizer(S, U), Subspace::span(nor, 3, 3));
    EXPECT_EQ(centralizer(S, U), Subspace::span(cen, 3, 3));
  });
}

TEST(Lie, Derivations) {
  EXPECT_EQ(derivation_basis(LieAlgebra::abelian(3, 5)).size(), 9u);
  EXPECT_EQ(derivation_basis(sl2(5)).size(), 3u);
  for (const FqMatrix& d : derivation_basis(heisenberg(3))) {
    EXPECT_TRUE(is_derivation(heisenberg(3), d));
    const LieAlgebra E = semidirect_extend(heisenberg(3), d);
    EXPECT_EQ(E.dim(), 4u);
  }
  EXPECT_FALSE(is_derivation(sl2(5), FqMatrix::identity(3, 5)));
}

TEST(Lie, Constructions) {
  const LieAlgebra H = heisenberg(3);
  const Quotient q = quotient(H, center(H));
  EXPECT_EQ(q.algebra.dim(), 2u);
  EXPECT_TRUE(q.algebra.is_abelian());
  const LieAlgebra W = witt(5);
  const LieAlgebra L0 = restrict_to(W, witt_L0(5));
  EXPECT_EQ(L0.dim(), 4u);
  EXPECT_TRUE(is_supersolvable(L0));
  const LieAlgebra D = direct_sum(sl2(5), LieAlgebra::abelian(1, 5));
  EXPECT_EQ(D.dim(), 4u);
  EXPECT_EQ(center(D).dim(), 1u);
  EXPECT_THROW(quotient(sl2(5), Subspace::span(std::vector{sl2(5).basis_vector(0)}, 3, 5)), UsageError);
}

TEST(Lie, ScalarAction) {
  const LieAlgebra A = almost_abelian(4, 7);
  const Subspace sq = bracket_spaces(A, A.whole(), A.whole());
  EXPECT_EQ(sq.dim(), 3u);
  EXPECT_TRUE(is_abelian(A, sq));
  EXPECT_EQ(scalar_action(A, A.basis_vector(0), sq), Residue{1});
  EXPECT_EQ(scalar_action(A, A.basis_vector(0).scaled(3), sq), Residue{3});
  EXPECT_EQ(scalar_action(A, A.basis_vector(1), sq), Residue{0});
  EXPECT_FALSE(scalar_action(sl2(5), sl2(5).basis_vector(0), sl2(5).whole()).has_value());
}

TEST(Lie, Isomorphisms) {
  const LieAlgebra K = algebra_K();
  const auto autos = isomorphisms(K, K);
  ASSERT_FALSE(autos.empty());
  const Subspace Fc = Subspace::span(std::vector{K.basis_vector(2)}, 3, 2);
  for (const auto& phi : autos) EXPECT_TRUE(Fc.contains(phi[2]));
  EXPECT_TRUE(isomorphisms(K, upper_triangular(2, 2)).empty());
  EXPECT_TRUE(isomorphisms(heisenberg(2), strictly_upper(3, 2)).size() > 0);
}

TEST(Lie, SolvableRadical) {
  const LieAlgebra R = random_solvable(4, 3, 42);
  EXPECT_EQ(solvable_radical(R), R.whole());
  EXPECT_TRUE(solvable_radical(sl2(5)).is_zero());
  EXPECT_EQ(solvable_radical(direct_sum(sl2(5), LieAlgebra::abelian(1, 5))).dim(), 1u);
}
