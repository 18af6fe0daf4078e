#include <gtest/gtest.h>

#include <set>

#include "liesublat/subspace.hpp"
#include "oracles.hpp"

using namespace liesublat;

namespace {

// [n, k]_q by the q-Pascal recurrence, independent of the product formula.
BigInt pascal(std::size_t n, std::size_t k, unsigned q) {
  std::vector<std::vector<BigInt>> t(n + 1, std::vector<BigInt>(n + 1, 0));
  for (std::size_t m = 0; m <= n; ++m) {
    t[m][0] = 1;
    for (std::size_t j = 1; j <= m; ++j) {
      BigInt qj = 1;
      for (std::size_t s = 0; s < j; ++s) qj *= q;
      t[m][j] = t[m - 1][j - 1] + qj * (j <= m - 1 ? t[m - 1][j] : BigInt(0));
    }
  }
  return t[n][k];
}

bool is_rref(const Subspace& s) {
  for (std::size_t i = 0; i < s.dim(); ++i) {
    const FqVector r = s.row(i);
    if (r[s.pivot(i)] != 1) return false;
    if (r.leading_index() != s.pivot(i)) return false;
    if (i > 0 && s.pivot(i) <= s.pivot(i - 1)) return false;
    for (std::size_t j = 0; j < s.dim(); ++j) {
      if (j != i && s.row(j)[s.pivot(i)] != 0) return false;
    }
  }
  return true;
}

}  // namespace

TEST(Subspace, GaussianBinomialMatchesRecurrence) {
  for (unsigned q : {2u, 3u, 5u, 7u}) {
    for (std::size_t n = 0; n <= 8; ++n) {
      for (std::size_t k = 0; k <= n; ++k) EXPECT_EQ(gaussian_binomial(n, k, q), pascal(n, k, q)) << n << k << q;
    }
  }
  EXPECT_EQ(gaussian_binomial(5, 2, 5), 20306);
  EXPECT_EQ(gaussian_binomial(7, 3, 3), 925771);
  EXPECT_THROW(gaussian_binomial(3, 4, 2), UsageError);
}

TEST(Subspace, EnumerationCountsAndCanonicalForm) {
  for (unsigned p : {2u, 3u, 5u}) {
    for (std::size_t n = 1; n <= 4; ++n) {
      for (std::size_t k = 0; k <= n; ++k) {
        const auto all = enumerate_subspaces(n, p, k);
        EXPECT_EQ(BigInt(all.size()), gaussian_binomial(n, k, p));
        std::set<Subspace> uniq(all.begin(), all.end());
        EXPECT_EQ(uniq.size(), all.size());
        for (const Subspace& s : all) {
          ASSERT_EQ(s.dim(), k);
          ASSERT_TRUE(is_rref(s));
        }
      }
    }
  }
}

TEST(Subspace, EnumerationMatchesOracleSets) {
  for (unsigned p : {2u, 3u}) {
    const auto mine = enumerate_subspaces(3, p, std::nullopt);
    std::set<oracle::Space> a, b;
    for (const Subspace& s : mine) a.insert(oracle::of(s));
    for (auto& s : oracle::all_subspaces(3, p)) b.insert(s);
    EXPECT_EQ(a, b);
  }
}

TEST(Subspace, BudgetGuard) {
  EXPECT_THROW(for_each_subspace(8, 7, std::nullopt, [](const Subspace&) {}, 1000), ResourceError);
  try {
    enumerate_subspaces(6, 5, 3, 10);
    FAIL();
  } catch (const ResourceError& e) {
    EXPECT_EQ(BigInt(e.estimate()), gaussian_binomial(6, 3, 5));
  }
}

TEST(Subspace, DimensionFormulaAndModularLaw) {
  for (unsigned p : {2u, 3u}) {
    for (std::size_t n = 1; n <= 3; ++n) {
      const auto all = enumerate_subspaces(n, p, std::nullopt);
      for (const Subspace& a : all) {
        for (const Subspace& b : all) {
          const Subspace s = subspace_sum(a, b), m = subspace_meet(a, b);
          ASSERT_EQ(s.dim() + m.dim(), a.dim() + b.dim());
          ASSERT_EQ(oracle::of(m), oracle::meet(oracle::of(a), oracle::of(b)));
          ASSERT_EQ(oracle::of(s), oracle::sum(oracle::of(a), oracle::of(b), n, p));
          for (const Subspace& c : all) {
            if (!a.is_subset_of(c)) continue;
            ASSERT_EQ(subspace_sum(a, subspace_meet(b, c)), subspace_meet(subspace_sum(a, b), c));
          }
        }
      }
    }
  }
}

TEST(Subspace, SpanIsCanonical) {
  const std::vector<FqVector> g1{FqVector({1, 2, 0}, 3), FqVector({0, 1, 1}, 3)};
  const std::vector<FqVector> g2{FqVector({1, 0, 1}, 3), FqVector({2, 1, 0}, 3), FqVector({0, 2, 2}, 3)};
  EXPECT_EQ(Subspace::span(g1, 3, 3), Subspace::span(g2, 3, 3));
  const Subspace s = Subspace::span(g1, 3, 3);
  EXPECT_TRUE(s.contains(FqVector({1, 0, 1}, 3)));
  EXPECT_FALSE(s.contains(FqVector({0, 0, 1}, 3)));
  EXPECT_TRUE(s.reduce(FqVector({1, 0, 1}, 3)).is_zero());
  EXPECT_EQ(s.coordinates(FqVector({1, 0, 1}, 3)).size(), 2u);
}

TEST(Subspace, AbsorbWord) {
  Subspace s(4, 5);
  EXPECT_TRUE(s.absorb_word(FqVector({0, 2, 0, 1}, 5).word()));
  EXPECT_TRUE(s.absorb_word(FqVector({1, 1, 1, 1}, 5).word()));
  EXPECT_FALSE(s.absorb_word(FqVector({1, 3, 1, 2}, 5).word()));
  EXPECT_EQ(s.dim(), 2u);
  EXPECT_TRUE(is_rref(s));
}

TEST(Subspace, LinesAndVectors) {
  const Subspace full = Subspace::full(3, 5);
  std::size_t lines = 0;
  for_each_line(full, [&](const FqVector& v) {
    EXPECT_EQ(v[v.leading_index()], 1);
    ++lines;
  });
  EXPECT_EQ(lines, 31u);
  EXPECT_EQ(enumerate_vectors(full).size(), 125u);
  EXPECT_TRUE(vector_enumeration_allowed(8, 7));
}

TEST(Subspace, KernelWithin) {
  const Subspace full = Subspace::full(3, 3);
  const Subspace k = kernel_within(full, [](const FqVector& v) { return std::vector<Residue>{v[0]}; });
  EXPECT_EQ(k.dim(), 2u);
  EXPECT_FALSE(k.contains(FqVector({1, 0, 0}, 3)));
}
