#include <gtest/gtest.h>

#include <random>

#include "liesublat/field.hpp"

using namespace liesublat;

namespace {

const unsigned kPrimes[] = {2, 3, 5, 7};

}  // namespace

TEST(Field, AdditionAndMultiplicationTables) {
  for (unsigned p : kPrimes) {
    for (unsigned a = 0; a < p; ++a) {
      for (unsigned b = 0; b < p; ++b) {
        const FqScalar x(a, p), y(b, p);
        EXPECT_EQ((x + y).value(), (a + b) % p);
        EXPECT_EQ((x * y).value(), (a * b) % p);
        EXPECT_EQ((x - y).value(), (a + p - b) % p);
      }
      if (a != 0) EXPECT_EQ((FqScalar(a, p) * FqScalar(a, p).inv()).value(), 1u);
      EXPECT_EQ((FqScalar(a, p) + -FqScalar(a, p)).value(), 0u);
    }
  }
}

TEST(Field, AxiomsHoldOnEveryTriple) {
  for (unsigned p : kPrimes) {
    for (unsigned a = 0; a < p; ++a) {
      for (unsigned b = 0; b < p; ++b) {
        for (unsigned c = 0; c < p; ++c) {
          const FqScalar x(a, p), y(b, p), z(c, p);
          EXPECT_EQ((x + y) + z, x + (y + z));
          EXPECT_EQ((x * y) * z, x * (y * z));
          EXPECT_EQ(x * (y + z), x * y + x * z);
        }
      }
    }
  }
}

TEST(Field, NegativeAndLargeInputsReduce) {
  EXPECT_EQ(FqScalar(-1, 7).value(), 6u);
  EXPECT_EQ(FqScalar(100, 3).value(), 1u);
  EXPECT_EQ(reduce_mod(-15, 5), 0u);
}

TEST(Field, Errors) {
  EXPECT_THROW(FqScalar(0, 5).inv(), DomainError);
  EXPECT_THROW(require_supported_prime(4), UsageError);
  EXPECT_THROW(FqScalar(1, 11), UsageError);
  EXPECT_THROW(FqScalar(1, 3) + FqScalar(1, 5), UsageError);
  FqVector a(3, 3), b(3, 5), c(4, 3);
  EXPECT_THROW(a += b, UsageError);
  EXPECT_THROW(a += c, UsageError);
}

TEST(Field, PackedLanesMatchScalarArithmetic) {
  std::mt19937_64 rng(7);
  for (unsigned p : kPrimes) {
    for (int trial = 0; trial < 2000; ++trial) {
      std::uint64_t x = 0, y = 0;
      for (std::size_t i = 0; i < kMaxDim; ++i) {
        x = detail::with_lane(x, i, static_cast<Residue>(rng() % p));
        y = detail::with_lane(y, i, static_cast<Residue>(rng() % p));
      }
      const Residue c = static_cast<Residue>(rng() % p);
      const std::uint64_t s = detail::lanes_add(x, y, p);
      const std::uint64_t m = detail::lanes_scale(x, c, p);
      const std::uint64_t n = detail::lanes_neg(x, p);
      const std::uint64_t ax = detail::lanes_axpy(y, c, x, p);
      for (std::size_t i = 0; i < kMaxDim; ++i) {
        const unsigned xi = detail::lane(x, i), yi = detail::lane(y, i);
        ASSERT_EQ(detail::lane(s, i), (xi + yi) % p);
        ASSERT_EQ(detail::lane(m, i), (xi * c) % p);
        ASSERT_EQ(detail::lane(n, i), (p - xi) % p);
        ASSERT_EQ(detail::lane(ax, i), (yi + c * xi) % p);
      }
    }
  }
}

TEST(Field, VectorBasics) {
  FqVector v({0, 2, 4}, 5);
  EXPECT_EQ(v.leading_index(), 1u);
  EXPECT_EQ(v.normalized().coords(), (std::vector<int>{0, 1, 2}));
  EXPECT_EQ((v + v).coords(), (std::vector<int>{0, 4, 3}));
  EXPECT_EQ((-v).coords(), (std::vector<int>{0, 3, 1}));
  EXPECT_TRUE((v - v).is_zero());
  EXPECT_EQ(FqVector::unit(4, 2, 3).coords(), (std::vector<int>{0, 0, 0, 1}));
}

TEST(Field, RrefWorkedExample) {
  // Over GF(3): rows (0,2,4) = (0,2,1) and (1,1,1) reduce to (1,0,2), (0,1,2).
  const RrefResult r = rref(FqMatrix::from_rows({{0, 2, 4}, {1, 1, 1}}, 3));
  EXPECT_EQ(r.rank, 2u);
  EXPECT_EQ(r.pivots, (std::vector<std::size_t>{0, 1}));
  EXPECT_EQ(r.matrix, FqMatrix::from_rows({{1, 0, 2}, {0, 1, 2}}, 3));
}

TEST(Field, RrefRankOneAndLeftKernel) {
  const FqMatrix m = FqMatrix::from_rows({{1, 2, 3}, {2, 4, 1}, {3, 1, 4}}, 5);
  const RrefResult r = rref(m);
  EXPECT_EQ(r.rank, 1u);
  EXPECT_EQ(r.matrix, FqMatrix::from_rows({{1, 2, 3}, {0, 0, 0}, {0, 0, 0}}, 5));
  const auto ker = left_kernel(m);
  ASSERT_EQ(ker.size(), 2u);
  for (const auto& c : ker) {
    for (std::size_t col = 0; col < 3; ++col) {
      unsigned s = 0;
      for (std::size_t row = 0; row < 3; ++row) s += c[row] * m(row, col);
      EXPECT_EQ(s % 5, 0u);
    }
  }
}

TEST(Field, MatrixApply) {
  const FqMatrix m = FqMatrix::from_rows({{0, 1}, {1, 0}}, 7);
  EXPECT_EQ(m.apply(FqVector({3, 5}, 7)).coords(), (std::vector<int>{5, 3}));
  EXPECT_EQ(FqMatrix::identity(3, 2).apply(FqVector({1, 0, 1}, 2)).coords(), (std::vector<int>{1, 0, 1}));
}
