#pragma once

// Arithmetic over the prime fields GF(p), p in {2, 3, 5, 7}.
//
// Vectors have at most kMaxDim coordinates and live in a single 64-bit word,
// one byte lane per coordinate. Lane values stay reduced in [0, p), so a lane
// sum is < 14 and a lane product is < 49; neither carries into the next lane,
// which lets add/scale run as a handful of word operations.

#include <array>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

#include "liesublat/errors.hpp"

namespace liesublat {

inline constexpr std::size_t kMaxDim = 8;

using Residue = std::uint8_t;

constexpr bool is_supported_prime(unsigned p) noexcept {
  return p == 2 || p == 3 || p == 5 || p == 7;
}

/// Throws UsageError unless p is one of the supported primes.
void require_supported_prime(unsigned p);

/// Reduce an arbitrary integer into [0, p).
constexpr Residue reduce_mod(long long v, unsigned p) noexcept {
  long long r = v % static_cast<long long>(p);
  return static_cast<Residue>(r < 0 ? r + p : r);
}

namespace detail {

struct FieldTables {
  std::array<std::array<Residue, 8>, 8> mul{};
  std::array<Residue, 8> inv{};
};

constexpr FieldTables make_tables(unsigned p) {
  FieldTables t{};
  for (unsigned a = 0; a < p; ++a) {
    for (unsigned b = 0; b < p; ++b) t.mul[a][b] = static_cast<Residue>((a * b) % p);
  }
  for (unsigned a = 1; a < p; ++a) {
    for (unsigned b = 1; b < p; ++b) {
      if ((a * b) % p == 1) t.inv[a] = static_cast<Residue>(b);
    }
  }
  return t;
}

inline constexpr std::array<FieldTables, 8> kTables = {
    FieldTables{}, FieldTables{}, make_tables(2), make_tables(3),
    FieldTables{}, make_tables(5), FieldTables{}, make_tables(7)};

inline constexpr std::uint64_t kLaneOnes = 0x0101010101010101ULL;
inline constexpr std::uint64_t kLaneHigh = 0x8080808080808080ULL;

inline constexpr Residue mul(Residue a, Residue b, unsigned p) noexcept {
  return kTables[p].mul[a][b];
}
inline constexpr Residue add(Residue a, Residue b, unsigned p) noexcept {
  unsigned s = static_cast<unsigned>(a) + b;
  return static_cast<Residue>(s >= p ? s - p : s);
}
inline constexpr Residue neg(Residue a, unsigned p) noexcept {
  return static_cast<Residue>(a == 0 ? 0 : p - a);
}
inline constexpr Residue sub(Residue a, Residue b, unsigned p) noexcept {
  return add(a, neg(b, p), p);
}
inline constexpr Residue inv_unchecked(Residue a, unsigned p) noexcept { return kTables[p].inv[a]; }

// Subtract q from every lane holding a value >= q. Lanes must hold < 128 and q <= 128.
inline constexpr std::uint64_t lanes_sub_if_ge(std::uint64_t w, unsigned q) noexcept {
  const std::uint64_t probe = w + kLaneOnes * (128u - q);
  const std::uint64_t ge = (probe & kLaneHigh) >> 7;
  return w - ge * q;
}

inline constexpr std::uint64_t lanes_add(std::uint64_t a, std::uint64_t b, unsigned p) noexcept {
  return lanes_sub_if_ge(a + b, p);
}

inline constexpr std::uint64_t lanes_neg(std::uint64_t a, unsigned p) noexcept {
  const std::uint64_t nz = ((a + kLaneOnes * 0x7Fu) & kLaneHigh) >> 7;
  return nz * p - a;
}

// Every lane times c, reduced. Products are < 8p so three halvings suffice.
inline constexpr std::uint64_t lanes_scale(std::uint64_t a, Residue c, unsigned p) noexcept {
  if (c == 0) return 0;
  if (c == 1) return a;
  std::uint64_t m = a * c;
  m = lanes_sub_if_ge(m, 4 * p);
  m = lanes_sub_if_ge(m, 2 * p);
  return lanes_sub_if_ge(m, p);
}

inline constexpr std::uint64_t lanes_axpy(std::uint64_t y, Residue c, std::uint64_t x,
                                          unsigned p) noexcept {
  return c == 0 ? y : lanes_add(y, lanes_scale(x, c, p), p);
}

inline constexpr Residue lane(std::uint64_t w, std::size_t i) noexcept {
  return static_cast<Residue>((w >> (8 * i)) & 0xFFu);
}

inline constexpr std::uint64_t with_lane(std::uint64_t w, std::size_t i, Residue v) noexcept {
  const unsigned shift = static_cast<unsigned>(8 * i);
  return (w & ~(std::uint64_t{0xFF} << shift)) | (std::uint64_t{v} << shift);
}

}  // namespace detail

/// An element of GF(p).
class FqScalar {
 public:
  FqScalar(long long value, unsigned p);

  Residue value() const noexcept { return value_; }
  unsigned modulus() const noexcept { return p_; }

  FqScalar inv() const;  // DomainError on zero
  FqScalar operator-() const noexcept { return FqScalar(detail::neg(value_, p_), p_, Trusted{}); }

  friend FqScalar operator+(FqScalar a, FqScalar b);
  friend FqScalar operator-(FqScalar a, FqScalar b);
  friend FqScalar operator*(FqScalar a, FqScalar b);
  friend bool operator==(FqScalar a, FqScalar b) noexcept = default;

 private:
  struct Trusted {};
  FqScalar(Residue v, unsigned p, Trusted) noexcept : value_(v), p_(static_cast<std::uint8_t>(p)) {}

  Residue value_;
  std::uint8_t p_;
};

/// A vector of GF(p)^n, n <= kMaxDim, stored in one word.
class FqVector {
 public:
  FqVector() = default;
  FqVector(std::size_t n, unsigned p);  // zero vector
  FqVector(std::initializer_list<long long> coords, unsigned p);
  static FqVector from_coords(std::span<const long long> coords, unsigned p);
  static FqVector unit(std::size_t n, unsigned p, std::size_t i);
  static FqVector from_word(std::uint64_t word, std::size_t n, unsigned p) noexcept {
    FqVector v;
    v.word_ = word;
    v.n_ = static_cast<std::uint8_t>(n);
    v.p_ = static_cast<std::uint8_t>(p);
    return v;
  }

  std::size_t size() const noexcept { return n_; }
  unsigned modulus() const noexcept { return p_; }
  std::uint64_t word() const noexcept { return word_; }

  Residue operator[](std::size_t i) const noexcept { return detail::lane(word_, i); }
  FqScalar at(std::size_t i) const;
  void set(std::size_t i, long long value);

  bool is_zero() const noexcept { return word_ == 0; }
  /// Index of the first nonzero coordinate, or size() for the zero vector.
  std::size_t leading_index() const noexcept;
  /// Scalar multiple whose leading coordinate is 1 (zero stays zero).
  FqVector normalized() const noexcept;
  std::vector<int> coords() const;

  FqVector& operator+=(const FqVector& o);
  FqVector& operator-=(const FqVector& o);
  FqVector operator-() const noexcept {
    return from_word(detail::lanes_neg(word_, p_), n_, p_);
  }
  FqVector scaled(Residue c) const noexcept {
    return from_word(detail::lanes_scale(word_, c, p_), n_, p_);
  }

  friend FqVector operator+(FqVector a, const FqVector& b) { return a += b; }
  friend FqVector operator-(FqVector a, const FqVector& b) { return a -= b; }
  friend bool operator==(const FqVector&, const FqVector&) noexcept = default;

  std::string to_string() const;

 private:
  void check_compatible(const FqVector& o) const;

  std::uint64_t word_ = 0;
  std::uint8_t n_ = 0;
  std::uint8_t p_ = 2;
};

/// Dense matrix over GF(p) with arbitrary shape; used where rows outgrow a word.
class FqMatrix {
 public:
  FqMatrix(std::size_t rows, std::size_t cols, unsigned p);
  static FqMatrix from_rows(const std::vector<std::vector<long long>>& rows, unsigned p);
  static FqMatrix identity(std::size_t n, unsigned p);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  unsigned modulus() const noexcept { return p_; }

  Residue operator()(std::size_t r, std::size_t c) const noexcept { return data_[r * cols_ + c]; }
  void set(std::size_t r, std::size_t c, long long v) { data_[r * cols_ + c] = reduce_mod(v, p_); }
  std::span<Residue> row(std::size_t r) noexcept { return {data_.data() + r * cols_, cols_}; }
  std::span<const Residue> row(std::size_t r) const noexcept {
    return {data_.data() + r * cols_, cols_};
  }
  bool row_is_zero(std::size_t r) const noexcept;

  /// Matrix acting on column vectors: result_i = sum_j m(i, j) v_j.
  FqVector apply(const FqVector& v) const;

  friend bool operator==(const FqMatrix&, const FqMatrix&) = default;

 private:
  std::size_t rows_;
  std::size_t cols_;
  unsigned p_;
  std::vector<Residue> data_;
};

struct RrefResult {
  FqMatrix matrix;  // same shape as the input; zero rows at the bottom
  std::size_t rank;
  std::vector<std::size_t> pivots;
};

/// Gauss-Jordan reduction to reduced row-echelon form.
RrefResult rref(FqMatrix m);

/// Basis of { c : c^T M = 0 }, i.e. the row dependencies of M. Each entry has M.rows() coordinates.
std::vector<std::vector<Residue>> left_kernel(const FqMatrix& m);

}  // namespace liesublat
