#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "liesublat/field.hpp"

namespace liesublat {

using BigInt = boost::multiprecision::cpp_int;

inline constexpr std::uint64_t kDefaultSubspaceBudget = 4'000'000;

/// A subspace of GF(p)^n held by its reduced row-echelon basis.
///
/// The RREF basis is unique, so two Subspace values describe the same set
/// exactly when their stored rows are identical. Unused row slots are zero.
class Subspace {
 public:
  Subspace() = default;
  /// The zero subspace of GF(p)^n.
  Subspace(std::size_t n, unsigned p);
  static Subspace full(std::size_t n, unsigned p);
  /// Canonical span of arbitrary generators.
  static Subspace span(std::span<const FqVector> vectors, std::size_t n, unsigned p);
  /// Trusts that `rows` is already in RREF (used by the enumerator).
  static Subspace from_rref_words(std::size_t n, unsigned p, std::span<const std::uint64_t> rows);

  std::size_t ambient_dim() const noexcept { return n_; }
  unsigned modulus() const noexcept { return p_; }
  std::size_t dim() const noexcept { return k_; }
  bool is_zero() const noexcept { return k_ == 0; }
  bool is_full() const noexcept { return k_ == n_; }

  std::size_t pivot(std::size_t i) const noexcept { return pivots_[i]; }
  FqVector row(std::size_t i) const noexcept { return FqVector::from_word(rows_[i], n_, p_); }
  std::uint64_t row_word(std::size_t i) const noexcept { return rows_[i]; }
  std::vector<FqVector> basis() const;
  /// Rows as digit arrays, the portable external form.
  std::vector<std::vector<int>> rows_as_digits() const;

  /// Canonical representative of v modulo this subspace. Linear in v and
  /// zero at every pivot column.
  FqVector reduce(const FqVector& v) const;
  std::uint64_t reduce_word(std::uint64_t w) const noexcept {
    for (std::size_t i = 0; i < k_; ++i) {
      const Residue c = detail::lane(w, pivots_[i]);
      if (c != 0) w = detail::lanes_add(w, detail::lanes_scale(rows_[i], detail::neg(c, p_), p_), p_);
    }
    return w;
  }
  bool contains(const FqVector& v) const;
  bool contains_word(std::uint64_t w) const noexcept { return reduce_word(w) == 0; }
  bool is_subset_of(const Subspace& other) const;

  /// Grows the subspace to include w (a vector word of this ambient space).
  /// Returns false if w was already a member.
  bool absorb_word(std::uint64_t w) noexcept;

  /// Coordinates of a member vector in the RREF basis (its pivot entries).
  std::vector<Residue> coordinates(const FqVector& v) const;

  std::size_t hash() const noexcept;
  friend bool operator==(const Subspace& a, const Subspace& b) noexcept {
    return a.n_ == b.n_ && a.p_ == b.p_ && a.k_ == b.k_ && a.rows_ == b.rows_;
  }
  /// Lexicographic order on (dim, rows); used only for deterministic sorting.
  friend bool operator<(const Subspace& a, const Subspace& b) noexcept;

  std::string to_string() const;

 private:
  void check_vector(const FqVector& v) const;

  std::array<std::uint64_t, kMaxDim> rows_{};
  std::array<std::uint8_t, kMaxDim> pivots_{};
  std::uint8_t n_ = 0;
  std::uint8_t p_ = 2;
  std::uint8_t k_ = 0;
};

struct SubspaceHash {
  std::size_t operator()(const Subspace& s) const noexcept { return s.hash(); }
};

/// Same as Subspace::span; the free-function spelling used throughout.
Subspace subspace_from_vectors(std::span<const FqVector> vectors, std::size_t n, unsigned p);
Subspace subspace_sum(const Subspace& a, const Subspace& b);
Subspace subspace_meet(const Subspace& a, const Subspace& b);

/// Members of `domain` on which every listed linear map vanishes. `images`
/// returns the concatenated images of one vector; its length must not depend
/// on the argument.
Subspace kernel_within(const Subspace& domain,
                       const std::function<std::vector<Residue>(const FqVector&)>& images);

// ---- enumeration ------------------------------------------------------------

/// Hard cap for enumerate_vectors: dim * log2(p) <= 24.
bool vector_enumeration_allowed(std::size_t dim, unsigned p) noexcept;

/// Visits all p^dim members in lexicographic order of their coefficient
/// tuples over the RREF basis. Throws ResourceError past the guard.
void for_each_vector(const Subspace& s, const std::function<void(const FqVector&)>& visit);
std::vector<FqVector> enumerate_vectors(const Subspace& s);

/// Visits one normalized nonzero vector per 1-dimensional subspace of s.
void for_each_line(const Subspace& s, const std::function<void(const FqVector&)>& visit);

/// k-subsets of {0..n-1} in lexicographic order.
std::vector<std::vector<std::uint8_t>> pivot_patterns(std::size_t n, std::size_t k);

/// Number of subspaces with the given pivot columns: p^(free entries).
std::uint64_t pattern_size(std::size_t n, unsigned p, std::span<const std::uint8_t> pivots);

/// Visits every subspace whose RREF has exactly these pivot columns, free
/// entries counted as a base-p integer (first free entry most significant).
void for_each_subspace_with_pivots(std::size_t n, unsigned p, std::span<const std::uint8_t> pivots,
                                   const std::function<void(const Subspace&)>& visit);

/// Visits every k-dimensional subspace of GF(p)^n once: pivot patterns in
/// lexicographic order, then free-entry counters. Pass std::nullopt for all k
/// in increasing order. Throws ResourceError if the count exceeds `budget`.
void for_each_subspace(std::size_t n, unsigned p, std::optional<std::size_t> k,
                       const std::function<void(const Subspace&)>& visit,
                       std::uint64_t budget = kDefaultSubspaceBudget);
std::vector<Subspace> enumerate_subspaces(std::size_t n, unsigned p, std::optional<std::size_t> k,
                                          std::uint64_t budget = kDefaultSubspaceBudget);

/// Number of k-dimensional subspaces of GF(q)^n (product formula).
BigInt gaussian_binomial(std::size_t n, std::size_t k, unsigned q);
/// Total number of subspaces of GF(q)^n, or of one dimension if k is given.
BigInt subspace_count(std::size_t n, unsigned q, std::optional<std::size_t> k = std::nullopt);

}  // namespace liesublat
