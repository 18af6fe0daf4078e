#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "liesublat/field.hpp"
#include "liesublat/subspace.hpp"

namespace liesublat {

/// One nonzero basis product [e_i, e_j] = sum_k coeffs[k] e_k with i < j.
struct BracketEntry {
  std::size_t i;
  std::size_t j;
  std::vector<long long> coeffs;
};

/// A finite-dimensional Lie algebra over GF(p) given by structure constants.
///
/// Only products with i < j are supplied; the table is filled in by
/// alternation, so [x, x] = 0 holds even in characteristic two. Construction
/// rejects tensors that violate the Jacobi identity.
class LieAlgebra {
 public:
  static LieAlgebra create(unsigned p, std::size_t dim, std::span<const BracketEntry> brackets,
                           std::vector<std::string> basis_names = {}, std::string name = {});
  static LieAlgebra abelian(std::size_t dim, unsigned p, std::string name = {});

  const std::string& name() const noexcept { return name_; }
  unsigned prime() const noexcept { return p_; }
  std::size_t dim() const noexcept { return n_; }
  const std::vector<std::string>& basis_names() const noexcept { return names_; }

  FqVector basis_vector(std::size_t i) const { return FqVector::unit(n_, p_, i); }
  FqVector zero_vector() const { return FqVector(n_, p_); }
  Subspace zero_space() const { return Subspace(n_, p_); }
  Subspace whole() const { return Subspace::full(n_, p_); }

  /// [e_i, e_j] for any i, j.
  FqVector basis_bracket(std::size_t i, std::size_t j) const;
  FqVector bracket(const FqVector& x, const FqVector& y) const;
  std::uint64_t bracket_word(std::uint64_t x, std::uint64_t y) const noexcept {
    std::uint64_t acc = 0;
    for (std::size_t a = 0; a < n_; ++a) {
      const Residue xa = detail::lane(x, a);
      if (xa == 0) continue;
      for (std::size_t b = 0; b < n_; ++b) {
        const Residue yb = detail::lane(y, b);
        if (yb == 0 || a == b) continue;
        acc = detail::lanes_axpy(acc, detail::mul(xa, yb, p_), table_[a][b], p_);
      }
    }
    return acc;
  }

  /// Matrix of ad x acting on column coordinate vectors.
  FqMatrix ad(const FqVector& x) const;

  /// Nonzero products [e_i, e_j], i < j, in (i, j) order.
  std::vector<BracketEntry> nonzero_brackets() const;
  bool is_abelian() const noexcept;

  LieAlgebra renamed(std::string name) const;
  /// Same prime, dimension and structure constants (names are ignored).
  bool same_structure(const LieAlgebra& other) const noexcept;

  void check_vector(const FqVector& v) const;
  void check_space(const Subspace& s) const;

 private:
  LieAlgebra() = default;

  std::string name_;
  unsigned p_ = 2;
  std::size_t n_ = 0;
  std::vector<std::string> names_;
  std::array<std::array<std::uint64_t, kMaxDim>, kMaxDim> table_{};
};

/// First basis triple i < j < k on which the given products violate Jacobi.
/// Throws UsageError on malformed entries (i >= j, bad lengths, duplicates).
std::optional<std::array<std::size_t, 3>> jacobi_violation(unsigned p, std::size_t dim,
                                                           std::span<const BracketEntry> brackets);

// ---- substructures ------------------------------------------------------------

/// span{[x, y] : x in a, y in b}.
Subspace bracket_spaces(const LieAlgebra& L, const Subspace& a, const Subspace& b);
bool is_subalgebra(const LieAlgebra& L, const Subspace& s);
bool is_ideal(const LieAlgebra& L, const Subspace& s);
/// Smallest subalgebra containing the input.
Subspace generated_subalgebra(const LieAlgebra& L, const Subspace& s);
Subspace generated_subalgebra(const LieAlgebra& L, std::span<const FqVector> gens);
/// Smallest ideal of L containing the input.
Subspace ideal_closure(const LieAlgebra& L, const Subspace& s);

enum class SeriesKind { derived, lower_central };

/// Descending series of `of` (default: all of L), starting with `of` itself
/// and ending at the first term that repeats.
std::vector<Subspace> series(const LieAlgebra& L, SeriesKind kind,
                             const std::optional<Subspace>& of = std::nullopt);
/// Stable term of the lower central series.
Subspace l_infinity(const LieAlgebra& L);

bool is_solvable(const LieAlgebra& L);
bool is_nilpotent(const LieAlgebra& L);
bool is_abelian(const LieAlgebra& L);
/// The subspace forms must be subalgebras (UsageError otherwise).
bool is_solvable(const LieAlgebra& L, const Subspace& s);
bool is_nilpotent(const LieAlgebra& L, const Subspace& s);
bool is_abelian(const LieAlgebra& L, const Subspace& s);

Subspace center(const LieAlgebra& L);
/// C_L(U) = {x : [x, U] = 0}
Subspace centralizer(const LieAlgebra& L, const Subspace& u);
/// N_L(U) = {x : [x, U] in U}
Subspace normalizer(const LieAlgebra& L, const Subspace& u);
/// Largest ideal of L inside u.
Subspace core(const LieAlgebra& L, const Subspace& u);
/// Sum of all solvable ideals, found by sweeping every subspace for ideals.
Subspace solvable_radical(const LieAlgebra& L, std::uint64_t budget = kDefaultSubspaceBudget);

/// If [u, v] = c v for one scalar c and every v in space, returns c.
std::optional<Residue> scalar_action(const LieAlgebra& L, const FqVector& u, const Subspace& space);

// ---- constructions ------------------------------------------------------------

struct Quotient {
  LieAlgebra algebra;
  Subspace ideal;
  /// Ambient columns whose unit vectors form the complement basis.
  std::vector<std::size_t> complement;
  FqVector project(const FqVector& v) const;
};

/// L / I on the complement spanned by unit vectors at I's non-pivot columns.
Quotient quotient(const LieAlgebra& L, const Subspace& ideal);

/// The subalgebra s viewed as an algebra in its own RREF basis.
LieAlgebra restrict_to(const LieAlgebra& L, const Subspace& s, std::string name = {});

LieAlgebra direct_sum(const LieAlgebra& a, const LieAlgebra& b, std::string name = {});

bool is_derivation(const LieAlgebra& L, const FqMatrix& d);
/// Adjoins x with [x, v] = D v; D must be a derivation.
LieAlgebra semidirect_extend(const LieAlgebra& L, const FqMatrix& d, std::string name = {});
/// Basis of Der(L) as n x n matrices.
std::vector<FqMatrix> derivation_basis(const LieAlgebra& L);

struct StructuralFlags {
  bool is_simple = false;
  bool is_almost_abelian = false;
  bool is_supersolvable = false;
  /// dim 3 and simple. Over a finite field every 3-dimensional simple algebra
  /// is split (no division quaternion algebras exist), so this is a complete
  /// recognizer of sl_2 forms at p > 2.
  bool is_three_dim_split_simple = false;
};

bool is_simple(const LieAlgebra& L);
/// L = L^2 + Fx with L^2 abelian of codimension 1 and ad x = id on L^2.
bool is_almost_abelian(const LieAlgebra& L);
bool is_supersolvable(const LieAlgebra& L);
StructuralFlags structural_flags(const LieAlgebra& L);

/// All isomorphisms a -> b as images of a's basis vectors. Brute force;
/// requires p^(n*n) <= 2^20.
std::vector<std::vector<FqVector>> isomorphisms(const LieAlgebra& a, const LieAlgebra& b);

}  // namespace liesublat
